use approx::assert_relative_eq;
use radial_plap::model::{critical_exponent_plap, critical_exponent_weighted, lin_ni_q};
use radial_plap::{phi_p, phi_p_inv, NonlinearTerm, Problem};

#[test]
fn phi_p_examples() {
    assert_eq!(phi_p(-2.0, 3.0), -4.0);
    assert_eq!(phi_p(0.37, 2.0), 0.37);
    assert_relative_eq!(phi_p(0.5, 1.5), 0.5_f64.sqrt(), max_relative = 1e-15);
    assert_eq!(phi_p_inv(-4.0, 3.0), -2.0);
    assert_eq!(phi_p_inv(-0.37, 2.0), -0.37);
    assert_relative_eq!(
        phi_p_inv(8.0, 3.0),
        2.0 * 2.0_f64.sqrt(),
        max_relative = 1e-15
    );
}

#[test]
fn nonlinearity_and_primitive() {
    let single = Problem::laplacian(3.0, 0.0, vec![NonlinearTerm::power(1.0, 5.0)]).unwrap();
    assert_eq!(single.eval_f(2.0).unwrap(), 32.0);
    assert_relative_eq!(
        single.eval_primitive(2.0).unwrap(),
        64.0 / 6.0,
        max_relative = 1e-15
    );

    let pair = Problem::laplacian(
        3.0,
        0.0,
        vec![
            NonlinearTerm::power(1.0, 4.0),
            NonlinearTerm::power(1.0, 7.0),
        ],
    )
    .unwrap();
    assert_eq!(pair.eval_f(1.0).unwrap(), 2.0);
    assert_relative_eq!(
        pair.eval_primitive(1.0).unwrap(),
        0.2 + 0.125,
        max_relative = 1e-15
    );

    let exp = Problem::laplacian(2.0, 0.0, vec![NonlinearTerm::exponential(1.0, 1.0)]).unwrap();
    assert_eq!(exp.eval_f(0.0).unwrap(), 1.0);
    assert_eq!(exp.eval_primitive(0.0).unwrap(), 0.0);
}

#[test]
fn critical_exponents() {
    assert_relative_eq!(critical_exponent_weighted(3.0, 0.0).unwrap(), 5.0);
    assert_relative_eq!(critical_exponent_weighted(3.0, 1.0).unwrap(), 7.0);
    assert_relative_eq!(critical_exponent_weighted(4.0, 0.0).unwrap(), 3.0);
    assert_relative_eq!(critical_exponent_plap(3.0, 2.0).unwrap(), 5.0);
    assert_relative_eq!(critical_exponent_plap(4.0, 3.0).unwrap(), 11.0);
    assert_relative_eq!(critical_exponent_plap(5.0, 2.0).unwrap(), 7.0 / 3.0);
    assert!(critical_exponent_weighted(2.0, 0.0).is_err());
    assert!(critical_exponent_plap(3.0, 3.0).is_err());
}

#[test]
fn paired_upper_power() {
    assert_relative_eq!(lin_ni_q(4.0, 2.0).unwrap(), 7.0);
    assert_relative_eq!(lin_ni_q(9.0, 3.0).unwrap(), 12.5);
    for p in [1.5, 2.0, 3.0, 4.5] {
        assert_relative_eq!(
            lin_ni_q(p, p).unwrap(),
            (p * p - p + 1.0) / (p - 1.0),
            max_relative = 1e-15
        );
    }
    assert!(lin_ni_q(0.5, 2.0).is_err());
}

#[test]
fn problem_validation_and_json() {
    assert!(Problem::new(3.0, 1.0, 0.0, vec![NonlinearTerm::power(1.0, 2.0)]).is_err());
    assert!(Problem::new(3.0, 2.0, -1.0, vec![NonlinearTerm::power(1.0, 2.0)]).is_err());
    assert!(Problem::new(1.0, 2.0, 0.0, vec![NonlinearTerm::power(1.0, 2.0)]).is_err());
    assert!(Problem::new(3.0, 2.0, 0.0, vec![]).is_err());

    let pr = Problem::new(
        3.5,
        2.5,
        0.25,
        vec![
            NonlinearTerm::power(2.0, 3.0),
            NonlinearTerm::exponential(0.5, -1.0),
        ],
    )
    .unwrap()
    .with_lambda(1.7)
    .unwrap();
    let back = Problem::from_json(&pr.to_json()).unwrap();
    assert_eq!(back, pr);
}
