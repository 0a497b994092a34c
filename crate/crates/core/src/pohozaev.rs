//! Pohozaev function `P(r)` and its derivative.
//!
//! For `p = 2` (any weight `r^α`):
//!
//! ```text
//! P  = r^n [u'² + 2G] + (n-2) r^(n-1) u' u,          G = λ r^α F(u)
//! P' = r^(n-1) [2nG - (n-2) u g + 2αG],              g = λ r^α f(u)
//! ```
//!
//! For general `p` (autonomous, `α = 0`):
//!
//! ```text
//! P  = r^n [(p-1) φ_p(u') u' + pλF(u)] + (n-p) r^(n-1) φ_p(u') u
//! P' = r^(n-1) [npλF(u) - (n-p) u λ f(u)]
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::closedform::{ClosedFormFamily, FamilyError};
use crate::model::{
    critical_exponent_plap, critical_exponent_weighted, phi_p, weight, ModelError, RadialProblem,
};
use crate::profile::Profile;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PohozaevError {
    #[error("no Pohozaev function for weighted p-Laplacian (p = {p}, alpha = {alpha})")]
    WeightedPLaplacian { p: f64, alpha: f64 },
    #[error("r = {r} is outside the profile")]
    OutOfDomain { r: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criticality {
    Subcritical,
    Critical,
    Supercritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PohozaevSample<T> {
    pub r: T,
    #[serde(rename = "P")]
    pub value: T,
    #[serde(rename = "Pprime_formula")]
    pub pprime_formula: T,
    #[serde(rename = "Pprime_numeric")]
    pub pprime_numeric: T,
}

impl<T: Scalar> PohozaevSample<T> {
    /// `|formula - numeric| / (1 + |formula|)`.
    pub fn mismatch(&self) -> T {
        (self.pprime_formula - self.pprime_numeric).abs() / (T::one() + self.pprime_formula.abs())
    }
}

fn is_classical<T: Scalar>(problem: &RadialProblem<T>) -> Result<bool, PohozaevError> {
    let p = problem.p();
    if p == T::lit(2.0) {
        return Ok(true);
    }
    if problem.alpha() != T::zero() {
        return Err(PohozaevError::WeightedPLaplacian {
            p: p.to_f64_lossy(),
            alpha: problem.alpha().to_f64_lossy(),
        });
    }
    Ok(false)
}

/// `P(r)` at a sample `(r, u, u')`.
pub fn pohozaev_p<T: Scalar>(
    problem: &RadialProblem<T>,
    r: T,
    u: T,
    uprime: T,
) -> Result<T, PohozaevError> {
    let classical = is_classical(problem)?;
    if r == T::zero() {
        return Ok(T::zero());
    }
    let n = problem.n();
    let lambda = problem.lambda();
    let rn1 = r.powf(n - T::one());
    let big_f = problem.eval_primitive(u)?;
    if classical {
        let g = lambda * weight(r, problem.alpha()) * big_f;
        Ok(rn1 * r * (uprime * uprime + T::lit(2.0) * g) + (n - T::lit(2.0)) * rn1 * uprime * u)
    } else {
        let p = problem.p();
        let ph = phi_p(uprime, p);
        Ok(rn1 * r * ((p - T::one()) * ph * uprime + p * lambda * big_f) + (n - p) * rn1 * ph * u)
    }
}

/// `P'(r)` from the closed formula.
pub fn pohozaev_pprime<T: Scalar>(
    problem: &RadialProblem<T>,
    r: T,
    u: T,
) -> Result<T, PohozaevError> {
    let classical = is_classical(problem)?;
    if r == T::zero() {
        return Ok(T::zero());
    }
    let n = problem.n();
    let lambda = problem.lambda();
    let rn1 = r.powf(n - T::one());
    let big_f = problem.eval_primitive(u)?;
    let f = problem.eval_f(u)?;
    if classical {
        let two = T::lit(2.0);
        let wl = lambda * weight(r, problem.alpha());
        Ok(rn1 * wl * (two * n * big_f - (n - two) * u * f + two * problem.alpha() * big_f))
    } else {
        let p = problem.p();
        Ok(rn1 * lambda * (n * p * big_f - (n - p) * u * f))
    }
}

/// Position of the power `q` relative to the critical exponent: the weighted
/// one `(n+2+2α)/(n-2)` for `p = 2`, otherwise `((p-1)n+p)/(n-p)` (where `α`
/// must be 0). Equality is tested with relative tolerance `1e-12`.
pub fn classify_power<T: Scalar>(n: T, p: T, alpha: T, q: T) -> Result<Criticality, PohozaevError> {
    let qc = if p == T::lit(2.0) {
        critical_exponent_weighted(n, alpha)?
    } else {
        if alpha != T::zero() {
            return Err(PohozaevError::WeightedPLaplacian {
                p: p.to_f64_lossy(),
                alpha: alpha.to_f64_lossy(),
            });
        }
        critical_exponent_plap(n, p)?
    };
    Ok(if (q - qc).abs() <= T::lit(1e-12) * qc.abs() {
        Criticality::Critical
    } else if q < qc {
        Criticality::Subcritical
    } else {
        Criticality::Supercritical
    })
}

/// Evaluates `P`, the formula `P'` and a centered difference of `P` on
/// `grid`, using `eval` for `(u, u')`. The difference step is `1e-3 r`,
/// shrunk to stay inside `[0, r_end]`.
pub fn pohozaev_scan<T, E>(
    problem: &RadialProblem<T>,
    grid: &[T],
    r_end: T,
    eval: E,
) -> Result<Vec<PohozaevSample<T>>, PohozaevError>
where
    T: Scalar,
    E: Fn(T) -> Option<(T, T)>,
{
    let at = |r: T| -> Result<T, PohozaevError> {
        let (u, du) = eval(r).ok_or(PohozaevError::OutOfDomain {
            r: r.to_f64_lossy(),
        })?;
        pohozaev_p(problem, r, u, du)
    };
    grid.iter()
        .map(|&r| {
            let (u, du) = eval(r).ok_or(PohozaevError::OutOfDomain {
                r: r.to_f64_lossy(),
            })?;
            let value = pohozaev_p(problem, r, u, du)?;
            let pprime_formula = pohozaev_pprime(problem, r, u)?;
            let h = (T::lit(1e-3) * r)
                .min(T::lit(0.5) * (r_end - r))
                .max(T::zero());
            let pprime_numeric = if h > T::zero() {
                (at(r + h)? - at(r - h)?) / (T::lit(2.0) * h)
            } else {
                T::nan()
            };
            Ok(PohozaevSample {
                r,
                value,
                pprime_formula,
                pprime_numeric,
            })
        })
        .collect()
}

/// [`pohozaev_scan`] along an integrated profile.
pub fn scan_profile<T: Scalar>(
    problem: &RadialProblem<T>,
    profile: &Profile<T>,
    grid: &[T],
) -> Result<Vec<PohozaevSample<T>>, PohozaevError> {
    pohozaev_scan(problem, grid, profile.r_end(), |r| profile.eval(r))
}

/// [`pohozaev_scan`] along a closed-form family member.
pub fn scan_family<T: Scalar>(
    family: &ClosedFormFamily<T>,
    grid: &[T],
) -> Result<Vec<PohozaevSample<T>>, PohozaevError> {
    pohozaev_scan(family.problem(), grid, T::infinity(), |r| {
        family.jet(r).ok().map(|j| (j.u, j.du))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NonlinearTerm;

    fn single(n: f64, alpha: f64, q: f64) -> RadialProblem<f64> {
        RadialProblem::laplacian(n, alpha, vec![NonlinearTerm::power(1.0, q)]).unwrap()
    }

    #[test]
    fn origin_is_zero() {
        let pr = single(3.0, 0.0, 4.0);
        assert_eq!(pohozaev_p(&pr, 0.0, 2.0, 0.0).unwrap(), 0.0);
        assert_eq!(pohozaev_pprime(&pr, 0.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn critical_powers_have_flat_pohozaev() {
        for (alpha, q) in [(0.0, 5.0), (1.0, 7.0)] {
            let pr = single(3.0, alpha, q);
            for (r, u) in [(0.3, 0.7), (2.0, 1.9), (10.0, 0.01)] {
                let v = pohozaev_pprime(&pr, r, u).unwrap();
                assert!(v.abs() < 1e-12 * (1.0 + r.powi(3)), "P' = {v}");
            }
        }
    }

    #[test]
    fn supercritical_power_has_negative_derivative() {
        let pr = single(3.0, 0.0, 6.0);
        for (r, u) in [(0.3, 0.7), (2.0, 1.9)] {
            assert!(pohozaev_pprime(&pr, r, u).unwrap() < 0.0);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_power(3.0, 2.0, 0.0, 5.0).unwrap(),
            Criticality::Critical
        );
        assert_eq!(
            classify_power(3.0, 2.0, 0.0, 7.0).unwrap(),
            Criticality::Supercritical
        );
        assert_eq!(
            classify_power(3.0, 2.0, 0.0, 4.0).unwrap(),
            Criticality::Subcritical
        );
        assert_eq!(
            classify_power(3.0, 2.0, 1.0, 7.0).unwrap(),
            Criticality::Critical
        );
        assert_eq!(
            classify_power(4.0, 3.0, 0.0, 11.0).unwrap(),
            Criticality::Critical
        );
        assert!(classify_power(4.0, 3.0, 1.0, 11.0).is_err());
    }

    #[test]
    fn weighted_p_laplacian_is_rejected() {
        let pr = RadialProblem::new(3.0, 2.5, 1.0, vec![NonlinearTerm::power(1.0, 3.0)]).unwrap();
        assert!(matches!(
            pohozaev_p(&pr, 1.0, 1.0, -0.1),
            Err(PohozaevError::WeightedPLaplacian { .. })
        ));
    }

    #[test]
    fn ground_states_have_vanishing_pohozaev() {
        let fams = [
            ClosedFormFamily::weighted_critical(3.0, 0.0, 1.0).unwrap(),
            ClosedFormFamily::plap_critical(4.0, 3.0, 0.8).unwrap(),
        ];
        let grid: Vec<f64> = (1..=100).map(|i| i as f64 * 0.1).collect();
        for fam in &fams {
            let n = fam.problem().n();
            for s in scan_family(fam, &grid).unwrap() {
                assert!(
                    s.value.abs() < 1e-6 * (1.0 + s.r.powf(n)),
                    "P({}) = {}",
                    s.r,
                    s.value
                );
            }
        }
    }
}
