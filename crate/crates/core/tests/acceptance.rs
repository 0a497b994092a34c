//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use radial_plap::curves::SolutionCount;
use radial_plap::pohozaev::{scan_family, scan_profile};
use radial_plap::{
    bratu2d_count, bratu_pn_count, classify_power, count_solutions_at, estimate_asymptote,
    first_root, integrate_coulomb, integrate_ivp, log_grid, residual_max, small_a_scaling_check,
    solve_via_cov, trace_curve, trace_curve_with, ClosedFormFamily, Config, Criticality, Curve,
    FamilyId, NonlinearTerm, PositivityCheck, Problem, RootOutcome, Route, TraceOptions,
};

/// Collects sub-check results for one criterion.
#[derive(Default)]
struct Verdict {
    notes: Vec<String>,
    failed: Vec<String>,
}

impl Verdict {
    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn require(&mut self, ok: bool, text: impl Into<String>) {
        let text = text.into();
        if !ok {
            self.failed.push(text.clone());
        }
        self.notes.push(text);
    }

    fn pass(&self) -> bool {
        self.failed.is_empty()
    }
}

const RESHOOT_TOL: f64 = 1e-8;

fn seconds(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn single_thread<R: Send>(job: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(job)
}

fn count(curve: &Curve, lambda: f64) -> SolutionCount<f64> {
    count_solutions_at(curve, lambda)
}

fn closed_form_residuals() -> Verdict {
    let mut v = Verdict::default();
    let start = Instant::now();
    let grid = log_grid(1e-6, 10.0, 300);
    let mut rng = common::rng(1);
    let draws = 24;
    let mut worst = (0.0_f64, FamilyId::F1);
    for id in FamilyId::ALL {
        for _ in 0..draws {
            // The residual is absolute, so draws keep |f| within 1e6.
            let fam = common::draw_family_within(id, &mut rng, &grid, 1e6);
            match residual_max(&fam, &grid) {
                Ok(r) if r <= worst.0 => {}
                Ok(r) => worst = (r, id),
                Err(e) => v.require(false, format!("{id} {:?}: {e}", fam.params())),
            }
        }
    }
    let elapsed = start.elapsed();
    v.require(
        worst.0 < 1e-8,
        format!(
            "{draws} draws x 10 families, worst residual {:.2e} ({})",
            worst.0, worst.1
        ),
    );
    v.require(
        seconds(elapsed) < 10.0,
        format!("{:.2} s", seconds(elapsed)),
    );
    v
}

fn aubin_talenti() -> Verdict {
    let mut v = Verdict::default();
    let pr = common::power_sum(3.0, 0.0, &[5.0]);
    let fam = ClosedFormFamily::weighted_critical(3.0, 0.0, 1.0).unwrap();
    match first_root(&pr, 3.0_f64.sqrt(), &Config::default()) {
        RootOutcome::NoRootUpTo { r_max, profile } => {
            v.require(r_max >= 1e3, format!("no root up to r = {r_max:.3e}"));
            let grid: Vec<f64> = (1..=1000).map(|i| i as f64 * 0.01).collect();
            let d = profile
                .sup_distance(&grid, |r| fam.eval_u(r).unwrap())
                .unwrap_or(f64::INFINITY);
            v.require(d < 1e-7, format!("sup |u - u_exact| on (0,10] = {d:.2e}"));
        }
        other => v.require(false, format!("expected no root, got {:?}", other.rho())),
    }
    v
}

fn planar_bratu() -> Verdict {
    let mut v = Verdict::default();
    let cfg = Config {
        positivity: PositivityCheck::Off,
        ..Config::default()
    };
    let grid = log_grid(0.01, 8.0, 64);
    for (b, expected) in [(1.5_f64, 2usize), (2.0, 1), (2.5, 0)] {
        let exact = bratu2d_count(b);
        v.require(
            exact.count == expected,
            format!("B={b}: count {}", exact.count),
        );
        let mut heights = Vec::new();
        for &a in &exact.a_roots {
            let fam = ClosedFormFamily::bratu_2d(a, b).unwrap();
            let u1 = fam.eval_u(1.0).unwrap().abs();
            v.require(u1 < 1e-10, format!("B={b} a={a:.6}: |u(1)| = {u1:.1e}"));
            heights.push(fam.eval_u(0.0).unwrap());
        }
        let pr = Problem::laplacian(2.0, 0.0, vec![NonlinearTerm::exponential(b, 1.0)]).unwrap();
        match trace_curve(&pr, &grid, &cfg) {
            Ok(curve) => {
                let shot = count(&curve, 1.0);
                v.require(
                    shot.count == expected,
                    format!("B={b}: shooting count {}", shot.count),
                );
                for (c, h) in shot.crossings.iter().zip(&heights) {
                    v.require(
                        (c.a - h).abs() < 1e-6,
                        format!("u(0) shot {:.8} vs {:.8}", c.a, h),
                    );
                }
                let res = curve.max_reshoot_residual();
                v.require(res < RESHOOT_TOL, format!("B={b}: re-shoot {res:.1e}"));
            }
            Err(e) => v.require(false, format!("B={b}: trace failed: {e}")),
        }
    }
    v
}

fn bratu_p_equals_n() -> Verdict {
    let mut v = Verdict::default();
    let b2 = bratu_pn_count(2.0, 1.0).b_critical;
    v.require(
        b2 == 2.0 && bratu2d_count(1.0).b_critical == b2,
        format!("B_crit(2) = {b2}"),
    );
    let grid = log_grid(1e-6, 1.0, 300);
    for n in [2.0_f64, 3.0, 4.0] {
        let bc = bratu_pn_count(n, 1.0).b_critical;
        let want = n.powf(n - 1.0);
        v.require(
            (bc - want).abs() <= 1e-12 * want,
            format!("B_crit({n}) = {bc}"),
        );
        for b in [0.5 * bc, bc] {
            let res = bratu_pn_count(n, b);
            let expected = if b == bc { 1 } else { 2 };
            v.require(
                res.count == expected,
                format!("n={n} B={b}: count {}", res.count),
            );
            for &a in &res.a_roots {
                let fam = ClosedFormFamily::bratu_pn(n, a, b).unwrap();
                let cfg = Config::default().with_r_max(1.0).through_root();
                let u0 = fam.eval_u(0.0).unwrap();
                let u1 = integrate_ivp(fam.problem(), u0, &cfg)
                    .ok()
                    .and_then(|p| p.eval_u(1.0))
                    .map_or(f64::INFINITY, f64::abs);
                v.require(
                    u1 < 1e-8,
                    format!("n={n} B={b} a={a:.6}: shot |u(1)| = {u1:.1e}"),
                );
            }
        }
        let printed = ClosedFormFamily::bratu_pn_printed(n, 1.0, 1.0).unwrap();
        let r = residual_max(&printed, &grid).unwrap_or(f64::INFINITY);
        v.require(
            r > 0.1,
            format!("n={n}: printed coefficient residual {r:.2}"),
        );
    }
    let three = bratu_pn_count(3.0_f64, 9.0);
    v.require(
        three.count == 1 && (three.a_roots[0] - 9.0).abs() < 1e-6,
        format!("n=3 B=9: roots {:?}", three.a_roots),
    );
    v
}

fn curve_summary(v: &mut Verdict, name: &str, curve: &Curve) {
    let res = curve.max_reshoot_residual();
    v.require(
        res < RESHOOT_TOL,
        format!("{name}: {} points, re-shoot {res:.1e}", curve.points.len()),
    );
}

fn curve_four_seven() -> Verdict {
    let mut v = Verdict::default();
    let pr = common::power_sum(3.0, 0.0, &[4.0, 7.0]);
    let grid = log_grid(0.05, 1.99, 64);
    let start = Instant::now();
    let traced = single_thread(|| trace_curve(&pr, &grid, &Config::default()));
    let elapsed = start.elapsed();
    let curve = match traced {
        Ok(c) => c,
        Err(e) => {
            v.require(false, format!("trace failed: {e}"));
            return v;
        }
    };
    curve_summary(&mut v, "u^4+u^7", &curve);
    v.require(
        curve.folds.len() == 1,
        format!("{} fold(s)", curve.folds.len()),
    );
    let Some(fold) = curve.folds.first().copied() else {
        return v;
    };
    v.note(format!("fold a={:.6} lambda={:.4}", fold.a, fold.lambda));
    let big = count(&curve, 10.0 * fold.lambda);
    v.require(big.count == 2, format!("count at 10x fold = {}", big.count));
    match estimate_asymptote(&curve) {
        Ok(asym) => v.require(
            (asym.beta - 2.0).abs() <= 0.02,
            format!(
                "asymptote beta = {:.4} over {:.2} decades",
                asym.beta, asym.decades
            ),
        ),
        Err(e) => v.require(false, format!("asymptote: {e}")),
    }
    let first = curve.points[0];
    v.require(
        first.lambda > 1e3 * fold.lambda,
        format!("lambda({:.4}) = {:.3e}", first.a, first.lambda),
    );
    v.require(
        seconds(elapsed) < 120.0,
        format!("{:.2} s single-threaded", seconds(elapsed)),
    );
    v
}

fn contrast_three_seven() -> Verdict {
    let mut v = Verdict::default();
    let grid = log_grid(0.05, 4.0, 96);
    let cfg = Config::default();
    let one = trace_curve(&common::power_sum(3.0, 0.0, &[4.0, 7.0]), &grid, &cfg);
    let two = trace_curve(&common::power_sum(3.0, 0.0, &[3.0, 7.0]), &grid, &cfg);
    let (Ok(one), Ok(two)) = (one, two) else {
        v.require(false, "trace failed");
        return v;
    };
    curve_summary(&mut v, "u^3+u^7", &two);
    let (Some(f1), Some(f2)) = (one.folds.first(), two.folds.first()) else {
        v.require(false, "missing fold");
        return v;
    };
    let ratio = f1.lambda / f2.lambda;
    v.require(
        ratio >= 10.0,
        format!(
            "fold lambda {:.4} vs {:.4} (ratio {ratio:.2})",
            f2.lambda, f1.lambda
        ),
    );
    let top = two.max_a().unwrap_or(0.0);
    v.require(top > 2.0, format!("max u(0) = {top}"));
    let counts: Vec<String> = [2.0, 10.0, 100.0]
        .iter()
        .map(|m| format!("{m}x:{}", count(&two, m * f2.lambda).count))
        .collect();
    v.note(format!("counts {}", counts.join(" ")));
    let big = count(&two, 10.0 * f2.lambda);
    v.require(big.count == 2, format!("count at 10x fold = {}", big.count));
    v
}

fn small_a_scaling() -> Verdict {
    let mut v = Verdict::default();
    for (m, p, n, r_max) in [(4.0, 2.0, 3.0, 1e7), (9.0, 3.0, 4.0, 1e9)] {
        let q = radial_plap::model::lin_ni_q(m, p).unwrap();
        let pr = Problem::new(
            n,
            p,
            0.0,
            vec![NonlinearTerm::power(1.0, m), NonlinearTerm::power(1.0, q)],
        )
        .unwrap();
        let cfg = Config::default().with_r_max(r_max);
        let single = Problem::new(n, p, 0.0, vec![NonlinearTerm::power(1.0, m)]).unwrap();
        let Some(reference) = first_root(&single, 1.0, &cfg).rho() else {
            v.require(false, format!("M={m}: single power has no root"));
            continue;
        };
        let seq = log_grid(1e-3, 1e-1, 5);
        match small_a_scaling_check(&pr, &seq, &cfg) {
            Ok(rep) => {
                let err =
                    |s: Option<f64>| s.map_or(f64::INFINITY, |s| (s - reference).abs() / reference);
                let e_small = err(rep.rows[0].scaled);
                let e_large = err(rep.rows[seq.len() - 1].scaled);
                v.require(
                    e_small < 0.01 && e_small < e_large,
                    format!(
                        "M={m} p={p}: error {e_large:.1e} -> {e_small:.1e} (ref {reference:.6})"
                    ),
                );
            }
            Err(e) => v.require(false, format!("M={m}: {e}")),
        }
    }
    v
}

fn pohozaev_suite() -> Verdict {
    let mut v = Verdict::default();
    let mut rng = common::rng(8);
    let mut worst = 0.0_f64;
    for i in 0..10 {
        use rand::Rng;
        let alpha = if i % 2 == 0 { 0.0 } else { 1.0 };
        let n = rng.gen_range(3.0..5.0);
        let q1 = rng.gen_range(1.5..4.0);
        let q2 = q1 + rng.gen_range(0.5..4.0);
        let pr = Problem::laplacian(
            n,
            alpha,
            vec![
                NonlinearTerm::power(1.0, q1),
                NonlinearTerm::power(rng.gen_range(0.1..2.0), q2),
            ],
        )
        .unwrap();
        let a = rng.gen_range(0.3..2.0);
        let cfg = Config::default().with_r_max(30.0);
        match integrate_ivp(&pr, a, &cfg) {
            Ok(prof) => {
                let end = prof.r_end();
                let grid = log_grid(1e-3 * end, 0.95 * end, 60);
                match scan_profile(&pr, &prof, &grid) {
                    Ok(rows) => worst = rows.iter().fold(worst, |w, s| w.max(s.mismatch())),
                    Err(e) => v.require(false, format!("scan: {e}")),
                }
            }
            Err(e) => v.require(false, format!("shot: {e}")),
        }
    }
    v.require(
        worst < 1e-4,
        format!("10 shots, worst P' mismatch {worst:.1e}"),
    );

    let grid: Vec<f64> = (1..=200).map(|i| i as f64 * 0.05).collect();
    let ground_states = [
        ClosedFormFamily::weighted_critical(3.0, 0.0, 1.0).unwrap(),
        ClosedFormFamily::weighted_critical(4.0, 1.0, 0.7).unwrap(),
        ClosedFormFamily::plap_critical(3.0, 1.5, 1.0).unwrap(),
        ClosedFormFamily::plap_critical(4.0, 3.0, 0.8).unwrap(),
    ];
    let mut worst_p = 0.0_f64;
    for fam in &ground_states {
        let n = fam.problem().n();
        match scan_family(fam, &grid) {
            Ok(rows) => {
                worst_p = rows
                    .iter()
                    .fold(worst_p, |w, s| w.max(s.value.abs() / (1.0 + s.r.powf(n))))
            }
            Err(e) => v.require(false, format!("{}: {e}", fam.id())),
        }
    }
    v.require(
        worst_p < 1e-6,
        format!("F1/F6: max |P|/(1+r^n) = {worst_p:.1e}"),
    );

    for q in [4.0, 5.0, 6.0] {
        let pr = common::power_sum(3.0, 0.0, &[q]);
        let class = classify_power(3.0, 2.0, 0.0, q).unwrap();
        let prof = integrate_ivp(&pr, 1.0, &Config::default().with_r_max(10.0)).unwrap();
        let end = prof.r_end();
        let rows = scan_profile(&pr, &prof, &log_grid(1e-2 * end, 0.95 * end, 40)).unwrap();
        let ok = rows.iter().all(|s| {
            let scale = s.r.powi(2) * s.value.abs().clamp(1e-300, 1.0);
            match class {
                Criticality::Subcritical => s.pprime_formula > 0.0 && s.pprime_numeric > 0.0,
                Criticality::Supercritical => s.pprime_formula < 0.0 && s.pprime_numeric < 0.0,
                Criticality::Critical => s.pprime_formula.abs() <= 1e-12 * (1.0 + scale),
            }
        });
        v.require(ok, format!("q={q}: {class:?}"));
    }
    v
}

fn change_of_variables() -> Verdict {
    let mut v = Verdict::default();
    let mut rng = common::rng(9);
    let grid: Vec<f64> = (1..=200).map(|i| i as f64 * 0.005).collect();
    let cfg = Config::default().with_r_max(1.0).through_root();
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        use rand::Rng;
        let (n, p, alpha) = common::draw_geometry(&mut rng);
        let pr = Problem::new(n, p, alpha, common::smooth_terms(&mut rng)).unwrap();
        let a = rng.gen_range(0.2..1.5);
        let direct = integrate_ivp(&pr, a, &cfg);
        let via = solve_via_cov(&pr, a, &cfg);
        match (direct, via) {
            (Ok(d), Ok(t)) => {
                let dist = t
                    .sup_distance(&grid, |r| d.eval_u(r).unwrap_or(f64::NAN))
                    .unwrap_or(f64::INFINITY);
                worst = if dist.is_nan() {
                    f64::INFINITY
                } else {
                    worst.max(dist)
                };
            }
            (d, t) => v.require(
                false,
                format!(
                    "n={n:.2} p={p:.2} alpha={alpha:.2}: {:?} {:?}",
                    d.err(),
                    t.err()
                ),
            ),
        }
    }
    v.require(
        worst < 1e-6,
        format!("20 geometries, worst sup distance {worst:.1e}"),
    );

    let pr = Problem::laplacian(2.0, 0.5, vec![NonlinearTerm::exponential(1.0, 1.0)]).unwrap();
    let fam = ClosedFormFamily::weighted_bratu(0.5, 1.0).unwrap();
    let wide: Vec<f64> = (1..=500).map(|i| i as f64 * 0.02).collect();
    let d = solve_via_cov(&pr, 1.0, &Config::default().with_r_max(10.0).through_root())
        .ok()
        .and_then(|p| p.sup_distance(&wide, |r| fam.eval_u(r).unwrap()))
        .unwrap_or(f64::INFINITY);
    v.require(d < 1e-7, format!("F9(alpha=0.5) via cov {d:.1e}"));

    let mut worst_c = 0.0_f64;
    let mut worst_slope = 0.0_f64;
    for a in [-1.0, 0.0, 1.0] {
        let fam = ClosedFormFamily::coulomb_bratu(a).unwrap();
        match integrate_coulomb(
            fam.problem(),
            a,
            &Config::default().with_r_max(10.0).through_root(),
        ) {
            Ok(prof) => {
                let d = prof
                    .sup_distance(&wide, |r| fam.eval_u(r).unwrap())
                    .unwrap_or(f64::INFINITY);
                worst_c = worst_c.max(d);
                let slope = prof.eval(0.0).map_or(f64::NAN, |(_, du)| du);
                let err = (slope + a.exp()).abs();
                worst_slope = if err.is_nan() {
                    f64::INFINITY
                } else {
                    worst_slope.max(err)
                };
            }
            Err(e) => v.require(false, format!("Coulomb a={a}: {e}")),
        }
    }
    v.require(worst_c < 1e-8, format!("Coulomb vs F10 {worst_c:.1e}"));
    v.require(
        worst_slope < 1e-10,
        format!("u'(0) + e^a = {worst_slope:.1e}"),
    );
    v
}

fn cubic() -> Verdict {
    let mut v = Verdict::default();
    let pr = Problem::laplacian(
        3.0,
        1.0,
        vec![
            NonlinearTerm::power(-1.0, 3.0),
            NonlinearTerm::power(4.0, 2.0),
            NonlinearTerm::power(-3.0, 1.0),
        ],
    )
    .unwrap();
    let mut cfg = Config::default().with_tolerances(1e-13, 1e-16);
    cfg.positivity = PositivityCheck::AtStart;
    let mut grid: Vec<f64> = log_grid(1e-5, 1.0, 120)
        .into_iter()
        .map(|x| 3.0 - 2.0 * x)
        .filter(|&a| a > 1.0)
        .collect();
    grid.reverse();
    let opts = TraceOptions {
        route: Route::ChangeOfVariables,
        refine_rounds: 8,
        ..TraceOptions::default()
    };
    let curve = match trace_curve_with(&pr, &grid, &cfg, &opts) {
        Ok(c) => c,
        Err(e) => {
            v.require(false, format!("trace failed: {e}"));
            return v;
        }
    };
    curve_summary(&mut v, "cubic", &curve);
    v.require(
        curve.folds.len() == 1,
        format!("{} fold(s)", curve.folds.len()),
    );
    if let Some(fold) = curve.folds.first() {
        v.note(format!("fold a={:.6} lambda={:.4}", fold.a, fold.lambda));
        let c = count(&curve, 2.0 * fold.lambda);
        v.require(c.count == 2, format!("count at 2x fold = {}", c.count));
    }
    v
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form residuals", closed_form_residuals),
        ("critical ground state regression", aubin_talenti),
        ("planar Bratu counts", planar_bratu),
        ("p = n Bratu consistency", bratu_p_equals_n),
        ("u^4+u^7 curve", curve_four_seven),
        ("u^3+u^7 contrast", contrast_three_seven),
        ("small-a scaling", small_a_scaling),
        ("Pohozaev suite", pohozaev_suite),
        ("change of variables", change_of_variables),
        ("cubic curve", cubic),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let status = if verdict.pass() { "PASS" } else { "FAIL" };
        if !verdict.pass() {
            failures += 1;
        }
        let mut line = format!(
            "{status} {:>2} {name} [{:.1} s]: {}",
            i + 1,
            seconds(start.elapsed()),
            verdict.notes.join("; ")
        );
        if !verdict.pass() {
            line.push_str(&format!(" | failed: {}", verdict.failed.join("; ")));
        }
        println!("{line}");
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
