//! Dirichlet solution curves on the unit ball by shooting and scaling.
//!
//! If the `λ = 1` shot from `u(0) = a` first vanishes at `ρ(a)`, then
//! `v(s) = u(ρ s)` solves the Dirichlet problem on `[0, 1]` with multiplier
//! `λ = ρ^(p+α)`. Sweeping `a` therefore traces the curve `(λ(a), a)`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::integrate::{
    first_root, integrate_coulomb, integrate_ivp, IvpConfig, IvpError, RootOutcome,
};
use crate::model::{lin_ni_q, NonlinearTerm, RadialProblem};
use crate::scalar::Scalar;
use crate::transform::{first_root_via_cov, solve_via_cov};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("invalid a-grid: {0}")]
    InvalidGrid(String),
    #[error("upper branch too short for an asymptote fit: {points} points spanning {decades:.2} decades of lambda")]
    InsufficientBranch { points: usize, decades: f64 },
    #[error("curve has no points")]
    EmptyCurve,
    #[error("expected f = u^M + u^Q with Q = (Mp-p+1)/(p-1): {0}")]
    NotLinNiPair(String),
    #[error(transparent)]
    Ivp(#[from] IvpError),
}

/// `λ = ρ^(p+α)`.
pub fn lambda_from_rho<T: Scalar>(rho: T, p: T, alpha: T) -> T {
    rho.powf(p + alpha)
}

/// How each shot is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    Direct,
    /// Through the autonomous problem in `t = r^κ/κ`.
    ChangeOfVariables,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint<T> {
    pub a: T,
    pub rho: T,
    pub lambda: T,
    /// `|u(1)|` of the `λ`-scaled Dirichlet re-shoot (NaN if it failed).
    pub reshoot_residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FoldKind {
    Minimum,
    Maximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fold<T> {
    pub a: T,
    pub lambda: T,
    pub kind: FoldKind,
    /// Index of the grid point where the discrete slope changes sign.
    pub grid_index: usize,
    /// False when refinement failed and `(a, lambda)` is the grid point.
    pub refined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptote<T> {
    /// Extrapolated height `β` of the upper branch.
    pub beta: T,
    pub c: T,
    pub gamma: T,
    /// RMS residual of `a ≈ β - c λ^(-γ)` over the fitted points.
    pub rms_residual: T,
    pub points: usize,
    pub decades: T,
}

/// A grid value of `a` that produced no curve point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint<T> {
    pub a: T,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceOptions {
    pub route: Route,
    /// Rounds of midpoint insertion where `|Δλ|/λ > refine_threshold` and
    /// at the edges of the range of `a` that produces roots.
    pub refine_rounds: usize,
    pub refine_threshold: f64,
    pub reshoot: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            route: Route::Direct,
            refine_rounds: 3,
            refine_threshold: 0.1,
            reshoot: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionCurve<T> {
    pub points: Vec<CurvePoint<T>>,
    pub folds: Vec<Fold<T>>,
    pub asymptote: Option<Asymptote<T>>,
    /// Leading grid values without a root, and per-point failures.
    pub skipped: Vec<SkippedPoint<T>>,
    /// First `a` after the curve start whose shot had no root; the sweep
    /// stops there.
    pub truncated_at: Option<T>,
    pub problem: RadialProblem<T>,
    pub config: IvpConfig<T>,
    pub route: Route,
}

#[derive(Debug, Clone)]
enum Shot<T> {
    Root { rho: T, lambda: T },
    NoRoot { reach: T, turning: bool },
    Failed(String),
}

fn shoot<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
    route: Route,
) -> Shot<T> {
    let outcome = match route {
        Route::Direct => first_root(problem, a, config),
        Route::ChangeOfVariables => first_root_via_cov(problem, a, config),
    };
    match outcome {
        RootOutcome::Root { rho, .. } => Shot::Root {
            rho,
            lambda: problem.lambda() * lambda_from_rho(rho, problem.p(), problem.alpha()),
        },
        RootOutcome::NoRootUpTo { r_max, profile } => Shot::NoRoot {
            reach: r_max,
            turning: profile.slope_violation().is_some(),
        },
        RootOutcome::Failed { reason } => Shot::Failed(reason.to_string()),
    }
}

fn lambda_at<T: Scalar>(curve: &SolutionCurve<T>, a: T) -> Option<T> {
    match shoot(&curve.problem, a, &curve.config, curve.route) {
        Shot::Root { lambda, .. } => Some(lambda),
        _ => None,
    }
}

/// `|u(1)|` for the Dirichlet problem with multiplier `lambda` on the unit
/// ball, shot from `u(0) = a`.
pub fn reshoot_residual<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    lambda: T,
    config: &IvpConfig<T>,
    route: Route,
) -> Result<T, CurveError> {
    let scaled = problem
        .with_lambda(lambda)
        .map_err(|e| CurveError::Ivp(IvpError::Model(e)))?;
    let mut cfg = config.with_r_max(T::one()).through_root();
    cfg.positivity = crate::integrate::PositivityCheck::Off;
    let profile = match route {
        Route::Direct if scaled.is_coulomb() => integrate_coulomb(&scaled, a, &cfg)?,
        Route::Direct => integrate_ivp(&scaled, a, &cfg)?,
        Route::ChangeOfVariables => solve_via_cov(&scaled, a, &cfg).map_err(|e| match e {
            crate::transform::TransformError::Ivp(e) => CurveError::Ivp(e),
            other => CurveError::Ivp(IvpError::Precondition(other.to_string())),
        })?,
    };
    profile.eval_u(T::one()).map(|u| u.abs()).ok_or_else(|| {
        CurveError::Ivp(IvpError::Precondition(
            "re-shoot stopped before r = 1".into(),
        ))
    })
}

struct Sweep<T> {
    points: Vec<(T, T, T)>,
    skipped: Vec<SkippedPoint<T>>,
    /// Last rootless `a` before the first curve point.
    lead_edge: Option<T>,
    truncated_at: Option<T>,
}

fn collect<T: Scalar>(entries: &[(T, Shot<T>)]) -> Sweep<T> {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    let mut lead_edge = None;
    let mut truncated_at = None;
    for (a, shot) in entries {
        match shot {
            Shot::Root { rho, lambda } => points.push((*a, *rho, *lambda)),
            Shot::NoRoot { reach, turning } => {
                if points.is_empty() {
                    let why = if *turning {
                        format!("turning point at r = {reach}")
                    } else {
                        format!("no root up to r = {reach}")
                    };
                    skipped.push(SkippedPoint { a: *a, reason: why });
                    lead_edge = Some(*a);
                } else {
                    truncated_at = Some(*a);
                    break;
                }
            }
            Shot::Failed(reason) => skipped.push(SkippedPoint {
                a: *a,
                reason: reason.clone(),
            }),
        }
    }
    Sweep {
        points,
        skipped,
        lead_edge,
        truncated_at,
    }
}

/// Traces the curve with default [`TraceOptions`].
pub fn trace_curve<T: Scalar>(
    problem: &RadialProblem<T>,
    a_grid: &[T],
    config: &IvpConfig<T>,
) -> Result<SolutionCurve<T>, CurveError> {
    trace_curve_with(problem, a_grid, config, &TraceOptions::default())
}

pub fn trace_curve_with<T: Scalar>(
    problem: &RadialProblem<T>,
    a_grid: &[T],
    config: &IvpConfig<T>,
    options: &TraceOptions,
) -> Result<SolutionCurve<T>, CurveError> {
    if a_grid.is_empty() {
        return Err(CurveError::InvalidGrid("grid is empty".into()));
    }
    if a_grid.iter().any(|a| !(*a > T::zero()) || !a.is_finite()) {
        return Err(CurveError::InvalidGrid(
            "grid values must be positive and finite".into(),
        ));
    }
    if a_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CurveError::InvalidGrid(
            "grid must be strictly increasing".into(),
        ));
    }
    config.validate()?;
    let route = options.route;
    let shoot_all = |grid: &[T]| -> Vec<(T, Shot<T>)> {
        grid.par_iter()
            .map(|&a| (a, shoot(problem, a, config, route)))
            .collect()
    };

    let mut entries = shoot_all(a_grid);
    let threshold = T::lit(options.refine_threshold);
    for _ in 0..options.refine_rounds {
        let sweep = collect(&entries);
        let mut pairs: Vec<(T, T)> = sweep
            .points
            .windows(2)
            .filter(|w| {
                let (l0, l1) = (w[0].2, w[1].2);
                (l1 - l0).abs() > threshold * l0.min(l1)
            })
            .map(|w| (w[0].0, w[1].0))
            .collect();
        // λ is unbounded where shots stop finding roots.
        if let (Some(edge), Some(first)) = (sweep.lead_edge, sweep.points.first()) {
            pairs.push((edge, first.0));
        }
        if let (Some(last), Some(edge)) = (sweep.points.last(), sweep.truncated_at) {
            pairs.push((last.0, edge));
        }
        let mids: Vec<T> = pairs
            .into_iter()
            .map(|(lo, hi)| (lo * hi).sqrt())
            .filter(|m| *m > T::zero())
            .collect();
        if mids.is_empty() {
            break;
        }
        entries.extend(shoot_all(&mids));
        entries.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite grid"));
        entries.dedup_by(|x, y| x.0 == y.0);
    }

    let sweep = collect(&entries);
    let points: Vec<CurvePoint<T>> = sweep
        .points
        .par_iter()
        .map(|&(a, rho, lambda)| {
            let reshoot_residual = if options.reshoot {
                reshoot_residual(problem, a, lambda, config, route).unwrap_or_else(|_| T::nan())
            } else {
                T::nan()
            };
            CurvePoint {
                a,
                rho,
                lambda,
                reshoot_residual,
            }
        })
        .collect();

    let mut curve = SolutionCurve {
        points,
        folds: Vec::new(),
        asymptote: None,
        skipped: sweep.skipped,
        truncated_at: sweep.truncated_at,
        problem: problem.clone(),
        config: *config,
        route,
    };
    curve.folds = find_folds(&curve);
    curve.asymptote = estimate_asymptote(&curve).ok();
    Ok(curve)
}

impl<T: Scalar> SolutionCurve<T> {
    /// Largest re-shoot residual (NaN entries count as infinite).
    pub fn max_reshoot_residual(&self) -> T {
        self.points.iter().fold(T::zero(), |acc, p| {
            if p.reshoot_residual.is_nan() {
                T::infinity()
            } else {
                acc.max(p.reshoot_residual)
            }
        })
    }

    pub fn max_a(&self) -> Option<T> {
        self.points.last().map(|p| p.a)
    }

    pub fn min_lambda(&self) -> Option<T> {
        self.points.iter().map(|p| p.lambda).reduce(|x, y| x.min(y))
    }
}

/// Brent's derivative-free minimizer on `[lo, hi]` starting from `mid`.
fn brent_min<T: Scalar, G: Fn(T) -> Option<T>>(
    g: G,
    lo: T,
    mid: T,
    hi: T,
    fmid: T,
) -> Option<(T, T)> {
    let golden = T::lit(0.381_966_011_250_105_1);
    let rel = T::lit(1e-7);
    let (mut a, mut b) = (lo, hi);
    let (mut x, mut w, mut v) = (mid, mid, mid);
    let (mut fx, mut fw, mut fv) = (fmid, fmid, fmid);
    let (mut d, mut e) = (T::zero(), T::zero());
    let half = T::lit(0.5);
    for _ in 0..100 {
        let xm = half * (a + b);
        let tol1 = rel * x.abs() + T::lit(1e-12);
        let tol2 = T::lit(2.0) * tol1;
        if (x - xm).abs() <= tol2 - half * (b - a) {
            break;
        }
        let mut golden_step = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = T::lit(2.0) * (q - r);
            if q > T::zero() {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (half * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if xm >= x { tol1 } else { -tol1 };
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x >= xm { a - x } else { b - x };
            d = golden * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > T::zero() {
            x + tol1
        } else {
            x - tol1
        };
        let fu = g(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Some((x, fx))
}

fn find_folds<T: Scalar>(curve: &SolutionCurve<T>) -> Vec<Fold<T>> {
    let pts = &curve.points;
    let mut folds = Vec::new();
    for i in 1..pts.len().saturating_sub(1) {
        let d0 = pts[i].lambda - pts[i - 1].lambda;
        let d1 = pts[i + 1].lambda - pts[i].lambda;
        let kind = if d0 < T::zero() && d1 > T::zero() {
            FoldKind::Minimum
        } else if d0 > T::zero() && d1 < T::zero() {
            FoldKind::Maximum
        } else {
            continue;
        };
        let sign = match kind {
            FoldKind::Minimum => T::one(),
            FoldKind::Maximum => -T::one(),
        };
        let refined = brent_min(
            |a| lambda_at(curve, a).map(|l| sign * l),
            pts[i - 1].a,
            pts[i].a,
            pts[i + 1].a,
            sign * pts[i].lambda,
        );
        folds.push(match refined {
            Some((a, sl)) => Fold {
                a,
                lambda: sign * sl,
                kind,
                grid_index: i,
                refined: true,
            },
            None => Fold {
                a: pts[i].a,
                lambda: pts[i].lambda,
                kind,
                grid_index: i,
                refined: false,
            },
        });
    }
    folds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrossingKind {
    Transversal,
    /// `λ` equals a fold value (or a grid end) within `1e-6` relative.
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing<T> {
    pub a: T,
    pub lambda: T,
    pub kind: CrossingKind,
    /// The bracket touches the first or last grid point, so more crossings
    /// may exist beyond the grid.
    pub at_grid_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionCount<T> {
    pub lambda: T,
    pub count: usize,
    pub crossings: Vec<Crossing<T>>,
}

#[derive(Clone, Copy)]
struct Node<T> {
    a: T,
    lambda: T,
    boundary: bool,
    fold: bool,
}

/// Counts solutions of `λ(a) = lambda_query` along the traced curve.
///
/// The curve is cut into monotone pieces at the refined folds; each piece
/// whose end values straddle the query contributes one crossing, located by
/// bisection in `a` (re-shooting) to `1e-8`.
pub fn count_solutions_at<T: Scalar>(
    curve: &SolutionCurve<T>,
    lambda_query: T,
) -> SolutionCount<T> {
    let pts = &curve.points;
    let mut out = SolutionCount {
        lambda: lambda_query,
        count: 0,
        crossings: Vec::new(),
    };
    if pts.is_empty() {
        return out;
    }
    let last = pts.len() - 1;
    let mut nodes = vec![Node {
        a: pts[0].a,
        lambda: pts[0].lambda,
        boundary: true,
        fold: false,
    }];
    for f in &curve.folds {
        nodes.push(Node {
            a: f.a,
            lambda: f.lambda,
            boundary: false,
            fold: true,
        });
    }
    if last > 0 {
        nodes.push(Node {
            a: pts[last].a,
            lambda: pts[last].lambda,
            boundary: true,
            fold: false,
        });
    }
    let tol = T::lit(1e-6) * lambda_query.abs();
    let side = |l: T| -> i8 {
        if (l - lambda_query).abs() <= tol {
            0
        } else if l > lambda_query {
            1
        } else {
            -1
        }
    };

    for node in &nodes {
        if side(node.lambda) == 0 {
            out.crossings.push(Crossing {
                a: node.a,
                lambda: node.lambda,
                kind: if node.fold {
                    CrossingKind::Tangent
                } else {
                    CrossingKind::Transversal
                },
                at_grid_boundary: node.boundary,
            });
        }
    }
    for pair in nodes.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let (s0, s1) = (side(lo.lambda), side(hi.lambda));
        if s0 == 0 || s1 == 0 || s0 == s1 {
            continue;
        }
        // Narrow with grid points strictly inside the piece.
        let mut bracket = (lo.a, lo.lambda, hi.a, hi.lambda);
        let inner: Vec<&CurvePoint<T>> = pts.iter().filter(|p| p.a > lo.a && p.a < hi.a).collect();
        let mut prev = (lo.a, lo.lambda);
        for p in inner
            .iter()
            .map(|p| (p.a, p.lambda))
            .chain(std::iter::once((hi.a, hi.lambda)))
        {
            if side(prev.1) != side(p.1) && side(p.1) != 0 {
                bracket = (prev.0, prev.1, p.0, p.1);
                break;
            }
            prev = p;
        }
        let touches_boundary =
            (lo.boundary && bracket.0 == lo.a) || (hi.boundary && bracket.2 == hi.a);
        let (a, lambda) = bisect_level(curve, bracket, lambda_query);
        out.crossings.push(Crossing {
            a,
            lambda,
            kind: CrossingKind::Transversal,
            at_grid_boundary: touches_boundary,
        });
    }
    out.crossings
        .sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(std::cmp::Ordering::Equal));
    out.count = out.crossings.len();
    out
}

fn bisect_level<T: Scalar>(curve: &SolutionCurve<T>, bracket: (T, T, T, T), level: T) -> (T, T) {
    let (mut a0, l0, mut a1, l1) = bracket;
    let up = l0 < level;
    let (mut best_a, mut best_l) = if (l0 - level).abs() < (l1 - level).abs() {
        (a0, l0)
    } else {
        (a1, l1)
    };
    for _ in 0..80 {
        if (a1 - a0).abs() <= T::lit(1e-8) * a0.abs().max(T::one()) {
            break;
        }
        let mid = T::lit(0.5) * (a0 + a1);
        let Some(l) = lambda_at(curve, mid) else {
            break;
        };
        if (l - level).abs() < (best_l - level).abs() {
            best_a = mid;
            best_l = l;
        }
        if (l < level) == up {
            a0 = mid;
        } else {
            a1 = mid;
        }
    }
    (best_a, best_l)
}

fn fit_for_gamma<T: Scalar>(pts: &[CurvePoint<T>], gamma: T) -> (T, T, T) {
    let n = T::from_count(pts.len());
    let xs: Vec<T> = pts.iter().map(|p| p.lambda.powf(-gamma)).collect();
    let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let my = pts.iter().fold(T::zero(), |s, p| s + p.a) / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (x, p) in xs.iter().zip(pts) {
        sxx = sxx + (*x - mx) * (*x - mx);
        sxy = sxy + (*x - mx) * (p.a - my);
    }
    let slope = if sxx > T::zero() {
        sxy / sxx
    } else {
        T::zero()
    };
    let beta = my - slope * mx;
    let rss = xs.iter().zip(pts).fold(T::zero(), |s, (x, p)| {
        let r = p.a - (beta + slope * *x);
        s + r * r
    });
    (beta, -slope, rss)
}

/// Fits `a = β - c λ^(-γ)` on the terminal run where `λ` increases with `a`.
///
/// `γ` is found by golden-section search on `[0.05, 4]`, with `β` and `c` by
/// linear least squares for each trial `γ`.
pub fn estimate_asymptote<T: Scalar>(curve: &SolutionCurve<T>) -> Result<Asymptote<T>, CurveError> {
    let pts = &curve.points;
    if pts.is_empty() {
        return Err(CurveError::EmptyCurve);
    }
    let mut j = pts.len() - 1;
    while j > 0 && pts[j - 1].lambda < pts[j].lambda {
        j -= 1;
    }
    let run = &pts[j..];
    let decades = if run.len() > 1 {
        (run[run.len() - 1].lambda / run[0].lambda).log10()
    } else {
        T::zero()
    };
    if run.len() < 5 || !(decades >= T::lit(2.0)) {
        return Err(CurveError::InsufficientBranch {
            points: run.len(),
            decades: decades.to_f64_lossy(),
        });
    }
    let rss = |g: T| fit_for_gamma(run, g).2;
    let invphi = T::lit(0.618_033_988_749_894_9);
    let (mut lo, mut hi) = (T::lit(0.05), T::lit(4.0));
    let mut x1 = hi - invphi * (hi - lo);
    let mut x2 = lo + invphi * (hi - lo);
    let (mut f1, mut f2) = (rss(x1), rss(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = rss(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = rss(x2);
        }
    }
    let gamma = T::lit(0.5) * (lo + hi);
    let (beta, c, rss) = fit_for_gamma(run, gamma);
    Ok(Asymptote {
        beta,
        c,
        gamma,
        rms_residual: (rss / T::from_count(run.len())).sqrt(),
        points: run.len(),
        decades,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BratuCount<T> {
    pub count: usize,
    pub a_roots: Vec<T>,
    pub b_critical: T,
}

/// Solutions of the planar Bratu problem `Δu + B e^u = 0` on the unit disk:
/// the positive roots of `a² - 2√2 a + B = 0`.
pub fn bratu2d_count<T: Scalar>(b: T) -> BratuCount<T> {
    let two = T::lit(2.0);
    let s2 = two.sqrt();
    let a_roots = if !(b > T::zero()) || b > two {
        Vec::new()
    } else if b == two {
        vec![s2]
    } else {
        let d = (two - b).sqrt();
        vec![s2 - d, s2 + d]
    };
    BratuCount {
        count: a_roots.len(),
        a_roots,
        b_critical: two,
    }
}

/// Solutions of the `p = n` Bratu problem on the unit ball: roots of
/// `((n-1)/n) a^(n/(n-1)) + B = n a`. The tangency is at `a* = n^(n-1)`,
/// giving `B(n) = n^(n-1)`.
pub fn bratu_pn_count<T: Scalar>(n: T, b: T) -> BratuCount<T> {
    let one = T::one();
    let e = n / (n - one);
    let coef = (n - one) / n;
    let a_star = n.powf(n - one);
    let b_critical = a_star;
    if !(n > one) || !(b > T::zero()) {
        return BratuCount {
            count: 0,
            a_roots: Vec::new(),
            b_critical,
        };
    }
    let g = |a: T| n * a - coef * a.powf(e) - b;
    let dg = |a: T| n - a.powf(e - one);
    let gap = b_critical - b;
    if gap.abs() <= T::lit(1e-14) * b_critical {
        return BratuCount {
            count: 1,
            a_roots: vec![a_star],
            b_critical,
        };
    }
    if gap < T::zero() {
        return BratuCount {
            count: 0,
            a_roots: Vec::new(),
            b_critical,
        };
    }
    // g is concave with g(0) = -B < 0 and g(a*) = B(n) - B > 0.
    let mut hi = a_star * T::lit(2.0);
    while g(hi) > T::zero() {
        hi = hi * T::lit(2.0);
    }
    let a_roots = vec![
        safeguarded_newton(&g, &dg, T::zero(), a_star),
        safeguarded_newton(&g, &dg, a_star, hi),
    ];
    BratuCount {
        count: 2,
        a_roots,
        b_critical,
    }
}

fn safeguarded_newton<T: Scalar, G: Fn(T) -> T, D: Fn(T) -> T>(g: &G, dg: &D, lo: T, hi: T) -> T {
    let (mut lo, mut hi) = (lo, hi);
    let increasing = g(lo) < g(hi);
    let mut x = T::lit(0.5) * (lo + hi);
    for _ in 0..200 {
        let gx = g(x);
        if gx == T::zero() {
            return x;
        }
        if (gx < T::zero()) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let d = dg(x);
        let newton = x - gx / d;
        let next = if d != T::zero() && newton > lo && newton < hi {
            newton
        } else {
            T::lit(0.5) * (lo + hi)
        };
        if (next - x).abs() <= T::epsilon() * T::lit(4.0) * x.abs().max(T::one()) {
            return next;
        }
        x = next;
    }
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingRow<T> {
    pub a: T,
    /// `a^(Q-M)`.
    pub epsilon: T,
    pub rho: Option<T>,
    /// `ρ(a) a^((M-p+1)/(p+α))`.
    pub scaled: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport<T> {
    pub m: T,
    pub q: T,
    pub rows: Vec<ScalingRow<T>>,
    /// First root of the single-power problem `w^M`, `w(0) = 1`.
    pub reference: Option<T>,
    /// Linear extrapolation in `ε` of the two smallest-`a` rows.
    pub limit_estimate: Option<T>,
    /// `|scaled - reference| / reference` at the smallest `a`.
    pub relative_error: Option<T>,
}

/// Rescaling check for `f = u^M + u^Q`: `ρ(a) a^((M-p+1)/(p+α))` should tend
/// to the first root of the single-power problem as `a → 0`.
pub fn small_a_scaling_check<T: Scalar>(
    problem: &RadialProblem<T>,
    a_seq: &[T],
    config: &IvpConfig<T>,
) -> Result<ScalingReport<T>, CurveError> {
    let mut powers: Vec<(T, T)> = problem
        .terms()
        .iter()
        .map(|t| match *t {
            NonlinearTerm::Power { coeff, exponent } => Ok((coeff, exponent)),
            _ => Err(CurveError::NotLinNiPair("exponential term present".into())),
        })
        .collect::<Result<_, _>>()?;
    if powers.len() != 2 || powers.iter().any(|(c, _)| *c != T::one()) {
        return Err(CurveError::NotLinNiPair(
            "need exactly two unit-coefficient power terms".into(),
        ));
    }
    powers.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal));
    let (m, q) = (powers[0].1, powers[1].1);
    let p = problem.p();
    let expected = lin_ni_q(m, p).map_err(|e| CurveError::NotLinNiPair(e.to_string()))?;
    if (expected - q).abs() > T::lit(1e-12) * q {
        return Err(CurveError::NotLinNiPair(format!(
            "Q = {q} but M = {m}, p = {p} pairs with {expected}"
        )));
    }
    let single = RadialProblem::new(
        problem.n(),
        p,
        problem.alpha(),
        vec![NonlinearTerm::power(T::one(), m)],
    )
    .map_err(|e| CurveError::Ivp(IvpError::Model(e)))?;
    let reference = first_root(&single, T::one(), config).rho();
    let expo = (m - p + T::one()) / (p + problem.alpha());
    let rows: Vec<ScalingRow<T>> = a_seq
        .par_iter()
        .map(|&a| {
            let rho = first_root(problem, a, config).rho();
            ScalingRow {
                a,
                epsilon: a.powf(q - m),
                rho,
                scaled: rho.map(|r| r * a.powf(expo)),
            }
        })
        .collect();
    let mut ordered: Vec<&ScalingRow<T>> = rows.iter().filter(|r| r.scaled.is_some()).collect();
    ordered.sort_by(|x, y| y.a.partial_cmp(&x.a).unwrap_or(std::cmp::Ordering::Equal));
    let limit_estimate = match ordered.as_slice() {
        [] => None,
        [only] => only.scaled,
        [.., r1, r2] => {
            let (s1, s2) = (r1.scaled.unwrap(), r2.scaled.unwrap());
            if r1.epsilon != r2.epsilon {
                Some(s2 - r2.epsilon * (s1 - s2) / (r1.epsilon - r2.epsilon))
            } else {
                Some(s2)
            }
        }
    };
    let relative_error = match (ordered.last(), reference) {
        (Some(r), Some(reference)) => r.scaled.map(|s| (s - reference).abs() / reference),
        _ => None,
    };
    Ok(ScalingReport {
        m,
        q,
        rows,
        reference,
        limit_estimate,
        relative_error,
    })
}
