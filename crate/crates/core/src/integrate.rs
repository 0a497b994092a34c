//! Shooting integrator for the radial initial value problem
//! `u(0) = a`, `u'(0) = 0` (or `u'(0) = -λ f(a)` in Coulomb mode).
//!
//! The state is `(u, w)` with `w = r^(n-1) φ_p(u')`, so that
//!
//! ```text
//! w' = -λ r^(α+n-1) f(u),    u' = φ_p⁻¹(w / r^(n-1)).
//! ```
//!
//! Near the origin the leading series term `u ≈ a - c1 r^k`,
//! `k = (p+α)/(p-1)`, carries the solution to a small radius `r0`, after
//! which an adaptive Dormand–Prince pair takes over.

use serde::Serialize;
use thiserror::Error;

use crate::model::{phi_p_inv, weight, ModelError, RadialProblem};
use crate::ode::{step_factor, trial_step, DenseStep};
use crate::profile::{Dense, Event, Profile, ProfileSample, SeriesStart};
use crate::scalar::Scalar;

/// How the radius `r0` where the series start hands over is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum StartRule<T> {
    /// Keep the neglected second-order series term near `abs_tol / 10`.
    Auto,
    /// Use this radius (still capped at `r_max / 10`).
    Fixed(T),
}

/// Precondition applied by [`first_root`] before shooting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PositivityCheck {
    /// `f(u) > 0` on a uniform sample of `(0, a]`.
    Sampled,
    /// `f(a) > 0` only; used for sign-changing nonlinearities.
    AtStart,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct IvpConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub r_max: T,
    pub h0_policy: StartRule<T>,
    /// Cap on attempted steps (accepted and rejected).
    pub max_steps: usize,
    /// Stop at the first root. When false the root is still recorded as an
    /// event and integration continues to `r_max`.
    pub stop_at_root: bool,
    pub positivity: PositivityCheck,
    /// `u' > slope_tol` while `u > 0` counts as a turning point and stops
    /// integration.
    pub slope_tol: T,
}

impl<T: Scalar> Default for IvpConfig<T> {
    fn default() -> Self {
        IvpConfig {
            rel_tol: T::lit(1e-10),
            abs_tol: T::lit(1e-12),
            r_max: T::lit(1e3),
            h0_policy: StartRule::Auto,
            max_steps: 200_000,
            stop_at_root: true,
            positivity: PositivityCheck::Sampled,
            slope_tol: T::lit(1e-9),
        }
    }
}

impl<T: Scalar> IvpConfig<T> {
    pub fn with_r_max(mut self, r_max: T) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: T, abs_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn through_root(mut self) -> Self {
        self.stop_at_root = false;
        self
    }

    pub fn validate(&self) -> Result<(), IvpError> {
        let bad = |msg: String| Err(IvpError::Config(msg));
        if !(self.rel_tol > T::zero()) || !self.rel_tol.is_finite() {
            return bad(format!("rel_tol must be positive, got {}", self.rel_tol));
        }
        if !(self.abs_tol > T::zero()) || !self.abs_tol.is_finite() {
            return bad(format!("abs_tol must be positive, got {}", self.abs_tol));
        }
        if !(self.r_max > T::zero()) || !self.r_max.is_finite() {
            return bad(format!(
                "r_max must be positive and finite, got {}",
                self.r_max
            ));
        }
        if let StartRule::Fixed(r0) = self.h0_policy {
            if !(r0 > T::zero()) || !r0.is_finite() {
                return bad(format!("fixed start radius must be positive, got {r0}"));
            }
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive".to_string());
        }
        if !(self.slope_tol >= T::zero()) {
            return bad(format!(
                "slope_tol must be nonnegative, got {}",
                self.slope_tol
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IvpError {
    #[error("invalid integrator configuration: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("step limit of {limit} reached at r = {r}")]
    StepLimit { limit: usize, r: f64 },
    #[error("state overflow at r = {r}")]
    Overflow { r: f64 },
    #[error("step size underflow at r = {r}")]
    StepUnderflow { r: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Result of a first-root search.
#[derive(Debug, Clone, PartialEq)]
pub enum RootOutcome<T> {
    Root {
        rho: T,
        profile: Profile<T>,
    },
    /// No root on `[0, r_max]`. `r_max` is the radius actually reached, which
    /// is smaller than the configured one when a turning point stopped the
    /// integration (see [`Profile::slope_violation`]).
    NoRootUpTo {
        r_max: T,
        profile: Profile<T>,
    },
    Failed {
        reason: IvpError,
    },
}

impl<T: Scalar> RootOutcome<T> {
    pub fn rho(&self) -> Option<T> {
        match self {
            RootOutcome::Root { rho, .. } => Some(*rho),
            _ => None,
        }
    }

    pub fn profile(&self) -> Option<&Profile<T>> {
        match self {
            RootOutcome::Root { profile, .. } | RootOutcome::NoRootUpTo { profile, .. } => {
                Some(profile)
            }
            RootOutcome::Failed { .. } => None,
        }
    }

    pub fn is_root(&self) -> bool {
        matches!(self, RootOutcome::Root { .. })
    }
}

/// Integrates the (non-Coulomb) problem from `u(0) = a`, `u'(0) = 0`.
///
/// `a > 0` is required when the nonlinearity has power terms; purely
/// exponential problems accept any real `a`.
pub fn integrate_ivp<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> Result<Profile<T>, IvpError> {
    if problem.is_coulomb() {
        return Err(IvpError::Precondition(
            "Coulomb problems start with a nonzero slope; use integrate_coulomb".to_string(),
        ));
    }
    check_height(problem, a)?;
    config.validate()?;
    shoot(problem, a, config)
}

/// Integrates a Coulomb problem (`α = -1`, `n = 2`) from `u(0) = a` with
/// `u'(0) = -φ_p⁻¹(λ f(a))`. Nonlinearities other than `e^u` are
/// experimental.
pub fn integrate_coulomb<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> Result<Profile<T>, IvpError> {
    if !problem.is_coulomb() {
        return Err(IvpError::Precondition(
            "integrate_coulomb needs a Coulomb problem (alpha = -1)".to_string(),
        ));
    }
    if problem.n() != T::lit(2.0) {
        return Err(IvpError::Precondition(format!(
            "Coulomb initial condition is defined for n = 2, got n = {}",
            problem.n()
        )));
    }
    check_height(problem, a)?;
    config.validate()?;
    shoot(problem, a, config)
}

/// Shoots from `u(0) = a` and locates the first root `ρ(a)`.
///
/// The root is refined by bisection on the dense output. Integration always
/// stops at the root regardless of `config.stop_at_root`.
pub fn first_root<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> RootOutcome<T> {
    match try_first_root(problem, a, config) {
        Ok(outcome) => outcome,
        Err(reason) => RootOutcome::Failed { reason },
    }
}

fn try_first_root<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> Result<RootOutcome<T>, IvpError> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(IvpError::Precondition(format!(
            "first root search needs a > 0, got {a}"
        )));
    }
    match config.positivity {
        PositivityCheck::Sampled => {
            const SAMPLES: usize = 64;
            for j in 1..=SAMPLES {
                let u = a * T::from_count(j) / T::from_count(SAMPLES);
                let f = problem.eval_f(u)?;
                if !(f > T::zero()) {
                    return Err(IvpError::Precondition(format!(
                        "f(u) = {f} is not positive at u = {u} in (0, a]"
                    )));
                }
            }
        }
        PositivityCheck::AtStart => {
            let f = problem.eval_f(a)?;
            if !(f > T::zero()) {
                return Err(IvpError::Precondition(format!(
                    "f(a) = {f} is not positive at a = {a}"
                )));
            }
        }
        PositivityCheck::Off => {}
    }
    let mut cfg = *config;
    cfg.stop_at_root = true;
    let profile = if problem.is_coulomb() {
        integrate_coulomb(problem, a, &cfg)?
    } else {
        integrate_ivp(problem, a, &cfg)?
    };
    Ok(match profile.first_root() {
        Some(rho) => RootOutcome::Root { rho, profile },
        None => RootOutcome::NoRootUpTo {
            r_max: profile.r_end(),
            profile,
        },
    })
}

fn check_height<T: Scalar>(problem: &RadialProblem<T>, a: T) -> Result<(), IvpError> {
    if !a.is_finite() {
        return Err(IvpError::Precondition(format!(
            "u(0) must be finite, got {a}"
        )));
    }
    if problem.has_power_terms() && !(a > T::zero()) {
        return Err(IvpError::Precondition(format!(
            "u(0) must be positive for power nonlinearities, got {a}"
        )));
    }
    Ok(())
}

fn start_radius<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    fa: T,
    c1: T,
    k: T,
    config: &IvpConfig<T>,
) -> T {
    let cap = config.r_max / T::lit(10.0);
    let r0 = match config.h0_policy {
        StartRule::Fixed(r0) => r0,
        StartRule::Auto => {
            if c1 == T::zero() {
                T::lit(1e-6)
            } else {
                let dfa = problem.eval_df(a).unwrap_or_else(|_| T::zero());
                let delta = if dfa != T::zero() && fa != T::zero() {
                    (T::lit(0.1) * config.abs_tol * (problem.p() - T::one()) * (fa / dfa).abs())
                        .sqrt()
                } else {
                    T::lit(1e-6) * a.abs().max(T::one())
                };
                (delta / c1.abs()).powf(k.recip()).min(T::lit(1e-3))
            }
        }
    };
    r0.min(cap)
}

/// Bisection for a sign change of `g` on `[lo, hi]`, `g(lo) > 0 >= g(hi)`.
fn bisect<T: Scalar, G: Fn(T) -> T>(g: G, mut lo: T, mut hi: T) -> T {
    let tol = T::epsilon() * T::lit(4.0);
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol * hi.abs().max(T::one()) {
            break;
        }
        let v = g(mid);
        if v > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if g(lo).abs() < g(hi).abs() {
        lo
    } else {
        hi
    }
}

fn shoot<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> Result<Profile<T>, IvpError> {
    let one = T::one();
    let n = problem.n();
    let p = problem.p();
    let alpha = problem.alpha();
    let lambda = problem.lambda();
    let n1 = n - one;
    let src_pow = alpha + n1;
    let na = n + alpha;

    let fa = problem.eval_f(a)?;
    let k = (p + alpha) / (p - one);
    let c1 = phi_p_inv(lambda * fa / na, p) / k;
    let x0 = start_radius(problem, a, fa, c1, k, config);
    let start = SeriesStart { x0, a, c1, k };

    let rhs = |x: T, y: &[T; 2]| -> [T; 2] {
        let du = phi_p_inv(y[1] / x.powf(n1), p);
        let dw = -lambda * weight(x, src_pow) * problem.f_unchecked(y[0]);
        [du, dw]
    };
    let slope = |x: T, w: T| phi_p_inv(w / x.powf(n1), p);

    let u0 = a - c1 * x0.powf(k);
    let w0 = -lambda * fa * x0.powf(na) / na;
    let mut y = [u0, w0];
    let mut x = x0;

    let du_origin = if k == one { -c1 } else { T::zero() };
    let mut samples = vec![
        ProfileSample {
            r: T::zero(),
            u: a,
            uprime: du_origin,
        },
        ProfileSample {
            r: x0,
            u: u0,
            uprime: slope(x0, w0),
        },
    ];
    let mut events = Vec::new();
    let mut steps: Vec<DenseStep<T, 2>> = Vec::new();
    let mut end = config.r_max;
    let mut rooted = false;

    let finish = |steps, end, samples, events| Profile {
        samples,
        events,
        dense: Dense {
            start,
            steps,
            end,
            n_minus_1: n1,
            p,
        },
        chain: Vec::new(),
    };

    // A start that already climbs is a turning point at the origin.
    if u0 > T::zero() && slope(x0, w0) > config.slope_tol {
        events.push(Event::NonPositiveSlopeViolation {
            r: x0,
            u: u0,
            uprime: slope(x0, w0),
        });
        return Ok(finish(steps, x0, samples, events));
    }

    let mut k1 = rhs(x, &y);
    let mut h = x0;
    let mut rejected_last = false;
    let mut attempts = 0usize;

    while x < config.r_max {
        if attempts >= config.max_steps {
            return Err(IvpError::StepLimit {
                limit: config.max_steps,
                r: x.to_f64_lossy(),
            });
        }
        attempts += 1;

        let last = h >= config.r_max - x;
        let h_try = if last { config.r_max - x } else { h };
        let trial = trial_step(&rhs, x, &y, &k1, h_try, config.rel_tol, config.abs_tol);
        let finite = trial
            .y1
            .iter()
            .chain(trial.k7.iter())
            .all(|v| v.is_finite());
        if !(trial.err <= one) || !finite {
            let factor = if finite {
                step_factor(trial.err, false)
            } else {
                T::lit(0.1)
            };
            h = h_try * factor;
            rejected_last = true;
            if h <= x * T::epsilon() * T::lit(16.0) {
                return Err(if finite {
                    IvpError::StepUnderflow {
                        r: x.to_f64_lossy(),
                    }
                } else {
                    IvpError::Overflow {
                        r: x.to_f64_lossy(),
                    }
                });
            }
            continue;
        }

        let step = trial.dense(x, &y, h_try);
        let x1 = if last { config.r_max } else { x + h_try };
        let y1 = trial.y1;

        if !rooted && y[0] > T::zero() && y1[0] <= T::zero() {
            let rho = if y1[0] == T::zero() {
                x1
            } else {
                bisect(|r| step.eval(r)[0], x, x1)
            };
            rooted = true;
            events.push(Event::FirstRoot { rho });
            if config.stop_at_root {
                let [u, w] = step.eval(rho);
                steps.push(step);
                samples.push(ProfileSample {
                    r: rho,
                    u,
                    uprime: slope(rho, w),
                });
                end = rho;
                return Ok(finish(steps, end, samples, events));
            }
        }

        if y1[0] > T::zero() && slope(x1, y1[1]) > config.slope_tol {
            let rc = if y[1] > T::zero() {
                x
            } else {
                bisect(|r| -step.eval(r)[1], x, x1)
            };
            let [u, w] = step.eval(rc);
            let du = slope(rc, w);
            steps.push(step);
            samples.push(ProfileSample {
                r: rc,
                u,
                uprime: du,
            });
            events.push(Event::NonPositiveSlopeViolation {
                r: rc,
                u,
                uprime: du,
            });
            end = rc;
            return Ok(finish(steps, end, samples, events));
        }

        steps.push(step);
        h = h_try * step_factor(trial.err, !rejected_last);
        rejected_last = false;
        x = x1;
        y = y1;
        k1 = trial.k7;
        samples.push(ProfileSample {
            r: x,
            u: y[0],
            uprime: slope(x, y[1]),
        });
    }

    events.push(Event::ReachedRmax { r: x });
    end = end.min(x);
    Ok(finish(steps, end, samples, events))
}
