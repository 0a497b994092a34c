//! Radial solutions of `Δ_p u + λ r^α f(u) = 0` on balls and in `R^n`.
//!
//! - [`model`]: problem definition (`n`, `p`, `α`, `λ`, `f`) and JSON specs.
//! - [`closedform`]: catalog of explicit solutions with residual checks.
//! - [`integrate`]: shooting from `u(0) = a` with first-root detection.
//! - [`curves`]: `(λ, u(0))` solution curves by shoot-and-scale, folds,
//!   solution counts and asymptotes.
//! - [`pohozaev`]: Pohozaev function and critical-exponent classification.
//! - [`transform`]: change of variables removing the weight `r^α`.
//!
//! Everything is generic over [`Scalar`] (`f32`/`f64`); the aliases below fix
//! `f64`.
//!
//! ```
//! use radial_plap::{first_root, IvpConfig, NonlinearTerm, Problem};
//!
//! // u'' + (2/r) u' + u^5 = 0 from u(0) = √3 never reaches zero.
//! let pr = Problem::laplacian(3.0, 0.0, vec![NonlinearTerm::power(1.0, 5.0)]).unwrap();
//! let out = first_root(&pr, 3.0_f64.sqrt(), &IvpConfig::default());
//! assert!(!out.is_root());
//! ```

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closedform;
pub mod curves;
pub mod integrate;
pub mod model;
pub mod ode;
pub mod pohozaev;
pub mod profile;
pub mod scalar;
pub mod transform;

pub use closedform::{
    log_grid, make_family, residual_max, BratuCoefficient, ClosedFormFamily, FamilyError, FamilyId,
};
pub use curves::{
    bratu2d_count, bratu_pn_count, count_solutions_at, estimate_asymptote, lambda_from_rho,
    reshoot_residual, small_a_scaling_check, trace_curve, trace_curve_with, CurveError, FoldKind,
    Route, SolutionCurve, TraceOptions,
};
pub use integrate::{
    first_root, integrate_coulomb, integrate_ivp, IvpConfig, IvpError, PositivityCheck,
    RootOutcome, StartRule,
};
pub use model::{phi_p, phi_p_inv, ModelError, NonlinearTerm, RadialProblem};
pub use pohozaev::{classify_power, pohozaev_p, pohozaev_pprime, Criticality, PohozaevError};
pub use profile::{Event, Profile};
pub use scalar::Scalar;
pub use transform::{cov_for, first_root_via_cov, make_cov, solve_via_cov, CovMap, TransformError};

pub type Problem = RadialProblem<f64>;
pub type Term = NonlinearTerm<f64>;
pub type Config = IvpConfig<f64>;
pub type Family = ClosedFormFamily<f64>;
pub type Curve = SolutionCurve<f64>;
pub type Shot = RootOutcome<f64>;
pub type Solution = Profile<f64>;
pub type Cov = CovMap<f64>;
