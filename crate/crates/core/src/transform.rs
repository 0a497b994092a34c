//! Change of variables `t = r^κ/κ`, `κ = 1 + α/p`, which turns the weighted
//! radial problem
//!
//! ```text
//! (r^(n-1) φ_p(u_r))_r + λ r^(α+n-1) f(u) = 0
//! ```
//!
//! into the autonomous problem `(t^m φ_p(u_t))_t + λ t^m f(u) = 0` with
//! effective dimension `m + 1`, `m = (n-1+α-α/p)/κ`. Derivatives transform as
//! `u_r = u_t r^(α/p)`; `u` itself is unchanged pointwise.

use serde::Serialize;
use thiserror::Error;

use crate::integrate::{first_root, integrate_ivp, IvpConfig, IvpError, RootOutcome};
use crate::model::{ModelError, RadialProblem};
use crate::profile::{CoordChange, PowerCoordinate, Profile};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("change of variables needs alpha > -1, got {0}")]
    AlphaOutOfRange(f64),
    #[error("change of variables needs a non-Coulomb problem")]
    Coulomb,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ivp(#[from] IvpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovMap<T> {
    pub n: T,
    pub p: T,
    pub alpha: T,
    /// Effective dimension minus one.
    pub m: T,
    /// `κ = 1 + α/p`.
    pub kappa: T,
    /// `β = α/p`, so `dt/dr = r^β`.
    pub beta: T,
}

pub fn make_cov<T: Scalar>(n: T, p: T, alpha: T) -> Result<CovMap<T>, TransformError> {
    if !(alpha > -T::one()) || !alpha.is_finite() {
        return Err(TransformError::AlphaOutOfRange(alpha.to_f64_lossy()));
    }
    if !(p > T::one()) || !(n > T::one()) {
        return Err(TransformError::Model(ModelError::Invalid(format!(
            "change of variables needs n > 1 and p > 1, got n = {n}, p = {p}"
        ))));
    }
    let beta = alpha / p;
    let kappa = T::one() + beta;
    let m = (n - T::one() + alpha - beta) / kappa;
    Ok(CovMap {
        n,
        p,
        alpha,
        m,
        kappa,
        beta,
    })
}

impl<T: Scalar> CovMap<T> {
    pub fn coordinate(&self) -> PowerCoordinate<T> {
        PowerCoordinate {
            kappa: self.kappa,
            beta: self.beta,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == T::zero()
    }

    pub fn t_of_r(&self, r: T) -> T {
        if self.is_identity() {
            r
        } else {
            self.coordinate().t_of_r(r)
        }
    }

    pub fn r_of_t(&self, t: T) -> T {
        if self.is_identity() {
            t
        } else {
            self.coordinate().r_of_t(t)
        }
    }

    /// The autonomous problem in `t`: same `f`, `p` and `λ`, dimension
    /// `m + 1`, no weight.
    pub fn transformed_problem(
        &self,
        problem: &RadialProblem<T>,
    ) -> Result<RadialProblem<T>, TransformError> {
        if problem.is_coulomb() {
            return Err(TransformError::Coulomb);
        }
        Ok(problem.with_geometry(self.m + T::one(), T::zero())?)
    }

    /// Re-expresses a profile in `r` as a profile in `t`.
    pub fn pushforward(&self, profile: &Profile<T>) -> Profile<T> {
        if self.is_identity() {
            profile.clone()
        } else {
            profile.map_coordinate(CoordChange::ToT(self.coordinate()))
        }
    }

    /// Re-expresses a profile in `t` as a profile in `r`.
    pub fn pullback(&self, profile: &Profile<T>) -> Profile<T> {
        if self.is_identity() {
            profile.clone()
        } else {
            profile.map_coordinate(CoordChange::ToR(self.coordinate()))
        }
    }

    /// Integration settings for the `t` problem covering the same radii.
    pub fn config_in_t(&self, config: &IvpConfig<T>) -> IvpConfig<T> {
        let mut cfg = *config;
        cfg.r_max = self.t_of_r(config.r_max);
        cfg
    }
}

/// The change of variables matching `problem`'s `(n, p, α)`.
pub fn cov_for<T: Scalar>(problem: &RadialProblem<T>) -> Result<CovMap<T>, TransformError> {
    if problem.is_coulomb() {
        return Err(TransformError::Coulomb);
    }
    make_cov(problem.n(), problem.p(), problem.alpha())
}

/// Integrates the transformed autonomous problem and pulls the profile back
/// to `r`.
pub fn solve_via_cov<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> Result<Profile<T>, TransformError> {
    let cov = cov_for(problem)?;
    let tp = cov.transformed_problem(problem)?;
    let profile_t = integrate_ivp(&tp, a, &cov.config_in_t(config))?;
    Ok(cov.pullback(&profile_t))
}

/// [`first_root`] computed in `t` and reported in `r`.
pub fn first_root_via_cov<T: Scalar>(
    problem: &RadialProblem<T>,
    a: T,
    config: &IvpConfig<T>,
) -> RootOutcome<T> {
    let (cov, tp) = match cov_for(problem).and_then(|c| Ok((c, c.transformed_problem(problem)?))) {
        Ok(v) => v,
        Err(TransformError::Ivp(reason)) => return RootOutcome::Failed { reason },
        Err(e) => {
            return RootOutcome::Failed {
                reason: IvpError::Precondition(e.to_string()),
            }
        }
    };
    match first_root(&tp, a, &cov.config_in_t(config)) {
        RootOutcome::Root { profile, .. } => {
            let profile = cov.pullback(&profile);
            let rho = profile.first_root().expect("root event survives the map");
            RootOutcome::Root { rho, profile }
        }
        RootOutcome::NoRootUpTo { profile, .. } => {
            let profile = cov.pullback(&profile);
            RootOutcome::NoRootUpTo {
                r_max: profile.r_end(),
                profile,
            }
        }
        failed => failed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::ClosedFormFamily;
    use crate::model::NonlinearTerm;

    #[test]
    fn effective_dimension() {
        assert_eq!(make_cov(3.0, 2.0, 2.0).unwrap().m, 1.5);
        for alpha in [-0.5_f64, 0.0, 1.0, 3.7] {
            assert!((make_cov(2.0, 2.0, alpha).unwrap().m - 1.0).abs() < 1e-15);
            assert!((make_cov(3.0, 3.0, alpha).unwrap().m - 2.0).abs() < 1e-15);
        }
        assert_eq!(make_cov(5.0, 2.5, 0.0).unwrap().m, 4.0);
        assert!(make_cov(3.0, 2.0, -1.0).is_err());
    }

    #[test]
    fn coordinate_round_trip() {
        let cov = make_cov(3.0, 2.5, 1.7).unwrap();
        let mut r = 1e-8_f64;
        while r <= 1e3 {
            let back = cov.r_of_t(cov.t_of_r(r));
            assert!((back - r).abs() <= 1e-12 * r, "r = {r}");
            r *= 1.7;
        }
    }

    #[test]
    fn weighted_bratu_pulls_back_to_closed_form() {
        let pr =
            RadialProblem::laplacian(2.0, 0.5, vec![NonlinearTerm::exponential(1.0, 1.0)]).unwrap();
        let fam = ClosedFormFamily::weighted_bratu(0.5, 1.0).unwrap();
        let cfg = IvpConfig::default().with_r_max(10.0).through_root();
        let prof = solve_via_cov(&pr, 1.0, &cfg).unwrap();
        let grid: Vec<f64> = (1..=500).map(|i| i as f64 * 0.02).collect();
        let d = prof
            .sup_distance(&grid, |r| fam.eval_u(r).unwrap())
            .unwrap();
        assert!(d < 1e-7, "sup distance {d}");
        let (_, du0) = cov_for(&pr).unwrap().pushforward(&prof).eval(0.0).unwrap();
        assert_eq!(du0, 0.0);
    }

    #[test]
    fn push_then_pull_is_identity() {
        let pr = RadialProblem::laplacian(3.0, 1.0, vec![NonlinearTerm::power(1.0, 3.0)]).unwrap();
        let cfg = IvpConfig::default();
        let prof = integrate_ivp(&pr, 1.0, &cfg).unwrap();
        let cov = cov_for(&pr).unwrap();
        let back = cov.pullback(&cov.pushforward(&prof));
        assert_eq!(back.chain.len(), 0);
        for r in [0.1_f64, 0.5, 1.0, 2.0] {
            let (u0, d0) = prof.eval(r).unwrap();
            let (u1, d1) = back.eval(r).unwrap();
            assert!((u0 - u1).abs() < 1e-10 && (d0 - d1).abs() < 1e-10);
        }
    }
}
