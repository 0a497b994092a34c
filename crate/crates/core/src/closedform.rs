//! Catalog of explicit radial solutions and the residual oracle that
//! certifies them.
//!
//! Every family is one of two analytic shapes:
//!
//! * rational power `u = (A / (1 + K r^k))^e`, used by the ground states of
//!   power nonlinearities (F1, F2, F3, F6, F7);
//! * logarithmic `u = c0 - m ln(B0 + K r^k)`, used by the Bratu type
//!   solutions of exponential nonlinearities (F4, F5, F8, F9, F10).
//!
//! `u'` and `u''` are hand-derived for each shape, so the residual oracle
//! never touches the integrator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{lin_ni_q, phi_p, weight, ModelError, NonlinearTerm, RadialProblem};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    /// Weighted critical ground state, `r^α u^((n+2+2α)/(n-2))`.
    F1,
    /// `r^α (-u^q + u^(2q-1))`, both powers subcritical.
    F2,
    /// Lin–Ni pair `r^α (u^q + u^(2q-1))`.
    F3,
    /// Two-dimensional Bratu, `B e^u`.
    F4,
    /// `(n-2) e^u + B e^(2u)`.
    F5,
    /// p-Laplacian critical ground state.
    F6,
    /// p-Laplacian Lin–Ni pair `u^M + u^Q`.
    F7,
    /// p = n Bratu, `B e^u`.
    F8,
    /// Weighted planar Bratu, `r^α e^u`.
    F9,
    /// Coulomb planar Bratu, `r^(-1) e^u` with `u'(0) = -e^(u(0))`.
    F10,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::F1,
        FamilyId::F2,
        FamilyId::F3,
        FamilyId::F4,
        FamilyId::F5,
        FamilyId::F6,
        FamilyId::F7,
        FamilyId::F8,
        FamilyId::F9,
        FamilyId::F10,
    ];

    /// Parameter names accepted by [`make_family`].
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::F1 => &["n", "alpha", "a"],
            FamilyId::F2 | FamilyId::F3 => &["n", "alpha", "q"],
            FamilyId::F4 => &["a", "B"],
            FamilyId::F5 => &["n", "B"],
            FamilyId::F6 => &["n", "p", "a"],
            FamilyId::F7 => &["n", "p", "M"],
            FamilyId::F8 => &["n", "a", "B"],
            FamilyId::F9 => &["alpha", "a"],
            FamilyId::F10 => &["a"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("{family}: validity violation: {predicate}")]
    ValidityViolation { family: FamilyId, predicate: String },
    #[error("unknown family '{0}' (expected F1..F10)")]
    UnknownFamily(String),
    #[error("{family}: missing parameter '{name}'")]
    MissingParameter {
        family: FamilyId,
        name: &'static str,
    },
    #[error("{family}: unknown parameter '{name}' (accepted: {accepted})")]
    UnknownParameter {
        family: FamilyId,
        name: String,
        accepted: String,
    },
    #[error("{family}: r = {r} is outside the domain")]
    Domain { family: FamilyId, r: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Which coefficient multiplies `a^(n/(n-1)) r^(n/(n-1))` in the p = n Bratu
/// solution. Only `Derived` solves the equation; `Printed` (`n/(n-1)`) is kept
/// as a negative fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BratuCoefficient {
    /// `(n-1)/n`, obtained by substituting the ansatz.
    Derived,
    /// `n/(n-1)`.
    Printed,
}

impl BratuCoefficient {
    pub fn value<T: Scalar>(self, n: T) -> T {
        match self {
            BratuCoefficient::Derived => (n - T::one()) / n,
            BratuCoefficient::Printed => n / (n - T::one()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape<T> {
    /// `(amp / (1 + kc r^k))^e`
    Power { amp: T, kc: T, k: T, e: T },
    /// `c0 - m ln(b0 + kc r^k)`
    Log { c0: T, m: T, b0: T, kc: T, k: T },
}

/// Point evaluation: `u`, `u'` and `u''`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub u: T,
    pub du: T,
    pub d2u: T,
}

impl<T: Scalar> Shape<T> {
    fn jet(&self, r: T) -> Option<Jet<T>> {
        let one = T::one();
        match *self {
            Shape::Power { amp, kc, k, e } => {
                let rk = r.powf(k);
                let d = one + kc * rk;
                let u = (amp / d).powf(e);
                // g = r^(k-1)/D, u' = -e kc k g u
                let g = r.powf(k - one) / d;
                let c = e * kc * k;
                let du = -c * g * u;
                let dg = if k == one {
                    -kc * k * g * g
                } else {
                    (k - one) * r.powf(k - T::lit(2.0)) / d - kc * k * g * g
                };
                let d2u = -c * (dg * u + g * du);
                Some(Jet { u, du, d2u })
            }
            Shape::Log { c0, m, b0, kc, k } => {
                let d = b0 + kc * r.powf(k);
                if !(d > T::zero()) {
                    return None;
                }
                let u = c0 - m * d.ln();
                let g = r.powf(k - one) / d;
                let c = m * kc * k;
                let du = -c * g;
                let dg = if k == one {
                    -kc * k * g * g
                } else {
                    (k - one) * r.powf(k - T::lit(2.0)) / d - kc * k * g * g
                };
                let d2u = -c * dg;
                Some(Jet { u, du, d2u })
            }
        }
    }
}

/// One member of a cataloged family together with the problem it solves.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormFamily<T> {
    id: FamilyId,
    params: Vec<(&'static str, T)>,
    shape: Shape<T>,
    problem: RadialProblem<T>,
    coefficient: Option<BratuCoefficient>,
}

fn violation<T>(family: FamilyId, predicate: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::ValidityViolation {
        family,
        predicate: predicate.into(),
    })
}

fn require(family: FamilyId, ok: bool, predicate: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        violation(family, predicate)
    }
}

fn finite<T: Scalar>(family: FamilyId, values: &[(&str, T)]) -> Result<(), FamilyError> {
    for (name, v) in values {
        if !v.is_finite() {
            return violation(family, format!("{name} must be finite"));
        }
    }
    Ok(())
}

impl<T: Scalar> ClosedFormFamily<T> {
    /// F1: `u = [a(n+α) / (1 + (n+α)/(n-2) a² r^(2+α))]^((n-2)/(2+α))`.
    pub fn weighted_critical(n: T, alpha: T, a: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F1;
        let two = T::lit(2.0);
        finite(id, &[("n", n), ("alpha", alpha), ("a", a)])?;
        require(id, n > two, "n > 2")?;
        require(id, alpha > -T::one(), "alpha > -1")?;
        require(id, a > T::zero(), "a > 0")?;
        let q = (n + two + two * alpha) / (n - two);
        let problem = RadialProblem::laplacian(n, alpha, vec![NonlinearTerm::power(T::one(), q)])?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("alpha", alpha), ("a", a)],
            shape: Shape::Power {
                amp: a * (n + alpha),
                kc: (n + alpha) / (n - two) * a * a,
                k: two + alpha,
                e: (n - two) / (two + alpha),
            },
            problem,
            coefficient: None,
        })
    }

    /// F2: `u = [(a(n+α)+1) / (1 + q a² r^(2+α))]^(1/(q-1))` with
    /// `a = (q-1)/(α - nq + n + 2q)`.
    pub fn minus_two_power(n: T, alpha: T, q: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F2;
        let two = T::lit(2.0);
        finite(id, &[("n", n), ("alpha", alpha), ("q", q)])?;
        require(id, n > two, "n > 2")?;
        require(id, alpha > -T::one(), "alpha > -1")?;
        require(id, q > T::one(), "q > 1")?;
        require(
            id,
            q < (n + alpha) / (n - two),
            "q < (n+alpha)/(n-2) (both powers subcritical)",
        )?;
        let a = (q - T::one()) / (alpha - n * q + n + two * q);
        let problem = RadialProblem::laplacian(
            n,
            alpha,
            vec![
                NonlinearTerm::power(-T::one(), q),
                NonlinearTerm::power(T::one(), two * q - T::one()),
            ],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("alpha", alpha), ("q", q), ("a", a)],
            shape: Shape::Power {
                amp: a * (n + alpha) + T::one(),
                kc: q * a * a,
                k: two + alpha,
                e: (q - T::one()).recip(),
            },
            problem,
            coefficient: None,
        })
    }

    /// F3: `u = [(a(n+α)-1) / (1 + q a² r^(2+α))]^(1/(q-1))` with
    /// `a = (q-1)/(nq - n - 2q - α)`.
    pub fn lin_ni(n: T, alpha: T, q: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F3;
        let two = T::lit(2.0);
        finite(id, &[("n", n), ("alpha", alpha), ("q", q)])?;
        require(id, n > two, "n > 2")?;
        require(id, alpha > -T::one(), "alpha > -1")?;
        require(id, q > T::one(), "q > 1")?;
        require(
            id,
            q > (n + alpha) / (n - two),
            "q > (n+alpha)/(n-2) (upper power supercritical)",
        )?;
        let a = (q - T::one()) / (n * q - n - two * q - alpha);
        let problem = RadialProblem::laplacian(
            n,
            alpha,
            vec![
                NonlinearTerm::power(T::one(), q),
                NonlinearTerm::power(T::one(), two * q - T::one()),
            ],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("alpha", alpha), ("q", q), ("a", a)],
            shape: Shape::Power {
                amp: a * (n + alpha) - T::one(),
                kc: q * a * a,
                k: two + alpha,
                e: (q - T::one()).recip(),
            },
            problem,
            coefficient: None,
        })
    }

    /// F4: `u = 2 ln(2√2 a / (a² r² + B))`, solving `u'' + u'/r + B e^u = 0`.
    pub fn bratu_2d(a: T, b: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F4;
        let two = T::lit(2.0);
        finite(id, &[("a", a), ("B", b)])?;
        require(id, a > T::zero(), "a > 0")?;
        require(id, b > T::zero(), "B > 0")?;
        let problem = RadialProblem::laplacian(
            two,
            T::zero(),
            vec![NonlinearTerm::exponential(b, T::one())],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("a", a), ("B", b)],
            shape: Shape::Log {
                c0: two * (two * T::SQRT_2() * a).ln(),
                m: two,
                b0: b,
                kc: a * a,
                k: two,
            },
            problem,
            coefficient: None,
        })
    }

    /// F5: `u = ln(2/(r² + B))`, solving
    /// `u'' + (n-1)/r u' + (n-2) e^u + B e^(2u) = 0`.
    pub fn exp_pair(n: T, b: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F5;
        let two = T::lit(2.0);
        finite(id, &[("n", n), ("B", b)])?;
        require(id, n > T::one(), "n > 1")?;
        let mut terms = Vec::new();
        if n != two {
            terms.push(NonlinearTerm::exponential(n - two, T::one()));
        }
        if b != T::zero() {
            terms.push(NonlinearTerm::exponential(b, two));
        }
        if terms.is_empty() {
            return violation(id, "n != 2 or B != 0 (otherwise the nonlinearity vanishes)");
        }
        let problem = RadialProblem::laplacian(n, T::zero(), terms)?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("B", b)],
            shape: Shape::Log {
                c0: two.ln(),
                m: T::one(),
                b0: b,
                kc: T::one(),
                k: two,
            },
            problem,
            coefficient: None,
        })
    }

    /// F6: `u = [a n / (1 + n(p-1)/(n-p) a^(p/(p-1)) r^(p/(p-1)))]^((n-p)/p)`,
    /// the p-Laplacian ground state at the critical power.
    pub fn plap_critical(n: T, p: T, a: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F6;
        finite(id, &[("n", n), ("p", p), ("a", a)])?;
        require(id, p > T::one(), "p > 1")?;
        require(id, n > p, "n > p")?;
        require(id, a > T::zero(), "a > 0")?;
        let one = T::one();
        let q = ((p - one) * n + p) / (n - p);
        let k = p / (p - one);
        let problem = RadialProblem::new(n, p, T::zero(), vec![NonlinearTerm::power(one, q)])?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("p", p), ("a", a)],
            shape: Shape::Power {
                amp: a * n,
                kc: n * (p - one) / (n - p) * a.powf(k),
                k,
                e: (n - p) / p,
            },
            problem,
            coefficient: None,
        })
    }

    /// F7: `u = ((a n - 1)/(1 + M a^(p/(p-1)) r^(p/(p-1))))^((p-1)/(M-p+1))`
    /// with `a = (M-p+1)/(Mn - pn + n - Mp)`, solving
    /// `(φ_p(u'))' + (n-1)/r φ_p(u') + u^M + u^Q = 0`.
    pub fn plap_lin_ni(n: T, p: T, m: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F7;
        finite(id, &[("n", n), ("p", p), ("M", m)])?;
        let one = T::one();
        require(id, p > one, "p > 1")?;
        require(id, n > p, "n > p")?;
        require(id, m > p - one, "M > p - 1")?;
        require(id, m > (n * p - n) / (n - p), "M > (np-n)/(n-p)")?;
        let q = lin_ni_q(m, p)?;
        let a = (m - p + one) / (m * n - p * n + n - m * p);
        let k = p / (p - one);
        let problem = RadialProblem::new(
            n,
            p,
            T::zero(),
            vec![NonlinearTerm::power(one, m), NonlinearTerm::power(one, q)],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("p", p), ("M", m), ("Q", q), ("a", a)],
            shape: Shape::Power {
                amp: a * n - one,
                kc: m * a.powf(k),
                k,
                e: (p - one) / (m - p + one),
            },
            problem,
            coefficient: None,
        })
    }

    /// F8: `u = n ln(a n / (B + c a^(n/(n-1)) r^(n/(n-1))))` with
    /// `c = (n-1)/n`, solving the p = n Bratu equation.
    pub fn bratu_pn(n: T, a: T, b: T) -> Result<Self, FamilyError> {
        Self::bratu_pn_with(n, a, b, BratuCoefficient::Derived)
    }

    /// F8 with the `n/(n-1)` coefficient. Does not solve its equation for
    /// any `n`; useful only to demonstrate that the residual oracle rejects it.
    pub fn bratu_pn_printed(n: T, a: T, b: T) -> Result<Self, FamilyError> {
        Self::bratu_pn_with(n, a, b, BratuCoefficient::Printed)
    }

    fn bratu_pn_with(n: T, a: T, b: T, coefficient: BratuCoefficient) -> Result<Self, FamilyError> {
        let id = FamilyId::F8;
        finite(id, &[("n", n), ("a", a), ("B", b)])?;
        require(id, n > T::one(), "n > 1")?;
        require(id, a > T::zero(), "a > 0")?;
        require(id, b > T::zero(), "B > 0")?;
        let k = n / (n - T::one());
        let problem = RadialProblem::new(
            n,
            n,
            T::zero(),
            vec![NonlinearTerm::exponential(b, T::one())],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("n", n), ("a", a), ("B", b)],
            shape: Shape::Log {
                c0: n * (a * n).ln(),
                m: n,
                b0: b,
                kc: coefficient.value(n) * a.powf(k),
                k,
            },
            problem,
            coefficient: Some(coefficient),
        })
    }

    /// F9: `u = a - 2 ln(1 + e^a r^(α+2) / (8 (α/2+1)²))`, solving
    /// `u'' + u'/r + r^α e^u = 0`.
    pub fn weighted_bratu(alpha: T, a: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F9;
        let two = T::lit(2.0);
        finite(id, &[("alpha", alpha), ("a", a)])?;
        require(id, alpha > -T::one(), "alpha > -1")?;
        let half = alpha / two + T::one();
        let problem = RadialProblem::laplacian(
            two,
            alpha,
            vec![NonlinearTerm::exponential(T::one(), T::one())],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("alpha", alpha), ("a", a)],
            shape: Shape::Log {
                c0: a,
                m: two,
                b0: T::one(),
                kc: a.exp() / (T::lit(8.0) * half * half),
                k: alpha + two,
            },
            problem,
            coefficient: None,
        })
    }

    /// F10: `u = a - 2 ln(1 + e^a r / 2)`, solving
    /// `u'' + u'/r + e^u / r = 0` with `u'(0) = -e^a`.
    pub fn coulomb_bratu(a: T) -> Result<Self, FamilyError> {
        let id = FamilyId::F10;
        let two = T::lit(2.0);
        finite(id, &[("a", a)])?;
        let problem = RadialProblem::coulomb(
            two,
            two,
            vec![NonlinearTerm::exponential(T::one(), T::one())],
        )?;
        Ok(ClosedFormFamily {
            id,
            params: vec![("a", a)],
            shape: Shape::Log {
                c0: a,
                m: two,
                b0: T::one(),
                kc: a.exp() / two,
                k: T::one(),
            },
            problem,
            coefficient: None,
        })
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    /// Named parameters, including derived ones (`a` for F2/F3/F7, `Q` for F7).
    pub fn params(&self) -> &[(&'static str, T)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<T> {
        self.params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
    }

    pub fn problem(&self) -> &RadialProblem<T> {
        &self.problem
    }

    pub fn coefficient(&self) -> Option<BratuCoefficient> {
        self.coefficient
    }

    /// Smallest admissible radius; positive only for F5 with `B < 0`, where
    /// the domain is the open ray `r > √(-B)`.
    pub fn min_radius(&self) -> T {
        match self.shape {
            Shape::Log { b0, kc, k, .. } if b0 <= T::zero() => (-b0 / kc).powf(k.recip()),
            _ => T::zero(),
        }
    }

    /// `u`, `u'` and `u''` at `r`.
    pub fn jet(&self, r: T) -> Result<Jet<T>, FamilyError> {
        let domain = || FamilyError::Domain {
            family: self.id,
            r: r.to_f64_lossy(),
        };
        if !(r >= T::zero()) {
            return Err(domain());
        }
        let jet = self.shape.jet(r).ok_or_else(domain)?;
        if jet.u.is_finite() && jet.du.is_finite() {
            Ok(jet)
        } else {
            Err(domain())
        }
    }

    pub fn eval_u(&self, r: T) -> Result<T, FamilyError> {
        Ok(self.jet(r)?.u)
    }

    pub fn eval_uprime(&self, r: T) -> Result<T, FamilyError> {
        Ok(self.jet(r)?.du)
    }

    /// `d/dr φ_p(u')`.
    pub fn eval_flux_derivative(&self, r: T) -> Result<T, FamilyError> {
        let jet = self.jet(r)?;
        Ok(flux_derivative(jet, self.problem.p()))
    }

    /// Pointwise residual `(φ_p(u'))' + (n-1)/r φ_p(u') + λ r^α f(u)`, for `r > 0`.
    pub fn residual(&self, r: T) -> Result<T, FamilyError> {
        if !(r > T::zero()) {
            return Err(FamilyError::Domain {
                family: self.id,
                r: r.to_f64_lossy(),
            });
        }
        let jet = self.jet(r)?;
        let pr = &self.problem;
        let p = pr.p();
        let flux = phi_p(jet.du, p);
        let value = flux_derivative(jet, p)
            + (pr.n() - T::one()) / r * flux
            + pr.lambda() * weight(r, pr.alpha()) * pr.f_unchecked(jet.u);
        Ok(value)
    }
}

fn flux_derivative<T: Scalar>(jet: Jet<T>, p: T) -> T {
    if p == T::lit(2.0) {
        jet.d2u
    } else if jet.du == T::zero() {
        // only reachable at r = 0; φ_p(u') vanishes to higher order there
        T::zero()
    } else {
        (p - T::one()) * jet.du.abs().powf(p - T::lit(2.0)) * jet.d2u
    }
}

/// Largest absolute residual over `grid` (all points must be positive and
/// inside the family's domain).
pub fn residual_max<T: Scalar>(family: &ClosedFormFamily<T>, grid: &[T]) -> Result<T, FamilyError> {
    grid.iter().try_fold(T::zero(), |acc, &r| {
        let res = family.residual(r)?;
        Ok(if res.is_nan() {
            T::nan()
        } else {
            acc.max(res.abs())
        })
    })
}

/// Log-spaced grid of `points` radii in `[r_min, r_max]`.
pub fn log_grid<T: Scalar>(r_min: T, r_max: T, points: usize) -> Vec<T> {
    assert!(points >= 2 && r_min > T::zero() && r_max > r_min);
    let (l0, l1) = (r_min.ln(), r_max.ln());
    let last = T::from_count(points - 1);
    (0..points)
        .map(|i| {
            if i + 1 == points {
                r_max
            } else {
                (l0 + (l1 - l0) * T::from_count(i) / last).exp()
            }
        })
        .collect()
}

/// Builds a family from named parameters (see [`FamilyId::parameter_names`]).
/// `alpha` defaults to 0 where it is accepted.
pub fn make_family<T: Scalar>(
    id: FamilyId,
    params: &BTreeMap<String, T>,
) -> Result<ClosedFormFamily<T>, FamilyError> {
    let accepted = id.parameter_names();
    for name in params.keys() {
        if !accepted.contains(&name.as_str()) {
            return Err(FamilyError::UnknownParameter {
                family: id,
                name: name.clone(),
                accepted: accepted.join(", "),
            });
        }
    }
    let get = |name: &'static str| {
        params
            .get(name)
            .copied()
            .ok_or(FamilyError::MissingParameter { family: id, name })
    };
    let alpha = params.get("alpha").copied().unwrap_or_else(T::zero);
    match id {
        FamilyId::F1 => ClosedFormFamily::weighted_critical(get("n")?, alpha, get("a")?),
        FamilyId::F2 => ClosedFormFamily::minus_two_power(get("n")?, alpha, get("q")?),
        FamilyId::F3 => ClosedFormFamily::lin_ni(get("n")?, alpha, get("q")?),
        FamilyId::F4 => ClosedFormFamily::bratu_2d(get("a")?, get("B")?),
        FamilyId::F5 => ClosedFormFamily::exp_pair(get("n")?, get("B")?),
        FamilyId::F6 => ClosedFormFamily::plap_critical(get("n")?, get("p")?, get("a")?),
        FamilyId::F7 => ClosedFormFamily::plap_lin_ni(get("n")?, get("p")?, get("M")?),
        FamilyId::F8 => ClosedFormFamily::bratu_pn(get("n")?, get("a")?, get("B")?),
        FamilyId::F9 => ClosedFormFamily::weighted_bratu(alpha, get("a")?),
        FamilyId::F10 => ClosedFormFamily::coulomb_bratu(get("a")?),
    }
}
