//! Radial problem description, the `φ_p` map, nonlinearity evaluation and
//! critical exponents.
//!
//! A [`RadialProblem`] stands for the radial equation
//!
//! ```text
//! (φ_p(u'))' + (n-1)/r · φ_p(u') + λ r^α f(u) = 0,   φ_p(z) = z|z|^(p-2)
//! ```
//!
//! where `f` is a finite sum of power and exponential terms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("nonlinearity out of range at u = {u}: {value}")]
    Range { u: f64, value: f64 },
    #[error("malformed problem JSON: {0}")]
    Json(String),
}

/// `φ_p(z) = z|z|^(p-2)`, extended by continuity with `φ_p(0) = 0`.
#[inline]
pub fn phi_p<T: Scalar>(z: T, p: T) -> T {
    if z == T::zero() {
        return T::zero();
    }
    z.signum() * z.abs().powf(p - T::one())
}

/// Inverse of [`phi_p`]: `w|w|^(1/(p-1) - 1)`.
#[inline]
pub fn phi_p_inv<T: Scalar>(w: T, p: T) -> T {
    if w == T::zero() {
        return T::zero();
    }
    w.signum() * w.abs().powf((p - T::one()).recip())
}

/// `(n+2+2α)/(n-2)`, the critical power of the weighted Laplacian problem.
pub fn critical_exponent_weighted<T: Scalar>(n: T, alpha: T) -> Result<T, ModelError> {
    let two = T::lit(2.0);
    if !(n > two) {
        return Err(ModelError::Invalid(format!(
            "weighted critical exponent needs n > 2, got n = {n}"
        )));
    }
    Ok((n + two + two * alpha) / (n - two))
}

/// `((p-1)n+p)/(n-p)`, the critical power of the p-Laplacian problem.
pub fn critical_exponent_plap<T: Scalar>(n: T, p: T) -> Result<T, ModelError> {
    if !(p > T::one()) || !(n > p) {
        return Err(ModelError::Invalid(format!(
            "p-Laplacian critical exponent needs n > p > 1, got n = {n}, p = {p}"
        )));
    }
    Ok(((p - T::one()) * n + p) / (n - p))
}

/// Upper power `Q = (Mp - p + 1)/(p - 1)` paired with `M` in the Lin–Ni
/// type equation `u^M + u^Q`.
pub fn lin_ni_q<T: Scalar>(m: T, p: T) -> Result<T, ModelError> {
    if !(p > T::one()) || !(m > p - T::one()) {
        return Err(ModelError::Invalid(format!(
            "Lin-Ni pairing needs M > p - 1 > 0, got M = {m}, p = {p}"
        )));
    }
    Ok((m * p - p + T::one()) / (p - T::one()))
}

/// One summand of the nonlinearity `f(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NonlinearTerm<T> {
    /// `coeff · u^exponent`. Negative `u` uses the odd extension
    /// `coeff · u|u|^(exponent-1)`, which only matters past a root.
    Power { coeff: T, exponent: T },
    /// `coeff · e^(rate·u)`.
    Exponential { coeff: T, rate: T },
}

impl<T: Scalar> NonlinearTerm<T> {
    pub fn power(coeff: T, exponent: T) -> Self {
        NonlinearTerm::Power { coeff, exponent }
    }

    pub fn exponential(coeff: T, rate: T) -> Self {
        NonlinearTerm::Exponential { coeff, rate }
    }

    fn validate(&self) -> Result<(), ModelError> {
        match *self {
            NonlinearTerm::Power { coeff, exponent } => {
                if !coeff.is_finite() || coeff == T::zero() {
                    return Err(ModelError::Invalid(format!(
                        "power term coefficient must be finite and nonzero, got {coeff}"
                    )));
                }
                if !exponent.is_finite() || !(exponent > T::zero()) {
                    return Err(ModelError::Invalid(format!(
                        "power term exponent must be finite and positive, got {exponent}"
                    )));
                }
            }
            NonlinearTerm::Exponential { coeff, rate } => {
                if !coeff.is_finite() || coeff == T::zero() {
                    return Err(ModelError::Invalid(format!(
                        "exponential term coefficient must be finite and nonzero, got {coeff}"
                    )));
                }
                if !rate.is_finite() {
                    return Err(ModelError::Invalid(format!(
                        "exponential term rate must be finite, got {rate}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn value(&self, u: T) -> T {
        match *self {
            NonlinearTerm::Power { coeff, exponent } => {
                if u == T::zero() {
                    T::zero()
                } else {
                    coeff * u.signum() * u.abs().powf(exponent)
                }
            }
            NonlinearTerm::Exponential { coeff, rate } => coeff * (rate * u).exp(),
        }
    }

    /// Antiderivative vanishing at `u = 0`.
    #[inline]
    pub fn primitive(&self, u: T) -> T {
        match *self {
            NonlinearTerm::Power { coeff, exponent } => {
                let e1 = exponent + T::one();
                coeff * u.abs().powf(e1) / e1
            }
            NonlinearTerm::Exponential { coeff, rate } => {
                if rate == T::zero() {
                    coeff * u
                } else {
                    coeff / rate * (rate * u).exp_m1()
                }
            }
        }
    }

    #[inline]
    pub fn derivative(&self, u: T) -> T {
        match *self {
            NonlinearTerm::Power { coeff, exponent } => {
                if exponent == T::one() {
                    coeff
                } else {
                    coeff * exponent * u.abs().powf(exponent - T::one())
                }
            }
            NonlinearTerm::Exponential { coeff, rate } => coeff * rate * (rate * u).exp(),
        }
    }

    pub fn is_power(&self) -> bool {
        matches!(self, NonlinearTerm::Power { .. })
    }
}

/// Serialized form; also the CLI input contract.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Scalar")]
struct ProblemSpec<T> {
    n: T,
    #[serde(default = "default_p")]
    p: T,
    #[serde(default)]
    alpha: T,
    #[serde(default = "default_lambda")]
    lambda: T,
    terms: Vec<NonlinearTerm<T>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    coulomb: bool,
}

fn default_p<T: Scalar>() -> T {
    T::lit(2.0)
}

fn default_lambda<T: Scalar>() -> T {
    T::one()
}

/// Radial problem data: dimension `n`, p-Laplacian exponent `p`, weight power
/// `α`, nonlinearity terms and multiplier `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "ProblemSpec<T>",
    into = "ProblemSpec<T>",
    bound = "T: Scalar"
)]
pub struct RadialProblem<T> {
    n: T,
    p: T,
    alpha: T,
    lambda: T,
    terms: Vec<NonlinearTerm<T>>,
    coulomb: bool,
}

impl<T: Scalar> TryFrom<ProblemSpec<T>> for RadialProblem<T> {
    type Error = ModelError;

    fn try_from(s: ProblemSpec<T>) -> Result<Self, ModelError> {
        let problem = RadialProblem {
            n: s.n,
            p: s.p,
            alpha: s.alpha,
            lambda: s.lambda,
            terms: s.terms,
            coulomb: s.coulomb,
        };
        problem.validate()?;
        Ok(problem)
    }
}

impl<T: Scalar> From<RadialProblem<T>> for ProblemSpec<T> {
    fn from(p: RadialProblem<T>) -> Self {
        ProblemSpec {
            n: p.n,
            p: p.p,
            alpha: p.alpha,
            lambda: p.lambda,
            terms: p.terms,
            coulomb: p.coulomb,
        }
    }
}

impl<T: Scalar> RadialProblem<T> {
    /// Autonomous-or-weighted problem with `λ = 1`. Requires `α > -1`.
    pub fn new(n: T, p: T, alpha: T, terms: Vec<NonlinearTerm<T>>) -> Result<Self, ModelError> {
        let problem = RadialProblem {
            n,
            p,
            alpha,
            lambda: T::one(),
            terms,
            coulomb: false,
        };
        problem.validate()?;
        Ok(problem)
    }

    /// Classical Laplacian (`p = 2`) shorthand.
    pub fn laplacian(n: T, alpha: T, terms: Vec<NonlinearTerm<T>>) -> Result<Self, ModelError> {
        Self::new(n, T::lit(2.0), alpha, terms)
    }

    /// Coulomb-weighted problem (`α = -1`), whose natural initial slope is
    /// `u'(0) = -λ f(u(0))`.
    pub fn coulomb(n: T, p: T, terms: Vec<NonlinearTerm<T>>) -> Result<Self, ModelError> {
        let problem = RadialProblem {
            n,
            p,
            alpha: -T::one(),
            lambda: T::one(),
            terms,
            coulomb: true,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn with_lambda(&self, lambda: T) -> Result<Self, ModelError> {
        let mut out = self.clone();
        out.lambda = lambda;
        out.validate()?;
        Ok(out)
    }

    /// Same nonlinearity and `p`, different dimension and weight.
    pub fn with_geometry(&self, n: T, alpha: T) -> Result<Self, ModelError> {
        let mut out = self.clone();
        out.n = n;
        out.alpha = alpha;
        out.coulomb = false;
        out.validate()?;
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("problem serializes")
    }

    fn validate(&self) -> Result<(), ModelError> {
        let invalid = |msg: String| Err(ModelError::Invalid(msg));
        if !self.n.is_finite() || !(self.n > T::one()) {
            return invalid(format!("dimension must satisfy n > 1, got {}", self.n));
        }
        if !self.p.is_finite() || !(self.p > T::one()) {
            return invalid(format!("exponent must satisfy p > 1, got {}", self.p));
        }
        if !self.lambda.is_finite() || !(self.lambda > T::zero()) {
            return invalid(format!(
                "multiplier must satisfy lambda > 0, got {}",
                self.lambda
            ));
        }
        if !self.alpha.is_finite() {
            return invalid(format!("weight power must be finite, got {}", self.alpha));
        }
        if self.coulomb {
            if self.alpha != -T::one() {
                return invalid(format!(
                    "Coulomb mode requires alpha = -1 exactly, got {}",
                    self.alpha
                ));
            }
        } else if !(self.alpha > -T::one()) {
            return invalid(format!(
                "weight power must satisfy alpha > -1 (alpha = -1 only in Coulomb mode), got {}",
                self.alpha
            ));
        }
        if self.terms.is_empty() {
            return invalid("nonlinearity needs at least one term".to_string());
        }
        for term in &self.terms {
            term.validate()?;
        }
        Ok(())
    }

    pub fn n(&self) -> T {
        self.n
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn terms(&self) -> &[NonlinearTerm<T>] {
        &self.terms
    }

    pub fn is_coulomb(&self) -> bool {
        self.coulomb
    }

    pub fn has_power_terms(&self) -> bool {
        self.terms.iter().any(NonlinearTerm::is_power)
    }

    /// `f(u)` without range checking (may be infinite or NaN).
    #[inline]
    pub fn f_unchecked(&self, u: T) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, term| acc + term.value(u))
    }

    pub fn eval_f(&self, u: T) -> Result<T, ModelError> {
        checked(u, self.f_unchecked(u))
    }

    /// `F(u) = ∫_0^u f`.
    pub fn eval_primitive(&self, u: T) -> Result<T, ModelError> {
        let v = self
            .terms
            .iter()
            .fold(T::zero(), |acc, term| acc + term.primitive(u));
        checked(u, v)
    }

    pub fn eval_df(&self, u: T) -> Result<T, ModelError> {
        let v = self
            .terms
            .iter()
            .fold(T::zero(), |acc, term| acc + term.derivative(u));
        checked(u, v)
    }

    /// Full source term `λ r^α f(u)`.
    #[inline]
    pub fn source(&self, r: T, u: T) -> T {
        self.lambda * weight(r, self.alpha) * self.f_unchecked(u)
    }

    /// Single power term `coeff · u^q`, if that is the whole nonlinearity.
    pub fn single_power(&self) -> Option<(T, T)> {
        match self.terms.as_slice() {
            [NonlinearTerm::Power { coeff, exponent }] => Some((*coeff, *exponent)),
            _ => None,
        }
    }
}

fn checked<T: Scalar>(u: T, v: T) -> Result<T, ModelError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ModelError::Range {
            u: u.to_f64_lossy(),
            value: v.to_f64_lossy(),
        })
    }
}

/// `r^α` with `0^0 = 1`.
#[inline]
pub(crate) fn weight<T: Scalar>(r: T, alpha: T) -> T {
    if alpha == T::zero() {
        T::one()
    } else {
        r.powf(alpha)
    }
}
