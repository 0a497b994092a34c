//! Numerically integrated radial profiles with dense evaluation.

use serde::Serialize;

use crate::model::phi_p_inv;
use crate::ode::DenseStep;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample<T> {
    pub r: T,
    pub u: T,
    pub uprime: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "event")]
pub enum Event<T> {
    FirstRoot {
        rho: T,
    },
    ReachedRmax {
        r: T,
    },
    /// `u' > 0` while `u > 0`; integration stops here.
    NonPositiveSlopeViolation {
        r: T,
        u: T,
        uprime: T,
    },
}

/// Monotone change of radial coordinate `t = r^κ/κ`, `dt/dr = r^β`
/// (`κ = 1 + α/p`, `β = α/p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerCoordinate<T> {
    pub kappa: T,
    pub beta: T,
}

impl<T: Scalar> PowerCoordinate<T> {
    pub fn t_of_r(&self, r: T) -> T {
        r.powf(self.kappa) / self.kappa
    }

    pub fn r_of_t(&self, t: T) -> T {
        (self.kappa * t).powf(self.kappa.recip())
    }

    /// `dt/dr` at `r`.
    pub fn jacobian(&self, r: T) -> T {
        if self.beta == T::zero() {
            T::one()
        } else {
            r.powf(self.beta)
        }
    }

    pub(crate) fn du_dt(&self, r: T, du_dr: T) -> T {
        if du_dr == T::zero() {
            T::zero()
        } else {
            du_dr / self.jacobian(r)
        }
    }

    pub(crate) fn du_dr(&self, r: T, du_dt: T) -> T {
        if du_dt == T::zero() {
            T::zero()
        } else {
            du_dt * self.jacobian(r)
        }
    }
}

/// One coordinate change applied on top of the integration coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum CoordChange<T> {
    /// Outer coordinate is `t`, inner is `r`.
    ToT(PowerCoordinate<T>),
    /// Outer coordinate is `r`, inner is `t`.
    ToR(PowerCoordinate<T>),
}

/// Leading-order series `u = a - c1 x^k`, `w = -wc x^we` used on `[0, x0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeriesStart<T> {
    pub x0: T,
    pub a: T,
    pub c1: T,
    pub k: T,
}

impl<T: Scalar> SeriesStart<T> {
    fn eval(&self, x: T) -> (T, T) {
        let u = self.a - self.c1 * x.powf(self.k);
        let du = if self.c1 == T::zero() {
            T::zero()
        } else if self.k == T::one() {
            -self.c1
        } else {
            -self.c1 * self.k * x.powf(self.k - T::one())
        };
        (u, du)
    }
}

/// Dense trajectory of the state `(u, w)`, `w = x^(n-1) φ_p(u')`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dense<T> {
    pub start: SeriesStart<T>,
    pub steps: Vec<DenseStep<T, 2>>,
    /// Upper end of valid evaluation (a located root or event may cut the
    /// last step short).
    pub end: T,
    pub n_minus_1: T,
    pub p: T,
}

impl<T: Scalar> Dense<T> {
    fn eval(&self, x: T) -> Option<(T, T)> {
        if !(x >= T::zero()) || x > self.end {
            return None;
        }
        if x <= self.start.x0 || self.steps.is_empty() {
            return Some(self.start.eval(x));
        }
        let idx = self.steps.partition_point(|s| s.x1() < x);
        let step = self.steps.get(idx).or_else(|| self.steps.last())?;
        let [u, w] = step.eval(x);
        let du = phi_p_inv(w / x.powf(self.n_minus_1), self.p);
        Some((u, du))
    }
}

/// Radial solution samples, events, and a dense interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T> {
    pub(crate) samples: Vec<ProfileSample<T>>,
    pub(crate) events: Vec<Event<T>>,
    pub(crate) dense: Dense<T>,
    /// Coordinate changes from the integration variable outward.
    pub(crate) chain: Vec<CoordChange<T>>,
}

impl<T: Scalar> Profile<T> {
    pub fn samples(&self) -> &[ProfileSample<T>] {
        &self.samples
    }

    pub fn events(&self) -> &[Event<T>] {
        &self.events
    }

    pub fn first_root(&self) -> Option<T> {
        self.events.iter().find_map(|e| match e {
            Event::FirstRoot { rho } => Some(*rho),
            _ => None,
        })
    }

    pub fn slope_violation(&self) -> Option<(T, T, T)> {
        self.events.iter().find_map(|e| match e {
            Event::NonPositiveSlopeViolation { r, u, uprime } => Some((*r, *u, *uprime)),
            _ => None,
        })
    }

    /// Largest radius covered by the profile.
    pub fn r_end(&self) -> T {
        self.samples.last().map(|s| s.r).unwrap_or_else(T::zero)
    }

    /// Dense evaluation of `(u, u')` at radius `x` (in this profile's own
    /// coordinate). `None` outside `[0, r_end]`.
    pub fn eval(&self, x: T) -> Option<(T, T)> {
        let mut s = x;
        let mut factor = T::one();
        let mut zero_slope = false;
        for change in self.chain.iter().rev() {
            match change {
                CoordChange::ToT(c) => {
                    let r = c.r_of_t(s);
                    let j = c.jacobian(r);
                    if j == T::zero() || !j.is_finite() {
                        zero_slope = true;
                    } else {
                        factor = factor / j;
                    }
                    s = r;
                }
                CoordChange::ToR(c) => {
                    let t = c.t_of_r(s);
                    let j = c.jacobian(s);
                    if j == T::zero() || !j.is_finite() {
                        zero_slope = true;
                    } else {
                        factor = factor * j;
                    }
                    s = t;
                }
            }
        }
        let (u, du) = self.dense.eval(s)?;
        if du == T::zero() {
            return Some((u, T::zero()));
        }
        // singular jacobian only occurs at the origin, where du vanishes in the limit
        if zero_slope {
            return Some((u, T::zero()));
        }
        Some((u, du * factor))
    }

    pub fn eval_u(&self, x: T) -> Option<T> {
        self.eval(x).map(|(u, _)| u)
    }

    /// Sup-norm distance of `u` to `reference` on `grid`; `None` if a grid
    /// point lies outside the profile.
    pub fn sup_distance<F>(&self, grid: &[T], reference: F) -> Option<T>
    where
        F: Fn(T) -> T,
    {
        grid.iter().try_fold(T::zero(), |acc, &x| {
            let u = self.eval_u(x)?;
            Some(acc.max((u - reference(x)).abs()))
        })
    }

    pub(crate) fn map_coordinate(&self, change: CoordChange<T>) -> Profile<T> {
        let map_r = |r: T| match change {
            CoordChange::ToT(c) => c.t_of_r(r),
            CoordChange::ToR(c) => c.r_of_t(r),
        };
        let map_du = |r_in: T, du: T| match change {
            CoordChange::ToT(c) => c.du_dt(r_in, du),
            CoordChange::ToR(c) => c.du_dr(map_r(r_in), du),
        };
        let samples = self
            .samples
            .iter()
            .map(|s| ProfileSample {
                r: map_r(s.r),
                u: s.u,
                uprime: map_du(s.r, s.uprime),
            })
            .collect();
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                Event::FirstRoot { rho } => Event::FirstRoot { rho: map_r(rho) },
                Event::ReachedRmax { r } => Event::ReachedRmax { r: map_r(r) },
                Event::NonPositiveSlopeViolation { r, u, uprime } => {
                    Event::NonPositiveSlopeViolation {
                        r: map_r(r),
                        u,
                        uprime: map_du(r, uprime),
                    }
                }
            })
            .collect();
        let mut chain = self.chain.clone();
        let cancels = matches!(
            (chain.last(), change),
            (Some(CoordChange::ToT(a)), CoordChange::ToR(b)) | (Some(CoordChange::ToR(a)), CoordChange::ToT(b))
                if *a == b
        );
        if cancels {
            chain.pop();
        } else {
            chain.push(change);
        }
        Profile {
            samples,
            events,
            dense: self.dense.clone(),
            chain,
        }
    }
}
