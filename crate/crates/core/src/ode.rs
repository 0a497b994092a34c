//! Dormand–Prince 5(4) stepper with its continuous extension.

use crate::scalar::Scalar;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Continuous extension of one accepted step on `[x0, x0 + h]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseStep<T, const N: usize> {
    pub x0: T,
    pub h: T,
    rc: [[T; N]; 5],
}

impl<T: Scalar, const N: usize> DenseStep<T, N> {
    pub fn x1(&self) -> T {
        self.x0 + self.h
    }

    /// Fourth-order interpolant at `x` (extrapolates outside the step).
    pub fn eval(&self, x: T) -> [T; N] {
        let theta = (x - self.x0) / self.h;
        let theta1 = T::one() - theta;
        let mut out = [T::zero(); N];
        for (i, o) in out.iter_mut().enumerate() {
            let rc = |j: usize| self.rc[j][i];
            *o = rc(0) + theta * (rc(1) + theta1 * (rc(2) + theta * (rc(3) + theta1 * rc(4))));
        }
        out
    }
}

/// Outcome of one trial step.
pub struct Trial<T, const N: usize> {
    pub y1: [T; N],
    /// Weighted RMS error; `<= 1` means accept.
    pub err: T,
    k1: [T; N],
    k3: [T; N],
    k4: [T; N],
    k5: [T; N],
    k6: [T; N],
    /// Derivative at the end point (first stage of the next step).
    pub k7: [T; N],
}

#[inline]
fn comb<T: Scalar, const N: usize>(y: &[T; N], h: T, terms: &[(f64, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (c, k) in terms {
            acc = acc + T::lit(*c) * k[i];
        }
        *o = *o + h * acc;
    }
    out
}

/// One Dormand–Prince step from `(x, y)` with derivative `k1 = f(x, y)`.
pub fn trial_step<T, F, const N: usize>(
    f: &F,
    x: T,
    y: &[T; N],
    k1: &[T; N],
    h: T,
    rel_tol: T,
    abs_tol: T,
) -> Trial<T, N>
where
    T: Scalar,
    F: Fn(T, &[T; N]) -> [T; N],
{
    let k2 = f(x + T::lit(C2) * h, &comb(y, h, &[(A21, k1)]));
    let k3 = f(x + T::lit(C3) * h, &comb(y, h, &[(A31, k1), (A32, &k2)]));
    let k4 = f(
        x + T::lit(C4) * h,
        &comb(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]),
    );
    let k5 = f(
        x + T::lit(C5) * h,
        &comb(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    );
    let k6 = f(
        x + h,
        &comb(
            y,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
    );
    let y1 = comb(
        y,
        h,
        &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
    );
    let k7 = f(x + h, &y1);

    let mut sum = T::zero();
    for i in 0..N {
        let e = h
            * (T::lit(E1) * k1[i]
                + T::lit(E3) * k3[i]
                + T::lit(E4) * k4[i]
                + T::lit(E5) * k5[i]
                + T::lit(E6) * k6[i]
                + T::lit(E7) * k7[i]);
        let sc = abs_tol + rel_tol * y[i].abs().max(y1[i].abs());
        let q = e / sc;
        sum = sum + q * q;
    }
    let err = (sum / T::from_count(N)).sqrt();
    Trial {
        y1,
        err,
        k1: *k1,
        k3,
        k4,
        k5,
        k6,
        k7,
    }
}

impl<T: Scalar, const N: usize> Trial<T, N> {
    pub fn dense(&self, x0: T, y0: &[T; N], h: T) -> DenseStep<T, N> {
        let mut rc = [[T::zero(); N]; 5];
        for i in 0..N {
            let ydiff = self.y1[i] - y0[i];
            let bspl = h * self.k1[i] - ydiff;
            rc[0][i] = y0[i];
            rc[1][i] = ydiff;
            rc[2][i] = bspl;
            rc[3][i] = ydiff - h * self.k7[i] - bspl;
            rc[4][i] = h
                * (T::lit(D1) * self.k1[i]
                    + T::lit(D3) * self.k3[i]
                    + T::lit(D4) * self.k4[i]
                    + T::lit(D5) * self.k5[i]
                    + T::lit(D6) * self.k6[i]
                    + T::lit(D7) * self.k7[i]);
        }
        DenseStep { x0, h, rc }
    }
}

/// Step size factor after a trial with error `err`.
pub fn step_factor<T: Scalar>(err: T, accepted_last: bool) -> T {
    let max_growth = if accepted_last { T::lit(5.0) } else { T::one() };
    if !err.is_finite() {
        return T::lit(0.1);
    }
    if err == T::zero() {
        return max_growth;
    }
    (T::lit(0.9) * err.powf(T::lit(-0.2)))
        .min(max_growth)
        .max(T::lit(0.2))
}
