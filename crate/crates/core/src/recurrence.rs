//! Two-step marching form of the grid equation and the decomposition of an
//! arbitrary trajectory into the canonical mode pair.
//!
//! Rearranging the symmetric quotient gives the recurrence
//! `g(n+1) = g(n-1) + 2 i w d g(n)`, whose characteristic roots are the two
//! unit phasors `exp(i omega d)` of the canonical `twos = 0` (Plus) and
//! `twos = 1` (Minus) modes. Any trajectory is a complex combination of the
//! two; the Minus admixture in a nominally classical start is the parasitic
//! fraction.

use num_complex::Complex;

use crate::dispersion::{make_mode, mode_value, Branch, Mode, ModeKind, SampledSeries};
use crate::error::{Error, Result};
use crate::scalar::{fromf, Real};

/// One step of `g(n+1) = g(n-1) + 2 i w d g(n)`.
pub fn step_recurrence<T: Real>(g_prev: Complex<T>, g_curr: Complex<T>, w: T, d: T) -> Complex<T> {
    let coeff = Complex::new(T::zero(), (w + w) * d);
    g_prev + coeff * g_curr
}

/// March the recurrence from `g(0) = g0`, `g(d) = g1` for `steps` steps,
/// returning the `steps + 1` samples starting at grid index 0.
///
/// Intended for `steps >= 2` so the result has interior points.
pub fn integrate<T: Real>(
    g0: Complex<T>,
    g1: Complex<T>,
    w: T,
    d: T,
    steps: usize,
) -> Result<SampledSeries<T>> {
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    if !(d.is_finite() && d > T::zero()) {
        return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
    }
    let mut values = Vec::with_capacity(steps + 1);
    values.push(g0);
    if steps >= 1 {
        values.push(g1);
        let mut prev = g0;
        let mut curr = g1;
        for _ in 1..steps {
            let next = step_recurrence(prev, curr, w, d);
            prev = curr;
            curr = next;
            values.push(curr);
        }
    }
    SampledSeries::new(d, 0, values)
}

/// Complex amplitudes of the canonical mode pair fitted to two samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitudes<T> {
    c_plus: Complex<T>,
    c_minus: Complex<T>,
    mode_plus: Mode<T>,
    mode_minus: Mode<T>,
}

impl<T: Real> ModeAmplitudes<T> {
    pub fn c_plus(&self) -> Complex<T> {
        self.c_plus
    }

    pub fn c_minus(&self) -> Complex<T> {
        self.c_minus
    }

    pub fn mode_plus(&self) -> &Mode<T> {
        &self.mode_plus
    }

    pub fn mode_minus(&self) -> &Mode<T> {
        &self.mode_minus
    }

    /// `c_plus g_plus(n) + c_minus g_minus(n)`.
    pub fn reconstruct(&self, n: i64) -> Complex<T> {
        self.c_plus * mode_value(&self.mode_plus, n)
            + self.c_minus * mode_value(&self.mode_minus, n)
    }

    /// `|c_minus| / (|c_plus| + |c_minus|)`: the share of the trajectory in
    /// the alternating Minus mode. Near `(w d)^3 / 12` when the start is the
    /// continuum exponential.
    pub fn parasitic_fraction(&self) -> Result<T> {
        let p = self.c_plus.norm();
        let m = self.c_minus.norm();
        let total = p + m;
        if total == T::zero() {
            return Err(Error::ZeroSolution);
        }
        Ok(m / total)
    }
}

/// Solve the 2x2 system `c+ + c- = g0`, `c+ l+ + c- l- = g1` for the
/// canonical pair `l± = exp(i omega± d)`, `twos = 0` and `1`.
///
/// The determinant is `l- - l+`, of magnitude `2 sqrt(1 - (w d)^2)`; within
/// 1e-8 of the tangency the basis is rejected as degenerate.
pub fn fit_mode_amplitudes<T: Real>(
    g0: Complex<T>,
    g1: Complex<T>,
    w: T,
    d: T,
) -> Result<ModeAmplitudes<T>> {
    if !(g0.re.is_finite() && g0.im.is_finite() && g1.re.is_finite() && g1.im.is_finite()) {
        return Err(Error::Domain("g0 and g1 must be finite".to_string()));
    }
    let mode_plus = make_mode(w, d, Branch::Plus, 0, ModeKind::ExactDispersion)?;
    let mode_minus = make_mode(w, d, Branch::Minus, 1, ModeKind::ExactDispersion)?;
    let wd = w * d;
    if wd > T::one() - fromf(1e-8) {
        return Err(Error::DegenerateBasis {
            wd: wd.to_f64().unwrap_or(f64::NAN),
        });
    }
    let l_plus = Complex::from_polar(T::one(), mode_plus.phase_step());
    let l_minus = Complex::from_polar(T::one(), mode_minus.phase_step());
    let det = l_minus - l_plus;
    let c_plus = (g0 * l_minus - g1) / det;
    let c_minus = (g1 - g0 * l_plus) / det;
    Ok(ModeAmplitudes {
        c_plus,
        c_minus,
        mode_plus,
        mode_minus,
    })
}
