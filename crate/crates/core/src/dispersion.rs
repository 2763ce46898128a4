//! Mode branches of the symmetric-difference oscillator equation, identity
//! checks at machine precision, and an independent root-scan oracle.
//!
//! Replacing `dg/dt` by the symmetric quotient `[g(t+d) - g(t-d)] / (2d)`
//! turns `dg/dt = i w g` into a grid equation whose exponential solutions
//! `g(t) = exp(i omega t)` must satisfy
//!
//! ```text
//! sin(omega d) = w d
//! ```
//!
//! Real frequencies exist only inside the Nyquist domain `w d <= 1`. The
//! complete solution set is `omega = (pi k + (-1)^k asin(w d)) / d` over all
//! integers `k`; even `k` forms the Plus branch (frequencies near `pi k / d`
//! shifted up by `asin(w d) / d`), odd `k` the Minus branch (shifted down).
//! `k` is exposed as the doubled branch index `twos`, which is even exactly
//! on the Plus branch and odd exactly on the Minus branch.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{fromf, fromi, rem_euclid, two_pi, Real};

/// Solution branch of the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Even `twos`; lowest member reduces to the continuum solution as d -> 0.
    Plus,
    /// Odd `twos`; has no continuum counterpart.
    Minus,
}

impl Branch {
    /// Sign carried by the sub-harmonic frequency offset: +1 for Plus, -1 for Minus.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }

    /// A branch index is valid only with matching parity: even on Plus, odd on Minus.
    pub fn matches_parity(self, twos: i64) -> bool {
        match self {
            Branch::Plus => twos % 2 == 0,
            Branch::Minus => twos % 2 != 0,
        }
    }

    /// Branch determined by the parity of the doubled index.
    pub fn from_twos(twos: i64) -> Branch {
        if twos % 2 == 0 {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// Shared parity guard used by every operation taking `(branch, twos)`.
pub(crate) fn check_parity(branch: Branch, twos: i64) -> Result<()> {
    if !branch.matches_parity(twos) {
        return Err(Error::ParityError { branch, twos });
    }
    Ok(())
}

/// How a mode's frequency relates to the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    /// `omega` solves `sin(omega d) = w d`; requires the Nyquist bound.
    ExactDispersion,
    /// Alias-family frequency `pi twos / d + sign * w`; defined for every
    /// `w >= 0` and satisfies the dispersion relation only approximately.
    AliasFamily,
}

/// Physical parameters of one oscillator configuration.
///
/// Immutable after construction; `new` enforces `m > 0`, `a > 0`, `w >= 0`,
/// `d > 0` and that everything is finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<T> {
    m: T,
    a: T,
    w: T,
    d: T,
    k: Option<T>,
}

impl<T: Real> OscillatorParams<T> {
    pub fn new(m: T, a: T, w: T, d: T) -> Result<Self> {
        if !(m.is_finite() && m > T::zero()) {
            return Err(Error::Domain(format!("m = {m} must be finite and > 0")));
        }
        if !(a.is_finite() && a > T::zero()) {
            return Err(Error::Domain(format!("a = {a} must be finite and > 0")));
        }
        if !(w.is_finite() && w >= T::zero()) {
            return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
        }
        if !(d.is_finite() && d > T::zero()) {
            return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
        }
        Ok(Self {
            m,
            a,
            w,
            d,
            k: None,
        })
    }

    /// Construct with the frequency derived from a spring constant,
    /// `w = sqrt(k / m)`.
    pub fn from_spring(m: T, a: T, k: T, d: T) -> Result<Self> {
        let w = angular_frequency_from_spring(k, m)?;
        let mut p = Self::new(m, a, w, d)?;
        p.k = Some(k);
        Ok(p)
    }

    /// Same parameters with the frequency replaced (spring constant dropped).
    pub fn with_w(&self, w: T) -> Result<Self> {
        Self::new(self.m, self.a, w, self.d)
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn w(&self) -> T {
        self.w
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn k(&self) -> Option<T> {
        self.k
    }

    /// True when `w * d <= 1`, i.e. exact dispersion modes exist.
    pub fn within_nyquist(&self) -> bool {
        self.w * self.d <= T::one()
    }
}

/// `w = sqrt(k / m)` for a mass on a spring.
pub fn angular_frequency_from_spring<T: Real>(k: T, m: T) -> Result<T> {
    if !(k.is_finite() && k >= T::zero()) {
        return Err(Error::Domain(format!("k = {k} must be finite and >= 0")));
    }
    if !(m.is_finite() && m > T::zero()) {
        return Err(Error::Domain(format!("m = {m} must be finite and > 0")));
    }
    Ok((k / m).sqrt())
}

/// One exponential grid solution `g(n d) = exp(i omega n d)`.
///
/// Built only through [`make_mode`] / [`enumerate_modes`], which enforce the
/// parity invariant and (for [`ModeKind::ExactDispersion`]) the Nyquist bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode<T> {
    branch: Branch,
    twos: i64,
    w: T,
    d: T,
    omega: T,
    kind: ModeKind,
}

impl<T: Real> Mode<T> {
    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn twos(&self) -> i64 {
        self.twos
    }

    pub fn w(&self) -> T {
        self.w
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }

    /// `omega * d` reduced into [0, 2*pi), computed symbolically so the
    /// `pi * twos` part cancels without ever being rounded.
    ///
    /// Exact dispersion: Plus reduces to `asin(w d)`, Minus to
    /// `pi - asin(w d)`. Alias family: Plus reduces to `w d mod 2 pi`,
    /// Minus to `(pi - w d) mod 2 pi`. Only the branch parity survives the
    /// reduction, which is why every grid identity below holds uniformly
    /// across all alias copies of a branch.
    pub fn phase_step(&self) -> T {
        match self.kind {
            ModeKind::ExactDispersion => {
                let x = (self.w * self.d).asin();
                match self.branch {
                    Branch::Plus => x,
                    Branch::Minus => T::PI() - x,
                }
            }
            ModeKind::AliasFamily => {
                let t = rem_euclid(self.w * self.d, two_pi::<T>());
                let raw = match self.branch {
                    Branch::Plus => t,
                    Branch::Minus => T::PI() - t,
                };
                rem_euclid(raw, two_pi::<T>())
            }
        }
    }
}

/// Frequency of the `(branch, twos)` exact-dispersion mode:
/// `(pi * twos + sign * asin(w d)) / d`.
pub fn dispersion_frequency<T: Real>(w: T, d: T, branch: Branch, twos: i64) -> Result<T> {
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    if !(d.is_finite() && d > T::zero()) {
        return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
    }
    check_parity(branch, twos)?;
    let wd = w * d;
    if wd > T::one() {
        return Err(Error::NyquistViolation {
            wd: wd.to_f64().unwrap_or(f64::NAN),
        });
    }
    let x = wd.asin();
    Ok((T::PI() * fromi(twos) + branch.sign::<T>() * x) / d)
}

/// Validated constructor for a single mode.
pub fn make_mode<T: Real>(
    w: T,
    d: T,
    branch: Branch,
    twos: i64,
    kind: ModeKind,
) -> Result<Mode<T>> {
    let omega = match kind {
        ModeKind::ExactDispersion => dispersion_frequency(w, d, branch, twos)?,
        ModeKind::AliasFamily => {
            if !(w.is_finite() && w >= T::zero()) {
                return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
            }
            if !(d.is_finite() && d > T::zero()) {
                return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
            }
            check_parity(branch, twos)?;
            T::PI() * fromi(twos) / d + branch.sign::<T>() * w
        }
    };
    Ok(Mode {
        branch,
        twos,
        w,
        d,
        omega,
        kind,
    })
}

/// Mode value at grid index `n`: `exp(i omega n d)` evaluated through the
/// reduced phase step, so the error stays at a few ulps for any `|n|` instead
/// of growing with the accumulated phase.
///
/// The product `n * step` is carried as a two-term sum (`mul_add` recovers
/// the rounding residue exactly), and the residue is folded back in after
/// the range reduction; periodicity of sin/cos makes the fold safe even when
/// it pushes the phase marginally outside `[0, 2 pi)`.
pub fn mode_value<T: Real>(mode: &Mode<T>, n: i64) -> Complex<T> {
    let nf = fromi::<T>(n);
    let step = mode.phase_step();
    let p = nf * step;
    let residue = nf.mul_add(step, -p);
    let phase = rem_euclid(p, two_pi::<T>()) + residue;
    Complex::new(phase.cos(), phase.sin())
}

/// Default frequency window for enumeration: `|omega| <= 4 pi / d`.
pub fn default_omega_window<T: Real>(d: T) -> (T, T) {
    let hi = fromf::<T>(4.0) * T::PI() / d;
    (-hi, hi)
}

/// All modes of the given kind whose frequency lies in the closed window.
///
/// Exact-dispersion modes require `w d <= 1`; alias families exist for every
/// `w >= 0`. Modes are returned sorted by frequency (ties broken by `twos`),
/// and for `w d < 1` consecutive exact modes strictly alternate branch.
pub fn enumerate_modes<T: Real>(
    w: T,
    d: T,
    omega_window: (T, T),
    kind: ModeKind,
) -> Result<Vec<Mode<T>>> {
    let (lo, hi) = omega_window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!(
            "omega window [{lo}, {hi}] must be finite with lo < hi"
        )));
    }
    if !(d.is_finite() && d > T::zero()) {
        return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
    }
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    if kind == ModeKind::ExactDispersion && w * d > T::one() {
        return Err(Error::NyquistViolation {
            wd: (w * d).to_f64().unwrap_or(f64::NAN),
        });
    }

    // Candidate index range: omega = (pi twos +/- offset) / d with the offset
    // bounded by pi/2 (exact) or w d (alias). Two extra indices each side
    // absorb all rounding at the window edges.
    let pad = match kind {
        ModeKind::ExactDispersion => T::FRAC_PI_2(),
        ModeKind::AliasFamily => w * d,
    };
    let lo_f = ((lo * d - pad) / T::PI()).floor();
    let hi_f = ((hi * d + pad) / T::PI()).ceil();
    let limit = fromf::<T>(1e15);
    if lo_f.abs() > limit || hi_f.abs() > limit {
        return Err(Error::Domain(
            "omega window implies more branch indices than can be enumerated".to_string(),
        ));
    }
    let k_lo = lo_f.to_i64().unwrap_or(i64::MIN / 4) - 2;
    let k_hi = hi_f.to_i64().unwrap_or(i64::MAX / 4) + 2;

    let mut modes = Vec::new();
    for twos in k_lo..=k_hi {
        let mode = make_mode(w, d, Branch::from_twos(twos), twos, kind)?;
        if lo <= mode.omega && mode.omega <= hi {
            modes.push(mode);
        }
    }
    modes.sort_by(|a, b| {
        a.omega
            .partial_cmp(&b.omega)
            .expect("mode frequencies are finite")
            .then(a.twos.cmp(&b.twos))
    });
    Ok(modes)
}

/// Uniformly sampled complex signal on the grid `t = n d`.
///
/// `origin_n` is the grid index of `values[0]`; interior difference quotients
/// need at least one neighbour on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSeries<T> {
    d: T,
    origin_n: i64,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampledSeries<T> {
    pub fn new(d: T, origin_n: i64, values: Vec<Complex<T>>) -> Result<Self> {
        if !(d.is_finite() && d > T::zero()) {
            return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
        }
        if values.is_empty() {
            return Err(Error::Domain(
                "sampled series must be non-empty".to_string(),
            ));
        }
        Ok(Self {
            d,
            origin_n,
            values,
        })
    }

    /// Sample a mode over `count` consecutive grid points starting at `first_n`.
    pub fn from_mode(mode: &Mode<T>, first_n: i64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Domain("sample count must be >= 1".to_string()));
        }
        let values = (first_n..first_n + count as i64)
            .map(|n| mode_value(mode, n))
            .collect();
        Self::new(mode.d, first_n, values)
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn first_n(&self) -> i64 {
        self.origin_n
    }

    pub fn last_n(&self) -> i64 {
        self.origin_n + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time_at(&self, n: i64) -> T {
        fromi::<T>(n) * self.d
    }

    pub fn get(&self, n: i64) -> Result<Complex<T>> {
        if n < self.first_n() || n > self.last_n() {
            return Err(Error::IndexError {
                n,
                first: self.first_n(),
                last: self.last_n(),
            });
        }
        Ok(self.values[(n - self.origin_n) as usize])
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }
}

/// Symmetric difference quotient `[g(n+1) - g(n-1)] / (2d)` at interior index `n`.
pub fn central_difference<T: Real>(series: &SampledSeries<T>, n: i64) -> Result<Complex<T>> {
    let plus = series.get(n + 1)?;
    let minus = series.get(n - 1)?;
    Ok((plus - minus) / Complex::new(series.d + series.d, T::zero()))
}

/// Same quotient with an explicit signed step.
///
/// `step` must be `+d` or `-d` of the series; the quotient is invariant under
/// the sign flip, bitwise, because `(b - a) = -(a - b)` and `x / c = (-x) / (-c)`
/// are exact in IEEE arithmetic.
pub fn central_difference_signed<T: Real>(
    series: &SampledSeries<T>,
    n: i64,
    step: T,
) -> Result<Complex<T>> {
    if step.abs() != series.d {
        return Err(Error::MismatchError(format!(
            "step magnitude {} does not match series spacing {}",
            step.abs(),
            series.d
        )));
    }
    let fwd = series.get(n + 1)?;
    let bwd = series.get(n - 1)?;
    // With step = -d the roles of the two neighbours swap.
    let (plus, minus) = if step > T::zero() {
        (fwd, bwd)
    } else {
        (bwd, fwd)
    };
    Ok((plus - minus) / Complex::new(step + step, T::zero()))
}

/// Defect of the grid equation at index `n`:
/// `| [g(n+1) - g(n-1)] / (2d) - i w g(n) |`.
///
/// Zero to a few ulps for exact-dispersion modes; for alias-family modes it
/// reports the aliasing defect `|sin(w d) - w d| / d` instead.
pub fn residual<T: Real>(mode: &Mode<T>, w: T, n: i64) -> T {
    let g_prev = mode_value(mode, n - 1);
    let g_next = mode_value(mode, n + 1);
    let g_here = mode_value(mode, n);
    let quot = (g_next - g_prev) / Complex::new(mode.d + mode.d, T::zero());
    (quot - Complex::<T>::i() * g_here.scale(w)).norm()
}

/// Product `g_plus(n) * g_minus(n)` after checking the pair is admissible:
/// one mode per branch, identical `w`, `d` and kind.
///
/// For every such pair the product equals `(-1)^n` at grid points, because
/// the phase steps sum to `pi` modulo `2 pi` regardless of the two indices.
pub fn reciprocity_product<T: Real>(plus: &Mode<T>, minus: &Mode<T>, n: i64) -> Result<Complex<T>> {
    if plus.branch != Branch::Plus || minus.branch != Branch::Minus {
        return Err(Error::MismatchError(format!(
            "expected a (Plus, Minus) pair, got ({:?}, {:?})",
            plus.branch, minus.branch
        )));
    }
    if plus.w != minus.w || plus.d != minus.d {
        return Err(Error::MismatchError(
            "paired modes must share identical w and d".to_string(),
        ));
    }
    if plus.kind != minus.kind {
        return Err(Error::MismatchError(
            "paired modes must share the same kind".to_string(),
        ));
    }
    Ok(mode_value(plus, n) * mode_value(minus, n))
}

/// `| asin(w d) / d - w |`: how far the lowest Plus frequency sits from the
/// continuum frequency. Scales as `w^3 d^2 / 6` for small `w d`.
pub fn continuum_limit_error<T: Real>(w: T, d: T) -> Result<T> {
    let omega = dispersion_frequency(w, d, Branch::Plus, 0)?;
    Ok((omega - w).abs())
}

/// Independent check on [`enumerate_modes`]: find every root of
/// `sin(omega d) - w d` in the window by dense sign-change scanning plus
/// bisection, never using the branch formula.
///
/// The scan step divides the worst-case gap between paired roots,
/// `(pi - 2 asin(w d)) / d`, so nothing is skipped as the pair closes up.
/// At the tangency `w d = 1` (or within scan resolution of it) the paired
/// roots merge into sign-preserving double roots and the method is refused.
pub fn oracle_root_scan<T: Real>(w: T, d: T, omega_window: (T, T)) -> Result<Vec<T>> {
    let (lo, hi) = omega_window;
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    if !(d.is_finite() && d > T::zero()) {
        return Err(Error::Domain(format!("d = {d} must be finite and > 0")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!(
            "omega window [{lo}, {hi}] must be finite with lo < hi"
        )));
    }
    let wd = w * d;
    if wd > T::one() {
        return Err(Error::NyquistViolation {
            wd: wd.to_f64().unwrap_or(f64::NAN),
        });
    }
    let gap = T::PI() - (wd.asin() + wd.asin());
    if gap < fromf(1e-6) {
        return Err(Error::DegenerateRoot {
            wd: wd.to_f64().unwrap_or(f64::NAN),
        });
    }

    let f = |omega: T| (omega * d).sin() - wd;
    let step = T::FRAC_PI_4().min(gap / fromf(3.0)) / d;
    let tol = fromf::<T>(1e-12);

    let mut roots: Vec<T> = Vec::new();
    let push_root = |roots: &mut Vec<T>, r: T| {
        // Adjacent segments can re-detect a root that bisection pushed onto a
        // shared endpoint; roots are separated by at least gap/d >> tol.
        if roots.last().is_none_or(|&last| r - last > tol + tol) {
            roots.push(r);
        }
    };

    let mut a = lo;
    let mut fa = f(a);
    while a < hi {
        let b = if a + step >= hi { hi } else { a + step };
        let fb = f(b);
        if fa == T::zero() {
            push_root(&mut roots, a);
        } else if fa * fb < T::zero() {
            let mut x0 = a;
            let mut x1 = b;
            let mut f0 = fa;
            for _ in 0..200 {
                if x1 - x0 <= tol {
                    break;
                }
                let mid = (x0 + x1) / (T::one() + T::one());
                if mid <= x0 || mid >= x1 {
                    break;
                }
                let fm = f(mid);
                if fm == T::zero() {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if f0 * fm < T::zero() {
                    x1 = mid;
                } else {
                    x0 = mid;
                    f0 = fm;
                }
            }
            push_root(&mut roots, (x0 + x1) / (T::one() + T::one()));
        }
        if b >= hi {
            if fb == T::zero() {
                push_root(&mut roots, b);
            }
            break;
        }
        a = b;
        fa = fb;
    }
    Ok(roots)
}
