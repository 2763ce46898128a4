//! Energy spectra of the grid oscillator: the three-term decomposition per
//! branch, the square-well limit at `w = 0`, the thermal mean energy, and the
//! machine-checkable correspondence-limit reports.
//!
//! Every branch energy expands as
//!
//! ```text
//! E(branch, twos) = 1/2 m a^2 (pi twos / d)^2            (leading)
//!                 + sign * m a^2 (pi twos / d) * w_eff    (cross)
//!                 + 1/2 m a^2 w_eff^2                     (quadratic)
//! ```
//!
//! with `w_eff = w` in the paper form and `w_eff = asin(w d) / d` in the
//! exact form. The sum telescopes back to `1/2 m (a omega)^2`.

use crate::dispersion::{check_parity, Branch, OscillatorParams};
use crate::error::{Error, Result};
use crate::scalar::{fromf, fromi, Real};
use crate::table::{Cell, Table};

/// Which effective sub-harmonic frequency enters the energy formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyVariant {
    /// `w_eff = w`: the printed expansion, exact for alias-family modes.
    PaperForm,
    /// `w_eff = asin(w d) / d`: exact for dispersion modes, needs `w d <= 1`.
    ExactForm,
}

impl EnergyVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            EnergyVariant::PaperForm => "paper",
            EnergyVariant::ExactForm => "exact",
        }
    }
}

fn half<T: Real>() -> T {
    fromf(0.5)
}

fn base_frequency<T: Real>(d: T, twos: i64) -> T {
    T::PI() * fromi(twos) / d
}

/// Shared expression for the cross term so callers agree bitwise.
fn cross_term<T: Real>(m: T, a: T, d: T, twos: i64, sign: T, w_eff: T) -> T {
    sign * m * (a * a) * (base_frequency(d, twos) * w_eff)
}

/// Effective frequency for the chosen variant.
pub fn effective_w<T: Real>(w: T, d: T, variant: EnergyVariant) -> Result<T> {
    match variant {
        EnergyVariant::PaperForm => Ok(w),
        EnergyVariant::ExactForm => {
            let wd = w * d;
            if wd > T::one() {
                return Err(Error::NyquistViolation {
                    wd: wd.to_f64().unwrap_or(f64::NAN),
                });
            }
            Ok(wd.asin() / d)
        }
    }
}

/// Row frequency `pi twos / d + sign * w_eff` for the chosen variant.
pub fn effective_omega<T: Real>(
    params: &OscillatorParams<T>,
    branch: Branch,
    twos: i64,
    variant: EnergyVariant,
) -> Result<T> {
    check_parity(branch, twos)?;
    let w_eff = effective_w(params.w(), params.d(), variant)?;
    Ok(base_frequency(params.d(), twos) + branch.sign::<T>() * w_eff)
}

/// Continuum oscillator energy `1/2 m (a w)^2`.
pub fn classical_energy<T: Real>(params: &OscillatorParams<T>) -> T {
    let x = params.a() * params.w();
    half::<T>() * params.m() * (x * x)
}

/// Three-term branch energy plus its closed total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDecomposition<T> {
    pub leading: T,
    pub cross: T,
    pub quadratic: T,
    pub total: T,
    pub variant: EnergyVariant,
}

impl<T: Real> EnergyDecomposition<T> {
    /// Recomputed sum of the three terms; matches `total` to relative 1e-14
    /// throughout the Nyquist domain.
    pub fn term_sum(&self) -> T {
        self.leading + self.cross + self.quadratic
    }
}

/// Energy decomposition of the `(branch, twos)` mode.
pub fn rs_energy_decomposition<T: Real>(
    params: &OscillatorParams<T>,
    branch: Branch,
    twos: i64,
    variant: EnergyVariant,
) -> Result<EnergyDecomposition<T>> {
    check_parity(branch, twos)?;
    let w_eff = effective_w(params.w(), params.d(), variant)?;
    let m = params.m();
    let a = params.a();
    let d = params.d();
    let base = base_frequency(d, twos);
    let a2 = a * a;
    let leading = half::<T>() * m * a2 * (base * base);
    let cross = cross_term(m, a, d, twos, branch.sign::<T>(), w_eff);
    let quadratic = half::<T>() * m * a2 * (w_eff * w_eff);
    let omega = base + branch.sign::<T>() * w_eff;
    let x = a * omega;
    let total = half::<T>() * m * (x * x);
    Ok(EnergyDecomposition {
        leading,
        cross,
        quadratic,
        total,
        variant,
    })
}

/// The cross term of the Minus branch in paper form,
/// `-m a^2 (pi twos / d) w`, evaluated through the identical expression used
/// by [`rs_energy_decomposition`] so the two agree bitwise.
pub fn rs_middle_term<T: Real>(params: &OscillatorParams<T>, twos_minus: i64) -> Result<T> {
    if twos_minus % 2 == 0 {
        return Err(Error::ParityError {
            branch: Branch::Minus,
            twos: twos_minus,
        });
    }
    Ok(cross_term(
        params.m(),
        params.a(),
        params.d(),
        twos_minus,
        -T::one(),
        params.w(),
    ))
}

/// Planck-constant analogue and temperature scale for the quantum comparators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumConfig<T> {
    eta: T,
    k_t: T,
}

impl<T: Real> QuantumConfig<T> {
    pub fn new(eta: T, k_t: T) -> Result<Self> {
        if !(eta.is_finite() && eta > T::zero()) {
            return Err(Error::Domain(format!("eta = {eta} must be finite and > 0")));
        }
        if !(k_t.is_finite() && k_t > T::zero()) {
            return Err(Error::Domain(format!("kT = {k_t} must be finite and > 0")));
        }
        Ok(Self { eta, k_t })
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    pub fn k_t(&self) -> T {
        self.k_t
    }

    pub fn with_eta(&self, eta: T) -> Result<Self> {
        Self::new(eta, self.k_t)
    }
}

/// Quantum comparator ladder for odd branch indices: `eta * twos * w`.
pub fn qm_oscillator_energy<T: Real>(qc: &QuantumConfig<T>, twos_minus: i64, w: T) -> Result<T> {
    if twos_minus % 2 == 0 {
        return Err(Error::ParityError {
            branch: Branch::Minus,
            twos: twos_minus,
        });
    }
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    Ok(qc.eta * fromi(twos_minus) * w)
}

/// Branch energy in the `w = 0` limit: `1/2 m (a pi twos / d)^2`, evaluated
/// by the same code path as the full decomposition so the limit is bitwise.
pub fn square_well_rs_energy<T: Real>(
    params: &OscillatorParams<T>,
    branch: Branch,
    twos: i64,
) -> Result<T> {
    let frozen = params.with_w(T::zero())?;
    Ok(rs_energy_decomposition(&frozen, branch, twos, EnergyVariant::PaperForm)?.total)
}

/// Textbook infinite-well level `(1/(2m)) (eta / (2a))^2 (pi twos)^2`.
pub fn qm_square_well_energy<T: Real>(qc: &QuantumConfig<T>, m: T, a: T, twos: i64) -> Result<T> {
    if twos < 1 {
        return Err(Error::Domain(format!("twos = {twos} must be >= 1")));
    }
    if !(m.is_finite() && m > T::zero()) {
        return Err(Error::Domain(format!("m = {m} must be finite and > 0")));
    }
    if !(a.is_finite() && a > T::zero()) {
        return Err(Error::Domain(format!("a = {a} must be finite and > 0")));
    }
    let two = T::one() + T::one();
    let p = qc.eta / (two * a);
    let factor = p * p / (two * m);
    let arg = T::PI() * fromi(twos);
    Ok(factor * (arg * arg))
}

/// One level of the merged `w = 0` spectrum.
///
/// `twos_squared` carries the level ratio law in integer arithmetic:
/// `E(n) / E(1) = twos_squared(n)` holds exactly there by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellLevel<T> {
    pub twos: i64,
    pub twos_squared: i64,
    pub branch: Branch,
    pub energy: T,
    /// Energy of this level's near-degenerate pair `(2j, 2j+1)` summed;
    /// identical for both members.
    pub pair_sum: T,
}

/// Both branches of the `w = 0` spectrum merged into one ladder over
/// `twos = 1..=max_twos`, ascending in energy.
pub fn combined_well_spectrum<T: Real>(
    params: &OscillatorParams<T>,
    max_twos: i64,
) -> Result<Vec<WellLevel<T>>> {
    if max_twos < 1 {
        return Err(Error::Domain(format!("max_twos = {max_twos} must be >= 1")));
    }
    let mut levels = Vec::with_capacity(max_twos as usize);
    for twos in 1..=max_twos {
        let branch = Branch::from_twos(twos);
        let energy = square_well_rs_energy(params, branch, twos)?;
        let j = twos / 2;
        let lower = square_well_rs_energy(params, Branch::from_twos(2 * j), 2 * j)?;
        let upper = square_well_rs_energy(params, Branch::from_twos(2 * j + 1), 2 * j + 1)?;
        levels.push(WellLevel {
            twos,
            twos_squared: twos * twos,
            branch,
            energy,
            pair_sum: lower + upper,
        });
    }
    Ok(levels)
}

/// Thermal mean energy of one quantum mode: `eta w / (exp(eta w / kT) - 1)`,
/// evaluated through `exp_m1` so small arguments keep full precision.
///
/// At `w = 0` the continuous limit `kT` is returned.
pub fn planck_mean_energy<T: Real>(qc: &QuantumConfig<T>, w: T) -> Result<T> {
    if !(w.is_finite() && w >= T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and >= 0")));
    }
    let x = qc.eta * w / qc.k_t;
    if x == T::zero() {
        return Ok(qc.k_t);
    }
    Ok(qc.eta * w / x.exp_m1())
}

/// One row of the classical-limit sweep of the thermal mean energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RjRow<T> {
    pub eta: T,
    pub x: T,
    pub mean_energy: T,
    /// `(kT - mean) / kT`; tends to zero linearly in `eta`.
    pub relative_deviation: T,
    /// Leading-order prediction `x / 2` for the deviation.
    pub first_order: T,
}

/// Sweep of the thermal mean energy toward the equipartition value `kT`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighJeansReport<T> {
    pub w: T,
    pub k_t: T,
    pub rows: Vec<RjRow<T>>,
    /// Deviations strictly decrease and the last sits below 1e-6.
    pub deviation_vanishes: bool,
    /// Consecutive deviation ratios match the eta ratios within 1% wherever
    /// `x <= 1e-2`.
    pub linear_in_eta: bool,
}

/// Evaluate the mean energy along a strictly decreasing `eta` sweep.
pub fn rayleigh_jeans_report<T: Real>(
    qc: &QuantumConfig<T>,
    etas: &[T],
    w: T,
) -> Result<RayleighJeansReport<T>> {
    if !(w.is_finite() && w > T::zero()) {
        return Err(Error::Domain(format!("w = {w} must be finite and > 0")));
    }
    if etas.is_empty() {
        return Err(Error::Domain("eta sweep must be non-empty".to_string()));
    }
    for pair in etas.windows(2) {
        // NaN entries fail the Less test and are rejected here too.
        if pair[1].partial_cmp(&pair[0]) != Some(core::cmp::Ordering::Less) {
            return Err(Error::Domain(
                "eta sweep must be strictly decreasing".to_string(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(etas.len());
    for &eta in etas {
        let qce = qc.with_eta(eta)?;
        let mean = planck_mean_energy(&qce, w)?;
        let x = eta * w / qc.k_t;
        rows.push(RjRow {
            eta,
            x,
            mean_energy: mean,
            relative_deviation: (qc.k_t - mean) / qc.k_t,
            first_order: x / (T::one() + T::one()),
        });
    }
    let decreasing = rows
        .windows(2)
        .all(|p| p[1].relative_deviation < p[0].relative_deviation);
    let deviation_vanishes = decreasing
        && rows
            .last()
            .is_some_and(|r| r.relative_deviation < fromf(1e-6));
    let small = fromf::<T>(1e-2);
    let one_pct = fromf::<T>(0.01);
    let mut checked = 0usize;
    let mut linear = true;
    for p in rows.windows(2) {
        if p[0].x > small {
            continue;
        }
        checked += 1;
        let ratio_eta = p[0].eta / p[1].eta;
        let ratio_dev = p[0].relative_deviation / p[1].relative_deviation;
        if (ratio_dev - ratio_eta).abs() > one_pct * ratio_eta {
            linear = false;
        }
    }
    let linear_in_eta = linear && checked > 0;
    Ok(RayleighJeansReport {
        w,
        k_t: qc.k_t,
        rows,
        deviation_vanishes,
        linear_in_eta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaSweepRow<T> {
    pub eta: T,
    pub qm_energy: T,
    /// `|classical - qm|`; stays open as eta shrinks.
    pub gap: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WSweepRow<T> {
    pub w: T,
    pub qm_energy: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellLimitRow<T> {
    pub variant: EnergyVariant,
    pub branch: Branch,
    pub twos: i64,
    pub rs_total_at_zero_w: T,
    pub square_well_energy: T,
    pub equal: bool,
}

/// The three limit claims, each backed by the numbers that decide it.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceReport<T> {
    pub twos_minus: i64,
    pub classical_energy: T,
    pub eta_sweep: Vec<EtaSweepRow<T>>,
    /// `eta -> 0` sends the comparator ladder to zero while the continuum
    /// energy stays fixed and positive: the classical limit is not recovered.
    pub qm_classical_correspondence_fails: bool,
    pub well_level: T,
    pub w_sweep: Vec<WSweepRow<T>>,
    /// `w -> 0` sends the comparator to zero while the well level stays
    /// fixed and positive: the well limit is not recovered either.
    pub oscillator_to_well_fails: bool,
    pub well_limit_rows: Vec<WellLimitRow<T>>,
    /// The grid decomposition at `w = 0` reproduces the well ladder exactly,
    /// in both variants: one spectrum covers both regimes.
    pub rs_unifies_well_limit: bool,
}

/// Check `qm` values scale exactly with their sweep parameter: each step
/// shrinks by 10 and the ratios track to relative 1e-12.
fn tracks_decade_scaling<T: Real>(values: &[(T, T)]) -> bool {
    let tol = fromf::<T>(1e-12);
    values.windows(2).all(|p| {
        let (x0, v0) = p[0];
        let (x1, v1) = p[1];
        if v0 == T::zero() || v1 == T::zero() {
            return false;
        }
        let ratio_x = x0 / x1;
        let ratio_v = v0 / v1;
        (ratio_v - ratio_x).abs() <= tol * ratio_x && v1.abs() < v0.abs()
    })
}

/// Build the correspondence report for one odd level `twos_minus >= 1`.
///
/// Well-limit rows cover `twos = 0..=max_twos` in both variants.
pub fn correspondence_report<T: Real>(
    params: &OscillatorParams<T>,
    qc: &QuantumConfig<T>,
    twos_minus: i64,
    max_twos: i64,
) -> Result<CorrespondenceReport<T>> {
    if twos_minus % 2 == 0 || twos_minus < 1 {
        return Err(Error::Domain(format!(
            "twos_minus = {twos_minus} must be odd and >= 1"
        )));
    }
    if max_twos < 0 {
        return Err(Error::Domain(format!("max_twos = {max_twos} must be >= 0")));
    }
    let classical = classical_energy(params);
    let ten = fromf::<T>(10.0);

    let mut eta_sweep = Vec::with_capacity(3);
    let mut eta = qc.eta();
    for _ in 0..3 {
        let qm = qm_oscillator_energy(&qc.with_eta(eta)?, twos_minus, params.w())?;
        eta_sweep.push(EtaSweepRow {
            eta,
            qm_energy: qm,
            gap: (classical - qm).abs(),
        });
        eta = eta / ten;
    }
    let qm_classical_correspondence_fails = classical > T::zero()
        && tracks_decade_scaling(
            &eta_sweep
                .iter()
                .map(|r| (r.eta, r.qm_energy))
                .collect::<Vec<_>>(),
        );

    let well_level = qm_square_well_energy(qc, params.m(), params.a(), twos_minus)?;
    let mut w_sweep = Vec::with_capacity(3);
    let mut w = params.w();
    for _ in 0..3 {
        let qm = qm_oscillator_energy(qc, twos_minus, w)?;
        w_sweep.push(WSweepRow { w, qm_energy: qm });
        w = w / ten;
    }
    let oscillator_to_well_fails = well_level > T::zero()
        && tracks_decade_scaling(
            &w_sweep
                .iter()
                .map(|r| (r.w, r.qm_energy))
                .collect::<Vec<_>>(),
        );

    let mut well_limit_rows = Vec::new();
    for variant in [EnergyVariant::PaperForm, EnergyVariant::ExactForm] {
        for twos in 0..=max_twos {
            let branch = Branch::from_twos(twos);
            let frozen = params.with_w(T::zero())?;
            let rs = rs_energy_decomposition(&frozen, branch, twos, variant)?.total;
            let sw = square_well_rs_energy(params, branch, twos)?;
            well_limit_rows.push(WellLimitRow {
                variant,
                branch,
                twos,
                rs_total_at_zero_w: rs,
                square_well_energy: sw,
                equal: rs == sw,
            });
        }
    }
    let rs_unifies_well_limit = well_limit_rows.iter().all(|r| r.equal);

    Ok(CorrespondenceReport {
        twos_minus,
        classical_energy: classical,
        eta_sweep,
        qm_classical_correspondence_fails,
        well_level,
        w_sweep,
        oscillator_to_well_fails,
        well_limit_rows,
        rs_unifies_well_limit,
    })
}

/// One row of a spectrum table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow<T> {
    pub branch: Branch,
    pub twos: i64,
    pub omega: T,
    pub energy: EnergyDecomposition<T>,
    /// `eta * twos * w` on odd rows, absent on even rows.
    pub qm_comparator: Option<T>,
}

/// Full branch spectrum over `twos in [-twos_max, twos_max]`, sorted by
/// total energy; `(branch, twos)` pairs never repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable<T> {
    params: OscillatorParams<T>,
    qc: QuantumConfig<T>,
    variant: EnergyVariant,
    rows: Vec<SpectrumRow<T>>,
}

impl<T: Real> SpectrumTable<T> {
    pub fn params(&self) -> &OscillatorParams<T> {
        &self.params
    }

    pub fn qc(&self) -> &QuantumConfig<T> {
        &self.qc
    }

    pub fn variant(&self) -> EnergyVariant {
        self.variant
    }

    pub fn rows(&self) -> &[SpectrumRow<T>] {
        &self.rows
    }

    /// Render with the canonical column set.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            "spectrum",
            vec![
                "branch",
                "twos",
                "omega",
                "leading",
                "cross",
                "quadratic",
                "total",
                "qm_comparator",
            ],
        );
        for r in &self.rows {
            t.push_row(vec![
                Cell::Str(r.branch.as_str().to_string()),
                Cell::Int(r.twos),
                Cell::from_real(r.omega),
                Cell::from_real(r.energy.leading),
                Cell::from_real(r.energy.cross),
                Cell::from_real(r.energy.quadratic),
                Cell::from_real(r.energy.total),
                r.qm_comparator.map_or(Cell::Empty, Cell::from_real),
            ]);
        }
        t
    }
}

/// Build the spectrum table for one variant.
pub fn spectrum_table<T: Real>(
    params: &OscillatorParams<T>,
    qc: &QuantumConfig<T>,
    twos_max: i64,
    variant: EnergyVariant,
) -> Result<SpectrumTable<T>> {
    if twos_max < 0 {
        return Err(Error::Domain(format!("twos_max = {twos_max} must be >= 0")));
    }
    let mut rows = Vec::with_capacity((2 * twos_max + 1) as usize);
    for twos in -twos_max..=twos_max {
        let branch = Branch::from_twos(twos);
        let energy = rs_energy_decomposition(params, branch, twos, variant)?;
        let omega = effective_omega(params, branch, twos, variant)?;
        let qm_comparator = if twos % 2 != 0 {
            Some(qm_oscillator_energy(qc, twos, params.w())?)
        } else {
            None
        };
        rows.push(SpectrumRow {
            branch,
            twos,
            omega,
            energy,
            qm_comparator,
        });
    }
    rows.sort_by(|a, b| {
        a.energy
            .total
            .partial_cmp(&b.energy.total)
            .expect("energies are finite")
            .then(a.twos.cmp(&b.twos))
    });
    Ok(SpectrumTable {
        params: *params,
        qc: *qc,
        variant,
        rows,
    })
}
