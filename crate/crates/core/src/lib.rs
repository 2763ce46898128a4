//! Verification toolkit for the reciprocal-symmetric finite-difference
//! oscillator.
//!
//! The oscillator equation `dg/dt = i w g` discretized with the symmetric
//! quotient `[g(t+d) - g(t-d)] / (2d)` supports a two-branch family of
//! exponential grid solutions. This crate enumerates those modes, checks the
//! defining identities to machine precision, decomposes the branch energies,
//! builds the `w = 0` square-well spectrum, evaluates the thermal limits, and
//! renders everything as deterministic CSV/JSON tables.
//!
//! All numerics are generic over the scalar type through [`Real`] (blanket
//! implemented for `f32`, `f64`, and anything else satisfying the float
//! bounds); `*64` aliases at the crate root fix the primary `f64`
//! instantiation.
//!
//! ```
//! use rsosc::{enumerate_modes, mode_value, residual, ModeKind};
//!
//! let modes = enumerate_modes(1.0_f64, 0.1, (-40.0, 40.0), ModeKind::ExactDispersion).unwrap();
//! assert_eq!(modes.len(), 3);
//! for m in &modes {
//!     assert!(residual(m, 1.0, 5) < 1e-12);
//!     assert!((mode_value(m, 3).norm() - 1.0).abs() < 1e-14);
//! }
//! ```

pub mod dispersion;
pub mod error;
pub mod recurrence;
pub mod sampling;
mod scalar;
pub mod spectrum;
pub mod table;

pub use dispersion::{
    angular_frequency_from_spring, central_difference, central_difference_signed,
    continuum_limit_error, default_omega_window, dispersion_frequency, enumerate_modes, make_mode,
    mode_value, oracle_root_scan, reciprocity_product, residual, Branch, Mode, ModeKind,
    OscillatorParams, SampledSeries,
};
pub use error::{Error, Result};
pub use recurrence::{fit_mode_amplitudes, integrate, step_recurrence, ModeAmplitudes};
pub use sampling::{
    agreement_check, classical_displacement, default_sub_resolution_grid, family_displacement,
    sub_resolution_divergence, AgreementReport, DisplacementFamily, SubResolutionReport,
};
pub use scalar::Real;
pub use spectrum::{
    classical_energy, combined_well_spectrum, correspondence_report, effective_omega, effective_w,
    planck_mean_energy, qm_oscillator_energy, qm_square_well_energy, rayleigh_jeans_report,
    rs_energy_decomposition, rs_middle_term, spectrum_table, square_well_rs_energy,
    CorrespondenceReport, EnergyDecomposition, EnergyVariant, QuantumConfig, RayleighJeansReport,
    SpectrumTable, WellLevel,
};
pub use table::{format_float, render_csv, render_json, Cell, Table};

/// Complex number over any [`Real`] scalar.
pub use num_complex::Complex;

/// Primary double-precision instantiations.
pub type C64 = Complex<f64>;
pub type Mode64 = Mode<f64>;
pub type OscillatorParams64 = OscillatorParams<f64>;
pub type SampledSeries64 = SampledSeries<f64>;
pub type ModeAmplitudes64 = ModeAmplitudes<f64>;
pub type EnergyDecomposition64 = EnergyDecomposition<f64>;
pub type QuantumConfig64 = QuantumConfig<f64>;
pub type SpectrumTable64 = SpectrumTable<f64>;
pub type DisplacementFamily64 = DisplacementFamily<f64>;
