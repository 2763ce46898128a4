//! Run configuration: defaults, a flat JSON config file, and command-line
//! flags, merged in that order (flags win).

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;

use rsosc::{Cell, EnergyVariant, OscillatorParams64, QuantumConfig64};

/// Which energy form(s) to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    /// Keep the continuum frequency in the cross and quadratic terms.
    Paper,
    /// Use the grid frequency; requires w*d <= 1.
    Exact,
    /// Emit one table per form.
    Both,
}

impl VariantArg {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantArg::Paper => "paper",
            VariantArg::Exact => "exact",
            VariantArg::Both => "both",
        }
    }

    /// The concrete forms this selection expands to.
    pub fn forms(self) -> &'static [EnergyVariant] {
        match self {
            VariantArg::Paper => &[EnergyVariant::PaperForm],
            VariantArg::Exact => &[EnergyVariant::ExactForm],
            VariantArg::Both => &[EnergyVariant::PaperForm, EnergyVariant::ExactForm],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

impl FormatArg {
    pub fn as_str(self) -> &'static str {
        match self {
            FormatArg::Csv => "csv",
            FormatArg::Json => "json",
        }
    }
}

/// Shared flags. Every field is optional so the flags > file > defaults
/// precedence can be resolved after parsing.
#[derive(Debug, Args)]
pub struct SharedArgs {
    /// Oscillator mass
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m: Option<f64>,

    /// Oscillation amplitude
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Continuum angular frequency
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub w: Option<f64>,

    /// Grid spacing (time quantum)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<f64>,

    /// Action constant for the comparator ladders
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eta: Option<f64>,

    /// Thermal energy for the radiation-law rows
    #[arg(long = "kT", global = true, allow_negative_numbers = true)]
    pub k_t: Option<f64>,

    /// Largest |twos| index in tabulated sweeps
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub twos_max: Option<i64>,

    /// Energy variant
    #[arg(long, global = true, value_enum)]
    pub variant: Option<VariantArg>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,

    /// Output path; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Flat JSON config file with the same field names as the flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Config-file schema. Field names match the flags; unknown keys are
/// rejected so typos surface instead of silently using a default.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    m: Option<f64>,
    a: Option<f64>,
    w: Option<f64>,
    d: Option<f64>,
    eta: Option<f64>,
    #[serde(rename = "kT")]
    k_t: Option<f64>,
    twos_max: Option<i64>,
    variant: Option<VariantArg>,
    format: Option<FormatArg>,
    out: Option<PathBuf>,
}

/// Fully resolved configuration for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: f64,
    pub a: f64,
    pub w: f64,
    pub d: f64,
    pub eta: f64,
    pub k_t: f64,
    pub twos_max: i64,
    pub variant: VariantArg,
    pub format: FormatArg,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 1.0,
            a: 1.0,
            w: 1.0,
            d: 0.1,
            eta: 1.0,
            k_t: 1.0,
            twos_max: 5,
            variant: VariantArg::Paper,
            format: FormatArg::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    /// Merge defaults, the optional config file, and the flags.
    pub fn resolve(shared: &SharedArgs) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();

        if let Some(path) = &shared.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("config {}: {e}", path.display()))?;
            let file: FileConfig = serde_json::from_str(&text)
                .map_err(|e| format!("config {}: {e}", path.display()))?;
            if let Some(v) = file.m {
                cfg.m = v;
            }
            if let Some(v) = file.a {
                cfg.a = v;
            }
            if let Some(v) = file.w {
                cfg.w = v;
            }
            if let Some(v) = file.d {
                cfg.d = v;
            }
            if let Some(v) = file.eta {
                cfg.eta = v;
            }
            if let Some(v) = file.k_t {
                cfg.k_t = v;
            }
            if let Some(v) = file.twos_max {
                cfg.twos_max = v;
            }
            if let Some(v) = file.variant {
                cfg.variant = v;
            }
            if let Some(v) = file.format {
                cfg.format = v;
            }
            if let Some(v) = file.out {
                cfg.out = Some(v);
            }
        }

        if let Some(v) = shared.m {
            cfg.m = v;
        }
        if let Some(v) = shared.a {
            cfg.a = v;
        }
        if let Some(v) = shared.w {
            cfg.w = v;
        }
        if let Some(v) = shared.d {
            cfg.d = v;
        }
        if let Some(v) = shared.eta {
            cfg.eta = v;
        }
        if let Some(v) = shared.k_t {
            cfg.k_t = v;
        }
        if let Some(v) = shared.twos_max {
            cfg.twos_max = v;
        }
        if let Some(v) = shared.variant {
            cfg.variant = v;
        }
        if let Some(v) = shared.format {
            cfg.format = v;
        }
        if let Some(v) = &shared.out {
            cfg.out = Some(v.clone());
        }

        if cfg.twos_max < 0 {
            return Err(format!("twos_max = {} must be >= 0", cfg.twos_max));
        }
        Ok(cfg)
    }

    /// Validated oscillator parameters for this run.
    pub fn params(&self) -> Result<OscillatorParams64, String> {
        OscillatorParams64::new(self.m, self.a, self.w, self.d).map_err(|e| e.to_string())
    }

    /// Validated quantum comparator constants.
    pub fn quantum(&self) -> Result<QuantumConfig64, String> {
        QuantumConfig64::new(self.eta, self.k_t).map_err(|e| e.to_string())
    }

    /// Meta rows common to every table: tool version, command name, and the
    /// effective numeric configuration. The output path is deliberately not
    /// recorded; it does not affect the content.
    pub fn meta(&self, command: &str) -> Vec<(String, Cell)> {
        vec![
            (
                "version".to_string(),
                Cell::Str(env!("CARGO_PKG_VERSION").to_string()),
            ),
            ("command".to_string(), Cell::Str(command.to_string())),
            ("m".to_string(), Cell::Float(self.m)),
            ("a".to_string(), Cell::Float(self.a)),
            ("w".to_string(), Cell::Float(self.w)),
            ("d".to_string(), Cell::Float(self.d)),
            ("eta".to_string(), Cell::Float(self.eta)),
            ("kT".to_string(), Cell::Float(self.k_t)),
            ("twos_max".to_string(), Cell::Int(self.twos_max)),
            (
                "variant".to_string(),
                Cell::Str(self.variant.as_str().to_string()),
            ),
            (
                "format".to_string(),
                Cell::Str(self.format.as_str().to_string()),
            ),
        ]
    }
}
