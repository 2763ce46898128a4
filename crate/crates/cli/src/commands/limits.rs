//! Limit reports: the radiation law's classical limit in eta, and the
//! correspondence claims for the comparator ladder and the well spectrum.
//! All informational; the exit code only reflects input validity.

use rsosc::{
    correspondence_report, format_float, rayleigh_jeans_report, Cell, CorrespondenceReport,
    RayleighJeansReport, Table,
};

use crate::config::RunConfig;

use super::{emit_tables, kv};

pub fn run(cfg: &RunConfig) -> Result<i32, String> {
    let params = cfg.params()?;
    let qc = cfg.quantum()?;

    // Nine decades shrinking from the configured eta.
    let etas: Vec<f64> = (0..9).map(|j| cfg.eta * 10f64.powi(-j)).collect();
    let rj = rayleigh_jeans_report(&qc, &etas, cfg.w).map_err(|e| e.to_string())?;
    let corr = correspondence_report(&params, &qc, 1, cfg.twos_max).map_err(|e| e.to_string())?;

    let tables = vec![
        rj_table(&rj),
        eta_sweep_table(&corr),
        w_sweep_table(&corr),
        well_limit_table(&corr),
        claims_table(&rj, &corr),
    ];

    let mut meta = cfg.meta("limits");
    meta.push(kv("twos_minus", Cell::Int(corr.twos_minus)));
    emit_tables(cfg, &meta, &tables)?;
    Ok(0)
}

fn rj_table(rj: &RayleighJeansReport<f64>) -> Table {
    let mut t = Table::new(
        "rayleigh_jeans",
        vec![
            "eta",
            "x",
            "mean_energy",
            "relative_deviation",
            "first_order",
        ],
    );
    for r in &rj.rows {
        t.push_row(vec![
            Cell::Float(r.eta),
            Cell::Float(r.x),
            Cell::Float(r.mean_energy),
            Cell::Float(r.relative_deviation),
            Cell::Float(r.first_order),
        ]);
    }
    t
}

fn eta_sweep_table(corr: &CorrespondenceReport<f64>) -> Table {
    let mut t = Table::new("qm_classical", vec!["eta", "qm_energy", "gap"]);
    for r in &corr.eta_sweep {
        t.push_row(vec![
            Cell::Float(r.eta),
            Cell::Float(r.qm_energy),
            Cell::Float(r.gap),
        ]);
    }
    t
}

fn w_sweep_table(corr: &CorrespondenceReport<f64>) -> Table {
    let mut t = Table::new("oscillator_well", vec!["w", "qm_energy"]);
    for r in &corr.w_sweep {
        t.push_row(vec![Cell::Float(r.w), Cell::Float(r.qm_energy)]);
    }
    t
}

fn well_limit_table(corr: &CorrespondenceReport<f64>) -> Table {
    let mut t = Table::new(
        "well_limit",
        vec![
            "variant",
            "branch",
            "twos",
            "rs_total_at_zero_w",
            "square_well_energy",
            "equal",
        ],
    );
    for r in &corr.well_limit_rows {
        t.push_row(vec![
            Cell::Str(r.variant.as_str().to_string()),
            Cell::Str(r.branch.as_str().to_string()),
            Cell::Int(r.twos),
            Cell::Float(r.rs_total_at_zero_w),
            Cell::Float(r.square_well_energy),
            Cell::Bool(r.equal),
        ]);
    }
    t
}

/// One row per claim: the boolean and the numbers that decide it.
fn claims_table(rj: &RayleighJeansReport<f64>, corr: &CorrespondenceReport<f64>) -> Table {
    let mut t = Table::new("claims", vec!["claim", "value", "evidence"]);

    let first_rj = &rj.rows[0];
    let last_rj = &rj.rows[rj.rows.len() - 1];
    t.push_row(vec![
        Cell::Str("planck_to_rj".to_string()),
        Cell::Bool(rj.deviation_vanishes && rj.linear_in_eta),
        Cell::Str(format!(
            "relative deviation from kT falls {} -> {} over {} decades of eta and tracks eta within 1%",
            format_float(first_rj.relative_deviation),
            format_float(last_rj.relative_deviation),
            rj.rows.len() - 1
        )),
    ]);

    let first_eta = &corr.eta_sweep[0];
    let last_eta = &corr.eta_sweep[corr.eta_sweep.len() - 1];
    t.push_row(vec![
        Cell::Str("qm_classical_correspondence_fails".to_string()),
        Cell::Bool(corr.qm_classical_correspondence_fails),
        Cell::Str(format!(
            "comparator energy falls {} -> {} as eta falls {} -> {}, while the continuum energy stays {}",
            format_float(first_eta.qm_energy),
            format_float(last_eta.qm_energy),
            format_float(first_eta.eta),
            format_float(last_eta.eta),
            format_float(corr.classical_energy)
        )),
    ]);

    let first_w = &corr.w_sweep[0];
    let last_w = &corr.w_sweep[corr.w_sweep.len() - 1];
    t.push_row(vec![
        Cell::Str("oscillator_to_well_fails".to_string()),
        Cell::Bool(corr.oscillator_to_well_fails),
        Cell::Str(format!(
            "comparator energy falls {} -> {} as w falls {} -> {}, while the well level stays {}",
            format_float(first_w.qm_energy),
            format_float(last_w.qm_energy),
            format_float(first_w.w),
            format_float(last_w.w),
            format_float(corr.well_level)
        )),
    ]);

    let equal_rows = corr.well_limit_rows.iter().filter(|r| r.equal).count();
    t.push_row(vec![
        Cell::Str("rs_unifies_well_limit".to_string()),
        Cell::Bool(corr.rs_unifies_well_limit),
        Cell::Str(format!(
            "{} of {} tabulated w=0 energies equal the square-well ladder bitwise, both variants",
            equal_rows,
            corr.well_limit_rows.len()
        )),
    ]);

    t
}
