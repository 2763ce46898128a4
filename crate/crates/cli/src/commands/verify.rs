//! The identity suite: every structural property of the grid solutions that
//! can be checked at machine precision, one row per check.

use rsosc::{
    central_difference_signed, default_omega_window, enumerate_modes, make_mode, oracle_root_scan,
    reciprocity_product, residual, Branch, Cell, Error, Mode, ModeKind, SampledSeries, Table,
};

use crate::config::RunConfig;

use super::{emit_tables, kv};

struct CheckRow {
    check: &'static str,
    value: f64,
    tolerance: f64,
    pass: bool,
    note: String,
}

impl CheckRow {
    fn clean(check: &'static str, value: f64, tolerance: f64) -> CheckRow {
        CheckRow {
            check,
            value,
            tolerance,
            pass: value <= tolerance,
            note: String::new(),
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<i32, String> {
    cfg.params()?;
    let (w, d) = (cfg.w, cfg.d);
    let wd = w * d;
    if wd > 1.0 {
        return Err(format!(
            "w*d = {wd} violates the Nyquist bound w*d <= 1; no real mode frequency exists"
        ));
    }

    let window = default_omega_window(d);
    let modes = enumerate_modes(w, d, window, ModeKind::ExactDispersion).map_err(err_string)?;

    let rows = vec![
        dispersion_identity(&modes, wd),
        solution_residual(&modes, w),
        d_symmetry(&modes, d),
        reciprocity(w, d)?,
        mode_completeness(&modes, w, d, window),
        basis_conditioning(wd),
    ];

    let all_pass = rows.iter().all(|r| r.pass);

    let mut table = Table::new(
        "checks",
        vec!["check", "value", "tolerance", "pass", "note"],
    );
    for r in &rows {
        table.push_row(vec![
            Cell::Str(r.check.to_string()),
            Cell::Float(r.value),
            Cell::Float(r.tolerance),
            Cell::Bool(r.pass),
            if r.note.is_empty() {
                Cell::Empty
            } else {
                Cell::Str(r.note.clone())
            },
        ]);
    }

    let mut meta = cfg.meta("verify");
    meta.push(kv("all_pass", Cell::Bool(all_pass)));
    emit_tables(cfg, &meta, &[table])?;
    Ok(if all_pass { 0 } else { 1 })
}

fn err_string(e: Error) -> String {
    e.to_string()
}

/// Every enumerated frequency must satisfy sin(omega d) = w d.
fn dispersion_identity(modes: &[Mode<f64>], wd: f64) -> CheckRow {
    let worst = modes
        .iter()
        .map(|m| ((m.omega() * m.d()).sin() - wd).abs())
        .fold(0.0, f64::max);
    CheckRow::clean("dispersion_identity", worst, 1e-12)
}

/// The symmetric quotient of each mode must reproduce i w g on the grid.
fn solution_residual(modes: &[Mode<f64>], w: f64) -> CheckRow {
    let mut worst = 0.0f64;
    for m in modes {
        for n in 0..=1000 {
            worst = worst.max(residual(m, w, n));
        }
    }
    CheckRow::clean("exact_solution_residual", worst, 1e-12 * w.max(1.0))
}

/// The quotient is invariant under d -> -d, bit for bit.
fn d_symmetry(modes: &[Mode<f64>], d: f64) -> CheckRow {
    let mut worst = 0.0f64;
    for m in modes {
        let series = match SampledSeries::from_mode(m, -8, 17) {
            Ok(s) => s,
            Err(_) => continue,
        };
        for n in -7..=7 {
            let forward = central_difference_signed(&series, n, d);
            let backward = central_difference_signed(&series, n, -d);
            if let (Ok(f), Ok(b)) = (forward, backward) {
                worst = worst.max((f - b).norm());
            }
        }
    }
    CheckRow {
        check: "d_symmetry",
        value: worst,
        tolerance: 0.0,
        pass: worst == 0.0,
        note: String::new(),
    }
}

/// Paired solutions multiply to (-1)^n, for exact and alias copies alike.
fn reciprocity(w: f64, d: f64) -> Result<CheckRow, String> {
    let pairs: &[(i64, i64, ModeKind)] = &[
        (0, 1, ModeKind::ExactDispersion),
        (2, -1, ModeKind::ExactDispersion),
        (-4, 3, ModeKind::ExactDispersion),
        (0, 1, ModeKind::AliasFamily),
        (2, 5, ModeKind::AliasFamily),
    ];
    let mut worst = 0.0f64;
    for &(tp, tm, kind) in pairs {
        let plus = make_mode(w, d, Branch::Plus, tp, kind).map_err(err_string)?;
        let minus = make_mode(w, d, Branch::Minus, tm, kind).map_err(err_string)?;
        for n in 0..=10_000 {
            let prod = reciprocity_product(&plus, &minus, n).map_err(err_string)?;
            let expected = if n % 2 == 0 { 1.0 } else { -1.0 };
            let dev = (prod - rsosc::C64::new(expected, 0.0)).norm();
            worst = worst.max(dev);
        }
    }
    Ok(CheckRow::clean("reciprocity", worst, 1e-9))
}

/// Enumeration must agree with an independent bisection scan of the
/// dispersion equation, in count and in value.
fn mode_completeness(modes: &[Mode<f64>], w: f64, d: f64, window: (f64, f64)) -> CheckRow {
    match oracle_root_scan(w, d, window) {
        Ok(roots) => {
            if roots.len() != modes.len() {
                return CheckRow {
                    check: "mode_completeness",
                    value: f64::INFINITY,
                    tolerance: 1e-9,
                    pass: false,
                    note: format!(
                        "enumerated {} modes, oracle found {}",
                        modes.len(),
                        roots.len()
                    ),
                };
            }
            let worst = modes
                .iter()
                .zip(&roots)
                .map(|(m, r)| (m.omega() - r).abs())
                .fold(0.0, f64::max);
            CheckRow::clean("mode_completeness", worst, 1e-9)
        }
        Err(Error::DegenerateRoot { .. }) => CheckRow {
            check: "mode_completeness",
            value: 0.0,
            tolerance: 1e-9,
            pass: true,
            note: "oracle declined: paired roots tangent at this w*d".to_string(),
        },
        Err(e) => CheckRow {
            check: "mode_completeness",
            value: f64::INFINITY,
            tolerance: 1e-9,
            pass: false,
            note: e.to_string(),
        },
    }
}

/// Determinant of the plus/minus fit basis, 2 sqrt(1 - (wd)^2).
/// Informational: small values mean an ill-conditioned amplitude fit, not a
/// broken identity.
fn basis_conditioning(wd: f64) -> CheckRow {
    let det = 2.0 * (1.0 - wd * wd).max(0.0).sqrt();
    let flagged = det < 0.05;
    CheckRow {
        check: "pair_basis_conditioning",
        value: det,
        tolerance: 0.05,
        pass: true,
        note: if flagged {
            "near-degenerate mode basis: amplitude fits are ill-conditioned".to_string()
        } else {
            String::new()
        },
    }
}
