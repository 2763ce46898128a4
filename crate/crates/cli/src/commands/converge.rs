//! Geometric sweep of the grid spacing, measuring |omega_plus(0) - w| and
//! fitting its order in d by least squares on the log-log rows.

use rsosc::{continuum_limit_error, Cell, Table};

use crate::config::RunConfig;

use super::{emit_tables, kv};

pub fn run(cfg: &RunConfig, d_min: f64, d_max: f64, points: usize) -> Result<i32, String> {
    cfg.params()?;
    if !(d_min.is_finite() && d_max.is_finite() && 0.0 < d_min && d_min < d_max) {
        return Err(format!(
            "need 0 < d_min < d_max, got d_min = {d_min}, d_max = {d_max}"
        ));
    }
    if points < 3 {
        return Err(format!("points = {points} must be >= 3"));
    }
    if cfg.w * d_max > 1.0 {
        return Err(format!(
            "w*d_max = {} violates the Nyquist bound w*d <= 1",
            cfg.w * d_max
        ));
    }

    let ratio = (d_max / d_min).powf(1.0 / (points as f64 - 1.0));
    let mut sweep = Vec::with_capacity(points);
    for j in 0..points {
        let dj = if j + 1 == points {
            d_max
        } else {
            d_min * ratio.powi(j as i32)
        };
        let err = continuum_limit_error(cfg.w, dj).map_err(|e| e.to_string())?;
        sweep.push((dj, err));
    }

    let mut table = Table::new("convergence", vec!["d", "error", "local_slope"]);
    for (j, &(dj, err)) in sweep.iter().enumerate() {
        let slope = if j == 0 {
            Cell::Empty
        } else {
            let (dp, ep) = sweep[j - 1];
            if ep > 0.0 && err > 0.0 {
                Cell::Float((err / ep).ln() / (dj / dp).ln())
            } else {
                Cell::Empty
            }
        };
        table.push_row(vec![Cell::Float(dj), Cell::Float(err), slope]);
    }

    let logs: Vec<(f64, f64)> = sweep
        .iter()
        .filter(|&&(_, e)| e > 0.0)
        .map(|&(dj, e)| (dj.ln(), e.ln()))
        .collect();
    let degenerate = sweep.iter().all(|&(_, e)| e == 0.0);

    let mut meta = cfg.meta("converge");
    meta.push(kv("d_min", Cell::Float(d_min)));
    meta.push(kv("d_max", Cell::Float(d_max)));
    meta.push(kv("points", Cell::Int(points as i64)));
    meta.push(kv("degenerate", Cell::Bool(degenerate)));

    let code = if degenerate {
        // w = 0: the grid frequency is exact at every spacing.
        meta.push(kv("fitted_slope", Cell::Empty));
        meta.push(kv("fitted_constant", Cell::Empty));
        0
    } else if logs.len() < 2 {
        meta.push(kv("fitted_slope", Cell::Empty));
        meta.push(kv("fitted_constant", Cell::Empty));
        meta.push(kv(
            "note",
            Cell::Str("too few resolvable rows to fit an order".to_string()),
        ));
        1
    } else {
        let (slope, intercept) = least_squares(&logs);
        meta.push(kv("fitted_slope", Cell::Float(slope)));
        meta.push(kv("fitted_constant", Cell::Float(intercept.exp())));
        if (1.95..=2.05).contains(&slope) {
            0
        } else {
            1
        }
    };

    emit_tables(cfg, &meta, &[table])?;
    Ok(code)
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
