//! Two-step recurrence integration with a mode-sum cross-check: fit the
//! plus/minus amplitudes from the first two samples and reconstruct.

use rsosc::{fit_mode_amplitudes, integrate, Cell, Error, Table, C64};

use crate::config::RunConfig;

use super::{emit_tables, kv};

pub fn run(
    cfg: &RunConfig,
    g0_text: &str,
    g1_text: Option<&str>,
    steps: usize,
) -> Result<i32, String> {
    cfg.params()?;
    if !(2..=1_000_000).contains(&steps) {
        return Err(format!("steps = {steps} out of range [2, 1000000]"));
    }
    let wd = cfg.w * cfg.d;
    if wd >= 1.0 - 1e-8 {
        return Err(format!(
            "w*d = {wd} is within 1e-8 of the tangency at 1; the plus/minus amplitude fit is undefined"
        ));
    }

    let g0 = parse_complex("g0", g0_text)?;
    // Default start advances g0 by one pure plus-branch step.
    let g1 = match g1_text {
        Some(text) => parse_complex("g1", text)?,
        None => g0 * C64::from_polar(1.0, wd.asin()),
    };

    let series = integrate(g0, g1, cfg.w, cfg.d, steps).map_err(|e| e.to_string())?;
    let fit = fit_mode_amplitudes(g0, g1, cfg.w, cfg.d).map_err(|e| e.to_string())?;

    let mut table = Table::new(
        "series",
        vec![
            "n",
            "t",
            "g_re",
            "g_im",
            "recon_re",
            "recon_im",
            "abs_error",
        ],
    );
    for n in series.first_n()..=series.last_n() {
        let g = series.get(n).map_err(|e| e.to_string())?;
        let recon = fit.reconstruct(n);
        table.push_row(vec![
            Cell::Int(n),
            Cell::Float(series.time_at(n)),
            Cell::Float(g.re),
            Cell::Float(g.im),
            Cell::Float(recon.re),
            Cell::Float(recon.im),
            Cell::Float((g - recon).norm()),
        ]);
    }

    let parasitic = match fit.parasitic_fraction() {
        Ok(f) => Cell::Float(f),
        // The zero solution has no mode content to apportion.
        Err(Error::ZeroSolution) => Cell::Empty,
        Err(e) => return Err(e.to_string()),
    };

    let mut meta = cfg.meta("simulate");
    meta.push(kv("steps", Cell::Int(steps as i64)));
    meta.push(kv("g0_re", Cell::Float(g0.re)));
    meta.push(kv("g0_im", Cell::Float(g0.im)));
    meta.push(kv("g1_re", Cell::Float(g1.re)));
    meta.push(kv("g1_im", Cell::Float(g1.im)));
    meta.push(kv("c_plus_re", Cell::Float(fit.c_plus().re)));
    meta.push(kv("c_plus_im", Cell::Float(fit.c_plus().im)));
    meta.push(kv("c_minus_re", Cell::Float(fit.c_minus().re)));
    meta.push(kv("c_minus_im", Cell::Float(fit.c_minus().im)));
    meta.push(kv("parasitic_fraction", parasitic));

    emit_tables(cfg, &meta, &[table])?;
    Ok(0)
}

/// Accepts "RE" or "RE,IM".
fn parse_complex(label: &str, text: &str) -> Result<C64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let (re_text, im_text) = match parts.as_slice() {
        [re] => (*re, None),
        [re, im] => (*re, Some(*im)),
        _ => return Err(format!("{label} = {text:?} must be \"RE\" or \"RE,IM\"")),
    };
    let re: f64 = re_text
        .trim()
        .parse()
        .map_err(|_| format!("{label}: cannot parse {re_text:?} as a number"))?;
    let im: f64 = match im_text {
        Some(t) => t
            .trim()
            .parse()
            .map_err(|_| format!("{label}: cannot parse {t:?} as a number"))?,
        None => 0.0,
    };
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("{label} = {text:?} must be finite"));
    }
    Ok(C64::new(re, im))
}
