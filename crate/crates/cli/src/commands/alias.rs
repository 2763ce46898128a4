//! Displacement families that share every grid sample yet disagree between
//! samples: the agreement sweep and the sub-resolution spread.

use rsosc::{
    agreement_check, default_sub_resolution_grid, sub_resolution_divergence, Cell,
    DisplacementFamily64,
};

use crate::config::RunConfig;

use super::{emit_tables, kv};

pub fn run(cfg: &RunConfig, twos_text: &str, n_max: i64) -> Result<i32, String> {
    cfg.params()?;
    let twos_list = parse_twos(twos_text)?;
    if n_max < 0 {
        return Err(format!("n_max = {n_max} must be >= 0"));
    }

    let mut families = Vec::with_capacity(twos_list.len());
    for &twos in &twos_list {
        families
            .push(DisplacementFamily64::new(cfg.a, cfg.w, cfg.d, twos).map_err(|e| e.to_string())?);
    }

    let agreement =
        agreement_check(cfg.a, cfg.w, cfg.d, &families, n_max).map_err(|e| e.to_string())?;
    let grid = default_sub_resolution_grid(cfg.d);
    let spread = sub_resolution_divergence(cfg.a, cfg.w, cfg.d, &families, &grid)
        .map_err(|e| e.to_string())?;

    let joined: Vec<String> = twos_list.iter().map(|t| t.to_string()).collect();
    let mut meta = cfg.meta("alias");
    meta.push(kv("twos", Cell::Str(joined.join(","))));
    meta.push(kv("n_max", Cell::Int(n_max)));
    meta.push(kv("max_deviation", Cell::Float(agreement.max_deviation)));
    meta.push(kv("tolerance", Cell::Float(agreement.tolerance)));
    meta.push(kv("agreement_pass", Cell::Bool(agreement.pass)));
    meta.push(kv("max_spread", Cell::Float(spread.max_spread)));

    let pass = agreement.pass;
    emit_tables(cfg, &meta, &[agreement.to_table(), spread.to_table()])?;
    Ok(if pass { 0 } else { 1 })
}

fn parse_twos(text: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let twos: i64 = part
            .parse()
            .map_err(|_| format!("twos: cannot parse {part:?} as an integer"))?;
        if out.contains(&twos) {
            return Err(format!("twos: duplicate index {twos}"));
        }
        out.push(twos);
    }
    if out.is_empty() {
        return Err("twos: need at least one family index".to_string());
    }
    Ok(out)
}
