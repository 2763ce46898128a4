use rsosc::spectrum_table;

use crate::config::RunConfig;

use super::emit_tables;

pub fn run(cfg: &RunConfig) -> Result<i32, String> {
    let params = cfg.params()?;
    let qc = cfg.quantum()?;

    let forms = cfg.variant.forms();
    let mut tables = Vec::with_capacity(forms.len());
    for &form in forms {
        let st = spectrum_table(&params, &qc, cfg.twos_max, form).map_err(|e| e.to_string())?;
        let mut table = st.to_table();
        if forms.len() > 1 {
            table.name = format!("spectrum_{}", form.as_str());
        }
        tables.push(table);
    }

    emit_tables(cfg, &cfg.meta("spectrum"), &tables)?;
    Ok(0)
}
