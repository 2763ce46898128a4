pub mod alias;
pub mod converge;
pub mod limits;
pub mod simulate;
pub mod spectrum;
pub mod verify;

use rsosc::{render_csv, render_json, Cell, Table};

use crate::config::{FormatArg, RunConfig};
use crate::output;

/// Render the tables in the configured format and send them to the output.
pub(crate) fn emit_tables(
    cfg: &RunConfig,
    meta: &[(String, Cell)],
    tables: &[Table],
) -> Result<(), String> {
    let body = match cfg.format {
        FormatArg::Csv => render_csv(meta, tables),
        FormatArg::Json => render_json(meta, tables),
    };
    output::emit(cfg.out.as_deref(), &body)
}

pub(crate) fn kv(key: &str, value: Cell) -> (String, Cell) {
    (key.to_string(), value)
}
