use std::io::Write;
use std::path::Path;

/// Send a rendered document to `--out` or standard output.
pub fn emit(out: Option<&Path>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .map_err(|e| format!("stdout: {e}"))
        }
    }
}
