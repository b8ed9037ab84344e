use std::io::Write;
use std::path::{Path, PathBuf};

use factorsat_core::{emit_dimacs, Encoding};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarEntry {
    pub var: u32,
    pub role: String,
}

/// Metadata written next to an emitted DIMACS file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub pattern: String,
    pub n: usize,
    /// Multiplicand and multiplier digit counts.
    pub widths: [usize; 2],
    pub digit_var_count: usize,
    pub total_vars: u32,
    pub clause_count: usize,
    pub token_count: usize,
    pub varmap: Vec<VarEntry>,
}

impl Sidecar {
    pub fn of(e: &Encoding) -> Sidecar {
        let w = e.tableau().widths();
        Sidecar {
            pattern: e.pattern().to_string(),
            n: e.tableau().n(),
            widths: [w.multiplicand_bits, w.multiplier_bits],
            digit_var_count: e.tableau().digit_var_count(),
            total_vars: e.cnf().num_vars(),
            clause_count: e.cnf().num_clauses(),
            token_count: e.token_count(),
            varmap: e
                .roles()
                .into_iter()
                .zip(1..)
                .map(|(role, var)| VarEntry { var, role })
                .collect(),
        }
    }
}

pub fn sidecar_path(dimacs: &Path) -> PathBuf {
    let mut s = dimacs.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the DIMACS file and its JSON sidecar; without an output path the
/// DIMACS text goes to `out` and no sidecar is written.
pub fn run_encode(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    let e = cfg.encoding()?;
    let text = emit_dimacs(e.cnf(), &e.roles());
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|err| CliError::io(path, err))?;
            let side = sidecar_path(path);
            let json = serde_json::to_string_pretty(&Sidecar::of(&e)).expect("sidecar serializes");
            std::fs::write(&side, json + "\n").map_err(|err| CliError::io(&side, err))?;
            writeln!(
                out,
                "wrote {} ({} vars, {} clauses) and {}",
                path.display(),
                e.cnf().num_vars(),
                e.cnf().num_clauses(),
                side.display()
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Status::Ok)
}
