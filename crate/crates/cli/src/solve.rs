use std::io::Write;

use factorsat_core::{
    decode_witness, emit_model, model_over, parse_model, solve_with_budget, Assignment, Encoding,
    FactorWitness, SolveError, Verdict,
};

use crate::config::{RunConfig, SolverChoice};
use crate::error::{CliError, Status};

/// Prints `SAT` and the witness as JSON, or `UNSAT`.
pub fn run_solve(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    let e = cfg.encoding()?;
    let model = match cfg.solver {
        SolverChoice::Internal => {
            if cfg.model.is_some() {
                return Err(CliError::input(
                    "--model is only used with --solver external",
                ));
            }
            match solve_with_budget(e.cnf(), cfg.budget.unwrap_or(u64::MAX)) {
                Ok(Verdict::Sat(model)) => Some(model),
                Ok(Verdict::Unsat) => None,
                Err(SolveError::BudgetExceeded(d)) => {
                    writeln!(out, "UNKNOWN")?;
                    return Err(CliError::new(
                        Status::BudgetExceeded,
                        format!("decision budget exhausted after {d} decisions"),
                    ));
                }
            }
        }
        SolverChoice::External => external_model(cfg, &e)?,
    };
    let Some(model) = model else {
        writeln!(out, "UNSAT")?;
        return Ok(Status::Unsat);
    };
    let witness = checked_witness(&e, &model)?;
    if let Some(path) = &cfg.emit_model {
        std::fs::write(path, emit_model(&model)).map_err(|err| CliError::io(path, err))?;
    }
    writeln!(out, "SAT")?;
    writeln!(
        out,
        "{}",
        serde_json::to_string(&witness).expect("witness serializes")
    )?;
    Ok(Status::Ok)
}

/// `None` when the solver reported unsatisfiability.
fn external_model(cfg: &RunConfig, e: &Encoding) -> Result<Option<Assignment>, CliError> {
    let path = cfg
        .model
        .as_ref()
        .ok_or_else(|| CliError::input("--solver external requires --model <file>"))?;
    let text = std::fs::read_to_string(path).map_err(|err| CliError::io(path, err))?;
    let unsat = text.lines().any(|l| {
        let l = l.trim();
        l == "UNSAT" || l == "s UNSATISFIABLE"
    });
    if unsat {
        return Ok(None);
    }
    let parsed =
        parse_model(&text).map_err(|err| CliError::input(format!("{}: {err}", path.display())))?;
    if parsed.num_vars() > e.cnf().num_vars() {
        return Err(CliError::new(
            Status::InvalidModel,
            format!(
                "model mentions variable {} but the encoding has {}",
                parsed.num_vars(),
                e.cnf().num_vars()
            ),
        ));
    }
    Ok(Some(model_over(&parsed, e.cnf().num_vars())))
}

/// Decodes the factor rows. A model that assigns every variable must also
/// satisfy every clause.
fn checked_witness(e: &Encoding, model: &Assignment) -> Result<FactorWitness, CliError> {
    let invalid = |msg: String| CliError::new(Status::InvalidModel, msg);
    if model.is_total() && !e.cnf().is_satisfied_by(model) {
        return Err(invalid(
            "invalid model: violates a clause of the encoding".into(),
        ));
    }
    decode_witness(model, e.tableau(), e.pattern()).map_err(|err| invalid(err.to_string()))
}
