//! Encoding size across product widths.

use std::io::Write;
use std::time::Instant;

use factorsat_core::{encode_composite, BitPattern};

use crate::config::RunConfig;
use crate::error::{CliError, Status};

/// Below this width no addition column has three live operands, so the
/// largest template is not yet instantiated.
pub const FULL_TEMPLATE_WIDTH: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub digit_vars: usize,
    pub total_vars: u32,
    pub clauses: usize,
    pub tokens: usize,
    pub max_clause_tokens: usize,
    pub encode_time: Option<f64>,
}

pub fn bench_row(n: usize, timing: bool) -> BenchRow {
    let pattern = BitPattern::parse(&"-".repeat(n)).expect("nonempty pattern");
    let start = Instant::now();
    let e = encode_composite(&pattern, &[]).expect("n >= 2");
    let elapsed = start.elapsed().as_secs_f64();
    BenchRow {
        n,
        digit_vars: e.tableau().digit_var_count(),
        total_vars: e.cnf().num_vars(),
        clauses: e.cnf().num_clauses(),
        tokens: e.token_count(),
        max_clause_tokens: e.max_constraint_tokens(),
        encode_time: timing.then_some(elapsed),
    }
}

/// Checks the variable bound on every row and that the largest
/// constraint has the same size on every row with full templates.
pub fn check_rows(rows: &[BenchRow]) -> Result<(), String> {
    for r in rows {
        if r.digit_vars >= r.n * r.n + 3 * r.n {
            return Err(format!(
                "n={}: {} digit variables, bound is {}",
                r.n,
                r.digit_vars,
                r.n * r.n + 3 * r.n
            ));
        }
    }
    let mut full = rows.iter().filter(|r| r.n >= FULL_TEMPLATE_WIDTH);
    if let Some(first) = full.next() {
        if let Some(r) = full.find(|r| r.max_clause_tokens != first.max_clause_tokens) {
            return Err(format!(
                "largest constraint has {} tokens at n={} but {} at n={}",
                first.max_clause_tokens, first.n, r.max_clause_tokens, r.n
            ));
        }
    }
    Ok(())
}

pub fn write_csv(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "n,digit_vars,total_vars,clauses,tokens,max_clause_tokens,encode_time"
    )?;
    for r in rows {
        let time = r
            .encode_time
            .map_or_else(String::new, |t| format!("{t:.6}"));
        writeln!(
            out,
            "{},{},{},{},{},{},{time}",
            r.n, r.digit_vars, r.total_vars, r.clauses, r.tokens, r.max_clause_tokens
        )?;
    }
    Ok(())
}

pub fn run_bench(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    cfg.check_bench_range()?;
    let (lo, hi) = cfg.bench_range;
    let rows: Vec<BenchRow> = (lo..=hi).map(|n| bench_row(n, cfg.timing)).collect();
    match &cfg.output {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|err| CliError::io(path, err))?;
            write_csv(&rows, &mut file).map_err(|err| CliError::io(path, err))?;
        }
        None => write_csv(&rows, out)?,
    }
    check_rows(&rows).map_err(|msg| CliError::new(Status::Disagreement, msg))?;
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_digit_row() {
        let r = bench_row(8, false);
        assert_eq!(r.digit_vars, 44);
        assert_eq!(r.encode_time, None);
    }

    #[test]
    fn rows_pass_their_checks() {
        let rows: Vec<BenchRow> = (2..=20).map(|n| bench_row(n, false)).collect();
        assert_eq!(check_rows(&rows), Ok(()));
        let sixteen = rows.iter().find(|r| r.n == 16).unwrap().tokens as f64;
        let thirty_two = bench_row(32, false).tokens as f64;
        assert!(thirty_two / sixteen <= 4.5);
    }

    #[test]
    fn changed_template_size_is_reported() {
        let mut rows: Vec<BenchRow> = (4..=6).map(|n| bench_row(n, false)).collect();
        rows[2].max_clause_tokens += 1;
        assert!(check_rows(&rows).unwrap_err().contains("n=6"));
    }
}
