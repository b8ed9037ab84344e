//! DIMACS CNF text and solver model lines.
//!
//! Emitted files carry one `c var <index> <role>` comment per variable ahead
//! of the `p cnf` header. Parsing keeps the comment block verbatim so that
//! emit → parse → emit reproduces the input byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Assignment, Cnf, CnfError, Lit, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {0}: missing or malformed `p cnf` header")]
    BadHeader(usize),
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// A parsed DIMACS file: its leading comment lines (without the `c`
/// prefix handling; stored exactly as read) and the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimacs {
    pub comments: Vec<String>,
    pub cnf: Cnf,
}

impl Dimacs {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "p cnf {} {}",
            self.cnf.num_vars(),
            self.cnf.num_clauses()
        );
        for clause in self.cnf.clauses() {
            for lit in clause {
                let _ = write!(out, "{} ", lit.to_dimacs());
            }
            out.push_str("0\n");
        }
        out
    }

    /// Role strings recovered from `c var <index> <role>` comments.
    pub fn roles(&self) -> Vec<(u32, String)> {
        self.comments
            .iter()
            .filter_map(|line| {
                let mut parts = line.split_whitespace();
                if parts.next()? != "c" || parts.next()? != "var" {
                    return None;
                }
                let index = parts.next()?.parse().ok()?;
                Some((index, parts.next()?.to_string()))
            })
            .collect()
    }
}

/// Renders `cnf` with one role comment per entry of `roles` (variable
/// `i + 1` gets `roles[i]`).
pub fn emit_dimacs(cnf: &Cnf, roles: &[String]) -> String {
    let comments = roles
        .iter()
        .enumerate()
        .map(|(i, role)| format!("c var {} {}", i + 1, role))
        .collect();
    Dimacs {
        comments,
        cnf: cnf.clone(),
    }
    .render()
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs, DimacsError> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('c') {
            if header.is_none() {
                comments.push(line.to_string());
            }
            continue;
        }
        if trimmed.starts_with('%') {
            // end marker used by some benchmark suites
            break;
        }
        if trimmed.starts_with('p') {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(DimacsError::BadHeader(lineno));
            }
            let vars = parts[2]
                .parse()
                .map_err(|_| DimacsError::BadHeader(lineno))?;
            let count = parts[3]
                .parse()
                .map_err(|_| DimacsError::BadHeader(lineno))?;
            header = Some((vars, count));
            continue;
        }
        if header.is_none() {
            return Err(DimacsError::BadHeader(lineno));
        }
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadToken {
                line: lineno,
                token: token.to_string(),
            })?;
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                let lit = Lit::from_dimacs(value).ok_or_else(|| DimacsError::BadToken {
                    line: lineno,
                    token: token.to_string(),
                })?;
                current.push(lit);
            }
        }
    }
    let (num_vars, declared) = header.ok_or(DimacsError::BadHeader(text.lines().count()))?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    Ok(Dimacs {
        comments,
        cnf: Cnf::new(num_vars, clauses)?,
    })
}

/// Renders a model as a single `v ... 0` line.
pub fn emit_model(a: &Assignment) -> String {
    let mut out = String::from("v");
    for (var, value) in a.iter() {
        let _ = write!(out, " {}", Lit::new(var, value).to_dimacs());
    }
    out.push_str(" 0\n");
    out
}

/// Reads a solver model. Accepts `v`-prefixed lines (possibly several) as
/// well as bare literal lines; `s`/`c` lines and `SAT` banners are skipped.
pub fn parse_model(text: &str) -> Result<Assignment, DimacsError> {
    let mut a = Assignment::default();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        let body = match trimmed.split_whitespace().next() {
            None => continue,
            Some("v") => &trimmed[1..],
            Some("s" | "c" | "SAT" | "UNSAT" | "SATISFIABLE" | "UNSATISFIABLE") => continue,
            Some(_) => trimmed,
        };
        for token in body.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadToken {
                line: i + 1,
                token: token.to_string(),
            })?;
            if let Some(lit) = Lit::from_dimacs(value) {
                a.set(lit.var(), lit.is_positive());
            }
        }
    }
    Ok(a)
}

/// Values for `VarId`s `1..=num_vars`, unmentioned ones left unassigned.
pub fn model_over(a: &Assignment, num_vars: u32) -> Assignment {
    let mut out = Assignment::new(num_vars);
    for i in 1..=num_vars {
        if let Some(v) = a.get(VarId::new(i)) {
            out.set(VarId::new(i), v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lit(v: i64) -> Lit {
        Lit::from_dimacs(v).unwrap()
    }

    #[test]
    fn single_unit_clause() {
        let cnf = Cnf::new(1, vec![vec![lit(1)]]).unwrap();
        assert_eq!(emit_dimacs(&cnf, &[]), "p cnf 1 1\n1 0\n");
        let with_role = emit_dimacs(&cnf, &["P1".to_string()]);
        assert_eq!(with_role, "c var 1 P1\np cnf 1 1\n1 0\n");
        let parsed = parse_dimacs(&with_role).unwrap();
        assert_eq!(parsed.roles(), vec![(1, "P1".to_string())]);
    }

    #[test]
    fn model_lines() {
        let a = parse_model("v 1 -2 0\n").unwrap();
        assert_eq!(a.get(VarId::new(1)), Some(true));
        assert_eq!(a.get(VarId::new(2)), Some(false));
        let b = parse_model("s SATISFIABLE\nv 1 2\nv -3 0\n").unwrap();
        assert_eq!(emit_model(&b), "v 1 2 -3 0\n");
        assert!(parse_model("v 1 x 0").is_err());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_dimacs("1 0\n"), Err(DimacsError::BadHeader(1)));
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(DimacsError::Unterminated)
        );
        assert_eq!(
            parse_dimacs("p cnf 2 2\n1 2 0\n"),
            Err(DimacsError::ClauseCount {
                declared: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n2 0\n"),
            Err(DimacsError::Cnf(_))
        ));
        // clauses may span lines and share them
        let d = parse_dimacs("p cnf 3 2\n1 -2\n 0 3 0\n").unwrap();
        assert_eq!(d.cnf.clauses(), &[vec![lit(1), lit(-2)], vec![lit(3)]]);
    }

    fn cnf_strategy() -> impl Strategy<Value = (Cnf, Vec<String>)> {
        (1u32..30).prop_flat_map(|n| {
            let literal =
                (1..=n as i64, any::<bool>()).prop_map(|(v, pos)| lit(if pos { v } else { -v }));
            let clauses = prop::collection::vec(prop::collection::vec(literal, 1..6), 0..20);
            let roles = prop::collection::vec("[A-Z]{1,2}[0-9]{1,2}(\\.[0-9])?", 0..=n as usize);
            (clauses, roles).prop_map(move |(c, r)| (Cnf::new(n, c).unwrap(), r))
        })
    }

    proptest! {
        #[test]
        fn emit_parse_emit_is_identity((cnf, roles) in cnf_strategy()) {
            let text = emit_dimacs(&cnf, &roles);
            let parsed = parse_dimacs(&text).unwrap();
            prop_assert_eq!(&parsed.cnf, &cnf);
            prop_assert_eq!(parsed.render(), text);
        }
    }
}
