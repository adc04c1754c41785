//! DIMACS CNF reader.
//!
//! Grammar: comment lines start with `c` and may appear anywhere; exactly one
//! header `p cnf V C` precedes the first clause; clauses are whitespace
//! separated literals terminated by `0` and may span lines.

use super::FormatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

pub fn parse_dimacs(text: &str) -> Result<CnfInstance, FormatError> {
    parse_dimacs_with(text, false)
}

pub fn parse_dimacs_with(text: &str, allow_empty_clauses: bool) -> Result<CnfInstance, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |msg: String| FormatError::Line { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err("second problem line".into()));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| err(format!("expected \"p cnf V C\", found {trimmed:?}")))?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(err("clause before the \"p cnf\" header".into()));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| err(format!("{tok:?} is not an integer literal")))?;
            if lit == 0 {
                if current.is_empty() && !allow_empty_clauses {
                    return Err(err("empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > vars as u64 {
                    return Err(err(format!("literal {lit} out of range 1..={vars}")));
                }
                current.push(lit);
            }
        }
    }

    let err = |msg: String| FormatError::Line { line: last_line.max(1), msg };
    let Some((vars, count)) = header else {
        return Err(err("missing \"p cnf V C\" header".into()));
    };
    if !current.is_empty() {
        return Err(err("last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(err(format!("header declares {count} clauses, found {}", clauses.len())));
    }
    Ok(CnfInstance { vars, clauses })
}
