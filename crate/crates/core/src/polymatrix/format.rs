//! Text format for symmetric polynomial matrices:
//!
//! ```text
//! vars: x1 x2
//! dim: 2
//! entry 1 1: 1
//! entry 1 2: x1*x2
//! entry 2 2: 1 + x1^4*x2^2 + x1^2*x2^4
//! ```
//!
//! Indices are 1-based. Each entry also fills its mirror position; entries
//! never given are zero. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{MatrixError, SymbolicMatrix};
use crate::multipoly::{parse_poly, print_poly, Polynomial, VarSet};

fn format_err(line: usize, message: impl Into<String>) -> MatrixError {
    MatrixError::Format {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix_file(text: &str) -> Result<(VarSet, SymbolicMatrix), MatrixError> {
    let mut vars: Option<VarSet> = None;
    let mut dim: Option<usize> = None;
    let mut entries: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| format_err(line_no, "expected `key: value`"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "vars" => {
                if vars.is_some() {
                    return Err(format_err(line_no, "duplicate `vars` line"));
                }
                let set = VarSet::new(value.split_whitespace())
                    .map_err(|e| format_err(line_no, e.to_string()))?;
                vars = Some(set);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(format_err(line_no, "duplicate `dim` line"));
                }
                let n: usize = value
                    .parse()
                    .map_err(|_| format_err(line_no, format!("bad dimension `{value}`")))?;
                if n == 0 {
                    return Err(format_err(line_no, "dimension must be positive"));
                }
                dim = Some(n);
            }
            _ if key.starts_with("entry") => {
                let vs = vars
                    .as_ref()
                    .ok_or_else(|| format_err(line_no, "`vars` must precede entries"))?;
                let n = dim.ok_or_else(|| format_err(line_no, "`dim` must precede entries"))?;
                let idx: Vec<&str> = key["entry".len()..].split_whitespace().collect();
                let parse_idx = |s: &str| -> Result<usize, MatrixError> {
                    match s.parse::<usize>() {
                        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                        _ => Err(format_err(line_no, format!("index `{s}` outside 1..={n}"))),
                    }
                };
                if idx.len() != 2 {
                    return Err(format_err(line_no, "expected `entry i j: expression`"));
                }
                let (i, j) = (parse_idx(idx[0])?, parse_idx(idx[1])?);
                let slot = (i.min(j), i.max(j));
                let p = parse_poly(value, vs).map_err(|e| format_err(line_no, e.to_string()))?;
                if entries.insert(slot, p).is_some() {
                    return Err(format_err(
                        line_no,
                        format!("entry ({}, {}) given more than once", slot.0 + 1, slot.1 + 1),
                    ));
                }
            }
            _ => return Err(format_err(line_no, format!("unknown key `{key}`"))),
        }
    }

    let vars = vars.ok_or_else(|| format_err(0, "missing `vars` line"))?;
    let n = dim.ok_or_else(|| format_err(0, "missing `dim` line"))?;
    let nvars = vars.len();
    let mut polys = vec![Polynomial::zero(nvars); n * n];
    for ((i, j), p) in entries {
        polys[j * n + i] = p.clone();
        polys[i * n + j] = p;
    }
    Ok((vars.clone(), SymbolicMatrix::from_polys(n, nvars, polys)?))
}

/// Writes the upper triangle of a symmetric polynomial matrix.
pub fn write_matrix_file(vars: &VarSet, a: &SymbolicMatrix) -> Result<String, MatrixError> {
    a.require_symmetric()?;
    let polys = a.polynomial_entries()?;
    let n = a.dim();
    let mut out = String::new();
    let _ = writeln!(out, "vars: {vars}");
    let _ = writeln!(out, "dim: {n}");
    for i in 0..n {
        for j in i..n {
            let _ = writeln!(out, "entry {} {}: {}", i + 1, j + 1, print_poly(&polys[i * n + j], vars));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = "\
# 2x2 example
vars: x1 x2
dim: 2
entry 1 1: 1
entry 1 2: x1*x2
entry 2 2: 1 + x1^4*x2^2 + x1^2*x2^4
";

    #[test]
    fn parses_and_mirrors() {
        let (vars, a) = parse_matrix_file(EXAMPLE1).unwrap();
        assert_eq!(vars.names(), ["x1", "x2"]);
        assert_eq!(a.dim(), 2);
        assert!(a.is_symmetric());
        assert!(!a.get(1, 0).is_zero());
        let again = parse_matrix_file(&write_matrix_file(&vars, &a).unwrap()).unwrap().1;
        assert_eq!(again, a);
    }

    #[test]
    fn duplicate_and_conflicting_entries() {
        let dup = format!("{EXAMPLE1}entry 1 2: x1\n");
        assert!(matches!(parse_matrix_file(&dup), Err(MatrixError::Format { line: 7, .. })));
        let mirror = format!("{EXAMPLE1}entry 2 1: x1*x2\n");
        assert!(parse_matrix_file(&mirror).is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_matrix_file("dim: 1\nentry 1 1: 1\n").is_err());
        assert!(parse_matrix_file("vars: x1\ndim: 1\nentry 1 2: 1\n").is_err());
        assert!(parse_matrix_file("vars: x1\ndim: 1\nentry 1 1: x1 +\n").is_err());
        assert!(parse_matrix_file("vars: x1\ndim: 1\nentry 1 1: y\n").is_err());
        assert!(parse_matrix_file("vars: x1 x1\ndim: 1\n").is_err());
        assert!(parse_matrix_file("vars: x1\ndim: 0\n").is_err());
        assert!(parse_matrix_file("vars: x1\nsize: 1\n").is_err());
    }

    #[test]
    fn constant_matrix_without_variables() {
        let (vars, a) = parse_matrix_file("vars:\ndim: 2\nentry 1 1: 2\nentry 2 2: 3\n").unwrap();
        assert!(vars.is_empty());
        assert!(a.get(0, 1).is_zero());
    }
}
