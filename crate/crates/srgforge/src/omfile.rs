//! Text format for orbit matrices: a header `t n1 … nt`, a line `v k l m`,
//! then `t` rows of `t` integers. `#` starts a comment.

use std::fmt::Write as _;

use srgforge_core::graph::SrgParams;
use srgforge_core::orbitmat::OrbitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OmFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>, OmFileError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>().map_err(|_| OmFileError::Parse { line: lineno, message: format!("bad integer {t:?}") })
        })
        .collect()
}

pub fn parse(text: &str) -> Result<OrbitMatrix, OmFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or(OmFileError::Truncated("header"))?;
    let header = numbers(header, ln)?;
    let t = *header.first().ok_or(OmFileError::Truncated("orbit count"))? as usize;
    if header.len() != t + 1 {
        return Err(OmFileError::Parse { line: ln, message: format!("expected {t} orbit lengths") });
    }
    let (ln, p) = lines.next().ok_or(OmFileError::Truncated("parameters"))?;
    let p = numbers(p, ln)?;
    if p.len() != 4 {
        return Err(OmFileError::Parse { line: ln, message: "expected `v k l m`".into() });
    }
    let mut entries = Vec::with_capacity(t);
    for _ in 0..t {
        let (ln, row) = lines.next().ok_or(OmFileError::Truncated("matrix row"))?;
        let row = numbers(row, ln)?;
        if row.len() != t {
            return Err(OmFileError::Parse { line: ln, message: format!("expected {t} entries") });
        }
        entries.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(OmFileError::Parse { line: ln, message: "trailing data".into() });
    }
    Ok(OrbitMatrix { lengths: header[1..].to_vec(), entries, params: SrgParams::new(p[0], p[1], p[2], p[3]) })
}

pub fn format(m: &OrbitMatrix) -> String {
    let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.t(), join(&m.lengths));
    let _ = writeln!(out, "{}", join(&m.params.as_array()));
    for row in &m.entries {
        let _ = writeln!(out, "{}", join(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# pentagon, one orbit\n1 5\n5 2 0 1\n2\n";
        let m = parse(text).unwrap();
        assert_eq!(m.lengths, vec![5]);
        assert_eq!(m.entries, vec![vec![2]]);
        assert_eq!(parse(&format(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(parse("2 5\n5 2 0 1\n2\n").is_err());
        assert!(parse("1 5\n5 2 0\n2\n").is_err());
        assert!(parse("1 5\n5 2 0 1\n2 3\n").is_err());
        assert!(parse("1 5\n5 2 0 1\n").is_err());
        assert!(parse("1 5\n5 2 0 1\n2\n7\n").is_err());
    }
}
