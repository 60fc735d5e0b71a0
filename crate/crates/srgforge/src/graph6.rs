//! graph6 encoding of simple graphs.

use srgforge_core::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} outside the printable graph6 range")]
    BadByte(u8),
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("graph too large for graph6")]
    TooLarge,
}

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn sixbits(bytes: &[u8]) -> Result<Vec<u8>, Graph6Error> {
    bytes.iter().map(|&b| if (63..=126).contains(&b) { Ok(b - 63) } else { Err(Graph6Error::BadByte(b)) }).collect()
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let bytes = line.strip_prefix(HEADER).unwrap_or(line).as_bytes();
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    let (n, rest) = if first != 126 {
        (sixbits(&bytes[..1])?[0] as usize, &bytes[1..])
    } else if bytes.get(1) != Some(&126) {
        let d = sixbits(bytes.get(1..4).ok_or(Graph6Error::Length { expected: 3, found: bytes.len() - 1 })?)?;
        (d.iter().fold(0usize, |a, &x| a << 6 | x as usize), &bytes[4..])
    } else {
        let d = sixbits(bytes.get(2..8).ok_or(Graph6Error::Length { expected: 6, found: bytes.len() - 2 })?)?;
        let n = d.iter().fold(0u64, |a, &x| a << 6 | x as u64);
        (usize::try_from(n).map_err(|_| Graph6Error::TooLarge)?, &bytes[8..])
    };
    let total = n * n.saturating_sub(1) / 2;
    let expected = total.div_ceil(6);
    if rest.len() != expected {
        return Err(Graph6Error::Length { expected, found: rest.len() });
    }
    let data = sixbits(rest)?;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if data[k / 6] >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Decodes one graph per nonempty line.
pub fn decode_all(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        assert_eq!(encode(&Graph::complete(3)), "Bw");
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn empty_graph() {
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().order(), 0);
        assert_eq!(decode(">>graph6<<?\n").unwrap().order(), 0);
    }

    #[test]
    fn large_sizes() {
        let g = Graph::cycle(100);
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("Bww"), Err(Graph6Error::Length { .. })));
        assert!(matches!(decode("B "), Err(Graph6Error::BadByte(b' '))));
    }
}
