//! Coloring files.
//!
//! Text: a header line `a n c`, then one line `v1 v2 ... va color` per edge.
//! Blank lines and lines starting with `#` are skipped. Every edge must
//! appear exactly once.
//!
//! Binary: `RCOL`, then little-endian `u32` fields version, a, n, c and
//! bits per edge, then the packed rank-ordered color words as `u64`.

use std::io::{BufRead, Read, Write};

use super::{edge_rank, Color, ColexSubsets, ColoredHypergraph, Coloring};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"RCOL";
const VERSION: u32 = 1;

fn io_err(e: std::io::Error) -> Error {
    Error::input(format!("i/o: {e}"))
}

pub fn write_text<W: Write>(g: &ColoredHypergraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {}", g.uniformity(), g.order(), g.colors()).map_err(io_err)?;
    let mut line = String::new();
    for (edge, color) in ColexSubsets::new(g.order(), g.uniformity()).zip(g.colors_by_rank()) {
        line.clear();
        for v in &edge {
            line.push_str(&v.to_string());
            line.push(' ');
        }
        line.push_str(&color.to_string());
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

pub fn read_text<R: BufRead>(input: R) -> Result<ColoredHypergraph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty() && !s.trim_start().starts_with('#')));

    let (lineno, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let header = numbers(&header.map_err(io_err)?, lineno)?;
    let [a, n, c] = header[..] else {
        return Err(Error::parse(lineno, "header must be `a n c`"));
    };
    if a == 0 || c < 2 || c > u8::MAX as u64 || n > u32::MAX as u64 {
        return Err(Error::parse(lineno, format!("unsupported header a={a} n={n} c={c}")));
    }
    let (a, n, c) = (a as usize, n as u32, c as u8);
    let total = super::binomial(n as u64, a as u64)
        .filter(|&t| t <= 1 << 32)
        .ok_or_else(|| Error::parse(lineno, "too many edges for the text format"))?;
    let mut colors: Vec<Option<Color>> = vec![None; total as usize];

    for (lineno, line) in lines {
        let nums = numbers(&line.map_err(io_err)?, lineno)?;
        if nums.len() != a + 1 {
            return Err(Error::parse(lineno, format!("expected {a} vertices and a color")));
        }
        let edge: Vec<u32> = nums[..a]
            .iter()
            .map(|&v| u32::try_from(v).map_err(|_| Error::parse(lineno, "vertex out of range")))
            .collect::<Result<_>>()?;
        let rank = edge_rank(&edge, n, a).map_err(|e| Error::parse(lineno, e.to_string()))?;
        let color = nums[a];
        if color >= c as u64 {
            return Err(Error::parse(lineno, format!("color {color} out of range for c = {c}")));
        }
        let slot = &mut colors[rank as usize];
        if slot.is_some() {
            return Err(Error::parse(lineno, format!("edge {edge:?} listed twice")));
        }
        *slot = Some(color as Color);
    }

    if let Some(missing) = colors.iter().position(Option::is_none) {
        let edge = super::edge_unrank(missing as u64, n, a)?;
        return Err(Error::input(format!("edge {edge:?} has no color")));
    }
    let colors: Vec<Color> = colors.into_iter().map(|c| c.unwrap_or_default()).collect();
    ColoredHypergraph::from_colors(n, a, c, &colors)
}

pub fn write_binary<W: Write>(g: &ColoredHypergraph, mut out: W) -> Result<()> {
    out.write_all(MAGIC).map_err(io_err)?;
    for field in [VERSION, g.uniformity() as u32, g.order(), g.colors() as u32, g.bits_per_edge()] {
        out.write_all(&field.to_le_bytes()).map_err(io_err)?;
    }
    for w in g.packed_words() {
        out.write_all(&w.to_le_bytes()).map_err(io_err)?;
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut input: R) -> Result<ColoredHypergraph> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic).map_err(io_err)?;
    if &magic != MAGIC {
        return Err(Error::input("not a binary coloring file"));
    }
    let mut field = || -> Result<u32> {
        let mut b = [0u8; 4];
        input.read_exact(&mut b).map_err(io_err)?;
        Ok(u32::from_le_bytes(b))
    };
    let (version, a, n, c, bits) = (field()?, field()?, field()?, field()?, field()?);
    if version != VERSION {
        return Err(Error::input(format!("unsupported binary version {version}")));
    }
    if c < 2 || c > u8::MAX as u32 || a == 0 {
        return Err(Error::input(format!("unsupported header a={a} c={c}")));
    }
    if bits != super::bits_per_color(c as u8) {
        return Err(Error::input(format!("{bits} bits per edge does not match c = {c}")));
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest).map_err(io_err)?;
    if rest.len() % 8 != 0 {
        return Err(Error::input("truncated color array"));
    }
    let words = rest
        .chunks_exact(8)
        .map(|ch| u64::from_le_bytes(ch.try_into().expect("8 bytes")))
        .collect();
    ColoredHypergraph::from_packed(n, a as usize, c as u8, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ColoredHypergraph {
        ColoredHypergraph::from_fn(7, 3, 3, |e| ((e[0] * e[1] + e[2]) % 3) as Color).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let g = sample();
        let mut buf = Vec::new();
        write_text(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("3 7 3\n1 2 3 "));
        assert_eq!(read_text(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let g = sample();
        let mut buf = Vec::new();
        write_binary(&g, &mut buf).unwrap();
        let back = read_binary(buf.as_slice()).unwrap();
        assert_eq!(back, g);
        let mut again = Vec::new();
        write_binary(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn text_rejects_missing_and_duplicate_edges() {
        assert!(read_text("2 3 2\n1 2 0\n1 3 1\n".as_bytes()).is_err());
        assert!(read_text("2 3 2\n1 2 0\n1 3 1\n2 3 0\n1 2 1\n".as_bytes()).is_err());
        assert!(read_text("2 3 2\n1 2 0\n1 3 2\n2 3 0\n".as_bytes()).is_err());
        assert!(read_text("2 3 2\n2 1 0\n1 3 1\n2 3 0\n".as_bytes()).is_err());
        let ok = read_text("# triangle\n2 3 2\n\n2 3 0\n1 2 1\n1 3 1\n".as_bytes()).unwrap();
        assert_eq!(ok.color(&[1, 2]), 1);
    }

    #[test]
    fn binary_rejects_garbage() {
        assert!(read_binary(&b"XCOL"[..]).is_err());
        let g = sample();
        let mut buf = Vec::new();
        write_binary(&g, &mut buf).unwrap();
        buf.truncate(buf.len() - 3);
        assert!(read_binary(buf.as_slice()).is_err());
    }
}
