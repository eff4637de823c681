//! Whitespace-separated 0/1 matrices, one image row per line.

use crate::error::{Error, Result};
use crate::grid::BitGrid;

pub fn decode_text_matrix(bytes: &[u8]) -> Result<BitGrid> {
    let mut rows = 0;
    let mut cols = None;
    let mut cells = Vec::new();
    let mut line_start = 0;
    for line in bytes.split_inclusive(|&b| b == b'\n') {
        let mut width = 0;
        let mut pos = line_start;
        for token in line.split(|b| b.is_ascii_whitespace()) {
            if !token.is_empty() {
                match token {
                    b"0" => cells.push(false),
                    b"1" => cells.push(true),
                    _ => return Err(Error::parse(pos, "expected 0 or 1")),
                }
                width += 1;
            }
            pos += token.len() + 1;
        }
        if width > 0 {
            match cols {
                None => cols = Some(width),
                Some(c) if c != width => {
                    return Err(Error::parse(
                        line_start,
                        format!(
                            "dimension mismatch: row {} has {width} columns, expected {c}",
                            rows + 1
                        ),
                    ))
                }
                Some(_) => {}
            }
            rows += 1;
        }
        line_start += line.len();
    }
    match cols {
        Some(cols) => Ok(BitGrid::from_cells(rows, cols, cells)),
        None => Err(Error::parse(0, "empty input")),
    }
}

pub fn encode_text_matrix(img: &BitGrid) -> Vec<u8> {
    let mut out = Vec::with_capacity(img.len() * 2);
    for row in img.cells().chunks(img.cols().max(1)) {
        let line: Vec<&str> = row.iter().map(|&v| if v { "1" } else { "0" }).collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}
