//! PBM (P1/P4) and PGM (P2/P5) reading and writing.

use crate::error::{Error, Result};
use crate::grid::{BitGrid, GrayGrid};

/// Plain (ASCII) or raw (binary) Netpbm variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Plain,
    Raw,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(b) = self.peek() {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn magic(&mut self) -> Result<u8> {
        match self.bytes {
            [] => Err(Error::parse(0, "empty input")),
            [b'P', d @ b'1'..=b'5', ..] => {
                self.pos = 2;
                Ok(*d - b'0')
            }
            _ => Err(Error::parse(0, "missing Netpbm magic number")),
        }
    }

    fn uint(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let msg = match self.peek() {
                None => format!("truncated header, expected {what}"),
                Some(_) => format!("expected {what}"),
            };
            return Err(Error::parse(start, msg));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, format!("{what} out of range")))
    }

    fn dimensions(&mut self) -> Result<(usize, usize)> {
        let at = self.pos;
        let cols = self.uint("width")? as usize;
        let rows = self.uint("height")? as usize;
        if rows == 0 || cols == 0 {
            return Err(Error::parse(at, "zero image dimension"));
        }
        Ok((rows, cols))
    }

    fn maxval(&mut self) -> Result<u16> {
        let at = self.pos;
        match self.uint("maxval")? {
            v @ 1..=65535 => Ok(v as u16),
            _ => Err(Error::parse(at, "maxval must be in 1..=65535")),
        }
    }

    /// The single whitespace byte that separates a raw header from its raster.
    fn raster_separator(&mut self) -> Result<()> {
        match self.peek() {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(Error::parse(self.pos, "expected whitespace before raster")),
            None => Err(Error::parse(self.pos, "truncated payload")),
        }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(Error::parse(
                self.bytes.len(),
                format!(
                    "truncated payload: need {n} raster bytes, found {}",
                    self.bytes.len() - self.pos
                ),
            ));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn finish_plain(&mut self) -> Result<()> {
        self.skip_space_and_comments();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::parse(
                self.pos,
                "dimension mismatch: extra raster data",
            )),
        }
    }

    fn finish_raw(&self) -> Result<()> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(Error::parse(
                self.pos,
                "dimension mismatch: extra raster data",
            ))
        }
    }
}

/// Reads a P1 or P4 bitmap. Black (1) is foreground.
pub fn decode_pbm(bytes: &[u8]) -> Result<BitGrid> {
    let mut cur = Cursor::new(bytes);
    let magic = cur.magic()?;
    if magic != 1 && magic != 4 {
        return Err(Error::parse(
            0,
            format!("expected P1 or P4, found P{magic}"),
        ));
    }
    let (rows, cols) = cur.dimensions()?;
    let mut cells = Vec::with_capacity(rows * cols);
    if magic == 1 {
        while cells.len() < rows * cols {
            cur.skip_space_and_comments();
            match cur.peek() {
                Some(b'0') => cells.push(false),
                Some(b'1') => cells.push(true),
                Some(_) => return Err(Error::parse(cur.pos, "expected 0 or 1")),
                None => {
                    return Err(Error::parse(
                        cur.pos,
                        format!(
                            "truncated payload: {} of {} pixels",
                            cells.len(),
                            rows * cols
                        ),
                    ))
                }
            }
            cur.pos += 1;
        }
        cur.finish_plain()?;
    } else {
        cur.raster_separator()?;
        let stride = cols.div_ceil(8);
        let raster = cur.take(stride * rows)?;
        for row in raster.chunks_exact(stride) {
            cells.extend((0..cols).map(|c| row[c / 8] & (0x80 >> (c % 8)) != 0));
        }
        cur.finish_raw()?;
    }
    Ok(BitGrid::from_cells(rows, cols, cells))
}

/// Reads a P2 or P5 graymap.
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayGrid> {
    let mut cur = Cursor::new(bytes);
    let magic = cur.magic()?;
    if magic != 2 && magic != 5 {
        return Err(Error::parse(
            0,
            format!("expected P2 or P5, found P{magic}"),
        ));
    }
    let (rows, cols) = cur.dimensions()?;
    let maxval = cur.maxval()?;
    let mut samples = Vec::with_capacity(rows * cols);
    if magic == 2 {
        for _ in 0..rows * cols {
            let at = cur.pos;
            let v = cur.uint("sample")?;
            if v > u32::from(maxval) {
                return Err(Error::parse(
                    at,
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            samples.push(v as u16);
        }
        cur.finish_plain()?;
    } else {
        cur.raster_separator()?;
        let wide = maxval > 255;
        let start = cur.pos;
        let raster = cur.take(rows * cols * if wide { 2 } else { 1 })?;
        if wide {
            samples.extend(
                raster
                    .chunks_exact(2)
                    .map(|p| u16::from_be_bytes([p[0], p[1]])),
            );
        } else {
            samples.extend(raster.iter().map(|&b| u16::from(b)));
        }
        if let Some(i) = samples.iter().position(|&s| s > maxval) {
            return Err(Error::parse(
                start + i * if wide { 2 } else { 1 },
                format!("sample exceeds maxval {maxval}"),
            ));
        }
        cur.finish_raw()?;
    }
    Ok(GrayGrid::new(rows, cols, maxval, samples))
}

pub fn encode_pbm(img: &BitGrid, encoding: Encoding) -> Vec<u8> {
    let (rows, cols) = (img.rows(), img.cols());
    match encoding {
        Encoding::Plain => {
            let mut out = format!("P1\n{cols} {rows}\n").into_bytes();
            for row in img.cells().chunks(cols.max(1)) {
                let line: Vec<&str> = row.iter().map(|&v| if v { "1" } else { "0" }).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
            out
        }
        Encoding::Raw => {
            let mut out = format!("P4\n{cols} {rows}\n").into_bytes();
            for row in img.cells().chunks(cols.max(1)) {
                for byte in row.chunks(8) {
                    out.push(
                        byte.iter()
                            .enumerate()
                            .fold(0u8, |acc, (i, &v)| acc | (u8::from(v) << (7 - i))),
                    );
                }
            }
            out
        }
    }
}

pub fn encode_pgm(img: &GrayGrid, encoding: Encoding) -> Vec<u8> {
    let (rows, cols, maxval) = (img.rows(), img.cols(), img.maxval());
    match encoding {
        Encoding::Plain => {
            let mut out = format!("P2\n{cols} {rows}\n{maxval}\n").into_bytes();
            for row in img.samples().chunks(cols.max(1)) {
                let line: Vec<String> = row.iter().map(u16::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
            out
        }
        Encoding::Raw => {
            let mut out = format!("P5\n{cols} {rows}\n{maxval}\n").into_bytes();
            for &s in img.samples() {
                if maxval > 255 {
                    out.extend_from_slice(&s.to_be_bytes());
                } else {
                    out.push(s as u8);
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Coord;

    #[test]
    fn plain_pbm_two_by_two() {
        let g = decode_pbm(b"P1\n2 2\n1 0 0 1").unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        let fg: Vec<_> = g.foreground().collect();
        assert_eq!(fg, vec![Coord::one_based(1, 1), Coord::one_based(2, 2)]);
    }

    #[test]
    fn plain_pbm_accepts_comments_and_packed_digits() {
        let g = decode_pbm(b"P1\n# a comment\n3 1 # trailing\n101\n").unwrap();
        assert_eq!(g.cells(), &[true, false, true]);
    }

    #[test]
    fn raw_pbm_pads_rows_to_bytes() {
        // 10 columns → 2 bytes per row.
        let mut bytes = b"P4\n10 2\n".to_vec();
        bytes.extend_from_slice(&[0b1000_0000, 0b0100_0000, 0b0000_0001, 0b1000_0000]);
        let g = decode_pbm(&bytes).unwrap();
        let fg: Vec<_> = g.foreground().collect();
        assert_eq!(
            fg,
            vec![
                Coord::new(0, 0),
                Coord::new(0, 9),
                Coord::new(1, 7),
                Coord::new(1, 8)
            ]
        );
        assert_eq!(encode_pbm(&g, Encoding::Raw), bytes);
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(decode_pbm(b"").unwrap_err(), Error::parse(0, "empty input"));
        match decode_pbm(b"P1\n2 2\n1 0 0").unwrap_err() {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 12);
                assert!(message.contains("truncated"), "{message}");
            }
            e => panic!("{e:?}"),
        }
        match decode_pbm(b"P1\n2 x\n").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 5),
            e => panic!("{e:?}"),
        }
        match decode_pbm(b"P1\n1 1\n1 1\n").unwrap_err() {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 9);
                assert!(message.contains("dimension mismatch"));
            }
            e => panic!("{e:?}"),
        }
        assert!(decode_pbm(b"P4\n8 2\n\x01").unwrap_err().is_parse());
        assert!(decode_pbm(b"P1\n0 3\n").unwrap_err().is_parse());
        assert!(decode_pbm(b"P2\n1 1\n255\n0").is_err());
    }

    #[test]
    fn pgm_variants() {
        let g = decode_pgm(b"P2\n2 1\n15\n0 15\n").unwrap();
        assert_eq!(g.samples(), &[0, 15]);
        assert_eq!(g.maxval(), 15);
        let g = decode_pgm(b"P5\n2 1\n65535\n\x01\x02\xff\xff").unwrap();
        assert_eq!(g.samples(), &[0x0102, 0xffff]);
        assert!(decode_pgm(b"P2\n1 1\n10\n11\n").unwrap_err().is_parse());
        assert!(decode_pgm(b"P5\n2 1\n255\n\x00").unwrap_err().is_parse());
    }
}
