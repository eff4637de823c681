//! Bounding-box cropping and zoning.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::grid::BitGrid;

/// Crops `img` to the smallest rectangle holding all of its foreground.
pub fn universe_of_discourse(img: &BitGrid) -> Result<BitGrid> {
    let mut fg = img.foreground();
    let first = fg.next().ok_or(Error::EmptySkeleton)?;
    let (mut r0, mut r1, mut c0, mut c1) = (first.row, first.row, first.col, first.col);
    for c in fg {
        r0 = r0.min(c.row);
        r1 = r1.max(c.row);
        c0 = c0.min(c.col);
        c1 = c1.max(c.col);
    }
    Ok(img.sub_grid(r0..r1 + 1, c0..c1 + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZoneScheme {
    /// Nine windows in row-major order.
    Grid3x3,
    /// Three full-width strips, top to bottom.
    Horizontal3,
}

impl ZoneScheme {
    pub fn zone_count(self) -> usize {
        match self {
            ZoneScheme::Grid3x3 => 9,
            ZoneScheme::Horizontal3 => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zone {
    /// Zero-based, half-open ranges into the source grid.
    pub rows: Range<usize>,
    pub cols: Range<usize>,
    pub grid: BitGrid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZoneSet {
    pub scheme: ZoneScheme,
    pub zones: Vec<Zone>,
}

/// Split `n` into three ranges at `floor(i·n/3)`; later parts absorb the remainder.
fn thirds(n: usize) -> [Range<usize>; 3] {
    let b = |i: usize| i * n / 3;
    [b(0)..b(1), b(1)..b(2), b(2)..b(3)]
}

pub fn zone(img: &BitGrid, scheme: ZoneScheme) -> ZoneSet {
    let row_parts = thirds(img.rows());
    let zones = match scheme {
        ZoneScheme::Grid3x3 => {
            let col_parts = thirds(img.cols());
            row_parts
                .iter()
                .flat_map(|rows| {
                    col_parts
                        .iter()
                        .map(move |cols| (rows.clone(), cols.clone()))
                })
                .collect::<Vec<_>>()
        }
        ZoneScheme::Horizontal3 => row_parts
            .iter()
            .map(|rows| (rows.clone(), 0..img.cols()))
            .collect(),
    }
    .into_iter()
    .map(|(rows, cols)| Zone {
        grid: img.sub_grid(rows.clone(), cols.clone()),
        rows,
        cols,
    })
    .collect();
    ZoneSet { scheme, zones }
}
