//! Raster types shared by every stage of the pipeline.

use std::fmt;
use std::ops::Range;

/// Pixel position. Fields are zero-based; `Display` prints the 1-based
/// `(row,col)` form used in every textual output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub const fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }

    /// Builds a coordinate from 1-based row/column numbers.
    ///
    /// Panics if either number is zero.
    pub fn one_based(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "1-based coordinates start at 1");
        Coord::new(row - 1, col - 1)
    }

    pub fn to_one_based(self) -> (usize, usize) {
        (self.row + 1, self.col + 1)
    }

    /// True when `other` is one of the eight cells around `self`.
    pub fn is_adjacent(self, other: Coord) -> bool {
        self != other && self.row.abs_diff(other.row) <= 1 && self.col.abs_diff(other.col) <= 1
    }

    fn offset(self, dr: isize, dc: isize) -> Option<Coord> {
        Some(Coord::new(
            self.row.checked_add_signed(dr)?,
            self.col.checked_add_signed(dc)?,
        ))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// Row/column offsets of the eight neighbours, indexed by direction code − 1.
/// Codes run clockwise starting from the cell directly below.
pub const NEIGHBOUR_OFFSETS: [(isize, isize); 8] = [
    (1, 0),   // 1: below
    (1, -1),  // 2: below-left
    (0, -1),  // 3: left
    (-1, -1), // 4: above-left
    (-1, 0),  // 5: above
    (-1, 1),  // 6: above-right
    (0, 1),   // 7: right
    (1, 1),   // 8: below-right
];

/// Direction code (1..=8) of the step from `from` to an adjacent `to`.
pub fn direction_code(from: Coord, to: Coord) -> Option<u8> {
    let dr = to.row as isize - from.row as isize;
    let dc = to.col as isize - from.col as isize;
    NEIGHBOUR_OFFSETS
        .iter()
        .position(|&o| o == (dr, dc))
        .map(|i| i as u8 + 1)
}

/// Rectangular binary raster, row-major, `true` = foreground.
///
/// Grids read from files always have at least one row and column. Zero-extent
/// grids only arise from zoning very small images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitGrid {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BitGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        BitGrid {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    /// Panics if `cells.len() != rows * cols`.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<bool>) -> Self {
        assert_eq!(
            cells.len(),
            rows * cols,
            "cell count must equal rows × cols"
        );
        BitGrid { rows, cols, cells }
    }

    /// Builds a grid from rows of 0/1 values. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            cells.extend(r.iter().map(|&v| v != 0));
        }
        BitGrid::from_cells(rows.len(), cols, cells)
    }

    pub fn from_coords(rows: usize, cols: usize, coords: impl IntoIterator<Item = Coord>) -> Self {
        let mut g = BitGrid::new(rows, cols);
        for c in coords {
            g.set(c, true);
        }
        g
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// True when the grid has zero rows or zero columns.
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.row < self.rows && c.col < self.cols
    }

    /// Out-of-bounds cells read as background.
    pub fn get(&self, c: Coord) -> bool {
        self.in_bounds(c) && self.cells[c.row * self.cols + c.col]
    }

    pub fn set(&mut self, c: Coord, value: bool) {
        assert!(self.in_bounds(c), "{c} out of bounds");
        self.cells[c.row * self.cols + c.col] = value;
    }

    /// Foreground pixels in scan order (top-to-bottom, left-to-right).
    pub fn foreground(&self) -> impl Iterator<Item = Coord> + '_ {
        let cols = self.cols;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(move |(i, _)| Coord::new(i / cols, i % cols))
    }

    pub fn count_foreground(&self) -> usize {
        self.cells.iter().filter(|&&v| v).count()
    }

    /// Neighbour cell in direction `code` (1..=8), if it lies inside the grid.
    pub fn step(&self, c: Coord, code: u8) -> Option<Coord> {
        let (dr, dc) = NEIGHBOUR_OFFSETS[usize::from(code - 1)];
        c.offset(dr, dc).filter(|n| self.in_bounds(*n))
    }

    /// Copies out the sub-grid covering `rows × cols`.
    pub fn sub_grid(&self, rows: Range<usize>, cols: Range<usize>) -> BitGrid {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            let base = r * self.cols;
            cells.extend_from_slice(&self.cells[base + cols.start..base + cols.end]);
        }
        BitGrid::from_cells(rows.len(), cols.len(), cells)
    }

    /// Surrounds the grid with background margins.
    pub fn pad(&self, top: usize, bottom: usize, left: usize, right: usize) -> BitGrid {
        let mut out = BitGrid::new(self.rows + top + bottom, self.cols + left + right);
        for c in self.foreground() {
            out.set(Coord::new(c.row + top, c.col + left), true);
        }
        out
    }
}

impl fmt::Debug for BitGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitGrid {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(Coord::new(r, c)) { '#' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Grayscale raster as read from a PGM file. Samples are kept at the file's
/// own scale (`0..=maxval`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayGrid {
    rows: usize,
    cols: usize,
    maxval: u16,
    samples: Vec<u16>,
}

impl GrayGrid {
    /// Panics if the sample count is wrong, `maxval` is zero, or a sample
    /// exceeds `maxval`.
    pub fn new(rows: usize, cols: usize, maxval: u16, samples: Vec<u16>) -> Self {
        assert_eq!(samples.len(), rows * cols);
        assert!(maxval > 0);
        assert!(samples.iter().all(|&s| s <= maxval));
        GrayGrid {
            rows,
            cols,
            maxval,
            samples,
        }
    }

    /// 8-bit grid from rows of intensities.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut samples = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            samples.extend(r.as_ref().iter().map(|&v| u16::from(v)));
        }
        GrayGrid::new(rows.len(), cols, 255, samples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn samples(&self) -> &[u16] {
        &self.samples
    }

    /// Sample rescaled to 0..=255, rounding to nearest.
    pub fn intensity(&self, c: Coord) -> u8 {
        let s = u32::from(self.samples[c.row * self.cols + c.col]);
        let m = u32::from(self.maxval);
        ((s * 255 + m / 2) / m) as u8
    }
}
