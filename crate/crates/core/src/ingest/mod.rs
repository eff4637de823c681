//! Reading images into grids, binarization and thinning.

mod netpbm;
mod text;
mod thin;

pub use netpbm::{decode_pbm, decode_pgm, encode_pbm, encode_pgm, Encoding};
pub use text::{decode_text_matrix, encode_text_matrix};
pub use thin::thin;

use crate::error::Result;
use crate::grid::{BitGrid, Coord, GrayGrid};

pub const DEFAULT_THRESHOLD: u8 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pbm,
    Pgm,
    TextMatrix,
}

impl ImageFormat {
    /// Guesses the format from the leading bytes: a Netpbm magic number selects
    /// PBM or PGM, anything else is read as a text matrix.
    pub fn detect(bytes: &[u8]) -> ImageFormat {
        match bytes {
            [b'P', b'1' | b'4', ..] => ImageFormat::Pbm,
            [b'P', b'2' | b'5', ..] => ImageFormat::Pgm,
            _ => ImageFormat::TextMatrix,
        }
    }
}

/// A decoded image: binary formats give a `BitGrid`, graymaps are kept as
/// intensities until binarized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Raster {
    Binary(BitGrid),
    Gray(GrayGrid),
}

impl Raster {
    /// Binary rasters pass through untouched; graymaps are thresholded.
    pub fn into_binary(self, threshold: u8) -> BitGrid {
        match self {
            Raster::Binary(b) => b,
            Raster::Gray(g) => binarize(&g, threshold),
        }
    }
}

pub fn parse_image(bytes: &[u8], format: ImageFormat) -> Result<Raster> {
    match format {
        ImageFormat::Pbm => decode_pbm(bytes).map(Raster::Binary),
        ImageFormat::Pgm => decode_pgm(bytes).map(Raster::Gray),
        ImageFormat::TextMatrix => decode_text_matrix(bytes).map(Raster::Binary),
    }
}

/// Dark ink on light paper: a pixel is foreground iff its 8-bit intensity is
/// below `threshold`.
pub fn binarize(gray: &GrayGrid, threshold: u8) -> BitGrid {
    let mut out = BitGrid::new(gray.rows(), gray.cols());
    for r in 0..gray.rows() {
        for c in 0..gray.cols() {
            let at = Coord::new(r, c);
            if gray.intensity(at) < threshold {
                out.set(at, true);
            }
        }
    }
    out
}
