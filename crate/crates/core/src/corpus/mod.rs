//! Synthetic glyph corpus: stroke templates for A–Z, rendered to skeletons and
//! perturbed by seeded shifts and rescaling.

mod templates;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use templates::uppercase;

use crate::classify::Dataset;
use crate::error::{Error, Result};
use crate::features::{extract_features, FeatureVector};
use crate::grid::{BitGrid, Coord};
use crate::ingest::thin;

/// Reference grid side length for template coordinates.
pub const REFERENCE_SIZE: u8 = 16;
pub const MIN_RENDER_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphTemplate {
    pub label: char,
    /// Line primitives as endpoint pairs in reference-grid (row, col) units.
    pub strokes: Vec<((u8, u8), (u8, u8))>,
}

/// Maps a reference coordinate into `1..=size-2`, leaving a one-pixel margin
/// for the pen.
fn scale(v: u8, size: usize) -> usize {
    let span = usize::from(REFERENCE_SIZE - 1);
    1 + (usize::from(v) * (size - 3) + span / 2) / span
}

/// Bresenham line between two in-bounds cells.
fn draw_line(img: &mut BitGrid, from: Coord, to: Coord) {
    let (mut r, mut c) = (from.row as isize, from.col as isize);
    let (r1, c1) = (to.row as isize, to.col as isize);
    let dr = (r1 - r).abs();
    let dc = -(c1 - c).abs();
    let sr = if r < r1 { 1 } else { -1 };
    let sc = if c < c1 { 1 } else { -1 };
    let mut err = dr + dc;
    loop {
        img.set(Coord::new(r as usize, c as usize), true);
        if r == r1 && c == c1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dc {
            err += dc;
            r += sr;
        }
        if e2 <= dr {
            err += dr;
            c += sc;
        }
    }
}

/// 3×3 dilation.
fn dilate(img: &BitGrid) -> BitGrid {
    let mut out = img.clone();
    for p in img.foreground() {
        for code in 1..=8 {
            if let Some(n) = img.step(p, code) {
                out.set(n, true);
            }
        }
    }
    out
}

/// Draws the template's strokes with a 3-pixel pen, then thins the result.
/// The pen closes the one-pixel gaps rounding can leave where strokes meet.
pub fn render(template: &GlyphTemplate, rows: usize, cols: usize) -> Result<BitGrid> {
    if rows < MIN_RENDER_SIZE || cols < MIN_RENDER_SIZE {
        return Err(Error::InvalidArgument(format!(
            "render size {rows}×{cols} is below {MIN_RENDER_SIZE}×{MIN_RENDER_SIZE}"
        )));
    }
    let mut img = BitGrid::new(rows, cols);
    for &((r0, c0), (r1, c1)) in &template.strokes {
        let from = Coord::new(scale(r0, rows), scale(c0, cols));
        let to = Coord::new(scale(r1, rows), scale(c1, cols));
        draw_line(&mut img, from, to);
    }
    Ok(thin(&dilate(&img)))
}

/// Nearest-neighbour resampling to `rows × cols`.
fn resample(img: &BitGrid, rows: usize, cols: usize) -> BitGrid {
    let mut out = BitGrid::new(rows, cols);
    for r in 0..rows {
        let sr = ((r * img.rows()) / rows).min(img.rows() - 1);
        for c in 0..cols {
            let sc = ((c * img.cols()) / cols).min(img.cols() - 1);
            if img.get(Coord::new(sr, sc)) {
                out.set(Coord::new(r, c), true);
            }
        }
    }
    out
}

/// Seeded random rescale (each axis independently within ±`scale_pct` %)
/// followed by a random translation within ±`shift` pixels. The canvas grows
/// by `shift` on every side so nothing is clipped. Rescaled images are
/// dilated before resampling and thinned afterwards so strokes stay connected.
pub fn perturb(img: &BitGrid, seed: u64, shift: usize, scale_pct: u32) -> BitGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = f64::from(scale_pct) / 100.0;
    let fy = 1.0 + rng.gen_range(-1.0..=1.0) * s;
    let fx = 1.0 + rng.gen_range(-1.0..=1.0) * s;
    let dy = rng.gen_range(0..=2 * shift);
    let dx = rng.gen_range(0..=2 * shift);

    let mut shape = img.clone();
    if scale_pct > 0 && !img.is_empty() {
        let rows = ((img.rows() as f64 * fy).round() as usize).max(1);
        let cols = ((img.cols() as f64 * fx).round() as usize).max(1);
        let scaled = thin(&resample(&dilate(img), rows, cols));
        if scaled.count_foreground() > 0 || img.count_foreground() == 0 {
            shape = scaled;
        }
    }
    shape.pad(dy, 2 * shift - dy, dx, 2 * shift - dx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Perturbation seed of one glyph instance. Depends only on its identity, so
/// generation order (and thread count) cannot change the corpus.
pub fn instance_seed(master: u64, split: Split, label_index: usize, instance: usize) -> u64 {
    let tag = match split {
        Split::Train => 1,
        Split::Test => 2,
    };
    mix(mix(mix(mix(master) ^ tag) ^ label_index as u64) ^ instance as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Render size (square) before perturbation.
    pub size: usize,
    pub shift: usize,
    pub scale_pct: u32,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            size: 24,
            shift: 3,
            scale_pct: 20,
        }
    }
}

/// One generated glyph instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub label: char,
    pub split: Split,
    /// Per-label index; training instances come first, then test instances.
    pub index: usize,
    pub seed: u64,
    pub image: BitGrid,
}

impl Sample {
    /// Relative path used for PBM dumps and as the record source.
    pub fn path(&self) -> String {
        format!("corpus/{}/{}.pbm", self.label, self.index)
    }
}

impl CorpusConfig {
    pub fn generate(&self, n_train: usize, n_test: usize, seed: u64) -> Result<Vec<Sample>> {
        if n_train == 0 || n_test == 0 {
            return Err(Error::InvalidArgument(
                "corpus counts must be at least 1".into(),
            ));
        }
        let bases = uppercase()
            .iter()
            .map(|t| Ok((t.label, render(t, self.size, self.size)?)))
            .collect::<Result<Vec<_>>>()?;
        let jobs: Vec<(usize, Split, usize)> = (0..bases.len())
            .flat_map(|l| {
                (0..n_train)
                    .map(move |i| (l, Split::Train, i))
                    .chain((0..n_test).map(move |i| (l, Split::Test, i)))
            })
            .collect();
        Ok(jobs
            .into_par_iter()
            .map(|(l, split, i)| {
                let seed = instance_seed(seed, split, l, i);
                let (label, base) = &bases[l];
                Sample {
                    label: *label,
                    split,
                    index: if split == Split::Train {
                        i
                    } else {
                        n_train + i
                    },
                    seed,
                    image: perturb(base, seed, self.shift, self.scale_pct),
                }
            })
            .collect())
    }

    /// Generates the corpus and extracts labeled features. Train and test
    /// records are returned in label order.
    pub fn build(&self, n_train: usize, n_test: usize, seed: u64) -> Result<(Dataset, Dataset)> {
        let samples = self.generate(n_train, n_test, seed)?;
        let records = samples
            .par_iter()
            .map(|s| {
                extract_features(&s.image).map(|fv| {
                    (
                        s.split,
                        fv.with_label(s.label.to_string()).with_source(s.path()),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (train, test): (Vec<_>, Vec<_>) =
            records.into_iter().partition(|(s, _)| *s == Split::Train);
        let strip = |v: Vec<(Split, FeatureVector)>| v.into_iter().map(|(_, fv)| fv).collect();
        Ok((Dataset::new(strip(train))?, Dataset::new(strip(test))?))
    }
}

/// Corpus with the default render size and perturbation ranges.
pub fn build_corpus(
    n_train_per_label: usize,
    n_test_per_label: usize,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    CorpusConfig::default().build(n_train_per_label, n_test_per_label, seed)
}
