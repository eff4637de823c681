//! Per-zone feature records, regional features and the full extraction
//! pipeline.
//!
//! Layout of the 111-value vector:
//!
//! | range    | content                                     |
//! |----------|---------------------------------------------|
//! | 0..81    | 3×3 grid zones, row-major, 9 values each    |
//! | 81..108  | 3 horizontal strips, top to bottom, 9 each  |
//! | 108      | Euler number                                |
//! | 109      | regional area                               |
//! | 110      | eccentricity                                |
//!
//! Each zone block is `[n_h, n_v, n_rd, n_ld, len_h, len_v, len_rd, len_ld, area]`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{universe_of_discourse, zone, Zone, ZoneScheme};
use crate::grid::{BitGrid, Coord};
use crate::segments::{split_segment, LineType, TypedSegment};
use crate::traversal::extract_segments;

pub const ZONE_FEATURES: usize = 9;
pub const ZONE_COUNT: usize = 12;
pub const FEATURE_LEN: usize = ZONE_COUNT * ZONE_FEATURES + 3;
pub const EULER_INDEX: usize = 108;
pub const AREA_INDEX: usize = 109;
pub const ECCENTRICITY_INDEX: usize = 110;

/// Raw per-type tallies for one zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZoneTally {
    pub counts: [usize; 4],
    pub pixels: [usize; 4],
    pub foreground: usize,
    /// Zone width × height.
    pub extent: usize,
}

impl ZoneTally {
    pub fn new(zone: &BitGrid, segments: &[TypedSegment]) -> Self {
        let mut t = ZoneTally {
            foreground: zone.count_foreground(),
            extent: zone.len(),
            ..Default::default()
        };
        for s in segments {
            if let Some(ty) = s.line_type {
                t.counts[ty.index()] += 1;
                t.pixels[ty.index()] += s.pixels.len();
            }
        }
        t
    }
}

/// Normalized count: 1 for no lines, dropping by 0.2 per line (unclamped).
pub fn normalized_count(raw: usize) -> f64 {
    1.0 - (raw as f64 / 10.0) * 2.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneFeatures {
    pub counts: [f64; 4],
    pub lengths: [f64; 4],
    pub area: f64,
}

impl ZoneFeatures {
    /// Record of a zone with no skeleton, or with no pixels at all.
    pub const EMPTY: ZoneFeatures = ZoneFeatures {
        counts: [1.0; 4],
        lengths: [0.0; 4],
        area: 0.0,
    };

    pub fn to_array(&self) -> [f64; ZONE_FEATURES] {
        let mut out = [0.0; ZONE_FEATURES];
        out[..4].copy_from_slice(&self.counts);
        out[4..8].copy_from_slice(&self.lengths);
        out[8] = self.area;
        out
    }
}

impl From<ZoneTally> for ZoneFeatures {
    fn from(t: ZoneTally) -> Self {
        if t.extent == 0 {
            return ZoneFeatures::EMPTY;
        }
        let extent = t.extent as f64;
        ZoneFeatures {
            counts: t.counts.map(normalized_count),
            lengths: t.pixels.map(|p| p as f64 / extent),
            area: t.foreground as f64 / extent,
        }
    }
}

/// `segments` must be the split, typed segments of exactly this zone.
pub fn zone_features(zone: &BitGrid, segments: &[TypedSegment]) -> ZoneFeatures {
    ZoneTally::new(zone, segments).into()
}

/// Traverses a zone and splits/classifies every segment.
pub fn typed_segments(zone: &BitGrid) -> Vec<TypedSegment> {
    extract_segments(zone)
        .iter()
        .flat_map(split_segment)
        .collect()
}

fn flood_count(
    rows: usize,
    cols: usize,
    is_member: impl Fn(usize, usize) -> bool,
    offsets: &[(isize, isize)],
) -> usize {
    let mut seen = vec![false; rows * cols];
    let mut components = 0;
    let mut queue = VecDeque::new();
    for start in 0..rows * cols {
        if seen[start] || !is_member(start / cols, start % cols) {
            continue;
        }
        components += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / cols, i % cols);
            for &(dr, dc) in offsets {
                let (Some(nr), Some(nc)) = (r.checked_add_signed(dr), c.checked_add_signed(dc))
                else {
                    continue;
                };
                if nr < rows && nc < cols && !seen[nr * cols + nc] && is_member(nr, nc) {
                    seen[nr * cols + nc] = true;
                    queue.push_back(nr * cols + nc);
                }
            }
        }
    }
    components
}

const EIGHT: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];
const FOUR: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];

/// Number of 8-connected foreground components.
pub fn count_objects(img: &BitGrid) -> usize {
    flood_count(
        img.rows(),
        img.cols(),
        |r, c| img.get(Coord::new(r, c)),
        &EIGHT,
    )
}

/// Number of 4-connected background regions that do not reach the border.
pub fn count_holes(img: &BitGrid) -> usize {
    // A one-pixel background frame joins every border-touching region into one.
    let padded = img.pad(1, 1, 1, 1);
    let regions = flood_count(
        padded.rows(),
        padded.cols(),
        |r, c| !padded.get(Coord::new(r, c)),
        &FOUR,
    );
    regions - 1
}

/// Objects minus holes (8-connected foreground, 4-connected background).
pub fn euler_number(img: &BitGrid) -> i64 {
    count_objects(img) as i64 - count_holes(img) as i64
}

/// Fraction of the image covered by foreground.
pub fn regional_area(img: &BitGrid) -> Result<f64> {
    if img.is_empty() {
        return Err(Error::ZeroExtent);
    }
    Ok(img.count_foreground() as f64 / img.len() as f64)
}

/// Eccentricity of the ellipse with the same second central moments as the
/// foreground pixels: `sqrt(1 − λ2/λ1)` for covariance eigenvalues λ1 ≥ λ2.
pub fn eccentricity(img: &BitGrid) -> Result<f64> {
    let pts: Vec<(f64, f64)> = img
        .foreground()
        .map(|c| (c.row as f64, c.col as f64))
        .collect();
    if pts.is_empty() {
        return Err(Error::EmptySkeleton);
    }
    let n = pts.len() as f64;
    let mean_r = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_c = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut srr, mut scc, mut src) = (0.0, 0.0, 0.0);
    for &(r, c) in &pts {
        let (dr, dc) = (r - mean_r, c - mean_c);
        srr += dr * dr;
        scc += dc * dc;
        src += dr * dc;
    }
    let (a, c, b) = (srr / n, scc / n, src / n);
    let half_trace = (a + c) / 2.0;
    let spread = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let major = half_trace + spread;
    let minor = (half_trace - spread).max(0.0);
    if major <= 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 - minor / major).clamp(0.0, 1.0).sqrt())
}

/// The 111-value feature vector of one character image.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub label: Option<String>,
    pub source: Option<String>,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Self {
        assert_eq!(
            values.len(),
            FEATURE_LEN,
            "feature vectors hold {FEATURE_LEN} values"
        );
        FeatureVector {
            values,
            label: None,
            source: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    /// The nine values of zone `i` (0..9 grid zones, 9..12 strips).
    pub fn zone(&self, i: usize) -> &[f64] {
        &self.values[i * ZONE_FEATURES..(i + 1) * ZONE_FEATURES]
    }

    pub fn euler(&self) -> f64 {
        self.values[EULER_INDEX]
    }
}

/// Typed segments of one zone, with pixel positions mapped back into the
/// cropped image.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneAnalysis {
    pub index: usize,
    pub scheme: ZoneScheme,
    pub rows: std::ops::Range<usize>,
    pub cols: std::ops::Range<usize>,
    pub tally: ZoneTally,
    pub segments: Vec<TypedSegment>,
}

fn analyse_zone(index: usize, scheme: ZoneScheme, z: &Zone) -> ZoneAnalysis {
    let local = typed_segments(&z.grid);
    let tally = ZoneTally::new(&z.grid, &local);
    let segments = local
        .into_iter()
        .map(|mut s| {
            for p in &mut s.pixels {
                *p = Coord::new(p.row + z.rows.start, p.col + z.cols.start);
            }
            s
        })
        .collect();
    ZoneAnalysis {
        index,
        scheme,
        rows: z.rows.clone(),
        cols: z.cols.clone(),
        tally,
        segments,
    }
}

/// Crops the skeleton and analyses all twelve zones in feature-vector order.
/// Returns the crop alongside the per-zone results.
pub fn analyse(img: &BitGrid) -> Result<(BitGrid, Vec<ZoneAnalysis>)> {
    let crop = universe_of_discourse(img)?;
    let mut zones = Vec::with_capacity(ZONE_COUNT);
    for scheme in [ZoneScheme::Grid3x3, ZoneScheme::Horizontal3] {
        for z in zone(&crop, scheme).zones {
            zones.push(analyse_zone(zones.len(), scheme, &z));
        }
    }
    Ok((crop, zones))
}

pub fn extract_features(img: &BitGrid) -> Result<FeatureVector> {
    let (crop, zones) = analyse(img)?;
    let mut values = Vec::with_capacity(FEATURE_LEN);
    for z in &zones {
        values.extend(ZoneFeatures::from(z.tally).to_array());
    }
    values.push(euler_number(&crop) as f64);
    values.push(regional_area(&crop)?);
    values.push(eccentricity(&crop)?);
    Ok(FeatureVector::new(values))
}

/// Line-oriented dump of every typed segment:
/// `zone=<i> type=<t> pixels=(r,c)(r,c)...`, 1-based coordinates within the
/// cropped image. Single-pixel segments have type `none`.
pub fn segment_dump(img: &BitGrid) -> Result<String> {
    let (_, zones) = analyse(img)?;
    let mut out = String::new();
    for z in &zones {
        for s in &z.segments {
            let ty = s.line_type.map_or("none", LineType::name);
            write!(out, "zone={} type={ty} pixels=", z.index).unwrap();
            for p in &s.pixels {
                write!(out, "{p}").unwrap();
            }
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn typed(ty: Option<LineType>, n: usize) -> TypedSegment {
        TypedSegment {
            pixels: (0..n).map(|c| Coord::new(0, c)).collect(),
            line_type: ty,
        }
    }

    #[test]
    fn zone_feature_examples() {
        let zone = BitGrid::new(4, 5);
        let two = [
            typed(Some(LineType::Horizontal), 2),
            typed(Some(LineType::Horizontal), 2),
        ];
        let f = zone_features(&zone, &two);
        assert!((f.counts[0] - 0.6).abs() < 1e-12);

        assert_eq!(zone_features(&zone, &[]), ZoneFeatures::EMPTY);

        let zone = BitGrid::from_coords(4, 5, (0..5).map(|c| Coord::new(1, c)));
        let f = zone_features(&zone, &[typed(Some(LineType::Horizontal), 5)]);
        assert_eq!(f.lengths, [0.25, 0.0, 0.0, 0.0]);
        assert_eq!(f.area, 0.25);
        assert_eq!(f.counts, [0.8, 1.0, 1.0, 1.0]);

        assert_eq!(zone_features(&BitGrid::new(0, 4), &[]), ZoneFeatures::EMPTY);
    }

    #[test]
    fn counts_go_negative_past_five_lines() {
        assert_eq!(normalized_count(0), 1.0);
        assert!((normalized_count(5) - 0.0).abs() < 1e-12);
        assert!((normalized_count(7) + 0.4).abs() < 1e-12);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(&BitGrid::from_rows(&[[1]])), 1);
        let ring = BitGrid::from_rows(&[[1, 1, 1], [1, 0, 1], [1, 1, 1]]);
        assert_eq!(euler_number(&ring), 0);
        let b = BitGrid::from_rows(&[[1, 1, 1], [1, 0, 1], [1, 1, 1], [1, 0, 1], [1, 1, 1]]);
        assert_eq!(euler_number(&b), -1);
        // Diagonal ring: one 8-connected object around one 4-connected hole.
        let leaky = BitGrid::from_rows(&[[0, 1, 0], [1, 0, 1], [0, 1, 0]]);
        assert_eq!(euler_number(&leaky), 0);
        let two = BitGrid::from_rows(&[[1, 0, 1]]);
        assert_eq!(euler_number(&two), 2);
        assert_eq!(euler_number(&BitGrid::new(2, 2)), 0);
    }

    #[test]
    fn regional_area_examples() {
        assert_eq!(regional_area(&BitGrid::from_rows(&[[1; 3]; 3])), Ok(1.0));
        let g = BitGrid::from_coords(5, 5, (0..5).map(|i| Coord::new(i, i)));
        assert_eq!(regional_area(&g), Ok(0.2));
        assert_eq!(regional_area(&BitGrid::new(3, 3)), Ok(0.0));
        assert_eq!(regional_area(&BitGrid::new(0, 3)), Err(Error::ZeroExtent));
    }

    #[test]
    fn eccentricity_examples() {
        let line = BitGrid::from_rows(&[[1, 1, 1, 1]]);
        assert_eq!(eccentricity(&line), Ok(1.0));
        let diag = BitGrid::from_coords(4, 4, (0..4).map(|i| Coord::new(i, i)));
        assert_eq!(eccentricity(&diag), Ok(1.0));
        assert_eq!(eccentricity(&BitGrid::from_rows(&[[1; 3]; 3])), Ok(0.0));
        assert_eq!(eccentricity(&BitGrid::from_rows(&[[1]])), Ok(0.0));
        assert_eq!(eccentricity(&BitGrid::new(2, 2)), Err(Error::EmptySkeleton));
    }

    #[test]
    fn eccentricity_of_l_shape() {
        // Moments by hand for {(1,1),(2,1),(2,2)}: var_r = var_c = 2/9,
        // cov = 1/9, eigenvalues 1/3 and 1/9, so e = sqrt(2/3).
        let l = BitGrid::from_rows(&[[1, 0], [1, 1]]);
        let e = eccentricity(&l).unwrap();
        assert!((e - 0.816_496_580_927_726).abs() < 1e-12, "{e}");
    }

    #[test]
    fn empty_skeleton_is_an_error() {
        assert_eq!(
            extract_features(&BitGrid::new(4, 4)),
            Err(Error::EmptySkeleton)
        );
    }
}
