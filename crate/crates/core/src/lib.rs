//! Geometric feature extraction from character skeletons.
//!
//! A skeleton is cropped to its bounding box, zoned (a 3×3 grid plus three
//! horizontal strips), and each zone is traversed into line segments. Segments
//! are turned into clockwise direction codes, split at V-shaped turns and
//! classified as horizontal, vertical or one of two diagonals. Per-zone line
//! counts, lengths and areas plus three whole-image features (Euler number,
//! area, eccentricity) form a 111-value feature vector.
//!
//! ```
//! use glyphgeom::{extract_features, BitGrid, FEATURE_LEN};
//!
//! let x = BitGrid::from_rows(&[
//!     [1, 0, 0, 0, 1],
//!     [0, 1, 0, 1, 0],
//!     [0, 0, 1, 0, 0],
//!     [0, 1, 0, 1, 0],
//!     [1, 0, 0, 0, 1],
//! ]);
//! let fv = extract_features(&x).unwrap();
//! assert_eq!(fv.values.len(), FEATURE_LEN);
//! assert_eq!(fv.euler(), 1.0);
//! ```

pub mod classify;
pub mod corpus;
mod error;
pub mod features;
pub mod geometry;
mod grid;
pub mod ingest;
pub mod record;
pub mod segments;
pub mod traversal;

pub use classify::{evaluate, knn_predict, Dataset, EvalReport};
pub use corpus::build_corpus;
pub use error::{Error, Result};
pub use features::{extract_features, FeatureVector, ZoneFeatures, FEATURE_LEN};
pub use geometry::{universe_of_discourse, zone, ZoneScheme, ZoneSet};
pub use grid::{direction_code, BitGrid, Coord, GrayGrid, NEIGHBOUR_OFFSETS};
pub use ingest::{binarize, parse_image, thin, ImageFormat, Raster};
pub use segments::{classify, direction_vector, split_directions, DirectionVector, LineType};
pub use traversal::{classify_pixels, extract_segments, neighbours, PixelClassification, Segment};
