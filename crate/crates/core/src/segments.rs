//! Direction vectors, V-shape splitting and line-type classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{direction_code, Coord};
use crate::traversal::Segment;

/// Clockwise step codes (1 = down, 2 = down-left, … 8 = down-right) along a
/// segment. A segment of `n` pixels has `n − 1` codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DirectionVector(pub Vec<u8>);

impl DirectionVector {
    pub fn codes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u8>> for DirectionVector {
    fn from(codes: Vec<u8>) -> Self {
        assert!(
            codes.iter().all(|c| (1..=8).contains(c)),
            "direction codes are 1..=8"
        );
        DirectionVector(codes)
    }
}

/// Code of the reverse step: 1↔5, 2↔6, 3↔7, 4↔8.
pub fn opposite(code: u8) -> u8 {
    (code + 3) % 8 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineType {
    Horizontal,
    Vertical,
    RightDiagonal,
    LeftDiagonal,
}

impl LineType {
    /// Feature-vector order.
    pub const ALL: [LineType; 4] = [
        LineType::Horizontal,
        LineType::Vertical,
        LineType::RightDiagonal,
        LineType::LeftDiagonal,
    ];

    pub fn of_code(code: u8) -> LineType {
        match code {
            1 | 5 => LineType::Vertical,
            2 | 6 => LineType::RightDiagonal,
            3 | 7 => LineType::Horizontal,
            4 | 8 => LineType::LeftDiagonal,
            _ => panic!("invalid direction code {code}"),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            LineType::Horizontal => "horizontal",
            LineType::Vertical => "vertical",
            LineType::RightDiagonal => "right_diagonal",
            LineType::LeftDiagonal => "left_diagonal",
        }
    }
}

impl fmt::Display for LineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Panics if two consecutive pixels are not 8-adjacent.
pub fn direction_vector(seg: &Segment) -> DirectionVector {
    DirectionVector(
        seg.pixels
            .windows(2)
            .map(|w| direction_code(w[0], w[1]).expect("segment pixels must be 8-adjacent"))
            .collect(),
    )
}

fn is_rising(code: u8) -> bool {
    code == 2 || code == 6
}

fn is_falling(code: u8) -> bool {
    code == 4 || code == 8
}

/// Breaks a direction vector where a right diagonal turns into a left one (or
/// the reverse), or where a fourth distinct code would join the current part.
pub fn split_directions(dv: &DirectionVector) -> Vec<DirectionVector> {
    let mut parts: Vec<Vec<u8>> = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    let mut seen = [false; 9];
    let mut distinct = 0;
    for &next in dv.codes() {
        if let Some(&prev) = current.last() {
            let v_turn =
                (is_rising(prev) && is_falling(next)) || (is_falling(prev) && is_rising(next));
            let too_varied = !seen[usize::from(next)] && distinct == 3;
            if v_turn || too_varied {
                parts.push(std::mem::take(&mut current));
                seen = [false; 9];
                distinct = 0;
            }
        }
        if !seen[usize::from(next)] {
            seen[usize::from(next)] = true;
            distinct += 1;
        }
        current.push(next);
    }
    if !current.is_empty() {
        parts.push(current);
    }
    parts.into_iter().map(DirectionVector).collect()
}

/// Majority line type; ties go to the type whose code appears first.
pub fn classify(dv: &DirectionVector) -> Result<LineType> {
    let mut tally = [0usize; 4];
    let mut first_seen = [usize::MAX; 4];
    for (i, &c) in dv.codes().iter().enumerate() {
        let t = LineType::of_code(c).index();
        tally[t] += 1;
        first_seen[t] = first_seen[t].min(i);
    }
    LineType::ALL
        .into_iter()
        .filter(|t| tally[t.index()] > 0)
        .max_by(|a, b| {
            tally[a.index()]
                .cmp(&tally[b.index()])
                .then(first_seen[b.index()].cmp(&first_seen[a.index()]))
        })
        .ok_or(Error::EmptyDirectionVector)
}

/// One piece of a segment after splitting, with its pixels and line type.
/// Single-pixel segments carry no type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedSegment {
    pub pixels: Vec<Coord>,
    pub line_type: Option<LineType>,
}

/// Splits a traversed segment into typed pieces. The pixel shared by two
/// pieces stays with the earlier one, so the pieces partition the segment.
pub fn split_segment(seg: &Segment) -> Vec<TypedSegment> {
    let dv = direction_vector(seg);
    if dv.is_empty() {
        return vec![TypedSegment {
            pixels: seg.pixels.clone(),
            line_type: None,
        }];
    }
    let mut out = Vec::new();
    let mut start = 0;
    for (i, part) in split_directions(&dv).iter().enumerate() {
        let take = if i == 0 { part.len() + 1 } else { part.len() };
        out.push(TypedSegment {
            pixels: seg.pixels[start..start + take].to_vec(),
            line_type: Some(classify(part).expect("split parts are nonempty")),
        });
        start += take;
    }
    out
}
