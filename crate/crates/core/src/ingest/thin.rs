//! Zhang-Suen thinning.
//!
//! Each sub-iteration marks deletion candidates against a snapshot of the
//! image, as in the classic algorithm. Candidates are then removed one at a
//! time and re-tested against the current image, so a candidate whose
//! neighbourhood has already lost pixels in the same pass is kept when its
//! removal would now break connectivity. Without the re-test a 2×2 block (and
//! two-pixel-thick diagonals) vanish entirely.

use crate::grid::{BitGrid, Coord};

/// Ring of neighbours P2..P9 in Zhang-Suen order: N, NE, E, SE, S, SW, W, NW.
const RING: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

const N: usize = 0;
const E: usize = 2;
const S: usize = 4;
const W: usize = 6;

fn ring(img: &BitGrid, c: Coord) -> [bool; 8] {
    RING.map(
        |(dr, dc)| match (c.row.checked_add_signed(dr), c.col.checked_add_signed(dc)) {
            (Some(r), Some(cc)) => img.get(Coord::new(r, cc)),
            _ => false,
        },
    )
}

/// Neighbour count B and 0→1 transition count A around the ring.
fn counts(p: &[bool; 8]) -> (usize, usize) {
    let b = p.iter().filter(|&&v| v).count();
    let a = (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count();
    (b, a)
}

/// Removing the pixel keeps its neighbours in one piece and is not an endpoint.
fn removable(p: &[bool; 8]) -> bool {
    let (b, a) = counts(p);
    (2..=6).contains(&b) && a == 1
}

fn sub_iteration(img: &mut BitGrid, first: bool) -> bool {
    let candidates: Vec<Coord> = img
        .foreground()
        .filter(|&c| {
            let p = ring(img, c);
            let directional = if first {
                !(p[N] && p[E] && p[S]) && !(p[E] && p[S] && p[W])
            } else {
                !(p[N] && p[E] && p[W]) && !(p[N] && p[S] && p[W])
            };
            directional && removable(&p)
        })
        .collect();
    let mut changed = false;
    for c in candidates {
        if removable(&ring(img, c)) {
            img.set(c, false);
            changed = true;
        }
    }
    changed
}

/// Thins foreground shapes to (mostly) one-pixel-wide skeletons. Never adds
/// foreground, keeps the number of 8-connected components and holes, and
/// `thin(&thin(x)) == thin(x)`.
pub fn thin(img: &BitGrid) -> BitGrid {
    let mut out = img.clone();
    loop {
        let a = sub_iteration(&mut out, true);
        let b = sub_iteration(&mut out, false);
        if !a && !b {
            return out;
        }
    }
}
