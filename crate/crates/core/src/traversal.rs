//! Pixel classification and skeleton traversal within a single zone.
//!
//! A traversal walks the zone's skeleton from every starter (endpoint), then
//! from the minor starters queued at branch points, then from seeds placed on
//! whatever is left (closed loops), until every foreground pixel belongs to
//! exactly one segment.

use std::collections::VecDeque;

use crate::grid::{direction_code, BitGrid, Coord};

/// Foreground neighbours of `p`, clockwise starting from the cell below it
/// (ascending direction code).
pub fn neighbours(img: &BitGrid, p: Coord) -> Vec<Coord> {
    (1..=8)
        .filter_map(|code| img.step(p, code))
        .filter(|&n| img.get(n))
        .collect()
}

fn neighbour_codes(img: &BitGrid, p: Coord) -> Vec<u8> {
    (1..=8u8)
        .filter(|&code| img.step(p, code).is_some_and(|n| img.get(n)))
        .collect()
}

/// Direct neighbours have odd codes, diagonal ones even codes. A direct and a
/// diagonal neighbour touch iff their codes are consecutive around the ring.
fn ring_adjacent(a: u8, b: u8) -> bool {
    a % 8 + 1 == b || b % 8 + 1 == a
}

/// Junction test on the neighbour count and the layout of direct versus
/// diagonal neighbours.
pub fn is_intersection(img: &BitGrid, p: Coord) -> bool {
    if !img.get(p) {
        return false;
    }
    let codes = neighbour_codes(img, p);
    let (direct, diagonal): (Vec<u8>, Vec<u8>) = codes.iter().partition(|&&c| c % 2 == 1);
    let has_adjacent = |c: u8, others: &[u8]| others.iter().any(|&o| ring_adjacent(c, o));
    match codes.len() {
        0..=2 => false,
        3 => !direct.iter().any(|&d| has_adjacent(d, &diagonal)),
        4 => {
            let paired = !direct.is_empty()
                && !diagonal.is_empty()
                && (direct.iter().all(|&d| has_adjacent(d, &diagonal))
                    || diagonal.iter().all(|&g| has_adjacent(g, &direct)));
            !paired
        }
        _ => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PixelClassification {
    /// Pixels with exactly one neighbour, scan order.
    pub starters: Vec<Coord>,
    /// Junction pixels, scan order.
    pub intersections: Vec<Coord>,
}

pub fn classify_pixels(zone: &BitGrid) -> PixelClassification {
    let mut out = PixelClassification::default();
    for p in zone.foreground() {
        if neighbours(zone, p).len() == 1 {
            out.starters.push(p);
        } else if is_intersection(zone, p) {
            out.intersections.push(p);
        }
    }
    out
}

/// Ordered run of 8-adjacent pixels; never empty, no repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub pixels: Vec<Coord>,
}

impl Segment {
    pub fn new(pixels: Vec<Coord>) -> Self {
        assert!(!pixels.is_empty(), "segments hold at least one pixel");
        Segment { pixels }
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.pixels.iter().rev().copied().collect())
    }
}

impl From<Vec<Coord>> for Segment {
    fn from(pixels: Vec<Coord>) -> Self {
        Segment::new(pixels)
    }
}

/// Incremental traversal of one zone. Yields segments in extraction order and
/// exposes the pending minor-starters queue between segments.
pub struct Tracer<'a> {
    img: &'a BitGrid,
    visited: Vec<bool>,
    intersection: Vec<bool>,
    starters: Vec<Coord>,
    next_starter: usize,
    minor: VecDeque<Coord>,
    scan: usize,
}

impl<'a> Tracer<'a> {
    pub fn new(img: &'a BitGrid) -> Self {
        let classes = classify_pixels(img);
        let mut intersection = vec![false; img.len()];
        for p in &classes.intersections {
            intersection[p.row * img.cols() + p.col] = true;
        }
        Tracer {
            img,
            visited: vec![false; img.len()],
            intersection,
            starters: classes.starters,
            next_starter: 0,
            minor: VecDeque::new(),
            scan: 0,
        }
    }

    /// Minor starters waiting to be processed, in queue order.
    pub fn minor_starters(&self) -> Vec<Coord> {
        self.minor.iter().copied().collect()
    }

    fn idx(&self, p: Coord) -> usize {
        p.row * self.img.cols() + p.col
    }

    fn visit(&mut self, p: Coord) {
        let i = self.idx(p);
        self.visited[i] = true;
    }

    fn is_visited(&self, p: Coord) -> bool {
        self.visited[self.idx(p)]
    }

    fn unvisited_neighbours(&self, p: Coord) -> Vec<Coord> {
        neighbours(self.img, p)
            .into_iter()
            .filter(|&n| !self.is_visited(n))
            .collect()
    }

    fn queue_minor(&mut self, pixels: impl IntoIterator<Item = Coord>) {
        for p in pixels {
            if !self.minor.contains(&p) {
                self.minor.push_back(p);
            }
        }
    }

    /// Removes `p` from the minor queue, reporting whether it was there.
    fn take_minor(&mut self, p: Coord) -> bool {
        let before = self.minor.len();
        self.minor.retain(|&m| m != p);
        self.minor.len() != before
    }

    fn walk(&mut self, start: Coord) -> Segment {
        self.visit(start);
        let mut pixels = vec![start];
        let open = self.unvisited_neighbours(start);
        if self.intersection[self.idx(start)] {
            self.queue_minor(open);
            return Segment::new(pixels);
        }
        // From a start pixel there is no direction yet: take the lowest code.
        let Some((&first, rest)) = open.split_first() else {
            return Segment::new(pixels);
        };
        self.queue_minor(rest.iter().copied());

        let mut prev = start;
        let mut cur = first;
        loop {
            self.visit(cur);
            pixels.push(cur);
            let open = self.unvisited_neighbours(cur);
            let was_minor = self.take_minor(cur);
            if self.intersection[self.idx(cur)] || was_minor {
                self.queue_minor(open);
                break;
            }
            let next = if neighbours(self.img, cur).len() > 2 {
                let heading = direction_code(prev, cur).expect("consecutive pixels are adjacent");
                match self.img.step(cur, heading).filter(|n| open.contains(n)) {
                    Some(ahead) => {
                        self.queue_minor(open.iter().copied().filter(|&n| n != ahead));
                        ahead
                    }
                    None => {
                        self.queue_minor(open);
                        break;
                    }
                }
            } else {
                let Some((&next, rest)) = open.split_first() else {
                    break;
                };
                self.queue_minor(rest.iter().copied());
                next
            };
            prev = cur;
            cur = next;
        }
        Segment::new(pixels)
    }

    pub fn next_segment(&mut self) -> Option<Segment> {
        while let Some(&s) = self.starters.get(self.next_starter) {
            self.next_starter += 1;
            if !self.is_visited(s) {
                return Some(self.walk(s));
            }
        }
        while let Some(m) = self.minor.pop_front() {
            if !self.is_visited(m) {
                return Some(self.walk(m));
            }
        }
        // Closed loops have no starters: seed the first unvisited pixel.
        while self.scan < self.img.len() {
            let i = self.scan;
            self.scan += 1;
            if self.img.cells()[i] && !self.visited[i] {
                let seed = Coord::new(i / self.img.cols(), i % self.img.cols());
                return Some(self.walk(seed));
            }
        }
        None
    }
}

impl Iterator for Tracer<'_> {
    type Item = Segment;

    fn next(&mut self) -> Option<Segment> {
        self.next_segment()
    }
}

/// Splits the zone's skeleton into segments covering each foreground pixel once.
pub fn extract_segments(zone: &BitGrid) -> Vec<Segment> {
    Tracer::new(zone).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x5() -> BitGrid {
        BitGrid::from_rows(&[
            [1, 0, 0, 0, 1],
            [0, 1, 0, 1, 0],
            [0, 0, 1, 0, 0],
            [0, 1, 0, 1, 0],
            [1, 0, 0, 0, 1],
        ])
    }

    fn at(pairs: &[(usize, usize)]) -> Vec<Coord> {
        pairs.iter().map(|&(r, c)| Coord::one_based(r, c)).collect()
    }

    #[test]
    fn neighbour_examples() {
        let g = x5();
        let mut n = neighbours(&g, Coord::one_based(3, 3));
        n.sort();
        assert_eq!(n, at(&[(2, 2), (2, 4), (4, 2), (4, 4)]));
        assert_eq!(neighbours(&g, Coord::one_based(1, 1)), at(&[(2, 2)]));
        let lone = BitGrid::from_rows(&[[0, 0, 0], [0, 1, 0], [0, 0, 0]]);
        assert!(neighbours(&lone, Coord::new(1, 1)).is_empty());
    }

    #[test]
    fn neighbours_are_clockwise_from_below() {
        let full = BitGrid::from_rows(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        assert_eq!(
            neighbours(&full, Coord::new(1, 1)),
            at(&[
                (3, 2),
                (3, 1),
                (2, 1),
                (1, 1),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 3)
            ])
        );
    }

    #[test]
    fn classification_examples() {
        let c = classify_pixels(&x5());
        assert_eq!(c.starters, at(&[(1, 1), (1, 5), (5, 1), (5, 5)]));
        assert_eq!(c.intersections, at(&[(3, 3)]));

        let plus = BitGrid::from_rows(&[[0, 1, 0], [1, 1, 1], [0, 1, 0]]);
        assert_eq!(classify_pixels(&plus).intersections, at(&[(2, 2)]));

        let line = BitGrid::from_rows(&[[1, 1, 1]]);
        let c = classify_pixels(&line);
        assert_eq!(c.starters, at(&[(1, 1), (1, 3)]));
        assert!(c.intersections.is_empty());
    }

    #[test]
    fn intersection_rules_by_neighbour_count() {
        let centre = Coord::new(1, 1);
        // T: three direct neighbours, no diagonals.
        let t = BitGrid::from_rows(&[[0, 0, 0], [1, 1, 1], [0, 1, 0]]);
        assert!(is_intersection(&t, centre));
        // Y: three diagonals.
        let y = BitGrid::from_rows(&[[1, 0, 1], [0, 1, 0], [0, 1, 0]]);
        assert!(is_intersection(&y, centre));
        // Direct N touches diagonal NE: a kinked line, not a junction.
        let kink = BitGrid::from_rows(&[[0, 1, 1], [0, 1, 0], [0, 1, 0]]);
        assert!(!is_intersection(&kink, centre));
        // Four neighbours in two direct/diagonal pairs: a thick line.
        let thick = BitGrid::from_rows(&[[0, 1, 1], [0, 1, 0], [1, 1, 0]]);
        assert!(!is_intersection(&thick, centre));
        // X of four diagonals.
        let x = BitGrid::from_rows(&[[1, 0, 1], [0, 1, 0], [1, 0, 1]]);
        assert!(is_intersection(&x, centre));
        // Four neighbours where E and SW are each left without a partner.
        let mixed = BitGrid::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 0]]);
        assert!(is_intersection(&mixed, centre));
        let five = BitGrid::from_rows(&[[1, 1, 1], [0, 1, 0], [1, 0, 1]]);
        assert!(is_intersection(&five, centre));
        let two = BitGrid::from_rows(&[[1, 0, 1], [0, 1, 0], [0, 0, 0]]);
        assert!(!is_intersection(&two, centre));
    }

    #[test]
    fn worked_example_segments() {
        let g = x5();
        let mut tracer = Tracer::new(&g);
        let first = tracer.next_segment().unwrap();
        assert_eq!(first.pixels, at(&[(1, 1), (2, 2), (3, 3)]));
        assert_eq!(tracer.minor_starters(), at(&[(4, 2), (2, 4), (4, 4)]));
        let rest: Vec<_> = tracer.map(|s| s.pixels).collect();
        assert_eq!(
            rest,
            vec![
                at(&[(1, 5), (2, 4)]),
                at(&[(5, 1), (4, 2)]),
                at(&[(5, 5), (4, 4)])
            ]
        );
    }

    #[test]
    fn single_pixel_is_one_segment() {
        let g = BitGrid::from_rows(&[[0, 0], [0, 1]]);
        assert_eq!(extract_segments(&g), vec![Segment::new(at(&[(2, 2)]))]);
        assert!(extract_segments(&BitGrid::new(3, 3)).is_empty());
        assert!(extract_segments(&BitGrid::new(0, 3)).is_empty());
    }

    #[test]
    fn ring_is_traced_as_one_loop() {
        // Octagonal 8-pixel ring around a 2×2 hole; every pixel has two neighbours.
        let ring = BitGrid::from_rows(&[[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]]);
        let segs = extract_segments(&ring);
        assert_eq!(segs.len(), 1);
        assert_eq!(
            segs[0].pixels,
            at(&[
                (1, 2),
                (2, 1),
                (3, 1),
                (4, 2),
                (4, 3),
                (3, 4),
                (2, 4),
                (1, 3)
            ])
        );
    }

    #[test]
    fn square_ring_is_fully_covered() {
        let ring = BitGrid::from_rows(&[[1, 1, 1], [1, 0, 1], [1, 1, 1]]);
        let segs = extract_segments(&ring);
        let total: usize = segs.iter().map(Segment::len).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn straight_through_a_non_junction_branch() {
        // (2,2) has three neighbours but is not a junction, so the walk keeps
        // heading down and stops at the T junction (3,2).
        let g = BitGrid::from_rows(&[[0, 1, 0], [0, 1, 0], [0, 1, 1], [0, 1, 0], [0, 1, 0]]);
        let segs = extract_segments(&g);
        assert_eq!(segs[0].pixels[..3], at(&[(1, 2), (2, 2), (3, 2)]));
        let covered: usize = segs.iter().map(Segment::len).sum();
        assert_eq!(covered, 6);
    }
}
