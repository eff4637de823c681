//! Stroke templates for the uppercase Latin letters on a 16×16 reference grid
//! (row, col), row 0 at the top.

use super::GlyphTemplate;

type P = (u8, u8);

fn polyline(points: &[P]) -> Vec<(P, P)> {
    points.windows(2).map(|w| (w[0], w[1])).collect()
}

fn glyph(label: char, paths: &[&[P]]) -> GlyphTemplate {
    GlyphTemplate {
        label,
        strokes: paths.iter().flat_map(|p| polyline(p)).collect(),
    }
}

const O_RING: &[P] = &[(0, 2), (0, 13), (15, 13), (15, 2), (0, 2)];
const C_ARC: &[P] = &[(0, 13), (0, 4), (3, 1), (12, 1), (15, 4), (15, 13)];
const P_BOWL: &[P] = &[(0, 2), (0, 11), (2, 13), (6, 13), (8, 11), (8, 2)];

pub fn uppercase() -> Vec<GlyphTemplate> {
    vec![
        glyph('A', &[&[(15, 1), (0, 7), (15, 13)], &[(10, 3), (10, 11)]]),
        glyph(
            'B',
            &[
                &[(15, 2), (0, 2), (0, 10), (2, 12), (5, 12), (7, 10), (7, 2)],
                &[(7, 10), (9, 13), (13, 13), (15, 11), (15, 2)],
            ],
        ),
        glyph('C', &[C_ARC]),
        glyph(
            'D',
            &[&[(0, 2), (0, 9), (4, 13), (11, 13), (15, 9), (15, 2), (0, 2)]],
        ),
        glyph(
            'E',
            &[&[(0, 13), (0, 2), (15, 2), (15, 13)], &[(7, 2), (7, 11)]],
        ),
        glyph('F', &[&[(0, 13), (0, 2), (15, 2)], &[(7, 2), (7, 11)]]),
        glyph('G', &[C_ARC, &[(15, 13), (8, 13), (8, 8)]]),
        glyph(
            'H',
            &[&[(0, 2), (15, 2)], &[(0, 13), (15, 13)], &[(7, 2), (7, 13)]],
        ),
        glyph('I', &[&[(0, 7), (15, 7)]]),
        glyph('J', &[&[(0, 11), (12, 11), (15, 8), (15, 5), (12, 2)]]),
        glyph('K', &[&[(0, 2), (15, 2)], &[(0, 13), (8, 2), (15, 13)]]),
        glyph('L', &[&[(0, 2), (15, 2), (15, 12)]]),
        glyph('M', &[&[(15, 1), (0, 1), (10, 7), (0, 13), (15, 13)]]),
        glyph('N', &[&[(15, 2), (0, 2), (15, 13), (0, 13)]]),
        glyph('O', &[O_RING]),
        glyph('P', &[&[(15, 2), (0, 2)], P_BOWL]),
        glyph('Q', &[O_RING, &[(10, 9), (15, 15)]]),
        glyph('R', &[&[(15, 2), (0, 2)], P_BOWL, &[(8, 6), (15, 13)]]),
        glyph(
            'S',
            &[&[(0, 13), (0, 2), (7, 2), (7, 13), (15, 13), (15, 2)]],
        ),
        glyph('T', &[&[(0, 1), (0, 14)], &[(0, 7), (15, 7)]]),
        glyph(
            'U',
            &[&[(0, 2), (12, 2), (15, 5), (15, 10), (12, 13), (0, 13)]],
        ),
        glyph('V', &[&[(0, 1), (15, 7), (0, 13)]]),
        glyph('W', &[&[(0, 0), (15, 3), (5, 7), (15, 11), (0, 14)]]),
        glyph('X', &[&[(0, 1), (15, 14)], &[(0, 14), (15, 1)]]),
        glyph('Y', &[&[(0, 1), (7, 7), (0, 13)], &[(7, 7), (15, 7)]]),
        glyph('Z', &[&[(0, 1), (0, 14), (15, 1), (15, 14)]]),
    ]
}
