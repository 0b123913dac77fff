use crate::enumerate::BoxSpec;
use crate::error::{Error, Result};
use crate::lattice::{EdgeSet, Point, Polygon, Walk};

use super::bridge::in_rectangle_class;

/// Two walks of `Σ_n` with the same endpoint `(k,l)` give a squared walk of
/// span `k+l`: the first is mirrored in the diagonal (so it ends at `(l,k)`)
/// and the second is appended.
pub fn rectangle_pair_to_square(g1: &Walk, g2: &Walk) -> Result<Walk> {
    if !in_rectangle_class(g1) || !in_rectangle_class(g2) {
        return Err(Error::PreconditionViolation("both walks must stay in the rectangle spanned by their ends".into()));
    }
    if g1.end() != g2.end() {
        return Err(Error::PreconditionViolation(format!("endpoints differ: {} vs {}", g1.end(), g2.end())));
    }
    g1.reflect_diagonal().concatenate(g2)
}

/// Whether `w` goes from the origin to `(k,k)` inside `[0,k]²`.
pub fn is_squared(w: &Walk, span: i64) -> bool {
    w.start() == Point::ORIGIN
        && w.end() == Point::new(span, span)
        && w.vertices().iter().all(|p| (0..=span).contains(&p.x) && (0..=span).contains(&p.y))
}

/// Four squared walks of span `m` and common length `n` placed in the four
/// quadrants of `[0,2m+1]²` and closed with the four mid-side edges, giving a
/// polygon of `P_m` with `4n+4` edges.
pub fn four_to_polygon(walks: [&Walk; 4], m: usize) -> Result<Polygon> {
    let span = m as i64;
    let n = walks[0].len();
    for w in walks {
        if !is_squared(w, span) || w.len() != n {
            return Err(Error::PreconditionViolation(format!("{w} is not a squared walk of span {m} and length {n}")));
        }
    }
    let (m1, s) = (span + 1, 2 * span + 1);
    let placed = [
        walks[0].translate(Point::new(m1, 0)),
        walks[1].rotate_quarter().translate(Point::new(span, 0)),
        walks[2].translate(Point::new(0, m1)),
        walks[3].rotate_quarter().translate(Point::new(s, m1)),
    ];
    let mut edges = EdgeSet::new();
    for w in &placed {
        for e in &w.edges() {
            edges.insert(*e);
        }
    }
    for e in BoxSpec::at(0, 0, m).cardinal_edges() {
        edges.insert(e);
    }
    Polygon::new(edges)
}
