use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Dir, Edge, EdgeSet, Point};

/// The box `[0,2m+1]²` translated to `anchor`. Anchors live on the
/// `(2m+2)`-spaced grid, so neighbouring boxes are separated by one column
/// (or row) of edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxSpec {
    anchor: Point,
    m: usize,
}

impl BoxSpec {
    pub fn new(anchor: Point, m: usize) -> Result<Self> {
        let s = Self::spacing_of(m);
        if anchor.x.rem_euclid(s) != 0 || anchor.y.rem_euclid(s) != 0 {
            return Err(Error::PreconditionViolation(format!("box anchor {anchor} is not on the {s}-grid")));
        }
        Ok(BoxSpec { anchor, m })
    }

    /// Box in grid cell `(i, j)`.
    pub fn at(i: i64, j: i64, m: usize) -> Self {
        let s = Self::spacing_of(m);
        BoxSpec { anchor: Point::new(i * s, j * s), m }
    }

    fn spacing_of(m: usize) -> i64 {
        2 * m as i64 + 2
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Side length `2m+1` in lattice units.
    pub fn side(&self) -> i64 {
        2 * self.m as i64 + 1
    }

    pub fn spacing(&self) -> i64 {
        Self::spacing_of(self.m)
    }

    /// Grid cell of the anchor.
    pub fn cell(&self) -> (i64, i64) {
        (self.anchor.x / self.spacing(), self.anchor.y / self.spacing())
    }

    pub fn contains(&self, p: Point) -> bool {
        let d = p - self.anchor;
        (0..=self.side()).contains(&d.x) && (0..=self.side()).contains(&d.y)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        let s = self.side();
        (0..=s).flat_map(move |x| (0..=s).map(move |y| self.anchor + Point::new(x, y)))
    }

    /// All lattice edges inside the box.
    pub fn edges(&self) -> EdgeSet {
        let mut out = EdgeSet::new();
        for p in self.vertices() {
            for q in [p + Point::new(1, 0), p + Point::new(0, 1)] {
                if self.contains(q) {
                    out.insert(Edge::new(p, q).expect("neighbours"));
                }
            }
        }
        out
    }

    /// Edge in the middle of the side facing `dir`.
    pub fn cardinal_edge(&self, dir: Dir) -> Edge {
        let (m, s) = (self.m as i64, self.side());
        let (p, q) = match dir {
            Dir::D => (Point::new(m, 0), Point::new(m + 1, 0)),
            Dir::R => (Point::new(s, m), Point::new(s, m + 1)),
            Dir::U => (Point::new(m, s), Point::new(m + 1, s)),
            Dir::L => (Point::new(0, m), Point::new(0, m + 1)),
        };
        Edge::new(self.anchor + p, self.anchor + q).expect("neighbours")
    }

    pub fn cardinal_edges(&self) -> [Edge; 4] {
        [Dir::D, Dir::R, Dir::U, Dir::L].map(|d| self.cardinal_edge(d))
    }

    /// The grid box on the other side of the `dir` face.
    pub fn neighbor(&self, dir: Dir) -> BoxSpec {
        let d = dir.delta();
        BoxSpec { anchor: self.anchor + Point::new(d.x * self.spacing(), d.y * self.spacing()), m: self.m }
    }

    /// Direction from `self` to `other` when the two are adjacent.
    pub fn adjacent_dir(&self, other: &BoxSpec) -> Option<Dir> {
        Dir::ALL.into_iter().find(|&d| self.m == other.m && self.neighbor(d) == *other)
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.m, self.anchor)
    }
}

/// The edge environment of a family of boxes: its vertices, the edges with
/// both ends among them, and the cardinal edges that face a grid position
/// outside the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEdges {
    boxes: BTreeSet<BoxSpec>,
    vertices: BTreeSet<Point>,
    edges: EdgeSet,
    external: EdgeSet,
}

impl FamilyEdges {
    pub fn new(boxes: impl IntoIterator<Item = BoxSpec>) -> Result<Self> {
        let boxes: BTreeSet<BoxSpec> = boxes.into_iter().collect();
        let m = match boxes.first() {
            Some(b) => b.m,
            None => return Err(Error::PreconditionViolation("empty box family".into())),
        };
        if boxes.iter().any(|b| b.m != m) {
            return Err(Error::PreconditionViolation("boxes of different sizes".into()));
        }
        let vertices: BTreeSet<Point> = boxes.iter().flat_map(|b| b.vertices().collect::<Vec<_>>()).collect();
        let mut edges = EdgeSet::new();
        for &p in &vertices {
            for q in [p + Point::new(1, 0), p + Point::new(0, 1)] {
                if vertices.contains(&q) {
                    edges.insert(Edge::new(p, q).expect("neighbours"));
                }
            }
        }
        let mut external = EdgeSet::new();
        for b in &boxes {
            for d in Dir::ALL {
                if !boxes.contains(&b.neighbor(d)) {
                    external.insert(b.cardinal_edge(d));
                }
            }
        }
        Ok(FamilyEdges { boxes, vertices, edges, external })
    }

    pub fn m(&self) -> usize {
        self.boxes.first().expect("nonempty").m
    }

    pub fn boxes(&self) -> &BTreeSet<BoxSpec> {
        &self.boxes
    }

    /// `V_F`.
    pub fn vertices(&self) -> &BTreeSet<Point> {
        &self.vertices
    }

    /// `E_F`.
    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// `EC_F`.
    pub fn external_cardinal_edges(&self) -> &EdgeSet {
        &self.external
    }

    /// Whether the boxes form one adjacency-connected cluster.
    pub fn is_connected(&self) -> bool {
        let start = *self.boxes.first().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(b) = stack.pop() {
            for d in Dir::ALL {
                let n = b.neighbor(d);
                if self.boxes.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == self.boxes.len()
    }
}
