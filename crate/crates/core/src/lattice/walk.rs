use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::edges::{Edge, EdgeSet};
use super::point::{Dir, Point};
use crate::error::{Error, Result};

/// A self-avoiding nearest-neighbour path.
///
/// Always holds at least one vertex. The length `|w|` counts edges, so the
/// single-vertex walk has length zero.
///
/// Text form is `x,y:DIRS`, e.g. `0,0:RUUL`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Walk {
    vertices: Vec<Point>,
}

impl Walk {
    /// The length-zero walk sitting at `p`.
    pub fn point(p: Point) -> Self {
        Walk { vertices: vec![p] }
    }

    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::PreconditionViolation("a walk needs at least one vertex".into()));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            if i > 0 && !vertices[i - 1].is_neighbor(v) {
                return Err(Error::NotAdjacent(vertices[i - 1], v));
            }
            if !seen.insert(v) {
                return Err(Error::SelfIntersection(v));
            }
        }
        Ok(Walk { vertices })
    }

    /// Builds a walk without checking the invariants. Callers must guarantee them.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(Walk::new(vertices.clone()).is_ok());
        Walk { vertices }
    }

    pub fn from_directions(start: Point, dirs: &[Dir]) -> Result<Self> {
        let mut vertices = Vec::with_capacity(dirs.len() + 1);
        let mut seen = HashSet::with_capacity(dirs.len() + 1);
        let mut p = start;
        vertices.push(p);
        seen.insert(p);
        for d in dirs {
            p = p + d.delta();
            if !seen.insert(p) {
                return Err(Error::SelfIntersection(p));
            }
            vertices.push(p);
        }
        Ok(Walk { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// True for the length-zero walk.
    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().expect("walk has a vertex")
    }

    pub fn directions(&self) -> Vec<Dir> {
        self.vertices
            .windows(2)
            .map(|w| Dir::between(w[0], w[1]).expect("consecutive vertices are adjacent"))
            .collect()
    }

    pub fn edges(&self) -> EdgeSet {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]).expect("adjacent")).collect()
    }

    /// Subwalk over the closed time interval `[from, to]`.
    pub fn slice(&self, from: usize, to: usize) -> Walk {
        Walk { vertices: self.vertices[from..=to].to_vec() }
    }

    pub fn translate(&self, by: Point) -> Walk {
        Walk { vertices: self.vertices.iter().map(|&p| p + by).collect() }
    }

    /// Mirror image in the vertical line through the first vertex.
    pub fn reflect_vertical(&self) -> Walk {
        let x0 = self.start().x;
        Walk { vertices: self.vertices.iter().map(|p| Point::new(2 * x0 - p.x, p.y)).collect() }
    }

    /// Mirror image in the diagonal `y = x` through the first vertex.
    pub fn reflect_diagonal(&self) -> Walk {
        let s = self.start();
        Walk {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(s.x + (p.y - s.y), s.y + (p.x - s.x)))
                .collect(),
        }
    }

    /// Counter-clockwise quarter turn about the first vertex.
    pub fn rotate_quarter(&self) -> Walk {
        let s = self.start();
        Walk {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(s.x - (p.y - s.y), s.y + (p.x - s.x)))
                .collect(),
        }
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Walk {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Walk { vertices }
    }

    /// Appends a translate of `other` whose first vertex lands on our last one.
    pub fn concatenate(&self, other: &Walk) -> Result<Walk> {
        let shift = self.end() - other.start();
        let mut seen: HashSet<Point> = self.vertices.iter().copied().collect();
        let mut vertices = self.vertices.clone();
        for &p in &other.vertices[1..] {
            let q = p + shift;
            if !seen.insert(q) {
                return Err(Error::SelfIntersection(q));
            }
            vertices.push(q);
        }
        Ok(Walk { vertices })
    }

    /// Smallest axis-aligned box `(min, max)` containing the walk.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.start();
        let mut hi = lo;
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Canonical `x,y:DIRS` encoding.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.start())?;
        for d in self.directions() {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (start, dirs) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("expected `x,y:DIRS`, got `{s}`")))?;
        Walk::from_directions(start.parse()?, &Dir::parse_many(dirs)?)
    }
}

impl TryFrom<String> for Walk {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Walk> for String {
    fn from(w: Walk) -> String {
        w.to_string()
    }
}
