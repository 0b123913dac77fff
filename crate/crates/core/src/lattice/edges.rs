use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::point::Point;
use super::walk::Walk;
use crate::error::{Error, Result};

/// An undirected lattice edge, stored with the lexicographically smaller
/// endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: Point,
    b: Point,
}

impl Edge {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        if !p.is_neighbor(q) {
            return Err(Error::NotAdjacent(p, q));
        }
        Ok(if p <= q { Edge { a: p, b: q } } else { Edge { a: q, b: p } })
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn endpoints(&self) -> [Point; 2] {
        [self.a, self.b]
    }

    pub fn touches(&self, p: Point) -> bool {
        self.a == p || self.b == p
    }

    pub fn other(&self, p: Point) -> Option<Point> {
        if p == self.a {
            Some(self.b)
        } else if p == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn translate(&self, by: Point) -> Edge {
        Edge { a: self.a + by, b: self.b + by }
    }

    /// Two edges are adjacent when they share exactly one endpoint.
    pub fn is_adjacent_to(&self, other: &Edge) -> bool {
        self != other && (other.touches(self.a) || other.touches(self.b))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // `x1,y1-x2,y2`; coordinates may be negative so split on the dash
        // that follows the first point's second coordinate.
        let s = s.trim();
        let comma = s.find(',').ok_or_else(|| Error::Parse(format!("bad edge `{s}`")))?;
        let dash = s[comma + 1..]
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '-')
            .map(|(i, _)| comma + 1 + i)
            .ok_or_else(|| Error::Parse(format!("bad edge `{s}`")))?;
        Edge::new(s[..dash].parse()?, s[dash + 1..].parse()?)
    }
}

/// A finite set of lattice edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn intersection<'a>(&'a self, other: &'a EdgeSet) -> impl Iterator<Item = &'a Edge> + 'a {
        self.0.intersection(&other.0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn vertices(&self) -> BTreeSet<Point> {
        self.0.iter().flat_map(|e| e.endpoints()).collect()
    }

    pub fn degrees(&self) -> BTreeMap<Point, usize> {
        let mut deg = BTreeMap::new();
        for e in &self.0 {
            for p in e.endpoints() {
                *deg.entry(p).or_insert(0) += 1;
            }
        }
        deg
    }

    pub fn translate(&self, by: Point) -> EdgeSet {
        self.0.iter().map(|e| e.translate(by)).collect()
    }

    /// Edges appearing in an odd number of the inputs.
    pub fn symmetric_difference(sets: &[&EdgeSet]) -> EdgeSet {
        let mut out = BTreeSet::new();
        for s in sets {
            for e in &s.0 {
                if !out.remove(e) {
                    out.insert(*e);
                }
            }
        }
        EdgeSet(out)
    }

    /// Reads the edge set as a simple path from `a` to `b`.
    pub fn to_walk(&self, a: Point, b: Point) -> Result<Walk> {
        edge_set_to_walk(self, a, b)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

fn adjacency(edges: &EdgeSet) -> BTreeMap<Point, Vec<Point>> {
    let mut adj: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.a()).or_default().push(e.b());
        adj.entry(e.b()).or_default().push(e.a());
    }
    adj
}

/// Reads `edges` as a single simple path from `a` to `b`.
///
/// Fails with [`Error::NotAPath`] if some degree is wrong, the set is
/// disconnected, or a stray cycle is left over.
pub fn edge_set_to_walk(edges: &EdgeSet, a: Point, b: Point) -> Result<Walk> {
    if edges.is_empty() {
        return if a == b {
            Ok(Walk::point(a))
        } else {
            Err(Error::NotAPath(format!("empty edge set cannot join {a} and {b}")))
        };
    }
    if a == b {
        return Err(Error::NotAPath(format!("endpoints coincide at {a}")));
    }
    let adj = adjacency(edges);
    for (&p, nbrs) in &adj {
        let want = if p == a || p == b { 1 } else { 2 };
        if nbrs.len() != want {
            return Err(Error::NotAPath(format!("vertex {p} has degree {}", nbrs.len())));
        }
    }
    if !adj.contains_key(&a) || !adj.contains_key(&b) {
        return Err(Error::NotAPath("an endpoint is not incident to the edge set".into()));
    }
    let mut vertices = vec![a];
    let mut prev: Option<Point> = None;
    let mut cur = a;
    while cur != b {
        let next = adj[&cur].iter().copied().find(|&q| Some(q) != prev).expect("degree checked");
        prev = Some(cur);
        cur = next;
        vertices.push(cur);
    }
    if vertices.len() - 1 != edges.len() {
        return Err(Error::NotAPath(format!(
            "path from {a} to {b} uses {} of {} edges; the rest form a cycle",
            vertices.len() - 1,
            edges.len()
        )));
    }
    Walk::new(vertices)
}

/// A self-avoiding polygon: a single closed cycle of lattice edges.
///
/// Text form is the sorted edge list, one `x1,y1-x2,y2` per line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    edges: EdgeSet,
}

impl Polygon {
    pub fn new(edges: EdgeSet) -> Result<Self> {
        if edges.len() < 4 {
            return Err(Error::NotAPolygon(format!("{} edges", edges.len())));
        }
        let adj = adjacency(&edges);
        if let Some((p, n)) = adj.iter().find(|(_, n)| n.len() != 2) {
            return Err(Error::NotAPolygon(format!("vertex {p} has degree {}", n.len())));
        }
        // Walk the cycle from the smallest vertex and make sure it closes
        // after using every edge.
        let start = *adj.keys().next().expect("non-empty");
        let mut prev = start;
        let mut cur = adj[&start][0];
        let mut steps = 1;
        while cur != start {
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        if steps != edges.len() {
            return Err(Error::NotAPolygon("edge set has more than one cycle".into()));
        }
        Ok(Polygon { edges })
    }

    pub(crate) fn from_edges_unchecked(edges: EdgeSet) -> Self {
        debug_assert!(Polygon::new(edges.clone()).is_ok());
        Polygon { edges }
    }

    /// Closes a walk whose endpoints are neighbours.
    pub fn from_closed_walk(walk: &Walk) -> Result<Self> {
        let mut edges = walk.edges();
        edges.insert(Edge::new(walk.end(), walk.start())?);
        Polygon::new(edges)
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn vertices(&self) -> BTreeSet<Point> {
        self.edges.vertices()
    }

    pub fn translate(&self, by: Point) -> Polygon {
        Polygon { edges: self.edges.translate(by) }
    }

    /// Cycle order starting at the smallest vertex, heading to its smaller neighbour.
    pub fn cycle(&self) -> Vec<Point> {
        let adj = adjacency(&self.edges);
        let start = *adj.keys().next().expect("non-empty");
        let mut out = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0].min(adj[&start][1]);
        while cur != start {
            out.push(cur);
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
        }
        out
    }

    /// Canonical multi-line text form.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Polygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let edges = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<EdgeSet>>()?;
        Polygon::new(edges)
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Polygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.edges.iter())
    }
}
