use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::enumerate::{BoxSpec, FamilyEdges};
use crate::error::{Error, Result};
use crate::lattice::{Dir, GridDomain, Point};

/// A set of equal-size boxes with their cardinal-edge adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxFamily {
    m: usize,
    boxes: BTreeSet<BoxSpec>,
    adjacency: BTreeMap<BoxSpec, Vec<BoxSpec>>,
}

impl BoxFamily {
    pub fn new(m: usize, boxes: impl IntoIterator<Item = BoxSpec>) -> Result<Self> {
        let boxes: BTreeSet<BoxSpec> = boxes.into_iter().collect();
        if let Some(b) = boxes.iter().find(|b| b.m() != m) {
            return Err(Error::PreconditionViolation(format!("box {b} does not have m = {m}")));
        }
        let adjacency = boxes
            .iter()
            .map(|b| {
                let next = Dir::ALL.iter().map(|&d| b.neighbor(d)).filter(|c| boxes.contains(c));
                (*b, next.collect())
            })
            .collect();
        Ok(BoxFamily { m, boxes, adjacency })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn boxes(&self) -> &BTreeSet<BoxSpec> {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: &BoxSpec) -> bool {
        self.boxes.contains(b)
    }

    pub fn neighbors(&self, b: &BoxSpec) -> &[BoxSpec] {
        self.adjacency.get(b).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components of the adjacency graph, in order of smallest box.
    pub fn components(&self) -> Vec<BTreeSet<BoxSpec>> {
        self.components_within(&self.boxes)
    }

    fn components_within(&self, keep: &BTreeSet<BoxSpec>) -> Vec<BTreeSet<BoxSpec>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &b in keep {
            if !seen.insert(b) {
                continue;
            }
            let mut comp = BTreeSet::from([b]);
            let mut stack = vec![b];
            while let Some(c) = stack.pop() {
                for &d in self.neighbors(&c) {
                    if keep.contains(&d) && seen.insert(d) {
                        comp.insert(d);
                        stack.push(d);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// The sub-family on `boxes`, which must all belong to this family.
    pub fn subfamily(&self, boxes: impl IntoIterator<Item = BoxSpec>) -> Result<BoxFamily> {
        let boxes: BTreeSet<BoxSpec> = boxes.into_iter().collect();
        if let Some(b) = boxes.iter().find(|b| !self.contains(b)) {
            return Err(Error::PreconditionViolation(format!("box {b} is not in the family")));
        }
        BoxFamily::new(self.m, boxes)
    }

    /// The box of this family containing `p`, if any.
    pub fn box_at(&self, p: Point) -> Option<BoxSpec> {
        let s = 2 * self.m as i64 + 2;
        let b = BoxSpec::at(p.x.div_euclid(s), p.y.div_euclid(s), self.m);
        (b.contains(p) && self.contains(&b)).then_some(b)
    }

    /// Boxes meeting a set of sites.
    pub fn boxes_meeting<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> BTreeSet<BoxSpec> {
        points.into_iter().filter_map(|&p| self.box_at(p)).collect()
    }

    /// Vertices, edges and external cardinal edges of the union.
    pub fn family_edges(&self) -> Result<FamilyEdges> {
        FamilyEdges::new(self.boxes.iter().copied())
    }

    /// Maximal connected sets of boxes that `points` does not meet.
    pub fn avoided_components<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Vec<BTreeSet<BoxSpec>> {
        let hit = self.boxes_meeting(points);
        let free: BTreeSet<BoxSpec> = self.boxes.difference(&hit).copied().collect();
        self.components_within(&free)
    }
}

/// Every box on the `(2m+2)`-grid whose vertices all lie in the domain.
pub fn box_family(domain: &GridDomain, m: usize) -> BoxFamily {
    let s = 2 * m as i64 + 2;
    let candidates: BTreeSet<BoxSpec> =
        domain.sites().iter().map(|p| BoxSpec::at(p.x.div_euclid(s), p.y.div_euclid(s), m)).collect();
    let inside = candidates.into_iter().filter(|b| b.vertices().all(|p| domain.contains(p)));
    BoxFamily::new(m, inside).expect("boxes share m")
}

/// Smallest connected set of boxes meeting both `a` and `b`, minus one.
/// `None` when no such set exists.
pub fn bdist(a: &BTreeSet<Point>, b: &BTreeSet<Point>, family: &BoxFamily) -> Option<u32> {
    let targets = family.boxes_meeting(b);
    let mut dist: BTreeMap<BoxSpec, u32> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for s in family.boxes_meeting(a) {
        dist.insert(s, 0);
        queue.push_back(s);
    }
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if targets.contains(&c) {
            return Some(d);
        }
        for &n in family.neighbors(&c) {
            if !dist.contains_key(&n) {
                dist.insert(n, d + 1);
                queue.push_back(n);
            }
        }
    }
    None
}
