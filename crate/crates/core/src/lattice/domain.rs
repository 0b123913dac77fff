use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::edges::{Edge, EdgeSet};
use super::point::Point;
use super::walk::Walk;
use crate::error::{Error, Result};

/// Positive rational mesh size `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mesh {
    pub num: u64,
    pub den: u64,
}

impl Mesh {
    pub const UNIT: Mesh = Mesh { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidDomain(format!("mesh size {num}/{den} is not positive")));
        }
        let g = gcd(num, den);
        Ok(Mesh { num: num / g, den: den / g })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl fmt::Display for Mesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Mesh {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let p = |t: &str| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("bad mesh `{s}`: {e}")));
        Mesh::new(p(n)?, p(d)?)
    }
}

/// A discretised domain: a connected set of lattice sites with two marked
/// sites `a` and `b`.
///
/// Sites are stored in lattice units; the mesh size is metadata only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DomainFile", into = "DomainFile")]
pub struct GridDomain {
    delta: Mesh,
    sites: BTreeSet<Point>,
    a: Point,
    b: Point,
}

#[derive(Serialize, Deserialize)]
struct DomainFile {
    delta: String,
    sites: Vec<Point>,
    a: Point,
    b: Point,
}

impl TryFrom<DomainFile> for GridDomain {
    type Error = Error;
    fn try_from(f: DomainFile) -> Result<Self> {
        GridDomain::new(f.delta.parse()?, f.sites.into_iter().collect(), f.a, f.b)
    }
}

impl From<GridDomain> for DomainFile {
    fn from(d: GridDomain) -> Self {
        DomainFile { delta: d.delta.to_string(), sites: d.sites.into_iter().collect(), a: d.a, b: d.b }
    }
}

impl GridDomain {
    pub fn new(delta: Mesh, sites: BTreeSet<Point>, a: Point, b: Point) -> Result<Self> {
        if !sites.contains(&a) || !sites.contains(&b) {
            return Err(Error::InvalidDomain("marked sites must belong to the domain".into()));
        }
        if a == b {
            return Err(Error::DegenerateDomain(a));
        }
        let comps = components(&sites);
        if comps.len() != 1 {
            return Err(Error::InvalidDomain(format!("domain has {} connected components", comps.len())));
        }
        Ok(GridDomain { delta, sites, a, b })
    }

    /// The `width × height` block of sites `[0,width) × [0,height)`.
    pub fn rectangle(width: i64, height: i64, a: Point, b: Point) -> Result<Self> {
        if width < 1 || height < 1 {
            return Err(Error::InvalidDomain(format!("empty rectangle {width}x{height}")));
        }
        let sites = (0..width).flat_map(|x| (0..height).map(move |y| Point::new(x, y))).collect();
        GridDomain::new(Mesh::UNIT, sites, a, b)
    }

    /// Disk of radius `radius` lattice units (mesh `1/radius`), keeping the
    /// largest connected component of the sites with `|p| ≤ radius`.
    ///
    /// The marked sites are the sites closest to `radius·(cos θ, sin θ)`,
    /// ties broken by the smaller `(x, y)`.
    pub fn disk(radius: u32, a_angle: f64, b_angle: f64) -> Result<Self> {
        if radius < 2 {
            return Err(Error::PreconditionViolation(format!("disk radius {radius} < 2")));
        }
        let r = radius as i64;
        let raw: BTreeSet<Point> = (-r..=r)
            .flat_map(|x| (-r..=r).map(move |y| Point::new(x, y)))
            .filter(|p| p.x * p.x + p.y * p.y <= r * r)
            .collect();
        let sites = components(&raw).into_iter().next().unwrap_or_default();
        let snap = |theta: f64| {
            let (tx, ty) = (radius as f64 * theta.cos(), radius as f64 * theta.sin());
            let mut best: Option<(f64, Point)> = None;
            for &p in &sites {
                let d = (p.x as f64 - tx).powi(2) + (p.y as f64 - ty).powi(2);
                // sites are visited in (x, y) order, so strict < keeps the smallest on ties
                if best.is_none_or(|(bd, _)| d < bd - 1e-9) {
                    best = Some((d, p));
                }
            }
            best.expect("disk has sites").1
        };
        let a = snap(a_angle);
        let b = snap(b_angle);
        if a == b {
            return Err(Error::DegenerateDomain(a));
        }
        GridDomain::new(Mesh::new(1, radius as u64)?, sites, a, b)
    }

    pub fn delta(&self) -> Mesh {
        self.delta
    }

    pub fn sites(&self) -> &BTreeSet<Point> {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn contains(&self, p: Point) -> bool {
        self.sites.contains(&p)
    }

    pub fn contains_walk(&self, w: &Walk) -> bool {
        w.vertices().iter().all(|&p| self.contains(p))
    }

    /// Same sites with different marked points.
    pub fn with_marks(&self, a: Point, b: Point) -> Result<Self> {
        GridDomain::new(self.delta, self.sites.clone(), a, b)
    }

    /// Lattice edges with both endpoints in the domain.
    pub fn edges(&self) -> EdgeSet {
        let mut out = EdgeSet::new();
        for &p in &self.sites {
            for q in [p + Point::new(1, 0), p + Point::new(0, 1)] {
                if self.sites.contains(&q) {
                    out.insert(Edge::new(p, q).expect("neighbours"));
                }
            }
        }
        out
    }

    pub fn graph(&self) -> SiteGraph {
        SiteGraph::new(&self.sites)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Dense indexing of a finite site set with its induced nearest-neighbour graph.
#[derive(Clone, Debug)]
pub struct SiteGraph {
    origin: Point,
    width: i64,
    height: i64,
    lookup: Vec<u32>,
    points: Vec<Point>,
    neighbors: Vec<Vec<u32>>,
}

const NONE: u32 = u32::MAX;

impl SiteGraph {
    pub fn new<'a>(sites: impl IntoIterator<Item = &'a Point>) -> Self {
        let points: Vec<Point> = {
            let mut v: Vec<Point> = sites.into_iter().copied().collect();
            v.sort();
            v.dedup();
            v
        };
        let (mut lo, mut hi) = (Point::new(0, 0), Point::new(-1, -1));
        if let Some(&first) = points.first() {
            lo = first;
            hi = first;
            for p in &points {
                lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        }
        let width = hi.x - lo.x + 1;
        let height = hi.y - lo.y + 1;
        let mut lookup = vec![NONE; (width.max(0) * height.max(0)) as usize];
        for (i, p) in points.iter().enumerate() {
            lookup[((p.y - lo.y) * width + (p.x - lo.x)) as usize] = i as u32;
        }
        let mut g = SiteGraph { origin: lo, width, height, lookup, points, neighbors: Vec::new() };
        g.neighbors = g
            .points
            .iter()
            .map(|p| p.neighbors().iter().filter_map(|&q| g.index(q)).collect())
            .collect();
        g
    }

    pub fn index(&self, p: Point) -> Option<u32> {
        let (dx, dy) = (p.x - self.origin.x, p.y - self.origin.y);
        if dx < 0 || dy < 0 || dx >= self.width || dy >= self.height {
            return None;
        }
        let i = self.lookup[(dy * self.width + dx) as usize];
        (i != NONE).then_some(i)
    }

    pub fn point(&self, i: u32) -> Point {
        self.points[i as usize]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        &self.neighbors[i as usize]
    }

    /// Graph distances from a set of sources; `u32::MAX` marks unreachable sites.
    pub fn bfs(&self, sources: impl IntoIterator<Item = u32>, max_dist: Option<u32>) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s as usize] != 0 {
                dist[s as usize] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            if max_dist.is_some_and(|m| d >= m) {
                continue;
            }
            for &w in self.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Sites of `domain` at graph distance (inside the domain) strictly less
/// than `xi` from some vertex of `walk`.
pub fn dilate(domain: &GridDomain, walk: &Walk, xi: u32) -> BTreeSet<Point> {
    if xi == 0 {
        return BTreeSet::new();
    }
    let g = domain.graph();
    let sources: Vec<u32> = walk.vertices().iter().filter_map(|&p| g.index(p)).collect();
    let dist = g.bfs(sources, Some(xi - 1));
    dist.iter()
        .enumerate()
        .filter(|&(_, &d)| d < xi)
        .map(|(i, _)| g.point(i as u32))
        .collect()
}

/// Maximal lattice-connected subsets of `points`, largest first, ties by
/// smallest member.
pub fn components(points: &BTreeSet<Point>) -> Vec<BTreeSet<Point>> {
    let mut seen: HashSet<Point> = HashSet::with_capacity(points.len());
    let mut out = Vec::new();
    for &p in points {
        if !seen.insert(p) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            comp.insert(q);
            for r in q.neighbors() {
                if points.contains(&r) && seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        out.push(comp);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.first().cmp(&b.first())));
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn pts(v: &[(i64, i64)]) -> BTreeSet<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn disk_radius_two() {
        let d = GridDomain::disk(2, 0.0, PI).unwrap();
        let expect = pts(&[
            (0, 0),
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (2, 0),
            (-2, 0),
            (0, 2),
            (0, -2),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ]);
        assert_eq!(d.sites(), &expect);
        assert_eq!(d.a(), Point::new(2, 0));
        assert_eq!(d.b(), Point::new(-2, 0));
        assert_eq!(d.delta(), Mesh::new(1, 2).unwrap());
    }

    #[test]
    fn disk_degenerate_and_small() {
        assert_eq!(GridDomain::disk(2, 0.0, 0.0), Err(Error::DegenerateDomain(Point::new(2, 0))));
        assert!(GridDomain::disk(1, 0.0, PI).is_err());
    }

    #[test]
    fn disk_site_count_matches_scan() {
        // brute-force point-in-disk scan
        let r = 10i64;
        let mut n = 0;
        for x in -20..=20i64 {
            for y in -20..=20i64 {
                if x * x + y * y <= r * r {
                    n += 1;
                }
            }
        }
        assert_eq!(n, 317);
        assert_eq!(GridDomain::disk(10, 0.0, PI).unwrap().len(), n);
    }

    #[test]
    fn marked_site_ties_prefer_smaller_point() {
        // theta = pi/4 on radius 2: target (1.414, 1.414); (1,1) is the only
        // closest site. At pi/2 the target (0,2) is a site.
        let d = GridDomain::disk(2, PI / 4.0, PI / 2.0).unwrap();
        assert_eq!(d.a(), Point::new(1, 1));
        assert_eq!(d.b(), Point::new(0, 2));
    }

    #[test]
    fn domain_json_round_trip() {
        let d = GridDomain::rectangle(2, 2, Point::new(0, 0), Point::new(1, 0)).unwrap();
        let s = d.to_json();
        assert_eq!(
            s,
            r#"{"delta":"1/1","sites":[[0,0],[0,1],[1,0],[1,1]],"a":[0,0],"b":[1,0]}"#
        );
        assert_eq!(GridDomain::from_json(&s).unwrap(), d);
        assert!(GridDomain::from_json(r#"{"delta":"1/1","sites":[[0,0],[5,5]],"a":[0,0],"b":[5,5]}"#).is_err());
    }

    #[test]
    fn dilate_examples() {
        let d = GridDomain::rectangle(7, 7, Point::new(0, 0), Point::new(6, 6)).unwrap();
        let w: Walk = "1,1:RRU".parse().unwrap();
        let v: BTreeSet<Point> = w.vertices().iter().copied().collect();
        assert_eq!(dilate(&d, &w, 1), v);
        let c = Walk::point(Point::new(3, 3));
        assert_eq!(dilate(&d, &c, 2), pts(&[(3, 3), (2, 3), (4, 3), (3, 2), (3, 4)]));
        let corner = Walk::point(Point::new(0, 0));
        assert_eq!(dilate(&d, &corner, 2), pts(&[(0, 0), (1, 0), (0, 1)]));
    }

    #[test]
    fn components_examples() {
        assert!(components(&BTreeSet::new()).is_empty());
        let c = components(&pts(&[(0, 0), (1, 0), (5, 5)]));
        assert_eq!(c, vec![pts(&[(0, 0), (1, 0)]), pts(&[(5, 5)])]);
    }

    #[test]
    fn site_graph_indexes_every_site() {
        let d = GridDomain::disk(5, 0.0, PI).unwrap();
        let g = d.graph();
        for &p in d.sites() {
            let i = g.index(p).unwrap();
            assert_eq!(g.point(i), p);
            for &j in g.neighbors(i) {
                assert!(g.point(j).is_neighbor(p));
            }
        }
        assert_eq!(g.index(Point::new(100, 0)), None);
    }
}
