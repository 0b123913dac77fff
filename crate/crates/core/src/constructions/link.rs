use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::enumerate::paths::PathProblem;
use crate::enumerate::{BoxSpec, Budget, FamilyEdges};
use crate::error::{Error, Result};
use crate::lattice::{edge_set_to_walk, Dir, Edge, EdgeSet, GridDomain, Point, Polygon, Walk};

/// Exclusive upper bound on the length of a link polygon.
pub fn link_length_bound(m: usize) -> usize {
    10 * m + 10
}

/// Exclusive bound of the fallback search, used only when no link exists
/// below [`link_length_bound`] for any eligible cardinal edge.
pub fn extended_link_bound(m: usize) -> usize {
    4 * link_length_bound(m)
}

/// Number of edges `link` shares with `gamma` when the contact is legal:
/// one edge, or two edges with a common vertex, and no other common vertex.
pub fn link_overlap(gamma: &Walk, link: &Polygon) -> Option<usize> {
    let g = gamma.edges();
    let shared: Vec<Edge> = link.edges().intersection(&g).copied().collect();
    match shared.as_slice() {
        [_] => {}
        [e, f] if e.is_adjacent_to(f) => {}
        _ => return None,
    }
    let shared_vertices: BTreeSet<Point> = shared.iter().flat_map(|e| e.endpoints()).collect();
    let gv: BTreeSet<Point> = gamma.vertices().iter().copied().collect();
    let touched: BTreeSet<Point> = link.vertices().intersection(&gv).copied().collect();
    (touched == shared_vertices).then_some(shared.len())
}

/// Paths closing `e` into a polygon: edges outside `forbidden`, vertices
/// outside `forbidden`'s vertex set (except the ends of `e`), inside the
/// domain when one is given.
fn link_problem(e: Edge, forbidden: &EdgeSet, domain: Option<&GridDomain>, max_len: usize) -> PathProblem {
    let mut blocked = forbidden.vertices();
    blocked.remove(&e.a());
    blocked.remove(&e.b());
    let r = (max_len / 2 + 1) as i64;
    let ok = |p: Point| !blocked.contains(&p) && domain.is_none_or(|d| d.contains(p));
    let mut allowed = EdgeSet::new();
    let c = e.a();
    for x in c.x - r..=c.x + r {
        for y in c.y - r..=c.y + r {
            let p = Point::new(x, y);
            if p.l1(c) > r || !ok(p) {
                continue;
            }
            for q in [p + Point::new(1, 0), p + Point::new(0, 1)] {
                let f = Edge::new(p, q).expect("neighbours");
                if q.l1(c) <= r && ok(q) && f != e && !forbidden.contains(&f) {
                    allowed.insert(f);
                }
            }
        }
    }
    PathProblem::new(&allowed, e.a(), e.b(), &EdgeSet::new(), Some(max_len.saturating_sub(1)))
}

/// The shortest, then lexicographically smallest, polygon `ℓ` through `e`
/// that avoids `forbidden` (apart from `e`), stays in the domain, is shorter
/// than `10m+10`, and touches `gamma` in one edge or two adjacent edges.
pub fn find_link_polygon(
    gamma: &Walk,
    e: Edge,
    m: usize,
    forbidden: &EdgeSet,
    domain: Option<&GridDomain>,
) -> Result<Polygon> {
    find_link_polygon_within(gamma, e, forbidden, domain, link_length_bound(m))
}

/// [`find_link_polygon`] with an explicit exclusive length bound.
pub fn find_link_polygon_within(
    gamma: &Walk,
    e: Edge,
    forbidden: &EdgeSet,
    domain: Option<&GridDomain>,
    bound: usize,
) -> Result<Polygon> {
    for len in (4..bound).step_by(2) {
        let problem = link_problem(e, forbidden, domain, len);
        let paths = problem.collect(&Budget::unlimited(), "find_link_polygon")?;
        let best = paths
            .iter()
            .filter(|p| p.len() == len)
            .map(|p| {
                let mut edges = problem.to_edges(p);
                edges.insert(e);
                Polygon::from_edges_unchecked(edges)
            })
            .filter(|l| link_overlap(gamma, l).is_some())
            .min();
        if let Some(l) = best {
            return Ok(l);
        }
    }
    Err(Error::NoLinkFound(gamma.to_string(), e.to_string()))
}

/// The smallest external cardinal edge of `family` whose facing box belongs
/// to `boxes` and is visited by `gamma`.
pub fn choose_cardinal_edge(gamma: &Walk, family: &FamilyEdges, boxes: &BTreeSet<BoxSpec>) -> Option<Edge> {
    eligible_cardinal_edges(gamma, family, boxes).into_iter().next()
}

/// All external cardinal edges whose facing box belongs to `boxes` and is
/// visited by `gamma`, in increasing order.
pub fn eligible_cardinal_edges(gamma: &Walk, family: &FamilyEdges, boxes: &BTreeSet<BoxSpec>) -> Vec<Edge> {
    let out: BTreeSet<Edge> = family
        .boxes()
        .iter()
        .flat_map(|b| Dir::ALL.map(|d| (b, d)))
        .filter(|(b, d)| {
            let n = b.neighbor(*d);
            !family.boxes().contains(&n) && boxes.contains(&n) && gamma.vertices().iter().any(|&p| n.contains(p))
        })
        .map(|(b, d)| b.cardinal_edge(d))
        .collect();
    out.into_iter().collect()
}

/// Symmetric difference of a walk, a link polygon and a family polygon, read
/// back as a walk between the walk's endpoints.
pub fn splice(gamma1: &Walk, link: &Polygon, gamma2: &Polygon) -> Result<Walk> {
    let g = gamma1.edges();
    let sum = EdgeSet::symmetric_difference(&[&g, link.edges(), gamma2.edges()]);
    edge_set_to_walk(&sum, gamma1.start(), gamma1.end())
}

/// One application of the splice map with every choice made.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spliced {
    pub walk: Walk,
    pub e: Edge,
    pub link: Polygon,
    /// Edges shared by the link and `gamma1` (1 or 2).
    pub overlap: usize,
    /// The link needed the fallback bound.
    pub extended: bool,
}

/// Whether `gamma` avoids every vertex of the family.
pub fn avoids_family(gamma: &Walk, family: &FamilyEdges) -> bool {
    gamma.vertices().iter().all(|p| !family.vertices().contains(p))
}

/// Splice `gamma1` (avoiding `family`, next to it) with `gamma2 ∈ S_F`.
pub fn splice_into_family(
    domain: &GridDomain,
    boxes: &BTreeSet<BoxSpec>,
    family: &FamilyEdges,
    gamma1: &Walk,
    gamma2: &Polygon,
) -> Result<Spliced> {
    if !avoids_family(gamma1, family) {
        return Err(Error::PreconditionViolation(format!("{gamma1} enters the family")));
    }
    let edges = eligible_cardinal_edges(gamma1, family, boxes);
    let Some(&first) = edges.first() else {
        return Err(Error::PreconditionViolation(format!("{gamma1} visits no box next to the family")));
    };
    // first edge with a short link; the long search only if every edge fails
    let m = family.m();
    for (bound, extended) in [(link_length_bound(m), false), (extended_link_bound(m), true)] {
        for &e in &edges {
            match find_link_polygon_within(gamma1, e, family.edges(), Some(domain), bound) {
                Ok(link) => {
                    let overlap = link_overlap(gamma1, &link).expect("link was chosen with a legal overlap");
                    let walk = splice(gamma1, &link, gamma2)?;
                    return Ok(Spliced { walk, e, link, overlap, extended });
                }
                Err(Error::NoLinkFound(..)) => continue,
                Err(err) => return Err(err),
            }
        }
    }
    Err(Error::NoLinkFound(gamma1.to_string(), first.to_string()))
}

/// A way of writing a walk as a splice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preimage {
    pub gamma1: Walk,
    pub gamma2: Polygon,
    pub link: Polygon,
}

/// Every `(gamma1, gamma2)` whose splice is `gamma`.
///
/// `gamma2` is read off from the edges of `gamma` inside `E_F` closed by a
/// missing external cardinal edge `e`. Away from `e` the link runs along
/// `gamma` itself, leaving it through one or two new edges, so the link is
/// fixed by how far it follows `gamma` from each end of `e`. Each such
/// candidate is kept when the deterministic choices of
/// [`splice_into_family`] reproduce it.
pub fn recover_splice_preimages(
    gamma: &Walk,
    domain: &GridDomain,
    boxes: &BTreeSet<BoxSpec>,
    family: &FamilyEdges,
) -> Result<Vec<Preimage>> {
    let g = gamma.edges();
    let verts = gamma.vertices();
    let index: HashMap<Point, usize> = verts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let inside: EdgeSet = g.intersection(family.edges()).copied().collect();
    let bound = extended_link_bound(family.m());
    let mut out: Vec<Preimage> = Vec::new();
    for &e in family.external_cardinal_edges() {
        if g.contains(&e) {
            continue;
        }
        let (Some(&ia), Some(&ib)) = (index.get(&e.a()), index.get(&e.b())) else { continue };
        let mut cand = inside.clone();
        cand.insert(e);
        let Ok(gamma2) = Polygon::new(cand) else { continue };
        if !family.external_cardinal_edges().is_subset(gamma2.edges()) {
            continue;
        }
        let outside = EdgeSet::symmetric_difference(&[&g, gamma2.edges()]);
        // the two arms of gamma outside the family, starting at e's ends
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        let arm_lo: Vec<Point> = verts[..=lo].iter().rev().copied().collect();
        let arm_hi: Vec<Point> = verts[hi..].to_vec();
        for i in 1..arm_lo.len() {
            for j in 1..arm_hi.len() {
                if i + j + 2 >= bound {
                    break;
                }
                let (u, v) = (arm_lo[i], arm_hi[j]);
                let mut bridges: Vec<Vec<Point>> = Vec::new();
                if u.is_neighbor(v) {
                    bridges.push(vec![u, v]);
                }
                for w in u.neighbors() {
                    if w.is_neighbor(v) && w != v {
                        bridges.push(vec![u, w, v]);
                    }
                }
                for br in bridges {
                    let mut edges: EdgeSet = [e].into_iter().collect();
                    let path = arm_lo[..=i].iter().chain(&br[1..br.len() - 1]).chain(arm_hi[..=j].iter().rev());
                    let pts: Vec<Point> = path.copied().collect();
                    for w in pts.windows(2) {
                        edges.insert(Edge::new(w[0], w[1])?);
                    }
                    if edges.len() >= bound {
                        continue;
                    }
                    let Ok(link) = Polygon::new(edges) else { continue };
                    let rest = EdgeSet::symmetric_difference(&[&outside, link.edges()]);
                    let Ok(gamma1) = edge_set_to_walk(&rest, gamma.start(), gamma.end()) else { continue };
                    if !avoids_family(&gamma1, family) || out.iter().any(|p| p.gamma1 == gamma1 && p.gamma2 == gamma2) {
                        continue;
                    }
                    let Ok(s) = splice_into_family(domain, boxes, family, &gamma1, &gamma2) else { continue };
                    if s.walk == *gamma && s.link == link {
                        out.push(Preimage { gamma1, gamma2: gamma2.clone(), link });
                    }
                }
            }
        }
    }
    Ok(out)
}
