use std::collections::BTreeSet;

use crate::enumerate::{BoxSpec, FamilyEdges};
use crate::error::{Error, Result};
use crate::lattice::{Edge, Polygon};

/// Smallest box whose removal leaves the family connected.
pub fn removable_box(family: &FamilyEdges) -> Option<BoxSpec> {
    if family.boxes().len() < 2 {
        return None;
    }
    family.boxes().iter().copied().find(|b| {
        let rest = family.boxes().iter().copied().filter(|c| c != b);
        FamilyEdges::new(rest).is_ok_and(|f| f.is_connected())
    })
}

/// The facing cardinal edges `[ab]` of `b` and `[cd]` of its smallest
/// neighbour in `rest`.
pub fn facing_edges(b: &BoxSpec, rest: &BTreeSet<BoxSpec>) -> Result<(Edge, Edge)> {
    rest.iter()
        .find_map(|c| b.adjacent_dir(c).map(|d| (b.cardinal_edge(d), c.cardinal_edge(d.opposite()))))
        .ok_or_else(|| Error::NoAdjacentCardinalEdge(format!("box {b} has no neighbour in the family")))
}

/// Joins a polygon of `S_{B}` and one of `S_{F∖B}` by trading the facing
/// cardinal edges `[ab]`, `[cd]` for the rungs `[ac]`, `[bd]`.
pub fn merge_family_polygons(b: &BoxSpec, p1: &Polygon, rest: &BTreeSet<BoxSpec>, p2: &Polygon) -> Result<Polygon> {
    let (ab, cd) = facing_edges(b, rest)?;
    if !p1.contains(&ab) || !p2.contains(&cd) {
        return Err(Error::NoAdjacentCardinalEdge(format!("{ab} or {cd} missing from the polygons")));
    }
    let mut edges = p1.edges().clone();
    edges.remove(&ab);
    for e in p2.edges() {
        if *e != cd {
            edges.insert(*e);
        }
    }
    // both edges are stored lower/left endpoint first, so a~c and b~d
    edges.insert(Edge::new(ab.a(), cd.a())?);
    edges.insert(Edge::new(ab.b(), cd.b())?);
    Polygon::new(edges)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::enumerate::{enumerate_sf, Budget};

    fn family(cells: &[(i64, i64)], m: usize) -> FamilyEdges {
        FamilyEdges::new(cells.iter().map(|&(i, j)| BoxSpec::at(i, j, m))).unwrap()
    }

    #[test]
    fn two_unit_squares_make_the_perimeter() {
        let f = family(&[(0, 0), (1, 0)], 0);
        let b = removable_box(&f).unwrap();
        let rest: BTreeSet<BoxSpec> = f.boxes().iter().copied().filter(|c| *c != b).collect();
        let p1 = enumerate_sf(&FamilyEdges::new([b]).unwrap(), &Budget::default()).unwrap().remove(0);
        let p2 = enumerate_sf(&FamilyEdges::new(rest.clone()).unwrap(), &Budget::default()).unwrap().remove(0);
        let out = merge_family_polygons(&b, &p1, &rest, &p2).unwrap();
        assert_eq!(out.len(), 8);
        assert_eq!(out, enumerate_sf(&f, &Budget::default()).unwrap()[0]);
    }

    #[test]
    fn removable_box_keeps_connectivity() {
        let f = family(&[(0, 0), (1, 0), (2, 0)], 0);
        assert_eq!(removable_box(&f), Some(BoxSpec::at(0, 0, 0)));
        let single = family(&[(0, 0)], 1);
        assert_eq!(removable_box(&single), None);
    }

    #[test]
    fn non_adjacent_box_is_rejected() {
        let b = BoxSpec::at(0, 0, 0);
        let rest = BTreeSet::from([BoxSpec::at(2, 0, 0)]);
        let p = enumerate_sf(&FamilyEdges::new([b]).unwrap(), &Budget::default()).unwrap().remove(0);
        let q = p.translate(BoxSpec::at(2, 0, 0).anchor());
        assert!(matches!(merge_family_polygons(&b, &p, &rest, &q), Err(Error::NoAdjacentCardinalEdge(_))));
    }

    #[test]
    fn merged_images_are_distinct_members() {
        let budget = Budget::default();
        for cells in [&[(0, 0), (1, 0)][..], &[(0, 0), (0, 1), (1, 0)][..], &[(0, 0), (1, 0), (2, 0)][..]] {
            let f = family(cells, 1);
            let b = removable_box(&f).unwrap();
            let rest: BTreeSet<BoxSpec> = f.boxes().iter().copied().filter(|c| *c != b).collect();
            let s_b = enumerate_sf(&FamilyEdges::new([b]).unwrap(), &budget).unwrap();
            let s_rest = enumerate_sf(&FamilyEdges::new(rest.clone()).unwrap(), &budget).unwrap();
            let s_f: HashSet<Polygon> = enumerate_sf(&f, &budget).unwrap().into_iter().collect();
            let mut images = HashSet::new();
            for p1 in &s_b {
                for p2 in &s_rest {
                    let out = merge_family_polygons(&b, p1, &rest, p2).unwrap();
                    assert_eq!(out.len(), p1.len() + p2.len());
                    assert!(s_f.contains(&out));
                    assert!(images.insert(out));
                }
            }
            assert_eq!(images.len(), s_b.len() * s_rest.len());
        }
    }
}
