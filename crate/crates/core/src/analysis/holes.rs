use serde::{Deserialize, Serialize};

use crate::lattice::{GridDomain, SiteGraph, Walk};

/// Components of the domain left uncovered by the `xi`-neighbourhood of a walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleReport {
    pub xi: u32,
    /// Sizes in sites, largest first.
    pub component_sizes: Vec<usize>,
    pub largest: usize,
    pub walk_length: usize,
    pub domain_size: usize,
    /// Sites at graph distance `< xi` from the walk.
    pub covered: usize,
}

impl HoleReport {
    /// Whether holes and the covered sites partition the domain.
    pub fn is_consistent(&self) -> bool {
        self.component_sizes.iter().sum::<usize>() + self.covered == self.domain_size
            && self.largest == self.component_sizes.first().copied().unwrap_or(0)
            && self.component_sizes.windows(2).all(|w| w[0] >= w[1])
    }
}

pub fn holes(domain: &GridDomain, walk: &Walk, xi: u32) -> HoleReport {
    holes_in(&domain.graph(), walk, xi)
}

/// [`holes`] with a prebuilt site graph, for repeated calls on one domain.
pub fn holes_in(graph: &SiteGraph, walk: &Walk, xi: u32) -> HoleReport {
    let sources: Vec<u32> = walk.vertices().iter().filter_map(|&p| graph.index(p)).collect();
    let dist = if xi == 0 { vec![u32::MAX; graph.len()] } else { graph.bfs(sources, Some(xi - 1)) };
    let open: Vec<bool> = dist.iter().map(|&d| d >= xi).collect();
    let covered = open.iter().filter(|&&o| !o).count();

    // union-find over open sites
    let mut parent: Vec<u32> = (0..graph.len() as u32).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for v in 0..graph.len() as u32 {
        if !open[v as usize] {
            continue;
        }
        for &w in graph.neighbors(v) {
            if w > v && open[w as usize] {
                let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
                if rv != rw {
                    parent[rv.max(rw) as usize] = rv.min(rw);
                }
            }
        }
    }
    let mut sizes = vec![0usize; graph.len()];
    for v in 0..graph.len() as u32 {
        if open[v as usize] {
            let r = find(&mut parent, v);
            sizes[r as usize] += 1;
        }
    }
    let mut component_sizes: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    HoleReport {
        xi,
        largest: component_sizes.first().copied().unwrap_or(0),
        component_sizes,
        walk_length: walk.len(),
        domain_size: graph.len(),
        covered,
    }
}
