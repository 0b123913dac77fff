//! Self-avoiding paths between two vertices of a finite edge set.
//!
//! This is the engine behind polygon enumeration (a polygon through a fixed
//! edge `[t,s]` is a path from `s` to `t` plus that edge), family polygons,
//! domain walks and link polygons.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use super::budget::{Budget, Guard};
use crate::error::Result;
use crate::lattice::{Edge, EdgeSet, Point, Walk};

/// Below this many open prefixes the frontier keeps being expanded before
/// the parallel phase.
const TARGET_TASKS: usize = 512;
const MAX_SPLIT_DEPTH: usize = 24;

pub(crate) struct PathProblem {
    points: Vec<Point>,
    adj: Vec<Vec<u32>>,
    source: u32,
    target: u32,
    /// Required neighbours of each vertex.
    required: Vec<Vec<u32>>,
    required_total: usize,
    max_len: Option<usize>,
    dist_to_target: Vec<u32>,
    feasible: bool,
}

#[derive(Clone)]
struct Prefix {
    path: Vec<u32>,
    used: usize,
}

impl PathProblem {
    /// Paths from `source` to `target` along `allowed` edges that use every
    /// edge of `required`, optionally with at most `max_len` edges.
    pub(crate) fn new(
        allowed: &EdgeSet,
        source: Point,
        target: Point,
        required: &EdgeSet,
        max_len: Option<usize>,
    ) -> Self {
        let mut set: BTreeSet<Point> = allowed.vertices();
        set.insert(source);
        set.insert(target);
        let points: Vec<Point> = set.into_iter().collect();
        let index: HashMap<Point, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let mut adj = vec![Vec::new(); points.len()];
        for e in allowed {
            let (a, b) = (index[&e.a()], index[&e.b()]);
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for nbrs in &mut adj {
            nbrs.sort_by_key(|&j| points[j as usize]);
        }
        let mut feasible = source != target;
        let mut req = vec![Vec::new(); points.len()];
        for e in required {
            match (index.get(&e.a()), index.get(&e.b())) {
                (Some(&a), Some(&b)) if allowed.contains(e) => {
                    req[a as usize].push(b);
                    req[b as usize].push(a);
                }
                _ => feasible = false,
            }
        }
        if req.iter().any(|r| r.len() > 2) {
            feasible = false;
        }
        let (s, t) = (index[&source], index[&target]);
        if req[s as usize].len() > 1 || req[t as usize].len() > 1 {
            feasible = false;
        }
        let mut dist = vec![u32::MAX; points.len()];
        let mut queue = VecDeque::from([t]);
        dist[t as usize] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist[s as usize] == u32::MAX {
            feasible = false;
        }
        PathProblem {
            points,
            adj,
            source: s,
            target: t,
            required: req,
            required_total: required.len(),
            max_len,
            dist_to_target: dist,
            feasible,
        }
    }

    pub(crate) fn point(&self, i: u32) -> Point {
        self.points[i as usize]
    }

    pub(crate) fn to_walk(&self, path: &[u32]) -> Walk {
        Walk::from_vertices_unchecked(path.iter().map(|&i| self.point(i)).collect())
    }

    pub(crate) fn to_edges(&self, path: &[u32]) -> EdgeSet {
        path.windows(2).map(|w| Edge::new(self.point(w[0]), self.point(w[1])).expect("adjacent")).collect()
    }

    fn is_required(&self, v: u32, w: u32) -> bool {
        self.required[v as usize].contains(&w)
    }

    /// Whether stepping from the head `v` (reached from `prev`) onto `w` keeps
    /// the required edges satisfiable.
    fn can_step(&self, visited: &Bits, prev: Option<u32>, v: u32, w: u32, len_after: usize) -> bool {
        if visited.get(w) {
            return false;
        }
        // every required edge at v must be one of v's two path edges
        if !self.required[v as usize].iter().all(|&r| Some(r) == prev || r == w) {
            return false;
        }
        if w != self.target {
            // required edges at w towards already-used vertices are lost
            if self.required[w as usize].iter().any(|&r| r != v && visited.get(r)) {
                return false;
            }
            if let Some(max) = self.max_len {
                if len_after + self.dist_to_target[w as usize] as usize > max {
                    return false;
                }
            }
        }
        true
    }

    fn frontier(&self, guard: &Guard, mut on_path: impl FnMut(&[u32])) -> Vec<Prefix> {
        let mut frontier = vec![Prefix { path: vec![self.source], used: 0 }];
        let mut depth = 0;
        while frontier.len() < TARGET_TASKS && depth < MAX_SPLIT_DEPTH && !frontier.is_empty() {
            if guard.expired() {
                return Vec::new();
            }
            let mut next = Vec::new();
            for pre in &frontier {
                let mut visited = Bits::new(self.points.len());
                for &v in &pre.path {
                    visited.set(v);
                }
                let v = *pre.path.last().unwrap();
                let prev = pre.path.len().checked_sub(2).map(|i| pre.path[i]);
                for &w in &self.adj[v as usize] {
                    if !self.can_step(&visited, prev, v, w, pre.path.len()) {
                        continue;
                    }
                    let used = pre.used + self.is_required(v, w) as usize;
                    let mut path = pre.path.clone();
                    path.push(w);
                    if w == self.target {
                        if used == self.required_total {
                            on_path(&path);
                        }
                    } else {
                        next.push(Prefix { path, used });
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        frontier
    }

    fn search(&self, pre: &Prefix, guard: &Guard, on_path: impl FnMut(&[u32])) {
        if guard.expired() {
            return;
        }
        let mut visited = Bits::new(self.points.len());
        for &v in &pre.path {
            visited.set(v);
        }
        let mut dfs = Dfs { p: self, visited, path: pre.path.clone(), used: pre.used, guard, ticks: 0, on_path };
        dfs.run();
    }

    /// Sequential visit of every solution path (as vertex indices).
    pub(crate) fn for_each(&self, budget: &Budget, what: &str, mut visit: impl FnMut(&[u32])) -> Result<()> {
        let guard = budget.guard();
        if self.feasible {
            let pre = Prefix { path: vec![self.source], used: 0 };
            self.search(&pre, &guard, &mut visit);
        }
        guard.finish((), what)
    }

    /// `counts[len]` of solution paths by number of edges.
    pub(crate) fn count_by_length(&self, budget: &Budget, what: &str) -> Result<Vec<u64>> {
        let guard = budget.guard();
        let mut counts = vec![0u64; self.points.len() + 1];
        if !self.feasible {
            return guard.finish(counts, what);
        }
        let frontier = self.frontier(&guard, |p| counts[p.len() - 1] += 1);
        let partial: Vec<Vec<u64>> = frontier
            .par_iter()
            .map(|pre| {
                let mut local = vec![0u64; self.points.len() + 1];
                self.search(pre, &guard, |p| local[p.len() - 1] += 1);
                local
            })
            .collect();
        for local in partial {
            for (c, l) in counts.iter_mut().zip(local) {
                *c += l;
            }
        }
        guard.finish(counts, what)
    }

    /// Every solution path, in a deterministic order independent of the
    /// thread count.
    pub(crate) fn collect(&self, budget: &Budget, what: &str) -> Result<Vec<Vec<u32>>> {
        let guard = budget.guard();
        let mut out = Vec::new();
        if !self.feasible {
            return guard.finish(out, what);
        }
        let frontier = self.frontier(&guard, |p| out.push(p.to_vec()));
        let partial: Vec<Vec<Vec<u32>>> = frontier
            .par_iter()
            .map(|pre| {
                let mut local = Vec::new();
                self.search(pre, &guard, |p| local.push(p.to_vec()));
                local
            })
            .collect();
        out.extend(partial.into_iter().flatten());
        guard.finish(out, what)
    }
}

struct Dfs<'a, F: FnMut(&[u32])> {
    p: &'a PathProblem,
    visited: Bits,
    path: Vec<u32>,
    used: usize,
    guard: &'a Guard,
    ticks: u64,
    on_path: F,
}

impl<F: FnMut(&[u32])> Dfs<'_, F> {
    fn run(&mut self) {
        self.ticks += 1;
        if self.guard.is_tripped() || (self.ticks & Guard::POLL_MASK == 0 && self.guard.expired()) {
            return;
        }
        let p = self.p;
        let n = self.path.len();
        let v = self.path[n - 1];
        let prev = n.checked_sub(2).map(|i| self.path[i]);
        for &w in &p.adj[v as usize] {
            if !p.can_step(&self.visited, prev, v, w, n) {
                continue;
            }
            let req = p.is_required(v, w) as usize;
            if w == p.target {
                if self.used + req == p.required_total {
                    self.path.push(w);
                    (self.on_path)(&self.path);
                    self.path.pop();
                }
                continue;
            }
            self.used += req;
            self.visited.set(w);
            self.path.push(w);
            self.run();
            self.path.pop();
            self.visited.clear(w);
            self.used -= req;
        }
    }
}

/// Fixed-size bit set over vertex indices.
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: u32) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }
    #[inline]
    fn clear(&mut self, i: u32) {
        self.0[(i >> 6) as usize] &= !(1 << (i & 63));
    }
}
