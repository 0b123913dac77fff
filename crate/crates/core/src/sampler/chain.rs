use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SamplerConfig;
use crate::error::{Error, Result};
use crate::lattice::{Dir, GridDomain, Point, SiteGraph, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Two vertices added beside an edge: length +2.
    Insert,
    /// A U-turn collapsed: length −2.
    Delete,
    /// A corner moved across the diagonal of its unit square: length unchanged.
    Flip,
}

impl MoveKind {
    pub const ALL: [MoveKind; 3] = [MoveKind::Insert, MoveKind::Delete, MoveKind::Flip];

    fn slot(self) -> usize {
        self as usize
    }
}

/// A proposed local move of the walk, before the Metropolis test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proposal {
    /// Insert `p, q` between vertices `i` and `i+1`.
    Insert { i: usize, p: Point, q: Point },
    /// Remove vertices `i` and `i+1`.
    Delete { i: usize },
    /// Move vertex `k` to `p`.
    Flip { k: usize, p: Point },
}

impl Proposal {
    pub fn kind(&self) -> MoveKind {
        match self {
            Proposal::Insert { .. } => MoveKind::Insert,
            Proposal::Delete { .. } => MoveKind::Delete,
            Proposal::Flip { .. } => MoveKind::Flip,
        }
    }

    pub fn length_change(&self) -> i64 {
        match self {
            Proposal::Insert { .. } => 2,
            Proposal::Delete { .. } => -2,
            Proposal::Flip { .. } => 0,
        }
    }

    fn apply(&self, verts: &mut Vec<Point>) {
        match *self {
            Proposal::Insert { i, p, q } => {
                verts.splice(i + 1..i + 1, [p, q]);
            }
            Proposal::Delete { i } => {
                verts.drain(i..i + 2);
            }
            Proposal::Flip { k, p } => verts[k] = p,
        }
    }
}

/// The move attached to edge `i` (between vertices `i`, `i+1`) pushed
/// towards `side` (0 or 1, indexing the two perpendicular directions).
///
/// `free(p)` must say whether `p` is an unoccupied domain site. Returns
/// `None` when the move is blocked.
fn plan(verts: &[Point], i: usize, side: usize, free: impl Fn(Point) -> bool) -> Option<Proposal> {
    let (u, w) = (verts[i], verts[i + 1]);
    let d = Dir::between(u, w)?.perpendicular()[side].delta();
    let (u2, w2) = (u + d, w + d);
    let prev_is = i > 0 && verts[i - 1] == u2;
    let next_is = i + 2 < verts.len() && verts[i + 2] == w2;
    match (prev_is, next_is) {
        (true, true) => Some(Proposal::Delete { i }),
        (true, false) => free(w2).then_some(Proposal::Flip { k: i, p: w2 }),
        (false, true) => free(u2).then_some(Proposal::Flip { k: i + 1, p: u2 }),
        (false, false) => (free(u2) && free(w2)).then_some(Proposal::Insert { i, p: u2, q: w2 }),
    }
}

/// The move of edge `i` towards `side`, applied to a walk inside `domain`.
pub fn propose(domain: &GridDomain, walk: &Walk, i: usize, side: usize) -> Option<(Proposal, Walk)> {
    let verts = walk.vertices();
    if i >= walk.len() || side > 1 {
        return None;
    }
    let occupied: std::collections::HashSet<Point> = verts.iter().copied().collect();
    let prop = plan(verts, i, side, |p| domain.contains(p) && !occupied.contains(&p))?;
    let mut out = verts.to_vec();
    prop.apply(&mut out);
    Some((prop, Walk::new(out).expect("local moves keep the walk self-avoiding")))
}

/// Metropolis acceptance for a move from length `n` to `n'`. The edge is
/// chosen uniformly, so the proposal ratio is `n / n'`.
pub fn acceptance_probability(x: f64, n: usize, n_new: usize) -> f64 {
    let delta = n_new as i32 - n as i32;
    (x.powi(delta) * n as f64 / n_new as f64).min(1.0)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChainStats {
    pub attempts: u64,
    /// Proposals that were geometrically possible, per move kind.
    pub proposed: [u64; 3],
    /// Accepted proposals, per move kind.
    pub accepted: [u64; 3],
}

impl ChainStats {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted.iter().sum::<u64>() as f64 / self.attempts.max(1) as f64
    }

    pub fn merge(&mut self, other: &ChainStats) {
        self.attempts += other.attempts;
        for k in 0..3 {
            self.proposed[k] += other.proposed[k];
            self.accepted[k] += other.accepted[k];
        }
    }
}

/// Fixed-endpoint chain on the self-avoiding walks of a domain.
///
/// Each attempt picks an edge of the current walk uniformly and one of the
/// two perpendicular directions with probability 1/2, so every move is
/// proposed with probability `1/(2n)` and the reverse move with `1/(2n')`.
#[derive(Clone, Debug)]
pub struct Chain {
    graph: SiteGraph,
    occupied: Vec<bool>,
    verts: Vec<Point>,
    x: f64,
    max_length: usize,
    frozen_window: usize,
    since_accept: usize,
    rng: ChaCha8Rng,
    stats: ChainStats,
}

impl Chain {
    /// Starts from the shortest walk that always steps to the lowest-index
    /// site closer to `b`.
    pub fn new(domain: &GridDomain, config: &SamplerConfig, stream: u64) -> Result<Self> {
        config.validate()?;
        let graph = domain.graph();
        let (ia, ib) = (graph.index(domain.a()).expect("marked site"), graph.index(domain.b()).expect("marked site"));
        let dist = graph.bfs([ib], None);
        let mut path = vec![ia];
        while let Some(&v) = path.last().filter(|&&v| v != ib) {
            let next = graph.neighbors(v).iter().copied().filter(|&w| dist[w as usize] + 1 == dist[v as usize]).min();
            path.push(next.ok_or_else(|| Error::InvalidDomain("marked sites are disconnected".into()))?);
        }
        if path.len() - 1 > config.max_length {
            return Err(Error::PreconditionViolation(format!(
                "max_length {} is below the distance {} between the marked sites",
                config.max_length,
                path.len() - 1
            )));
        }
        let mut occupied = vec![false; graph.len()];
        for &v in &path {
            occupied[v as usize] = true;
        }
        let verts = path.iter().map(|&v| graph.point(v)).collect();
        Ok(Chain {
            graph,
            occupied,
            verts,
            x: config.x,
            max_length: config.max_length,
            frozen_window: config.frozen_window,
            since_accept: 0,
            rng: config.rng(stream),
            stats: ChainStats::default(),
        })
    }

    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn walk(&self) -> Walk {
        Walk::new(self.verts.clone()).expect("chain state is self-avoiding")
    }

    pub fn stats(&self) -> &ChainStats {
        &self.stats
    }

    /// Attempted moves per sweep.
    pub fn sweep_size(&self) -> usize {
        self.graph.len()
    }

    fn set(&mut self, p: Point, value: bool) {
        let i = self.graph.index(p).expect("walk stays in the domain");
        self.occupied[i as usize] = value;
    }

    /// One attempted move; returns the accepted proposal, if any.
    pub fn step(&mut self) -> Result<Option<Proposal>> {
        let n = self.len();
        let i = self.rng.random_range(0..n);
        let side = self.rng.random_range(0..2usize);
        let u = self.rng.random::<f64>();
        self.stats.attempts += 1;
        let (graph, occupied) = (&self.graph, &self.occupied);
        let free = |p: Point| graph.index(p).is_some_and(|k| !occupied[k as usize]);
        let accepted = match plan(&self.verts, i, side, free) {
            Some(prop) if (n as i64 + prop.length_change()) as usize <= self.max_length => {
                self.stats.proposed[prop.kind().slot()] += 1;
                let n_new = (n as i64 + prop.length_change()) as usize;
                (u < acceptance_probability(self.x, n, n_new)).then_some(prop)
            }
            _ => None,
        };
        match accepted {
            Some(prop) => {
                self.stats.accepted[prop.kind().slot()] += 1;
                self.since_accept = 0;
                match prop {
                    Proposal::Insert { p, q, .. } => {
                        self.set(p, true);
                        self.set(q, true);
                    }
                    Proposal::Delete { i } => {
                        let (a, b) = (self.verts[i], self.verts[i + 1]);
                        self.set(a, false);
                        self.set(b, false);
                    }
                    Proposal::Flip { k, p } => {
                        let old = self.verts[k];
                        self.set(old, false);
                        self.set(p, true);
                    }
                }
                prop.apply(&mut self.verts);
            }
            None => {
                self.since_accept += 1;
                if self.since_accept >= self.frozen_window {
                    return Err(Error::NonErgodicWarning(format!(
                        "no move accepted in {} attempts (walk length {n})",
                        self.since_accept
                    )));
                }
            }
        }
        Ok(accepted)
    }

    pub fn sweep(&mut self) -> Result<()> {
        for _ in 0..self.sweep_size() {
            self.step()?;
        }
        Ok(())
    }

    pub fn sweeps(&mut self, k: usize) -> Result<()> {
        (0..k).try_for_each(|_| self.sweep())
    }

    /// Burn-in, then `n_samples` walks separated by `thinning` sweeps
    /// (at least one attempted move apart).
    pub fn run(&mut self, burn_in: usize, thinning: usize, n_samples: usize) -> Result<Vec<Walk>> {
        self.sweeps(burn_in)?;
        let mut out = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            if thinning == 0 {
                self.step()?;
            } else {
                self.sweeps(thinning)?;
            }
            out.push(self.walk());
        }
        Ok(out)
    }
}
