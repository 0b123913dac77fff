//! Depth-first enumeration of walks from the origin in the whole plane.
//!
//! Every family here is a set of self-avoiding walks from the origin cut out
//! by a local rule (stay in a half plane, end at the running maximum, ...).
//! The search keeps a bit-packed occupancy grid and, for counting, splits the
//! tree at a fixed depth into independent prefixes that run on the rayon pool.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::budget::{Budget, Guard};
use crate::error::Result;
use crate::lattice::{Dir, Point, Walk};

const SPLIT_DEPTH: usize = 6;

pub(crate) trait WalkRule: Sync {
    type State: Copy + Send + Sync;

    fn root(&self) -> Self::State;

    /// State after stepping onto `p` with `remaining` steps still to go, or
    /// `None` to prune.
    fn step(&self, s: Self::State, p: Point, remaining: usize) -> Option<Self::State>;

    fn accepts(&self, s: Self::State, p: Point) -> bool;
}

/// All self-avoiding walks.
pub(crate) struct Free;

impl WalkRule for Free {
    type State = ();
    fn root(&self) {}
    fn step(&self, _: (), _: Point, _: usize) -> Option<()> {
        Some(())
    }
    fn accepts(&self, _: (), _: Point) -> bool {
        true
    }
}

/// Bridges: the start is the lowest point and the end the highest.
///
/// `strict = false` allows other vertices on the bottom row (ties at the
/// start); `strict = true` is the classical `y_0 < y_t ≤ y_n` condition.
pub(crate) struct Bridge {
    pub strict: bool,
}

impl WalkRule for Bridge {
    type State = i64;
    fn root(&self) -> i64 {
        0
    }
    fn step(&self, top: i64, p: Point, _: usize) -> Option<i64> {
        if p.y < 0 || (self.strict && p.y == 0) {
            return None;
        }
        Some(top.max(p.y))
    }
    fn accepts(&self, top: i64, p: Point) -> bool {
        p.y == top
    }
}

/// Walks from the origin confined to the rectangle spanned by their endpoints.
pub(crate) struct Rectangle;

impl WalkRule for Rectangle {
    type State = (i64, i64);
    fn root(&self) -> (i64, i64) {
        (0, 0)
    }
    fn step(&self, (mx, my): (i64, i64), p: Point, _: usize) -> Option<(i64, i64)> {
        if p.x < 0 || p.y < 0 {
            return None;
        }
        Some((mx.max(p.x), my.max(p.y)))
    }
    fn accepts(&self, (mx, my): (i64, i64), p: Point) -> bool {
        p.x == mx && p.y == my
    }
}

/// Walks from `(0,0)` to `(k,k)` inside `[0,k]²`.
pub(crate) struct Squared {
    pub span: i64,
}

impl WalkRule for Squared {
    type State = ();
    fn root(&self) {}
    fn step(&self, _: (), p: Point, remaining: usize) -> Option<()> {
        let k = self.span;
        if p.x < 0 || p.y < 0 || p.x > k || p.y > k {
            return None;
        }
        let to_go = (k - p.x) + (k - p.y);
        if to_go as usize > remaining || (to_go == 0 && remaining > 0) {
            return None;
        }
        Some(())
    }
    fn accepts(&self, _: (), p: Point) -> bool {
        p.x == self.span && p.y == self.span
    }
}

struct Occupancy {
    side: i64,
    offset: i64,
    bits: Vec<u64>,
}

impl Occupancy {
    fn new(n: usize) -> Self {
        let offset = n as i64 + 1;
        let side = 2 * offset + 1;
        Occupancy { side, offset, bits: vec![0; ((side * side) as usize).div_ceil(64)] }
    }

    #[inline]
    fn slot(&self, p: Point) -> usize {
        ((p.y + self.offset) * self.side + (p.x + self.offset)) as usize
    }

    #[inline]
    fn get(&self, p: Point) -> bool {
        let i = self.slot(p);
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, p: Point) {
        let i = self.slot(p);
        self.bits[i >> 6] ^= 1 << (i & 63);
    }
}

struct Search<'a, R: WalkRule, F: FnMut(&[Point])> {
    rule: &'a R,
    max_depth: usize,
    horizon: usize,
    occ: Occupancy,
    path: Vec<Point>,
    guard: &'a Guard,
    ticks: u64,
    visit: F,
}

impl<'a, R: WalkRule, F: FnMut(&[Point])> Search<'a, R, F> {
    fn new(rule: &'a R, max_depth: usize, horizon: usize, path: Vec<Point>, guard: &'a Guard, visit: F) -> Self {
        let mut occ = Occupancy::new(horizon);
        for &p in &path {
            occ.flip(p);
        }
        Search { rule, max_depth, horizon, occ, path, guard, ticks: 0, visit }
    }

    fn run(&mut self, state: R::State) {
        let here = *self.path.last().expect("non-empty path");
        if self.rule.accepts(state, here) {
            (self.visit)(&self.path);
        }
        let depth = self.path.len() - 1;
        if depth >= self.max_depth {
            return;
        }
        self.ticks += 1;
        if self.guard.is_tripped() || (self.ticks & Guard::POLL_MASK == 0 && self.guard.expired()) {
            return;
        }
        for d in Dir::ALL {
            let p = here + d.delta();
            if self.occ.get(p) {
                continue;
            }
            if let Some(s) = self.rule.step(state, p, self.horizon - depth - 1) {
                self.occ.flip(p);
                self.path.push(p);
                self.run(s);
                self.path.pop();
                self.occ.flip(p);
            }
        }
    }
}

struct Prefix<S> {
    path: Vec<Point>,
    state: S,
}

/// All rule-compatible paths of exactly `depth` steps, in a fixed order.
fn prefixes<R: WalkRule>(rule: &R, depth: usize, horizon: usize) -> Vec<Prefix<R::State>> {
    let mut frontier = vec![Prefix { path: vec![Point::ORIGIN], state: rule.root() }];
    for level in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 3);
        for pre in &frontier {
            let here = *pre.path.last().unwrap();
            for d in Dir::ALL {
                let p = here + d.delta();
                if pre.path.contains(&p) {
                    continue;
                }
                if let Some(s) = rule.step(pre.state, p, horizon - level - 1) {
                    let mut path = pre.path.clone();
                    path.push(p);
                    next.push(Prefix { path, state: s });
                }
            }
        }
        frontier = next;
    }
    frontier
}

/// `counts[len]` for `len in 0..=n`: number of accepted walks of each length.
pub(crate) fn count_by_length<R: WalkRule>(rule: &R, n: usize, budget: &Budget, what: &str) -> Result<Vec<u64>> {
    let guard = budget.guard();
    let split = n.min(SPLIT_DEPTH);
    let mut counts = vec![0u64; n + 1];
    if split > 0 {
        // lengths strictly below the split depth
        let mut search = Search::new(rule, split - 1, n, vec![Point::ORIGIN], &guard, |p: &[Point]| {
            counts[p.len() - 1] += 1
        });
        search.run(rule.root());
    }
    let partial: Vec<Vec<u64>> = prefixes(rule, split, n)
        .par_iter()
        .map(|pre| {
            let mut local = vec![0u64; n + 1];
            if guard.expired() {
                return local;
            }
            let mut search =
                Search::new(rule, n, n, pre.path.clone(), &guard, |p: &[Point]| local[p.len() - 1] += 1);
            search.run(pre.state);
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

/// Visits every accepted walk of length exactly `n`, sequentially, in a fixed order.
pub(crate) fn for_each_walk<R: WalkRule>(
    rule: &R,
    n: usize,
    budget: &Budget,
    what: &str,
    mut visit: impl FnMut(&[Point]),
) -> Result<()> {
    let guard = budget.guard();
    let mut search = Search::new(rule, n, n, vec![Point::ORIGIN], &guard, |p: &[Point]| {
        if p.len() == n + 1 {
            visit(p)
        }
    });
    search.run(rule.root());
    guard.finish((), what)
}

pub(crate) fn collect_walks<R: WalkRule>(rule: &R, n: usize, budget: &Budget, what: &str) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    for_each_walk(rule, n, budget, what, |p| out.push(Walk::from_vertices_unchecked(p.to_vec())))?;
    Ok(out)
}

/// `c_1, …, c_{n_max}`: self-avoiding walks of each length from the origin.
pub fn count_saws(n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n(n_max, "count_saws")?;
    Ok(count_by_length(&Free, n_max, budget, "count_saws")?[1..].to_vec())
}

/// `b_1, …, b_{n_max}` for bridges whose start is a lowest and whose end is a
/// highest vertex (ties allowed).
pub fn count_bridges(n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n(n_max, "count_bridges")?;
    Ok(count_by_length(&Bridge { strict: false }, n_max, budget, "count_bridges")?[1..].to_vec())
}

/// Bridge counts under the classical condition `y_0 < y_t ≤ y_n` for `t ≥ 1`.
pub fn count_strict_bridges(n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n(n_max, "count_strict_bridges")?;
    Ok(count_by_length(&Bridge { strict: true }, n_max, budget, "count_strict_bridges")?[1..].to_vec())
}

/// Walks of length `n` from the origin contained in the rectangle spanned by
/// their endpoints (the target set of bridge unfolding).
pub fn count_rectangle_walks(n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n(n_max, "count_rectangle_walks")?;
    Ok(count_by_length(&Rectangle, n_max, budget, "count_rectangle_walks")?[1..].to_vec())
}

pub fn saws(n: usize, budget: &Budget) -> Result<Vec<Walk>> {
    budget.check_n(n, "saws")?;
    collect_walks(&Free, n, budget, "saws")
}

pub fn bridges(n: usize, budget: &Budget) -> Result<Vec<Walk>> {
    budget.check_n(n, "bridges")?;
    collect_walks(&Bridge { strict: false }, n, budget, "bridges")
}

pub fn rectangle_walks(n: usize, budget: &Budget) -> Result<Vec<Walk>> {
    budget.check_n(n, "rectangle_walks")?;
    collect_walks(&Rectangle, n, budget, "rectangle_walks")
}

/// Squared walks of length `n` and span `k`.
pub fn squared_walks(n: usize, span: usize, budget: &Budget) -> Result<Vec<Walk>> {
    budget.check_n(n, "squared_walks")?;
    collect_walks(&Squared { span: span as i64 }, n, budget, "squared_walks")
}

/// Counts of squared walks of length `n`, by span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredCounts {
    pub n: usize,
    pub by_span: BTreeMap<usize, u64>,
}

impl SquaredCounts {
    pub fn total(&self) -> u64 {
        self.by_span.values().sum()
    }

    pub fn get(&self, span: usize) -> u64 {
        self.by_span.get(&span).copied().unwrap_or(0)
    }

    /// Span with the most walks (smallest such span on ties).
    pub fn argmax_span(&self) -> Option<usize> {
        self.by_span.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(&k, _)| k)
    }
}

/// `a_{n,k}` for every span `k`, with `a_n = Σ_k a_{n,k}`. `n` must be even.
pub fn count_squared_walks(n: usize, budget: &Budget) -> Result<SquaredCounts> {
    if n % 2 != 0 {
        return Err(crate::Error::PreconditionViolation(format!("squared walks need even length, got {n}")));
    }
    budget.check_n(n, "count_squared_walks")?;
    let mut by_span = BTreeMap::new();
    for k in 0..=n / 2 {
        let c = count_by_length(&Squared { span: k as i64 }, n, budget, "count_squared_walks")?[n];
        if c > 0 {
            by_span.insert(k, c);
        }
    }
    Ok(SquaredCounts { n, by_span })
}

/// Fekete-style bracket on the connective constant from exact counts.
#[derive(Clone, Debug, PartialEq)]
pub struct MuBounds {
    /// `max_n b_n^{1/n}` with the tie-allowing bridge count.
    pub lower: f64,
    /// `min_n c_n^{1/n}`.
    pub upper: f64,
    /// `max_n b_n^{1/n}` with the strict bridge count, a rigorous lower bound.
    pub strict_lower: f64,
    pub walks: Vec<u64>,
    pub bridges: Vec<u64>,
    pub strict_bridges: Vec<u64>,
}

pub fn mu_bounds(n_max: usize, budget: &Budget) -> Result<MuBounds> {
    if n_max == 0 {
        return Err(crate::Error::PreconditionViolation("mu_bounds needs n_max ≥ 1".into()));
    }
    let walks = count_saws(n_max, budget)?;
    let bridges = count_bridges(n_max, budget)?;
    let strict_bridges = count_strict_bridges(n_max, budget)?;
    let root = |v: &[u64]| v.iter().enumerate().map(|(i, &c)| (c as f64).powf(1.0 / (i + 1) as f64)).collect::<Vec<_>>();
    let lower = root(&bridges).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let strict_lower = root(&strict_bridges).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let upper = root(&walks).into_iter().fold(f64::INFINITY, f64::min);
    Ok(MuBounds { lower, upper, strict_lower, walks, bridges, strict_bridges })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: plain recursion with a vector membership test.
    fn naive(n: usize, keep: &dyn Fn(&[Point]) -> bool) -> Vec<u64> {
        fn go(path: &mut Vec<Point>, n: usize, keep: &dyn Fn(&[Point]) -> bool, out: &mut Vec<u64>) {
            if keep(path) {
                out[path.len() - 1] += 1;
            }
            if path.len() - 1 == n {
                return;
            }
            let here = *path.last().unwrap();
            for q in here.neighbors() {
                if !path.contains(&q) {
                    path.push(q);
                    go(path, n, keep, out);
                    path.pop();
                }
            }
        }
        let mut out = vec![0; n + 1];
        go(&mut vec![Point::ORIGIN], n, keep, &mut out);
        out
    }

    fn nonstrict_bridge(p: &[Point]) -> bool {
        let lo = p.iter().map(|q| q.y).min().unwrap();
        let hi = p.iter().map(|q| q.y).max().unwrap();
        p[0].y == lo && p.last().unwrap().y == hi
    }

    #[test]
    fn small_walk_counts() {
        let c = count_saws(4, &Budget::default()).unwrap();
        assert_eq!(c, vec![4, 12, 36, 100]);
        assert_eq!(naive(4, &|_| true)[1..], [4, 12, 36, 100]);
    }

    #[test]
    fn walk_counts_match_naive_recursion() {
        let fast = count_saws(9, &Budget::default()).unwrap();
        assert_eq!(fast[..], naive(9, &|_| true)[1..]);
    }

    #[test]
    fn bridge_counts() {
        let b = count_bridges(8, &Budget::default()).unwrap();
        assert_eq!(b[0], 3);
        assert_eq!(b[1], 7);
        assert_eq!(b[..], naive(8, &nonstrict_bridge)[1..]);
        let strict = count_strict_bridges(8, &Budget::default()).unwrap();
        let oracle = naive(8, &|p: &[Point]| {
            p[1..].iter().all(|q| q.y > 0) && p.iter().all(|q| q.y <= p.last().unwrap().y)
        });
        assert_eq!(strict[..], oracle[1..]);
        assert_eq!(strict[..3], [1, 3, 7]);
    }

    #[test]
    fn tie_allowing_bridges_are_not_supermultiplicative() {
        let b = count_bridges(2, &Budget::default()).unwrap();
        assert!(b[1] < b[0] * b[0]);
    }

    #[test]
    fn strict_bridges_are_supermultiplicative() {
        let b = count_strict_bridges(12, &Budget::default()).unwrap();
        for n in 1..=12 {
            for m in 1..=12 - n {
                assert!(b[n + m - 1] >= b[n - 1] * b[m - 1], "n={n} m={m}");
            }
        }
    }

    #[test]
    fn squared_walk_counts() {
        let b = Budget::default();
        let a0 = count_squared_walks(0, &b).unwrap();
        assert_eq!((a0.total(), a0.get(0)), (1, 1));
        let a2 = count_squared_walks(2, &b).unwrap();
        assert_eq!(a2.by_span, BTreeMap::from([(1, 2)]));
        let a4 = count_squared_walks(4, &b).unwrap();
        assert_eq!(a4.by_span, BTreeMap::from([(2, 6)]));
        assert!(count_squared_walks(3, &b).is_err());
        for n in [6, 8] {
            let squared = |p: &[Point]| {
                let e = *p.last().unwrap();
                e.x == e.y && p.iter().all(|q| q.x >= 0 && q.y >= 0 && q.x <= e.x && q.y <= e.y)
            };
            assert_eq!(count_squared_walks(n, &b).unwrap().total(), naive(n, &squared)[n]);
        }
    }

    #[test]
    fn squared_walks_list_matches_counts() {
        let b = Budget::default();
        let counts = count_squared_walks(8, &b).unwrap();
        for (&k, &c) in &counts.by_span {
            let ws = squared_walks(8, k, &b).unwrap();
            assert_eq!(ws.len() as u64, c);
            assert!(ws.iter().all(|w| w.end() == Point::new(k as i64, k as i64)));
        }
        assert_eq!(counts.argmax_span(), counts.by_span.iter().max_by_key(|e| e.1).map(|e| *e.0));
    }

    #[test]
    fn rectangle_walks_match_oracle() {
        let rect = |p: &[Point]| {
            let e = *p.last().unwrap();
            p.iter().all(|q| q.x >= 0 && q.y >= 0 && q.x <= e.x && q.y <= e.y)
        };
        let c = count_rectangle_walks(8, &Budget::default()).unwrap();
        assert_eq!(c[..], naive(8, &rect)[1..]);
        assert_eq!(rectangle_walks(5, &Budget::default()).unwrap().len() as u64, c[4]);
    }

    #[test]
    fn mu_bounds_small() {
        let m = mu_bounds(1, &Budget::default()).unwrap();
        assert_eq!((m.lower, m.upper), (3.0, 4.0));
        let m = mu_bounds(10, &Budget::default()).unwrap();
        assert_eq!(m.walks[9], 44100);
        assert!(m.strict_lower <= m.upper);
        // b_1 = 3 under the tie-allowing definition, while c_7^{1/7} < 3
        assert!(mu_bounds(6, &Budget::default()).map(|m| m.lower <= m.upper).unwrap());
        assert!(m.lower > m.upper);
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_saws(15, &Budget::default()).unwrap_err();
        assert!(err.is_resource_limit());
        let err = count_saws(14, &Budget::default().with_seconds(0.0)).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn counts_do_not_depend_on_thread_count() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| count_saws(11, &Budget::default()).unwrap());
        let b = four.install(|| count_saws(11, &Budget::default()).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn submultiplicativity_of_walk_counts() {
        let c = count_saws(12, &Budget::default()).unwrap();
        for n in 1..=12 {
            for m in 1..=12 - n {
                assert!(c[n + m - 1] <= c[n - 1] * c[m - 1]);
            }
        }
    }
}
