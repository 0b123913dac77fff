use super::budget::{Budget, Guard};
use crate::error::Result;

/// Redelmeier's method for fixed polyominoes, rooted at the lowest-leftmost
/// cell so each translation class is produced once.
struct Redelmeier<'a> {
    n: usize,
    width: usize,
    reached: Vec<bool>,
    counts: Vec<u64>,
    guard: &'a Guard,
    ticks: u64,
}

impl Redelmeier<'_> {
    // cell (x, y) with -(n-1) ≤ x ≤ n-1 and 0 ≤ y ≤ n-1
    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let off = self.n as i64 - 1;
        let allowed = y > 0 || (y == 0 && x >= 0);
        (allowed && x.abs() <= off && y <= off).then(|| (y as usize) * self.width + (x + off) as usize)
    }

    fn run(&mut self, mut untried: Vec<(i64, i64)>, size: usize) {
        while let Some((x, y)) = untried.pop() {
            self.ticks += 1;
            if self.guard.is_tripped() || (self.ticks & Guard::POLL_MASK == 0 && self.guard.expired()) {
                return;
            }
            self.counts[size + 1] += 1;
            if size + 1 == self.n {
                continue;
            }
            let mut next = untried.clone();
            let mut added = Vec::new();
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                if let Some(i) = self.index(x + dx, y + dy) {
                    if !self.reached[i] {
                        self.reached[i] = true;
                        next.push((x + dx, y + dy));
                        added.push(i);
                    }
                }
            }
            self.run(next, size + 1);
            for i in added {
                self.reached[i] = false;
            }
        }
    }
}

/// Fixed polyominoes `p_1..p_n` (up to translation).
fn fixed_polyominoes(n: usize, budget: &Budget) -> Result<Vec<u64>> {
    let guard = budget.guard();
    let width = 2 * n.max(1) - 1;
    let mut r = Redelmeier { n, width, reached: vec![false; width * n.max(1)], counts: vec![0; n + 1], guard: &guard, ticks: 0 };
    if n > 0 {
        let root = r.index(0, 0).expect("origin is allowed");
        r.reached[root] = true;
        r.run(vec![(0, 0)], 0);
    }
    let counts = r.counts;
    guard.finish(counts[1..].to_vec(), "count_animals")
}

/// `A_1..A_{n_max}`: connected site sets of size `n` containing the origin.
/// Each fixed polyomino of size `n` has `n` translates through the origin.
pub fn count_animals(n_max: usize, budget: &Budget) -> Result<Vec<u64>> {
    budget.check_n(n_max, "count_animals")?;
    let fixed = fixed_polyominoes(n_max, budget)?;
    Ok(fixed.iter().enumerate().map(|(i, &p)| p * (i as u64 + 1)).collect())
}

/// `max_n A_n^{1/n}` over the computed range.
pub fn lambda_estimate(n_max: usize, budget: &Budget) -> Result<f64> {
    let a = count_animals(n_max, budget)?;
    Ok(a.iter().enumerate().map(|(i, &c)| (c as f64).powf(1.0 / (i + 1) as f64)).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    // Oracle: grow every rooted animal of size k by one boundary site and
    // deduplicate with a set.
    fn brute(n_max: usize) -> Vec<u64> {
        let mut level: BTreeSet<Vec<(i32, i32)>> = BTreeSet::from([vec![(0, 0)]]);
        let mut out = vec![1];
        for _ in 1..n_max {
            let mut next = BTreeSet::new();
            for a in &level {
                for &(x, y) in a {
                    for q in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                        if !a.contains(&q) {
                            let mut b = a.clone();
                            b.push(q);
                            b.sort();
                            next.insert(b);
                        }
                    }
                }
            }
            out.push(next.len() as u64);
            level = next;
        }
        out
    }

    #[test]
    fn matches_growth_oracle() {
        let got = count_animals(8, &Budget::default()).unwrap();
        assert_eq!(got, brute(8));
        assert_eq!(&got[..3], &[1, 4, 18]);
    }

    #[test]
    fn known_fixed_counts() {
        let p = fixed_polyominoes(10, &Budget::default()).unwrap();
        assert_eq!(p, vec![1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446]);
    }

    #[test]
    fn lambda_dominates_every_term() {
        let b = Budget::default();
        let l = lambda_estimate(10, &b).unwrap();
        for (i, &a) in count_animals(10, &b).unwrap().iter().enumerate() {
            assert!((a as f64) <= l.powi(i as i32 + 1) * (1.0 + 1e-12));
        }
    }
}
