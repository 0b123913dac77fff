use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Point, Walk};

/// A bridge: the first vertex is lowest and the last vertex is highest.
/// Ties are allowed, so a horizontal step counts as a bridge.
pub fn is_bridge(w: &Walk) -> bool {
    let ys = w.vertices().iter().map(|p| p.y);
    let (lo, hi) = ys.fold((i64::MAX, i64::MIN), |(lo, hi), y| (lo.min(y), hi.max(y)));
    w.start().y == lo && w.end().y == hi
}

/// Cut of a bridge into pieces that each run between two extreme columns.
///
/// The prefix (up to the first visit of the leftmost column) is cut at
/// alternating first-time minima and maxima, walking backwards in time; the
/// suffix at alternating last-time maxima and minima.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDecomposition {
    /// `m_1 > m_2 > ...`: first times of the running minimum.
    pub m_times: Vec<usize>,
    /// `n_1 > n_2 > ...`: first times of the running maximum.
    pub n_times: Vec<usize>,
    /// Last times of the running maximum after `m_1`.
    pub p_times: Vec<usize>,
    /// Last times of the running minimum after `m_1`.
    pub q_times: Vec<usize>,
    /// Time intervals `[s, t]` of the pieces, in time order.
    pub cuts: Vec<(usize, usize)>,
    /// The pieces, in place (not translated), in time order.
    pub pieces: Vec<Walk>,
    /// Number of pieces before `m_1`.
    pub prefix_len: usize,
    /// Horizontal extents of the prefix pieces, in time order (strictly increasing).
    pub prefix_widths: Vec<i64>,
    /// Horizontal extents of the suffix pieces, in time order.
    pub suffix_widths: Vec<i64>,
}

impl BridgeDecomposition {
    /// Whether piece `i` runs right to left and is mirrored by the unfolding.
    pub fn is_reflected(&self, i: usize) -> bool {
        reflected(i, self.prefix_len)
    }
}

// The prefix ends with a leftward piece and alternates backwards; the suffix
// starts with a rightward piece and alternates forwards.
fn reflected(i: usize, prefix_len: usize) -> bool {
    if i < prefix_len {
        (prefix_len - 1 - i) % 2 == 0
    } else {
        (i - prefix_len) % 2 == 1
    }
}

fn first_argmin(xs: &[i64], hi: usize) -> usize {
    (0..=hi).min_by_key(|&t| (xs[t], t)).expect("nonempty")
}

fn first_argmax(xs: &[i64], hi: usize) -> usize {
    (0..=hi).min_by_key(|&t| (-xs[t], t)).expect("nonempty")
}

fn last_argmax(xs: &[i64], lo: usize) -> usize {
    (lo..xs.len()).max_by_key(|&t| (xs[t], t)).expect("nonempty")
}

fn last_argmin(xs: &[i64], lo: usize) -> usize {
    (lo..xs.len()).max_by_key(|&t| (-xs[t], t)).expect("nonempty")
}

pub fn decompose_bridge(gamma: &Walk) -> Result<BridgeDecomposition> {
    if !is_bridge(gamma) {
        return Err(Error::NotABridge(gamma.to_string()));
    }
    let xs: Vec<i64> = gamma.vertices().iter().map(|p| p.x).collect();
    let n = gamma.len();

    let m1 = first_argmin(&xs, n);
    let (mut m_times, mut n_times) = (vec![m1], Vec::new());
    let mut boundaries = vec![m1];
    while *boundaries.last().unwrap() > 0 {
        let nk = first_argmax(&xs, *m_times.last().unwrap());
        n_times.push(nk);
        boundaries.push(nk);
        if nk == 0 {
            m_times.push(0);
            break;
        }
        let mk = first_argmin(&xs, nk);
        m_times.push(mk);
        boundaries.push(mk);
    }
    boundaries.reverse();

    let (mut p_times, mut q_times) = (Vec::new(), Vec::new());
    let mut suffix = vec![m1];
    while *suffix.last().unwrap() < n {
        let pk = last_argmax(&xs, *suffix.last().unwrap());
        p_times.push(pk);
        suffix.push(pk);
        if pk == n {
            break;
        }
        let qk = last_argmin(&xs, pk);
        q_times.push(qk);
        suffix.push(qk);
    }

    let mut cuts: Vec<(usize, usize)> = boundaries.windows(2).map(|w| (w[0], w[1])).collect();
    let prefix_len = cuts.len();
    cuts.extend(suffix.windows(2).map(|w| (w[0], w[1])));
    if n == 0 || (cuts.is_empty()) {
        // no horizontal motion before or after m_1 = n: keep the whole walk
        cuts = vec![(0, n)];
    }
    let pieces: Vec<Walk> = cuts.iter().map(|&(s, t)| gamma.slice(s, t)).collect();
    let widths: Vec<i64> = cuts.iter().map(|&(s, t)| (xs[t] - xs[s]).abs()).collect();
    let prefix_len = prefix_len.min(cuts.len());
    Ok(BridgeDecomposition {
        m_times,
        n_times,
        p_times,
        q_times,
        prefix_widths: widths[..prefix_len].to_vec(),
        suffix_widths: widths[prefix_len..].to_vec(),
        cuts,
        pieces,
        prefix_len,
    })
}

/// Glue the pieces left to right, mirroring the leftward ones.
pub fn unfold_bridge(gamma: &Walk) -> Result<(Walk, Vec<i64>, Vec<i64>)> {
    let d = decompose_bridge(gamma)?;
    let mut out = Walk::point(Point::ORIGIN);
    for (i, piece) in d.pieces.iter().enumerate() {
        let piece = if d.is_reflected(i) { piece.reflect_vertical() } else { piece.clone() };
        out = out.concatenate(&piece)?;
    }
    Ok((out, d.prefix_widths, d.suffix_widths))
}

/// Inverse of [`unfold_bridge`]; the result starts at the origin.
pub fn fold_bridge(rect: &Walk, prefix_widths: &[i64], suffix_widths: &[i64]) -> Result<Walk> {
    let bad = || Error::PreconditionViolation(format!("{rect} does not unfold with these widths"));
    if rect.start() != Point::ORIGIN {
        return Err(bad());
    }
    let xs: Vec<i64> = rect.vertices().iter().map(|p| p.x).collect();
    let widths: Vec<i64> = prefix_widths.iter().chain(suffix_widths).copied().collect();
    let total = widths.len();
    let mut out = Walk::point(Point::ORIGIN);
    let (mut t, mut col) = (0usize, 0i64);
    for (i, &w) in widths.iter().enumerate() {
        col += w;
        let end = if i + 1 == total {
            rect.len()
        } else if i < prefix_widths.len() {
            (t..xs.len()).find(|&s| xs[s] == col).ok_or_else(bad)?
        } else {
            (t..xs.len()).rev().find(|&s| xs[s] == col).ok_or_else(bad)?
        };
        if end < t || xs[end] != col {
            return Err(bad());
        }
        let piece = rect.slice(t, end);
        let piece = if reflected(i, prefix_widths.len()) { piece.reflect_vertical() } else { piece };
        out = out.concatenate(&piece)?;
        t = end;
    }
    if total == 0 && !rect.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Membership in `Σ_n`: from the origin to some `(k, l)` inside `[0,k]×[0,l]`.
pub fn in_rectangle_class(w: &Walk) -> bool {
    let e = w.end();
    w.start() == Point::ORIGIN && w.vertices().iter().all(|p| (0..=e.x).contains(&p.x) && (0..=e.y).contains(&p.y))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::enumerate::{bridges, Budget};

    fn w(s: &str) -> Walk {
        format!("0,0:{s}").parse().unwrap()
    }

    #[test]
    fn straight_up_is_one_piece() {
        let d = decompose_bridge(&w("UU")).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.m_times, vec![0]);
        let (f, pre, suf) = unfold_bridge(&w("UU")).unwrap();
        assert_eq!(f, w("UU"));
        assert!(pre.is_empty());
        assert_eq!(suf, vec![0]);
    }

    #[test]
    fn minimum_at_start() {
        let d = decompose_bridge(&w("RU")).unwrap();
        assert_eq!(d.m_times, vec![0]);
        assert!(d.n_times.is_empty());
        assert_eq!(d.pieces, vec![w("RU")]);
    }

    #[test]
    fn hand_traced_cases() {
        // x: 0,-1,-1,0 ; m_1 = 1, n_1 = 0 then m_2 = 0 is appended
        let d = decompose_bridge(&w("LUR")).unwrap();
        assert_eq!((d.m_times.clone(), d.n_times.clone()), (vec![1, 0], vec![0]));
        assert_eq!(d.cuts, vec![(0, 1), (1, 3)]);
        assert_eq!(unfold_bridge(&w("LUR")).unwrap().0, w("RUR"));
        // the suffix widths tie at the start when the minimum recurs
        let d = decompose_bridge(&w("RUUL")).unwrap();
        assert_eq!(d.suffix_widths, vec![1, 1]);
        assert_eq!(unfold_bridge(&w("RUUL")).unwrap().0, w("RUUR"));
        assert!(matches!(decompose_bridge(&w("RD")), Err(Error::NotABridge(_))));
    }

    #[test]
    fn exhaustive_unfolding() {
        let budget = Budget::default();
        for n in 0..=10 {
            let all = bridges(n, &budget).unwrap();
            let mut seen = HashSet::new();
            for g in &all {
                let d = decompose_bridge(g).unwrap();
                let mut glued = Walk::point(g.start());
                for p in &d.pieces {
                    glued = glued.concatenate(p).unwrap();
                }
                assert_eq!(&glued, g);
                assert!(d.prefix_widths.windows(2).all(|v| v[0] < v[1]), "{g}");
                assert!(d.suffix_widths.iter().skip(1).collect::<Vec<_>>().windows(2).all(|v| v[0] > v[1]), "{g}");
                if d.suffix_widths.len() >= 2 {
                    assert!(d.suffix_widths[0] >= d.suffix_widths[1]);
                }
                let (f, pre, suf) = unfold_bridge(g).unwrap();
                assert_eq!(f.len(), n);
                assert!(in_rectangle_class(&f), "{g} -> {f}");
                assert_eq!(fold_bridge(&f, &pre, &suf).unwrap(), *g);
                assert!(seen.insert((f.encode(), pre, suf)));
            }
        }
    }
}
