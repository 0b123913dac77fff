//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Every tolerance is a named constant below. Exact criteria compare the
//! library against small independent oracles written in this file.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use sawlab::analysis::{box_family, space_filling_experiment, SpaceFilling};
use sawlab::constructions::{
    four_to_polygon, merge_family_polygons, rectangle_pair_to_square, removable_box, splice_into_family, unfold_bridge,
};
use sawlab::enumerate::{
    bridges, count_animals, count_bridges, count_saws, count_squared_walks, count_strict_bridges,
    enumerate_domain_walks, enumerate_pm, enumerate_sf, partitions_distinct_table, rectangle_walks, squared_walks, zf,
    zm, FamilyEdges,
};
use sawlab::sampler::{estimate_theta, sample_mcmc, ExactSampler};
use sawlab::{BoxSpec, Budget, Edge, GridDomain, Point, Polygon, SamplerConfig, Walk};
use statrs::distribution::{ChiSquared, ContinuousCDF};

const COUNT_N: usize = 10;
const PARTITION_A: usize = 40;
const COUNT_TIME_LIMIT: Duration = Duration::from_secs(60);
const SANDWICH_N: usize = 14;
const UNFOLD_N: usize = 10;
const SQUARE_N: usize = 6;
const POLYGON_M: usize = 1;
const WEIGHTS: [f64; 3] = [0.4, 0.6, 1.0];
const FAMILY_TIME_LIMIT: Duration = Duration::from_secs(300);
const CHI2_DRAWS: usize = 10_000;
const CHI2_MIN_P: f64 = 0.001;
const MCMC_SIGMAS: f64 = 3.0;
const MCMC_WEIGHTS: [f64; 3] = [0.3, 0.6, 1.0];
const MCMC_SAMPLES: usize = 20_000;
const HR_RANGE: (usize, usize) = (50, 500);
const HR_MIN_AT_END: f64 = 0.75;
const SPACEFILL_RADII: [u32; 3] = [10, 20, 40];
const SPACEFILL_SAMPLES: usize = 200;
const SPACEFILL_SEED: u64 = 1;
const HOLE_GROWTH_LIMIT: f64 = 2.5;
const SUBCRITICAL_X: f64 = 0.25;
const SUBCRITICAL_DENSITY_LIMIT: f64 = 0.25;
const SPACEFILL_TIME_LIMIT: Duration = Duration::from_secs(900);

/// Criteria that are known not to hold as stated; see the project notes.
const KNOWN_RED: &[u32] = &[2];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// ---------------------------------------------------------------- oracles

/// c_n, non-strict bridges b_n and squared walks a_n by plain recursion.
fn naive_walk_counts(n_max: usize) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    fn go(path: &mut Vec<(i64, i64)>, n_max: usize, out: &mut (Vec<u64>, Vec<u64>, Vec<u64>)) {
        let n = path.len() - 1;
        if n > 0 {
            out.0[n] += 1;
            let (lo, hi) = path.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
            if path[0].1 == lo && path[n].1 == hi {
                out.1[n] += 1;
            }
            let (ex, ey) = path[n];
            if ex == ey && path.iter().all(|&(x, y)| (0..=ex).contains(&x) && (0..=ex).contains(&y)) {
                out.2[n] += 1;
            }
        }
        if n == n_max {
            return;
        }
        let (x, y) = path[n];
        for q in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if !path.contains(&q) {
                path.push(q);
                go(path, n_max, out);
                path.pop();
            }
        }
    }
    let mut out = (vec![0; n_max + 1], vec![0; n_max + 1], vec![0; n_max + 1]);
    go(&mut vec![(0, 0)], n_max, &mut out);
    out
}

/// Connected site sets containing the origin, grown one site at a time.
fn naive_animals(n_max: usize) -> Vec<u64> {
    let mut level: HashSet<BTreeSet<(i8, i8)>> = HashSet::from([BTreeSet::from([(0, 0)])]);
    let mut out = vec![0, 1];
    for _ in 2..=n_max {
        let mut next = HashSet::new();
        for set in &level {
            for &(x, y) in set {
                for q in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if !set.contains(&q) {
                        let mut grown = set.clone();
                        grown.insert(q);
                        next.insert(grown);
                    }
                }
            }
        }
        out.push(next.len() as u64);
        level = next;
    }
    out
}

/// Partitions into odd parts, which are equinumerous with distinct-part ones.
fn odd_part_partitions(max: usize) -> Vec<u128> {
    let mut p = vec![0u128; max + 1];
    p[0] = 1;
    for part in (1..=max).step_by(2) {
        for a in part..=max {
            p[a] += p[a - part];
        }
    }
    p
}

fn is_self_avoiding(w: &Walk) -> bool {
    let v = w.vertices();
    v.iter().collect::<HashSet<_>>().len() == v.len()
        && v.windows(2).all(|p| (p[0].x - p[1].x).abs() + (p[0].y - p[1].y).abs() == 1)
}

fn in_sigma(w: &Walk) -> bool {
    let e = w.end();
    w.start() == Point::new(0, 0)
        && e.x >= 0
        && e.y >= 0
        && w.vertices().iter().all(|p| (0..=e.x).contains(&p.x) && (0..=e.y).contains(&p.y))
}

fn is_squared_walk(w: &Walk, n: usize) -> bool {
    let e = w.end();
    w.len() == n && e.x == e.y && in_sigma(w) && is_self_avoiding(w)
}

/// A closed simple loop: every vertex has degree 2 and the edges form one cycle.
fn is_simple_cycle(edges: &HashSet<Edge>) -> bool {
    let mut adj: HashMap<Point, Vec<Point>> = HashMap::new();
    for e in edges {
        adj.entry(e.a()).or_default().push(e.b());
        adj.entry(e.b()).or_default().push(e.a());
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let Some(&start) = adj.keys().next() else { return false };
    let (mut prev, mut here, mut steps) = (start, adj[&start][0], 1);
    while here != start {
        let next = if adj[&here][0] == prev { adj[&here][1] } else { adj[&here][0] };
        (prev, here, steps) = (here, next, steps + 1);
    }
    steps == edges.len()
}

fn edge_set(edges: impl IntoIterator<Item = Edge>) -> HashSet<Edge> {
    edges.into_iter().collect()
}

fn family(cells: &[(i64, i64)], m: usize) -> FamilyEdges {
    FamilyEdges::new(cells.iter().map(|&(i, j)| BoxSpec::at(i, j, m))).expect("valid family")
}

// --------------------------------------------------------------- criteria

fn exact_counts() -> Outcome {
    let t = Instant::now();
    let budget = Budget::default();
    let (c, b, a) = naive_walk_counts(COUNT_N);
    let mut bad = Vec::new();
    if count_saws(COUNT_N, &budget).unwrap() != c[1..] {
        bad.push("c_n");
    }
    if count_bridges(COUNT_N, &budget).unwrap() != b[1..] {
        bad.push("b_n");
    }
    for n in (2..=COUNT_N).step_by(2) {
        if count_squared_walks(n, &budget).unwrap().total() != a[n] {
            bad.push("a_n");
        }
    }
    if a.iter().enumerate().any(|(n, &v)| n % 2 == 1 && v != 0) {
        bad.push("odd a_n");
    }
    let animals = naive_animals(COUNT_N);
    if count_animals(COUNT_N, &budget).unwrap() != animals[1..] {
        bad.push("A_n");
    }
    let odd = odd_part_partitions(PARTITION_A);
    let table = partitions_distinct_table(PARTITION_A);
    if table.iter().zip(&odd).any(|(p, &q)| *p != BigUint::from(q)) {
        bad.push("P_D");
    }
    let elapsed = t.elapsed();
    let pass = bad.is_empty() && c[10] == 44_100 && elapsed < COUNT_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "c_10={} b_10={} a_10={} A_10={} P_D(40)={} mismatches={bad:?} in {:.1}s",
            c[10],
            b[10],
            a[10],
            animals[COUNT_N],
            odd[PARTITION_A],
            elapsed.as_secs_f64()
        ),
    )
}

fn sandwich() -> Outcome {
    let budget = Budget::default();
    let c = count_saws(SANDWICH_N, &budget).unwrap();
    let b = count_bridges(SANDWICH_N, &budget).unwrap();
    let s = count_strict_bridges(SANDWICH_N, &budget).unwrap();
    let root = |v: &[u64], i: usize| (v[i] as f64).powf(1.0 / (i + 1) as f64);
    let upper = (0..SANDWICH_N).map(|i| root(&c, i)).fold(f64::INFINITY, f64::min);
    let (argmax, lower) = (0..SANDWICH_N).map(|i| (i + 1, root(&b, i))).fold((0, 0.0), |a, x| if x.1 > a.1 { x } else { a });
    let strict = (0..SANDWICH_N).map(|i| root(&s, i)).fold(0.0, f64::max);
    // exact form of the comparisons: b_j^k vs c_k^j in big integers
    let holds = |v: &[u64]| {
        (1..=SANDWICH_N).all(|j| {
            (1..=SANDWICH_N).all(|k| BigUint::from(v[j - 1]).pow(k as u32) <= BigUint::from(c[k - 1]).pow(j as u32))
        })
    };
    let (tied, strict_ok) = (holds(&b), holds(&s));
    outcome(
        tied,
        format!(
            "max b_n^(1/n)={lower:.4} at n={argmax} vs min c_n^(1/n)={upper:.4}: {}; strict bridges max={strict:.4}: {}",
            if tied { "holds" } else { "violated (b_1=3 ties allowed)" },
            if strict_ok { "holds" } else { "violated" }
        ),
    )
}

fn unfolding() -> Outcome {
    let budget = Budget::default();
    let mut total = 0;
    for n in 0..=UNFOLD_N {
        let mut seen = HashSet::new();
        for g in bridges(n, &budget).unwrap() {
            let Ok((f, pre, suf)) = unfold_bridge(&g) else {
                return outcome(false, format!("unfold failed on {g}"));
            };
            if f.len() != n || !in_sigma(&f) || !is_self_avoiding(&f) {
                return outcome(false, format!("{g} -> {f} not in the rectangle class"));
            }
            if !seen.insert((f.encode(), pre, suf)) {
                return outcome(false, format!("collision at {g}"));
            }
            total += 1;
        }
    }
    outcome(true, format!("{total} bridges of length <= {UNFOLD_N}, images distinct"))
}

fn squares() -> Outcome {
    let budget = Budget::default();
    let mut total = 0;
    for n in 0..=SQUARE_N {
        let rects = rectangle_walks(n, &budget).unwrap();
        let mut by_end: HashMap<Point, Vec<&Walk>> = HashMap::new();
        for r in &rects {
            by_end.entry(r.end()).or_default().push(r);
        }
        let mut seen = HashSet::new();
        for group in by_end.values() {
            for g1 in group {
                for g2 in group {
                    let Ok(sq) = rectangle_pair_to_square(g1, g2) else {
                        return outcome(false, format!("{g1} + {g2} rejected"));
                    };
                    if !is_squared_walk(&sq, 2 * n) || !seen.insert(sq.encode()) {
                        return outcome(false, format!("{g1} + {g2} -> {sq} invalid or repeated"));
                    }
                    total += 1;
                }
            }
        }
    }
    outcome(true, format!("{total} pairs for n <= {SQUARE_N}, all distinct squared walks"))
}

fn polygons() -> Outcome {
    let budget = Budget::default();
    let mut details = Vec::new();
    for m in 0..=POLYGON_M {
        let pm: HashSet<Polygon> = enumerate_pm(m, &budget).unwrap().into_iter().collect();
        let max_len = pm.iter().map(Polygon::len).max().unwrap();
        let mut made = 0;
        for n in (2 * m..=(max_len - 4) / 4).step_by(2) {
            let walks = squared_walks(n, m, &budget).unwrap();
            let a = walks.len();
            let mut seen = HashSet::new();
            for w0 in &walks {
                for w1 in &walks {
                    for w2 in &walks {
                        for w3 in &walks {
                            let Ok(p) = four_to_polygon([w0, w1, w2, w3], m) else {
                                return outcome(false, format!("m={m} n={n}: construction failed"));
                            };
                            if p.len() != 4 * n + 4 || !pm.contains(&p) || !seen.insert(p) {
                                return outcome(false, format!("m={m} n={n}: bad or repeated polygon"));
                            }
                            made += 1;
                        }
                    }
                }
            }
            for x in WEIGHTS {
                let z = zm(m, x, &budget).unwrap();
                let direct: f64 = pm.iter().map(|p| x.powi(p.len() as i32)).sum();
                let term = x.powi((4 * n + 4) as i32) * (a as f64).powi(4);
                if z < term || (z - direct).abs() > 1e-12 * direct {
                    return outcome(false, format!("m={m} n={n} x={x}: Z_m={z} < {term}"));
                }
            }
        }
        details.push(format!("m={m}: {made} polygons, |P_m|={}", pm.len()));
    }
    outcome(true, details.join("; "))
}

fn family_claim() -> Outcome {
    let t = Instant::now();
    let budget = Budget::default();
    let shapes: [&[(i64, i64)]; 5] =
        [&[(0, 0)], &[(0, 0), (1, 0)], &[(0, 0), (0, 1)], &[(0, 0), (1, 0), (2, 0)], &[(0, 0), (1, 0), (0, 1)]];
    let mut checked = 0;
    for m in 0..=1 {
        for cells in shapes {
            let f = family(cells, m);
            for x in WEIGHTS {
                let (z_f, z_m) = (zf(&f, x, &budget).unwrap(), zm(m, x, &budget).unwrap());
                if z_f < z_m.powi(cells.len() as i32) * (1.0 - 1e-12) {
                    return outcome(false, format!("m={m} {cells:?} x={x}: Z_F={z_f} < Z_m^|F|"));
                }
                checked += 1;
            }
            let Some(b) = removable_box(&f) else { continue };
            let rest: BTreeSet<BoxSpec> = f.boxes().iter().copied().filter(|c| *c != b).collect();
            let s_b = enumerate_sf(&FamilyEdges::new([b]).unwrap(), &budget).unwrap();
            let s_rest = enumerate_sf(&FamilyEdges::new(rest.clone()).unwrap(), &budget).unwrap();
            let s_f: HashSet<Polygon> = enumerate_sf(&f, &budget).unwrap().into_iter().collect();
            let mut images = HashSet::new();
            for p1 in &s_b {
                for p2 in &s_rest {
                    match merge_family_polygons(&b, p1, &rest, p2) {
                        Ok(p) if s_f.contains(&p) && images.insert(p.clone()) => {}
                        _ => return outcome(false, format!("m={m} {cells:?}: merge image missing or repeated")),
                    }
                }
            }
        }
    }
    let elapsed = t.elapsed();
    outcome(
        elapsed < FAMILY_TIME_LIMIT,
        format!("{checked} (family, x) pairs, merge images distinct in S_F, {:.1}s", elapsed.as_secs_f64()),
    )
}

/// Candidate walks per fixture; the ones that avoid the family and visit a
/// neighbouring box are spliced.
fn splice_fixtures() -> Vec<(GridDomain, Vec<(i64, i64)>, usize, Vec<Walk>)> {
    let budget = Budget::default();
    let small = GridDomain::rectangle(5, 5, Point::new(0, 0), Point::new(4, 4)).unwrap();
    let all = enumerate_domain_walks(&small, &budget).unwrap();
    let mut out = vec![(small, vec![(1, 1)], 0, all)];
    // larger fixtures from a seeded chain
    for (size, cells, m) in [(12, vec![(1, 1)], 1), (13, vec![(1, 1), (2, 1)], 1), (9, vec![(1, 1), (1, 2)], 0)] {
        let d = GridDomain::rectangle(size, size, Point::new(0, 0), Point::new(size - 1, size - 1)).unwrap();
        let config = SamplerConfig { x: 0.7, seed: 11, burn_in: 50, thinning: 3, ..SamplerConfig::default() };
        let walks = sample_mcmc(&d, &config, 400).unwrap().samples;
        out.push((d, cells, m, walks));
    }
    out
}

fn splice_law() -> Outcome {
    let budget = Budget::default();
    let (mut spliced, mut extended) = (0, 0);
    for (domain, cells, m, walks) in splice_fixtures() {
        let f = family(&cells, m);
        let ambient = box_family(&domain, m);
        let boxes = ambient.boxes();
        let polys = enumerate_sf(&f, &budget).unwrap();
        let fv = f.vertices();
        let touching = |w: &Walk| {
            w.vertices().iter().all(|p| !fv.contains(p))
                && f.boxes().iter().any(|b| {
                    sawlab::Dir::ALL.iter().any(|&d| {
                        let n = b.neighbor(d);
                        !f.boxes().contains(&n) && boxes.contains(&n) && w.vertices().iter().any(|&p| n.contains(p))
                    })
                })
        };
        for g1 in walks.iter().filter(|w| touching(w)).take(300) {
            for g2 in polys.iter().take(4) {
                let s = match splice_into_family(&domain, boxes, &f, g1, g2) {
                    Ok(s) => s,
                    Err(e) => return outcome(false, format!("{g1}: {e}")),
                };
                let law = g1.len() + s.link.len() + g2.len();
                let ok_len = s.walk.len() + 4 == law || s.walk.len() + 6 == law;
                let xor = {
                    let mut acc: HashSet<Edge> = HashSet::new();
                    for e in g1.edges().iter().chain(s.link.edges().iter()).chain(g2.edges().iter()) {
                        if !acc.remove(e) {
                            acc.insert(*e);
                        }
                    }
                    acc
                };
                let mut deg: HashMap<Point, usize> = HashMap::new();
                for e in &xor {
                    *deg.entry(e.a()).or_default() += 1;
                    *deg.entry(e.b()).or_default() += 1;
                }
                let degrees_ok = deg.iter().all(|(p, &d)| {
                    if *p == g1.start() || *p == g1.end() {
                        d == 1
                    } else {
                        d == 2
                    }
                });
                let walk_ok = is_self_avoiding(&s.walk)
                    && s.walk.start() == g1.start()
                    && s.walk.end() == g1.end()
                    && edge_set(s.walk.edges().iter().copied()) == xor
                    && domain.contains_walk(&s.walk)
                    && is_simple_cycle(&edge_set(s.link.edges().iter().copied()));
                if !ok_len || !degrees_ok || !walk_ok {
                    return outcome(false, format!("{g1} with link {} -> {}", s.link.len(), s.walk));
                }
                spliced += 1;
                extended += usize::from(s.extended);
            }
        }
    }
    outcome(spliced > 0, format!("{spliced} splices, {extended} needed the longer link search"))
}

fn sampler_checks() -> Outcome {
    let budget = Budget::default();
    let mut notes = Vec::new();
    // chi-squared on the unit square with adjacent marks: lengths 1 and 3
    let unit = GridDomain::rectangle(2, 2, Point::new(0, 0), Point::new(1, 0)).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let exact = ExactSampler::new(&unit, x, &budget).unwrap();
        let mut rng = SamplerConfig::default().with_seed(2024).rng(0);
        let mut counts = vec![0usize; exact.walks().len()];
        for _ in 0..CHI2_DRAWS {
            counts[exact.draw_index(&mut rng)] += 1;
        }
        let z = x + x.powi(3);
        let stat: f64 = exact
            .walks()
            .iter()
            .zip(&counts)
            .map(|(w, &o)| {
                let e = CHI2_DRAWS as f64 * x.powi(w.len() as i32) / z;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        let p = 1.0 - ChiSquared::new((counts.len() - 1) as f64).unwrap().cdf(stat);
        if p <= CHI2_MIN_P {
            return outcome(false, format!("chi2 p={p:.4} at x={x}"));
        }
        notes.push(format!("chi2 p(x={x})={p:.3}"));
    }
    for side in [3, 4] {
        let d = GridDomain::rectangle(side, side, Point::new(0, 0), Point::new(side - 1, side - 1)).unwrap();
        for x in MCMC_WEIGHTS {
            let exact = ExactSampler::new(&d, x, &budget).unwrap().mean_length();
            let config = SamplerConfig { seed: 7, burn_in: 500, thinning: 5, ..SamplerConfig::default() };
            let est = estimate_theta(&d, x, MCMC_SAMPLES, &config).unwrap();
            let z = (est.mean_length - exact) / est.length_std_error;
            if z.abs() > MCMC_SIGMAS {
                return outcome(false, format!("{side}x{side} x={x}: {:.4} vs {exact:.4} ({z:.2} sigma)", est.mean_length));
            }
            notes.push(format!("{side}x{side} x={x}: {z:+.2}s"));
        }
    }
    outcome(true, notes.join(", "))
}

fn hardy_ramanujan() -> Outcome {
    let (lo, hi) = HR_RANGE;
    let table = partitions_distinct_table(hi);
    let odd = odd_part_partitions(hi);
    if table.iter().zip(&odd).any(|(p, &q)| *p != BigUint::from(q)) {
        return outcome(false, "distinct-part and odd-part counts disagree");
    }
    let ratio = |a: usize| table[a].to_f64().unwrap().ln() / (PI * (a as f64 / 3.0).sqrt());
    let increasing = (lo..hi).all(|a| ratio(a + 1) > ratio(a));
    let end = ratio(hi);
    outcome(
        increasing && end > HR_MIN_AT_END,
        format!("ratio {:.4} at A={lo}, {end:.4} at A={hi}, strictly increasing: {increasing}", ratio(lo)),
    )
}

fn space_filling() -> Outcome {
    let t = Instant::now();
    let config = SamplerConfig { seed: SPACEFILL_SEED, burn_in: 2000, thinning: 20, ..SamplerConfig::default() };
    let params = |x: f64| SpaceFilling {
        radii: SPACEFILL_RADII.to_vec(),
        x,
        xi: Some(2),
        m: 1,
        n_samples: SPACEFILL_SAMPLES,
        chains: 8,
    };
    let hot = space_filling_experiment(&params(0.6), &config).unwrap();
    let cold = space_filling_experiment(&params(SUBCRITICAL_X), &config).unwrap();
    let growth: Vec<f64> = hot.windows(2).map(|w| w[1].mean_largest_hole / w[0].mean_largest_hole).collect();
    let cold_growth: Vec<f64> = cold.windows(2).map(|w| w[1].mean_largest_hole / w[0].mean_largest_hole).collect();
    let density = cold.last().unwrap().theta;
    let elapsed = t.elapsed();
    let pass = growth.iter().all(|&g| g < HOLE_GROWTH_LIMIT)
        && density < SUBCRITICAL_DENSITY_LIMIT
        && elapsed < SPACEFILL_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "x=0.6 largest holes {:?} growth {:?}; x={SUBCRITICAL_X} growth {:?}, density at R=40 {density:.4}; {:.0}s",
            hot.iter().map(|r| (r.mean_largest_hole * 10.0).round() / 10.0).collect::<Vec<_>>(),
            growth.iter().map(|g| (g * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
            cold_growth.iter().map(|g| (g * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "exact counts", exact_counts),
        (2, "bridge/walk sandwich", sandwich),
        (3, "bridge unfolding", unfolding),
        (4, "square construction", squares),
        (5, "polygon construction", polygons),
        (6, "family partition function", family_claim),
        (7, "splice length law", splice_law),
        (8, "sampler correctness", sampler_checks),
        (9, "distinct partition growth", hardy_ramanujan),
        (10, "space-filling contrast", space_filling),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id:>2}] {name}: {} ({:.1}s)", o.detail, t.elapsed().as_secs_f64());
        if !o.pass && !KNOWN_RED.contains(&id) {
            unexpected += 1;
        }
        if o.pass && KNOWN_RED.contains(&id) {
            println!("     [{id:>2}] listed as known red but passed");
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
