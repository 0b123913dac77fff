use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{box_family, holes_in};
use crate::error::{Error, Result};
use crate::lattice::{GridDomain, Point, Walk};
use crate::sampler::{batch_means, mean_and_std, Chain, ChainStats, SamplerConfig};

/// Parameters of a hole-size sweep over disk radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceFilling {
    pub radii: Vec<u32>,
    pub x: f64,
    /// Neighbourhood radius; `6m` when absent.
    pub xi: Option<u32>,
    pub m: usize,
    /// Samples per radius, split over `chains` independent chains.
    pub n_samples: usize,
    pub chains: usize,
}

impl SpaceFilling {
    pub fn xi(&self) -> u32 {
        self.xi.unwrap_or(6 * self.m as u32)
    }
}

/// The disk of radius `r` with marked sites at the west and east ends.
pub fn experiment_disk(r: u32) -> Result<GridDomain> {
    GridDomain::disk(r, PI, 0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceFillingRow {
    pub radius: u32,
    pub log_radius: f64,
    pub domain_size: usize,
    pub xi: u32,
    pub samples: usize,
    pub mean_largest_hole: f64,
    pub std_largest_hole: f64,
    /// Batch-means error of the mean largest hole.
    pub se_largest_hole: f64,
    pub mean_length: f64,
    pub theta: f64,
    pub theta_std_error: f64,
    /// Mean Euclidean distance of walk vertices from the segment `[a, b]`.
    pub mean_geodesic_distance: f64,
    pub acceptance_rate: f64,
    pub family_connected: bool,
}

pub const CSV_HEADER: &str = "radius,log_radius,domain_size,xi,samples,mean_largest_hole,std_largest_hole,se_largest_hole,mean_length,theta,theta_std_error,mean_geodesic_distance,acceptance_rate,family_connected";

impl SpaceFillingRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{:.6},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            self.radius,
            self.log_radius,
            self.domain_size,
            self.xi,
            self.samples,
            self.mean_largest_hole,
            self.std_largest_hole,
            self.se_largest_hole,
            self.mean_length,
            self.theta,
            self.theta_std_error,
            self.mean_geodesic_distance,
            self.acceptance_rate,
            self.family_connected
        )
    }
}

pub fn rows_to_csv(rows: &[SpaceFillingRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (px, py) = (p.x as f64, p.y as f64);
    let (ax, ay, bx, by) = (a.x as f64, a.y as f64, b.x as f64, b.y as f64);
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0) };
    ((px - ax - t * dx).powi(2) + (py - ay - t * dy).powi(2)).sqrt()
}

pub fn mean_geodesic_distance(walk: &Walk) -> f64 {
    let (a, b) = (walk.start(), walk.end());
    let v = walk.vertices();
    v.iter().map(|&p| segment_distance(p, a, b)).sum::<f64>() / v.len() as f64
}

struct ChainOutput {
    largest: Vec<f64>,
    lengths: Vec<f64>,
    geodesic: Vec<f64>,
    stats: ChainStats,
}

fn run_chain(domain: &GridDomain, config: &SamplerConfig, stream: u64, samples: usize, xi: u32) -> Result<ChainOutput> {
    let graph = domain.graph();
    let mut chain = Chain::new(domain, config, stream)?;
    chain.sweeps(config.burn_in)?;
    let mut out = ChainOutput { largest: vec![], lengths: vec![], geodesic: vec![], stats: ChainStats::default() };
    for _ in 0..samples {
        chain.sweeps(config.thinning.max(1))?;
        let w = chain.walk();
        out.largest.push(holes_in(&graph, &w, xi).largest as f64);
        out.lengths.push(w.len() as f64);
        out.geodesic.push(mean_geodesic_distance(&w));
    }
    out.stats = chain.stats().clone();
    Ok(out)
}

/// Largest-hole statistics per radius. Chains run in parallel; chain `c`
/// of radius number `r` uses stream `r·2^16 + c`, and results are merged in
/// stream order, so output depends only on the seed.
pub fn space_filling_experiment(params: &SpaceFilling, config: &SamplerConfig) -> Result<Vec<SpaceFillingRow>> {
    let config = SamplerConfig { x: params.x, ..config.clone() };
    config.validate()?;
    if params.n_samples == 0 || params.chains == 0 {
        return Err(Error::PreconditionViolation("n_samples and chains must be positive".into()));
    }
    let xi = params.xi();
    let domains: Vec<GridDomain> = params.radii.iter().map(|&r| experiment_disk(r)).collect::<Result<_>>()?;
    let chains = params.chains.min(params.n_samples);
    let jobs: Vec<(usize, usize, usize)> = (0..domains.len())
        .flat_map(|r| {
            (0..chains).map(move |c| {
                let share = params.n_samples / chains + usize::from(c < params.n_samples % chains);
                (r, c, share)
            })
        })
        .collect();
    let outputs: Vec<ChainOutput> = jobs
        .par_iter()
        .map(|&(r, c, share)| run_chain(&domains[r], &config, ((r as u64) << 16) + c as u64, share, xi))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (r, domain) in domains.iter().enumerate() {
        let mine: Vec<&ChainOutput> = jobs.iter().zip(&outputs).filter(|(j, _)| j.0 == r).map(|(_, o)| o).collect();
        let cat = |f: fn(&ChainOutput) -> &Vec<f64>| mine.iter().flat_map(|o| f(o).iter().copied()).collect::<Vec<f64>>();
        let (largest, lengths, geodesic) = (cat(|o| &o.largest), cat(|o| &o.lengths), cat(|o| &o.geodesic));
        let mut stats = ChainStats::default();
        mine.iter().for_each(|o| stats.merge(&o.stats));
        let (mean_largest_hole, std_largest_hole) = mean_and_std(&largest);
        let (_, se_largest_hole) = batch_means(&largest, 20);
        let (mean_length, se_length) = batch_means(&lengths, 20);
        let size = domain.len() as f64;
        rows.push(SpaceFillingRow {
            radius: params.radii[r],
            log_radius: (params.radii[r] as f64).ln(),
            domain_size: domain.len(),
            xi,
            samples: largest.len(),
            mean_largest_hole,
            std_largest_hole,
            se_largest_hole,
            mean_length,
            theta: mean_length / size,
            theta_std_error: se_length / size,
            mean_geodesic_distance: geodesic.iter().sum::<f64>() / geodesic.len() as f64,
            acceptance_rate: stats.acceptance_rate(),
            family_connected: box_family(domain, params.m).is_connected(),
        });
    }
    Ok(rows)
}
