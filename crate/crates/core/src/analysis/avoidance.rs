use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{bdist, box_family, BoxFamily};
use crate::constructions::splice_into_family;
use crate::enumerate::{enumerate_domain_walks, enumerate_sf, Budget};
use crate::error::{Error, Result};
use crate::lattice::{GridDomain, Point, Walk};

/// Exact weight of walks at box distance one from a sub-family, and the
/// splice bound it is compared with.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AvoidanceReport {
    pub x: f64,
    pub m: usize,
    pub family_size: usize,
    /// `Z(x)` over all walks of the domain.
    pub z: f64,
    /// Weight of the walks with `bdist(γ, V_F) = 1`.
    pub z_theta: f64,
    pub z_f: f64,
    /// `z_theta / z`.
    pub exact_prob: f64,
    pub theta_walks: usize,
    pub sf_polygons: usize,
    /// Largest number of pairs sent to the same walk by the splice map.
    pub multiplicity: usize,
    /// `max(x^6, x^-(10m+6))`: worst weight lost to a link below `10m+10`.
    pub link_factor: f64,
    /// `max x^(2+2·overlap−|ℓ|)` over the links actually used.
    pub measured_link_factor: f64,
    /// Walks whose link needed the fallback length bound.
    pub extended_links: usize,
    /// `multiplicity · max(link_factor, measured_link_factor) / Z_F`.
    pub bound: f64,
    /// `exact_prob ≤ bound`.
    pub holds: bool,
}

pub fn link_factor(x: f64, m: usize) -> f64 {
    x.powi(6).max(x.powi(-(10 * m as i32 + 6)))
}

/// Walks whose box distance to the vertices of `sub` is exactly one, measured
/// in the full box family of the domain.
pub fn theta_walks(domain: &GridDomain, sub: &BoxFamily, walks: &[Walk]) -> Vec<Walk> {
    let ambient = box_family(domain, sub.m());
    let v_f: BTreeSet<Point> = sub.boxes().iter().flat_map(|b| b.vertices().collect::<Vec<_>>()).collect();
    walks
        .iter()
        .filter(|w| {
            let pts: BTreeSet<Point> = w.vertices().iter().copied().collect();
            bdist(&pts, &v_f, &ambient) == Some(1)
        })
        .cloned()
        .collect()
}

/// Exact avoidance probability and the splice bound, by full enumeration.
///
/// Every pair `(γ1, γ2)` with `γ1` at box distance one and `γ2 ∈ S_F` is
/// spliced; the largest fibre of the map is the measured multiplicity.
pub fn avoidance_probability(domain: &GridDomain, sub: &BoxFamily, x: f64, budget: &Budget) -> Result<AvoidanceReport> {
    if !(x > 0.0) {
        return Err(Error::PreconditionViolation(format!("x = {x} must be positive")));
    }
    let ambient = box_family(domain, sub.m());
    if sub.is_empty() || !sub.boxes().iter().all(|b| ambient.contains(b)) {
        return Err(Error::PreconditionViolation("sub-family must be a nonempty set of domain boxes".into()));
    }
    let walks = enumerate_domain_walks(domain, budget)?;
    let fam = sub.family_edges()?;
    let sf = enumerate_sf(&fam, budget)?;
    let theta = theta_walks(domain, sub, &walks);

    let weight = |n: usize| x.powi(n as i32);
    let z: f64 = walks.iter().map(|w| weight(w.len())).sum();
    let z_theta: f64 = theta.iter().map(|w| weight(w.len())).sum();
    let z_f: f64 = sf.iter().map(|p| weight(p.len())).sum();

    let mut fibres: HashMap<Walk, usize> = HashMap::new();
    let (mut measured, mut extended_links) = (0.0f64, 0usize);
    for g1 in &theta {
        for (k, g2) in sf.iter().enumerate() {
            let s = splice_into_family(domain, ambient.boxes(), &fam, g1, g2)?;
            if k == 0 {
                // the link depends on g1 only
                measured = measured.max(x.powi(2 + 2 * s.overlap as i32 - s.link.len() as i32));
                extended_links += usize::from(s.extended);
            }
            *fibres.entry(s.walk).or_insert(0) += 1;
        }
    }
    let multiplicity = fibres.values().copied().max().unwrap_or(0);
    let factor = link_factor(x, sub.m());
    let bound = multiplicity.max(1) as f64 * factor.max(measured) / z_f;
    let exact_prob = z_theta / z;
    Ok(AvoidanceReport {
        x,
        m: sub.m(),
        family_size: sub.len(),
        z,
        z_theta,
        z_f,
        exact_prob,
        theta_walks: theta.len(),
        sf_polygons: sf.len(),
        multiplicity,
        link_factor: factor,
        measured_link_factor: measured,
        extended_links,
        bound,
        holds: exact_prob <= bound * (1.0 + 1e-12),
    })
}
