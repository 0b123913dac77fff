use super::boxes::{BoxSpec, FamilyEdges};
use super::budget::Budget;
use super::paths::PathProblem;
use super::weighted::WeightedCount;
use crate::error::{Error, Result};
use crate::lattice::{Edge, EdgeSet, GridDomain, Polygon, Walk};

/// A polygon through `e0` is `e0` plus a path between its endpoints; every
/// other external cardinal edge is a required edge of that path.
fn family_problem(family: &FamilyEdges, budget: &Budget) -> Result<(PathProblem, Edge)> {
    budget.check_m(family.m())?;
    budget.check_family(family.boxes().len())?;
    if !family.is_connected() {
        return Err(Error::PreconditionViolation("box family is not connected".into()));
    }
    let ec = family.external_cardinal_edges();
    let e0 = *ec.iter().next().expect("a finite family has external edges");
    let mut allowed = family.edges().clone();
    allowed.remove(&e0);
    let mut required = ec.clone();
    required.remove(&e0);
    Ok((PathProblem::new(&allowed, e0.a(), e0.b(), &required, None), e0))
}

fn close(problem: &PathProblem, path: &[u32], e0: Edge) -> Polygon {
    let mut edges = problem.to_edges(path);
    edges.insert(e0);
    Polygon::from_edges_unchecked(edges)
}

/// Visits every polygon of `S_F` (polygons inside `E_F` through all of `EC_F`).
pub fn for_each_sf(family: &FamilyEdges, budget: &Budget, mut visit: impl FnMut(&Polygon)) -> Result<()> {
    let (problem, e0) = family_problem(family, budget)?;
    problem.for_each(budget, "enumerate_sf", |path| visit(&close(&problem, path, e0)))
}

pub fn enumerate_sf(family: &FamilyEdges, budget: &Budget) -> Result<Vec<Polygon>> {
    let (problem, e0) = family_problem(family, budget)?;
    let paths = problem.collect(budget, "enumerate_sf")?;
    Ok(paths.iter().map(|p| close(&problem, p, e0)).collect())
}

pub fn count_sf(family: &FamilyEdges, budget: &Budget) -> Result<WeightedCount> {
    let (problem, _) = family_problem(family, budget)?;
    let by_path = problem.count_by_length(budget, "count_sf")?;
    let mut out = WeightedCount::new();
    for (len, &c) in by_path.iter().enumerate() {
        out.add_count(len + 1, c);
    }
    Ok(out)
}

/// `Z_F(x)`.
pub fn zf(family: &FamilyEdges, x: f64, budget: &Budget) -> Result<f64> {
    Ok(count_sf(family, budget)?.evaluate(x))
}

fn single_box(m: usize) -> FamilyEdges {
    FamilyEdges::new([BoxSpec::at(0, 0, m)]).expect("one box")
}

/// Visits every polygon of `P_m`: polygons in `[0,2m+1]²` through the four
/// mid-side edges.
pub fn for_each_pm(m: usize, budget: &Budget, visit: impl FnMut(&Polygon)) -> Result<()> {
    for_each_sf(&single_box(m), budget, visit)
}

pub fn enumerate_pm(m: usize, budget: &Budget) -> Result<Vec<Polygon>> {
    enumerate_sf(&single_box(m), budget)
}

pub fn count_pm(m: usize, budget: &Budget) -> Result<WeightedCount> {
    count_sf(&single_box(m), budget)
}

/// `Z_m(x)`.
pub fn zm(m: usize, x: f64, budget: &Budget) -> Result<f64> {
    Ok(count_pm(m, budget)?.evaluate(x))
}

fn domain_problem(domain: &GridDomain) -> PathProblem {
    PathProblem::new(&domain.edges(), domain.a(), domain.b(), &EdgeSet::new(), None)
}

/// Every self-avoiding walk from `a` to `b` inside the domain, in a fixed
/// order.
pub fn enumerate_domain_walks(domain: &GridDomain, budget: &Budget) -> Result<Vec<Walk>> {
    let problem = domain_problem(domain);
    let paths = problem.collect(budget, "enumerate_domain_walks")?;
    Ok(paths.iter().map(|p| problem.to_walk(p)).collect())
}

pub fn count_domain_walks(domain: &GridDomain, budget: &Budget) -> Result<WeightedCount> {
    let counts = domain_problem(domain).count_by_length(budget, "count_domain_walks")?;
    Ok(WeightedCount::from_counts(&counts))
}

/// `Z(x) = Σ x^|γ|` over walks from `a` to `b` in the domain.
pub fn partition_function(domain: &GridDomain, x: f64, budget: &Budget) -> Result<f64> {
    Ok(count_domain_walks(domain, budget)?.evaluate(x))
}
