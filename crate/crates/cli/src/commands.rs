use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use sawlab::analysis::{
    avoidance_probability, box_family, holes, line_plot, space_filling_experiment, BoxFamily, Series, SpaceFilling,
    CSV_HEADER,
};
use sawlab::constructions::{
    four_to_polygon, merge_family_polygons, rectangle_pair_to_square, removable_box, splice_into_family,
    unfold_bridge,
};
use sawlab::enumerate::{
    count_animals, count_bridges, count_partitions_distinct, count_pm, count_saws, count_sf, count_squared_walks,
    count_strict_bridges, enumerate_sf, lambda_estimate, mu_bounds, partitions_distinct_table, zf, zm, BoxSpec,
    FamilyEdges,
};
use sawlab::sampler::{estimate_theta, Chain, ExactSampler, MoveKind, SamplerConfig};
use sawlab::{Budget, Dir, GridDomain, Point, Polygon, WeightedCount};
use serde_json::{json, Value};

use crate::args::{ChainArgs, Cli, Command, Common, DomainArgs};
use crate::output::{Output, Table};
use crate::CliError;

/// Inverse of the connective constant; runs within `CRITICAL_WINDOW` of it
/// are labelled exploratory.
const CRITICAL_X: f64 = 0.379_052;
const CRITICAL_WINDOW: f64 = 0.03;

fn near_critical(x: f64) -> bool {
    (x - CRITICAL_X).abs() < CRITICAL_WINDOW
}

pub fn budget(common: &Common) -> Budget {
    let mut b = Budget::default();
    b.max_seconds = common.budget_seconds;
    if let Some(n) = common.max_n {
        b.max_n = b.max_n.max(n);
    }
    if let Some(m) = common.max_m {
        b.max_m = m;
    }
    if let Some(f) = common.max_family {
        b.max_family = f;
    }
    b
}

pub fn parse_boxes(s: &str, m: usize) -> Result<Vec<BoxSpec>, CliError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let p: Point = t.trim().parse().map_err(|e| CliError::Usage(format!("--boxes: {e}")))?;
            Ok(BoxSpec::at(p.x, p.y, m))
        })
        .collect()
}

pub fn build_domain(d: &DomainArgs) -> Result<GridDomain, CliError> {
    let base = if let Some(path) = &d.domain {
        let text = std::fs::read_to_string(path)?;
        GridDomain::from_json(&text)?
    } else if let Some(r) = &d.rect {
        let (w, h) = r
            .split_once(['x', 'X'])
            .and_then(|(w, h)| Some((w.trim().parse::<i64>().ok()?, h.trim().parse::<i64>().ok()?)))
            .ok_or_else(|| CliError::Usage(format!("--rect expects WxH, got `{r}`")))?;
        let a = d.a.unwrap_or(Point::new(0, 0));
        let b = d.b.unwrap_or(Point::new(w - 1, h - 1));
        return Ok(GridDomain::rectangle(w, h, a, b)?);
    } else if let Some(r) = d.radius {
        GridDomain::disk(r, PI, 0.0)?
    } else {
        return Err(CliError::Usage("a domain is required: --domain FILE, --rect WxH or --radius R".into()));
    };
    match (d.a, d.b) {
        (None, None) => Ok(base),
        (a, b) => Ok(base.with_marks(a.unwrap_or(base.a()), b.unwrap_or(base.b()))?),
    }
}

fn sampler_config(common: &Common, x: f64, chain: &ChainArgs) -> SamplerConfig {
    SamplerConfig {
        x,
        seed: common.seed,
        burn_in: chain.burn_in,
        thinning: chain.thinning,
        max_length: chain.max_length.unwrap_or(usize::MAX),
        frozen_window: chain.frozen_window,
    }
}

fn big(v: &BigUint) -> Value {
    json!(v.to_string())
}

fn counts_table(first: &str, counts: &WeightedCount) -> Table {
    let mut t = Table::new(&[first, "count"]);
    for (n, c) in counts.iter() {
        t.push(vec![json!(n), big(c)]);
    }
    t.note("total", counts.total().to_string());
    t
}

fn root_plot(title: &str, series: Vec<(&str, &[u64])>) -> String {
    let series: Vec<Series> = series
        .into_iter()
        .map(|(name, v)| Series {
            name: name.to_string(),
            points: v.iter().enumerate().map(|(i, &c)| ((i + 1) as f64, (c as f64).powf(1.0 / (i + 1) as f64), 0.0)).collect(),
        })
        .collect();
    line_plot(title, "n", "count^(1/n)", &series)
}

fn family(boxes: &str, m: usize) -> Result<FamilyEdges, CliError> {
    Ok(FamilyEdges::new(parse_boxes(boxes, m)?)?)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let common = &cli.common;
    let budget = budget(common);
    let mut out = Output::default();
    match &cli.command {
        Command::CountWalks => {
            let n = common.max_n.unwrap_or(10);
            let c = count_saws(n, &budget)?;
            out.table = Table::new(&["n", "count"]);
            for (i, v) in c.iter().enumerate() {
                out.table.push(vec![json!(i + 1), json!(v)]);
            }
            out.svg = Some(root_plot("Self-avoiding walks", vec![("c_n", &c)]));
        }
        Command::CountBridges { strict } => {
            let n = common.max_n.unwrap_or(10);
            let c = if *strict { count_strict_bridges(n, &budget)? } else { count_bridges(n, &budget)? };
            out.table = Table::new(&["n", "count"]);
            for (i, v) in c.iter().enumerate() {
                out.table.push(vec![json!(i + 1), json!(v)]);
            }
            out.table.note("strict", strict);
            out.svg = Some(root_plot("Bridges", vec![("b_n", &c)]));
        }
        Command::CountSquared => {
            let n_max = common.max_n.unwrap_or(8);
            out.table = Table::new(&["n", "span", "count"]);
            for n in (2..=n_max).step_by(2) {
                let c = count_squared_walks(n, &budget)?;
                for (k, v) in &c.by_span {
                    out.table.push(vec![json!(n), json!(k), json!(v)]);
                }
            }
        }
        Command::CountPolygons { m, boxes } => {
            let counts = match boxes {
                Some(b) => count_sf(&family(b, *m)?, &budget)?,
                None => count_pm(*m, &budget)?,
            };
            out.table = counts_table("length", &counts);
        }
        Command::CountAnimals => {
            let n = common.max_n.unwrap_or(10);
            let a = count_animals(n, &budget)?;
            out.table = Table::new(&["n", "fixed_polyominoes", "animals"]);
            for (i, v) in a.iter().enumerate() {
                out.table.push(vec![json!(i + 1), json!(v / (i as u64 + 1)), json!(v)]);
            }
            out.table.note("lambda_lower_estimate", lambda_estimate(n, &budget)?);
        }
        Command::Partitions { total, table } => {
            out.table = Table::new(&["A", "count"]);
            if *table {
                for (a, c) in partitions_distinct_table(*total).iter().enumerate() {
                    out.table.push(vec![json!(a), big(c)]);
                }
            } else {
                out.table.push(vec![json!(total), big(&count_partitions_distinct(*total))]);
            }
        }
        Command::MuBounds => {
            let n = common.max_n.unwrap_or(12);
            let mb = mu_bounds(n, &budget)?;
            out.table = Table::new(&["n", "walks", "bridges", "strict_bridges", "walk_root", "bridge_root", "strict_bridge_root"]);
            for i in 0..n {
                let r = |c: u64| (c as f64).powf(1.0 / (i + 1) as f64);
                out.table.push(vec![
                    json!(i + 1),
                    json!(mb.walks[i]),
                    json!(mb.bridges[i]),
                    json!(mb.strict_bridges[i]),
                    json!(r(mb.walks[i])),
                    json!(r(mb.bridges[i])),
                    json!(r(mb.strict_bridges[i])),
                ]);
            }
            out.table.note("upper", mb.upper);
            out.table.note("lower", mb.lower);
            out.table.note("strict_lower", mb.strict_lower);
            out.table.note("sandwich_holds", mb.lower <= mb.upper);
            out.table.note("strict_sandwich_holds", mb.strict_lower <= mb.upper);
            out.svg = Some(root_plot(
                "Connective constant bracket",
                vec![("walks", &mb.walks), ("bridges", &mb.bridges), ("strict bridges", &mb.strict_bridges)],
            ));
        }
        Command::Zm { m, x } => {
            out.table = Table::new(&["m", "x", "z"]);
            out.table.push(vec![json!(m), json!(x), json!(zm(*m, *x, &budget)?)]);
        }
        Command::Zf { m, boxes, x } => {
            let f = family(boxes, *m)?;
            let z_f = zf(&f, *x, &budget)?;
            let z_m = zm(*m, *x, &budget)?;
            let power = z_m.powi(f.boxes().len() as i32);
            out.table = Table::new(&["m", "boxes", "x", "z_f", "z_m_power", "claim_holds"]);
            out.table.push(vec![json!(m), json!(boxes), json!(x), json!(z_f), json!(power), json!(z_f >= power)]);
        }
        Command::Unfold { walk } => {
            let (f, pre, suf) = unfold_bridge(walk)?;
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(";");
            out.table = Table::new(&["walk", "unfolded", "prefix_widths", "suffix_widths", "length"]);
            out.table.push(vec![json!(walk.encode()), json!(f.encode()), json!(join(&pre)), json!(join(&suf)), json!(f.len())]);
        }
        Command::BuildSquare { first, second } => {
            let s = rectangle_pair_to_square(first, second)?;
            let span = s.end().x - s.start().x;
            out.table = Table::new(&["first", "second", "square", "span", "length"]);
            out.table.push(vec![json!(first.encode()), json!(second.encode()), json!(s.encode()), json!(span), json!(s.len())]);
        }
        Command::BuildPolygon { m, walks } => {
            let p = four_to_polygon([&walks[0], &walks[1], &walks[2], &walks[3]], *m)?;
            let bx = BoxSpec::at(0, 0, *m);
            let in_pm = Dir::ALL.iter().all(|&d| p.contains(&bx.cardinal_edge(d))) && p.vertices().iter().all(|&v| bx.contains(v));
            out.table = Table::new(&["m", "polygon", "length", "in_pm"]);
            out.table.push(vec![json!(m), json!(p.encode()), json!(p.len()), json!(in_pm)]);
        }
        Command::Merge { m, boxes, x } => merge(&mut out, *m, boxes, *x, &budget)?,
        Command::Splice { domain, m, boxes, walk, polygon } => {
            let d = build_domain(domain)?;
            let f = family(boxes, *m)?;
            let ambient = box_family(&d, *m);
            let sf = enumerate_sf(&f, &budget)?;
            let g2 = sf.get(*polygon).ok_or_else(|| {
                CliError::Usage(format!("--polygon {polygon} out of range: S_F has {} polygons", sf.len()))
            })?;
            let s = splice_into_family(&d, ambient.boxes(), &f, walk, g2)?;
            let law = walk.len() + s.link.len() + g2.len() - 2 - 2 * s.overlap;
            out.table = Table::new(&[
                "walk", "polygon", "e", "link", "link_length", "overlap", "extended", "result", "result_length", "length_law",
            ]);
            out.table.push(vec![
                json!(walk.encode()),
                json!(g2.encode()),
                json!(s.e.to_string()),
                json!(s.link.encode()),
                json!(s.link.len()),
                json!(s.overlap),
                json!(s.extended),
                json!(s.walk.encode()),
                json!(s.walk.len()),
                json!(s.walk.len() == law),
            ]);
        }
        Command::SampleExact { domain, x, samples } => {
            let d = build_domain(domain)?;
            let cfg = SamplerConfig { x: *x, seed: common.seed, ..SamplerConfig::default() };
            cfg.validate()?;
            let s = ExactSampler::new(&d, *x, &budget)?;
            let mut rng = cfg.rng(0);
            out.table = Table::new(&["index", "length", "walk"]);
            let mut lines = String::new();
            for i in 0..*samples {
                let w = s.draw(&mut rng);
                out.table.push(vec![json!(i), json!(w.len()), json!(w.encode())]);
                let _ = writeln!(lines, "{}", w.encode());
            }
            out.table.note("walks_enumerated", s.walks().len());
            out.table.note("exact_mean_length", s.mean_length());
            out.extra.push(("walks.txt".into(), lines));
        }
        Command::SampleMcmc { domain, chain, x, samples } => {
            let d = build_domain(domain)?;
            let cfg = sampler_config(common, *x, chain);
            let mut c = Chain::new(&d, &cfg, 0)?;
            let walks = c.run(cfg.burn_in, cfg.thinning, *samples)?;
            out.table = Table::new(&["index", "length", "walk"]);
            let mut lines = String::new();
            for (i, w) in walks.iter().enumerate() {
                out.table.push(vec![json!(i), json!(w.len()), json!(w.encode())]);
                let _ = writeln!(lines, "{}", w.encode());
            }
            let st = c.stats();
            out.table.note("attempts", st.attempts);
            out.table.note("acceptance_rate", st.acceptance_rate());
            for k in MoveKind::ALL {
                let i = k as usize;
                let rate = st.accepted[i] as f64 / st.proposed[i].max(1) as f64;
                out.table.note(&format!("{k:?}_acceptance").to_lowercase(), rate);
            }
            out.table.note("domain", d.to_json());
            out.extra.push(("walks.txt".into(), lines));
            out.exploratory = near_critical(*x);
        }
        Command::Theta { domain, chain, x, samples } => {
            let d = build_domain(domain)?;
            let est: Vec<_> = x
                .par_iter()
                .map(|&xv| estimate_theta(&d, xv, *samples, &sampler_config(common, xv, chain)))
                .collect::<Result<_, _>>()?;
            out.table = Table::new(&["x", "mean_density", "std_error", "mean_length", "acceptance_rate", "exploratory"]);
            for (xv, e) in x.iter().zip(&est) {
                out.table.push(vec![
                    json!(xv),
                    json!(e.mean_density),
                    json!(e.std_error),
                    json!(e.mean_length),
                    json!(e.acceptance_rate),
                    json!(near_critical(*xv)),
                ]);
            }
            out.table.note("domain_size", d.len());
            out.exploratory = x.iter().any(|&v| near_critical(v));
            let pts = x.iter().zip(&est).map(|(&xv, e)| (xv, e.mean_density, e.std_error)).collect();
            out.svg = Some(line_plot("Walk density", "x", "|γ| / |Ω|", &[Series { name: "θ estimate".into(), points: pts }]));
        }
        Command::Holes { domain, walk, xi, x, chain } => {
            let d = build_domain(domain)?;
            let w = match walk {
                Some(w) => {
                    if !d.contains_walk(w) {
                        return Err(sawlab::Error::PreconditionViolation(format!("{w} leaves the domain")).into());
                    }
                    w.clone()
                }
                None => {
                    let cfg = sampler_config(common, *x, chain);
                    let mut c = Chain::new(&d, &cfg, 0)?;
                    c.run(cfg.burn_in, cfg.thinning, 1)?.remove(0)
                }
            };
            let h = holes(&d, &w, *xi);
            out.table = Table::new(&["rank", "size"]);
            for (i, s) in h.component_sizes.iter().enumerate() {
                out.table.push(vec![json!(i + 1), json!(s)]);
            }
            out.table.note("walk", w.encode());
            out.table.note("report", &h);
        }
        Command::Avoidance { domain, m, boxes, x } => {
            let d = build_domain(domain)?;
            let ambient = box_family(&d, *m);
            let sub: BoxFamily = ambient
                .subfamily(parse_boxes(boxes, *m)?)
                .map_err(|e| CliError::Core(sawlab::Error::PreconditionViolation(format!("{e} (boxes must fit the domain)"))))?;
            out.table = Table::new(&[
                "x",
                "exact_prob",
                "bound",
                "holds",
                "multiplicity",
                "z",
                "z_theta",
                "z_f",
                "link_factor",
                "measured_link_factor",
                "theta_walks",
                "extended_links",
            ]);
            for &xv in x {
                let r = avoidance_probability(&d, &sub, xv, &budget)?;
                out.table.push(vec![
                    json!(xv),
                    json!(r.exact_prob),
                    json!(r.bound),
                    json!(r.holds),
                    json!(r.multiplicity),
                    json!(r.z),
                    json!(r.z_theta),
                    json!(r.z_f),
                    json!(r.link_factor),
                    json!(r.measured_link_factor),
                    json!(r.theta_walks),
                    json!(r.extended_links),
                ]);
            }
        }
        Command::Spacefill { radii, x, xi, m, samples, chains, burn_in, thinning } => {
            let params = SpaceFilling { radii: radii.clone(), x: *x, xi: *xi, m: *m, n_samples: *samples, chains: *chains };
            let cfg = SamplerConfig { seed: common.seed, burn_in: *burn_in, thinning: *thinning, ..SamplerConfig::default() };
            let rows = space_filling_experiment(&params, &cfg)?;
            let cols: Vec<&str> = CSV_HEADER.split(',').collect();
            out.table = Table::new(&cols);
            for r in &rows {
                let v = serde_json::to_value(r).expect("serialisable");
                out.table.push(cols.iter().map(|c| v[*c].clone()).collect());
            }
            out.table.note("xi", params.xi());
            out.exploratory = near_critical(*x);
            let pts = rows.iter().map(|r| (r.log_radius, r.mean_largest_hole, r.se_largest_hole)).collect();
            out.svg = Some(line_plot(
                "Largest hole against log R",
                "log R",
                "mean largest hole",
                &[Series { name: format!("x = {x}"), points: pts }],
            ));
        }
        Command::Report => report(&mut out, common)?,
    }
    Ok(out)
}

fn merge(out: &mut Output, m: usize, boxes: &str, x: f64, budget: &Budget) -> Result<(), CliError> {
    let f = family(boxes, m)?;
    let b = removable_box(&f).ok_or_else(|| {
        CliError::Core(sawlab::Error::PreconditionViolation("the family needs two boxes and must be connected".into()))
    })?;
    let rest: BTreeSet<BoxSpec> = f.boxes().iter().copied().filter(|c| *c != b).collect();
    let s_b = enumerate_sf(&FamilyEdges::new([b])?, budget)?;
    let s_rest = enumerate_sf(&FamilyEdges::new(rest.clone())?, budget)?;
    let s_f: HashSet<Polygon> = enumerate_sf(&f, budget)?.into_iter().collect();
    let mut images = HashSet::new();
    let mut in_sf = true;
    for p1 in &s_b {
        for p2 in &s_rest {
            let q = merge_family_polygons(&b, p1, &rest, p2)?;
            in_sf &= s_f.contains(&q);
            images.insert(q);
        }
    }
    let z_f = zf(&f, x, budget)?;
    let power = zm(m, x, budget)?.powi(f.boxes().len() as i32);
    out.table = Table::new(&[
        "removed_box", "s_b", "s_rest", "pairs", "distinct_images", "images_in_sf", "s_f", "x", "z_f", "z_m_power", "claim_holds",
    ]);
    out.table.push(vec![
        json!(b.to_string()),
        json!(s_b.len()),
        json!(s_rest.len()),
        json!(s_b.len() * s_rest.len()),
        json!(images.len()),
        json!(in_sf),
        json!(s_f.len()),
        json!(x),
        json!(z_f),
        json!(power),
        json!(z_f >= power),
    ]);
    Ok(())
}

fn report(out: &mut Output, common: &Common) -> Result<(), CliError> {
    let dir = common.out.as_ref().ok_or_else(|| CliError::Usage("report needs --out DIR".into()))?;
    let mut manifests: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(".manifest.json") && n != "report.manifest.json")
        })
        .collect();
    manifests.sort();
    out.table = Table::new(&["manifest", "command", "seed", "wall_time", "exploratory", "outputs"]);
    let mut md = String::from("# Run report\n\n| command | seed | wall time (s) | exploratory | outputs |\n|---|---|---|---|---|\n");
    for p in &manifests {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(p)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        let outputs: Vec<String> =
            v["outputs"].as_array().into_iter().flatten().filter_map(|o| o.as_str().map(String::from)).collect();
        let name = p.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        out.table.push(vec![
            json!(name),
            v["command"].clone(),
            v["seed"].clone(),
            v["wall_time"].clone(),
            v["exploratory"].clone(),
            json!(outputs.join(" ")),
        ]);
        let _ = writeln!(
            md,
            "| {} | {} | {:.3} | {} | {} |",
            v["command"].as_str().unwrap_or("?"),
            v["seed"],
            v["wall_time"].as_f64().unwrap_or(0.0),
            v["exploratory"],
            outputs.join(", ")
        );
        if let Some(res) = v["results"].as_object().filter(|r| !r.is_empty()) {
            let _ = writeln!(md, "\n<details><summary>{} results</summary>\n\n```json\n{}\n```\n</details>\n", name, serde_json::to_string_pretty(res).unwrap_or_default());
        }
    }
    out.extra.push(("md".into(), md));
    Ok(())
}
