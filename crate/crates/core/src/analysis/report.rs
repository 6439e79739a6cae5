use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::arcs::{
    arc_orbits, generator_set, local_arc_orbits, vertex_transitive, ArcOrbitReport, GroupKind,
};
use super::maps::sigma_map;
use super::metrics::{antipodal_check, diameter, girth, DEFAULT_GIRTH_SAMPLE};
use super::quotient::{quotient_by_second_factor, QuotientSummary};
use super::AnalysisError;
use crate::cosetgraph::CosetGraph;

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub girth: bool,
    pub diameter: bool,
    pub arcs: Vec<(GroupKind, u32)>,
    pub quotient: bool,
    pub antipodal: bool,
    pub girth_sample: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            girth: false,
            diameter: false,
            arcs: Vec::new(),
            quotient: false,
            antipodal: false,
            girth_sample: DEFAULT_GIRTH_SAMPLE,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcEntry {
    pub group: &'static str,
    pub s: u32,
    /// Per-part results for part-preserving groups.
    pub local: bool,
    pub transitive: bool,
    pub orbits: Vec<ArcOrbitReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub field: String,
    pub alpha: String,
    pub connected: bool,
    pub components: u128,
    pub vertices: usize,
    pub edges: usize,
    pub vertex_transitive: bool,
    pub girth: Option<u32>,
    pub diameter: Option<u32>,
    pub arcs: Vec<ArcEntry>,
    pub quotient: Option<QuotientSummary>,
    pub antipodal: Option<bool>,
    pub timings_ms: BTreeMap<String, u64>,
}

/// Runs the requested analyses on the component of the base coset.
pub fn analyze(cg: &CosetGraph, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    let mut timings = BTreeMap::new();
    let mut timed = |name: &str, start: Instant| {
        timings.insert(name.to_string(), start.elapsed().as_millis() as u64);
    };
    let graph = cg.graph();

    let start = Instant::now();
    let transitive = vertex_transitive(graph, &generator_set(cg, GroupKind::G)?);
    timed("vertex_transitivity", start);

    let girth_value = if opts.girth {
        let start = Instant::now();
        let g = girth(graph, opts.girth_sample, opts.seed)?;
        timed("girth", start);
        Some(g)
    } else {
        None
    };
    let diameter_value = if opts.diameter {
        let start = Instant::now();
        let d = diameter(graph, transitive)?;
        timed("diameter", start);
        Some(d)
    } else {
        None
    };

    let mut arcs = Vec::new();
    for &(kind, s) in &opts.arcs {
        let start = Instant::now();
        let gens = generator_set(cg, kind)?;
        let entry = if kind.preserves_parts() {
            let reports = local_arc_orbits(graph, &cg.parts(), &gens, s)?;
            ArcEntry {
                group: kind.name(),
                s,
                local: true,
                transitive: reports.iter().all(|r| r.transitive),
                orbits: reports.to_vec(),
            }
        } else {
            let report = arc_orbits(graph, &gens, s, kind.nominal_order(cg))?;
            ArcEntry {
                group: kind.name(),
                s,
                local: false,
                transitive: report.transitive,
                orbits: vec![report],
            }
        };
        timed(&format!("arcs_{}_{}", kind.name(), s), start);
        arcs.push(entry);
    }

    let quotient = if opts.quotient {
        let start = Instant::now();
        let q = quotient_by_second_factor(cg)?;
        timed("quotient", start);
        Some(q)
    } else {
        None
    };
    let antipodal = if opts.antipodal {
        let start = Instant::now();
        let sigma = sigma_map(cg)?;
        let verdict = antipodal_check(graph, sigma.apply(0));
        timed("antipodal", start);
        Some(verdict)
    } else {
        None
    };

    Ok(AnalysisReport {
        field: cg.field().spec_string(),
        alpha: format!("{:#x}", cg.alpha().bits()),
        connected: cg.is_whole_graph(),
        components: cg.component_count()?,
        vertices: cg.len(),
        edges: graph.edge_count(),
        vertex_transitive: transitive,
        girth: girth_value,
        diameter: diameter_value,
        arcs,
        quotient,
        antipodal,
        timings_ms: timings,
    })
}
