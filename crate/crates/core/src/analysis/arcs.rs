use rayon::prelude::*;
use serde::Serialize;

use super::maps::{action_map, sigma_map, VertexMap};
use super::AnalysisError;
use crate::cosetgraph::CosetGraph;
use crate::graph::SimpleGraph;

pub const MAX_ARC_LENGTH: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcOrbitReport {
    pub s: u32,
    pub total: u64,
    pub orbit_size: u64,
    pub transitive: bool,
    pub regular: bool,
}

/// Dense numbering of the s-arcs of a cubic graph. An arc starting at `v0` gets
/// `v0 * per_vertex + code`, where the code lists the choice made at each step
/// (one of three neighbours first, then one of the two that do not turn back),
/// most significant first. Neighbour lists are sorted, so the numbering follows
/// the lexicographic order of vertex tuples.
struct ArcCodec<'g> {
    graph: &'g SimpleGraph,
    s: u32,
    per_vertex: u64,
}

impl<'g> ArcCodec<'g> {
    fn new(graph: &'g SimpleGraph, s: u32) -> ArcCodec<'g> {
        let per_vertex = if s == 0 { 1 } else { 3u64 << (s - 1) };
        ArcCodec {
            graph,
            s,
            per_vertex,
        }
    }

    fn decode(&self, index: u64, arc: &mut [u32; 5]) {
        let s = self.s as usize;
        arc[0] = (index / self.per_vertex) as u32;
        if s == 0 {
            return;
        }
        let code = index % self.per_vertex;
        arc[1] = self.graph.neighbors(arc[0])[(code >> (s - 1)) as usize];
        for i in 2..=s {
            let bit = ((code >> (s - i)) & 1) as usize;
            let prev = arc[i - 2];
            arc[i] = self
                .graph
                .neighbors(arc[i - 1])
                .iter()
                .copied()
                .filter(|&w| w != prev)
                .nth(bit)
                .expect("cubic graph");
        }
    }

    fn encode(&self, arc: &[u32; 5]) -> u64 {
        let s = self.s as usize;
        let mut code = 0u64;
        if s > 0 {
            let first = self
                .graph
                .neighbors(arc[0])
                .iter()
                .position(|&w| w == arc[1])
                .expect("arc step");
            code = first as u64;
            for i in 2..=s {
                let prev = arc[i - 2];
                let bit = self
                    .graph
                    .neighbors(arc[i - 1])
                    .iter()
                    .filter(|&&w| w != prev)
                    .position(|&w| w == arc[i])
                    .expect("arc step");
                code = (code << 1) | bit as u64;
            }
        }
        arc[0] as u64 * self.per_vertex + code
    }
}

/// Size of the orbit of arc `seed` under the group generated by `gens`, by a
/// level-synchronous search; images of a level are computed in parallel.
fn orbit_size(codec: &ArcCodec<'_>, gens: &[VertexMap], seed: u64, total: u64) -> u64 {
    let mut visited = vec![0u64; total.div_ceil(64) as usize];
    let mark = |visited: &mut Vec<u64>, i: u64| {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = visited[w] >> b & 1 == 0;
        visited[w] |= 1 << b;
        fresh
    };
    mark(&mut visited, seed);
    let mut count = 1u64;
    let mut frontier = vec![seed];
    let s = codec.s as usize;
    while !frontier.is_empty() {
        let images: Vec<u64> = frontier
            .par_iter()
            .flat_map_iter(|&index| {
                let mut arc = [0u32; 5];
                codec.decode(index, &mut arc);
                gens.iter().map(move |g| {
                    let mut image = [0u32; 5];
                    for i in 0..=s {
                        image[i] = g.apply(arc[i]);
                    }
                    codec.encode(&image)
                })
            })
            .collect();
        frontier = images
            .into_iter()
            .filter(|&i| mark(&mut visited, i))
            .collect();
        count += frontier.len() as u64;
    }
    count
}

fn check_arc_preconditions(graph: &SimpleGraph, s: u32) -> Result<(), AnalysisError> {
    if s > MAX_ARC_LENGTH {
        return Err(AnalysisError::ArcLengthOutOfRange(s));
    }
    if !graph.is_regular(3) {
        return Err(AnalysisError::NotCubic);
    }
    if s > 0 && graph.has_cycle_at_most(2 * s) {
        return Err(AnalysisError::GirthTooSmall { s, bound: 2 * s });
    }
    Ok(())
}

/// Orbit of the least s-arc under `gens`, compared with the number of s-arcs.
/// `group_order` is the order of the group the generators are known to generate,
/// used for the regularity verdict.
pub fn arc_orbits(
    graph: &SimpleGraph,
    gens: &[VertexMap],
    s: u32,
    group_order: Option<u128>,
) -> Result<ArcOrbitReport, AnalysisError> {
    check_arc_preconditions(graph, s)?;
    let codec = ArcCodec::new(graph, s);
    let total = graph.len() as u64 * codec.per_vertex;
    let orbit = orbit_size(&codec, gens, 0, total);
    let transitive = orbit == total;
    Ok(ArcOrbitReport {
        s,
        total,
        orbit_size: orbit,
        transitive,
        regular: transitive && group_order == Some(total as u128),
    })
}

/// For part-preserving `gens`: per part, the orbit of the least s-arc starting
/// in that part against the number of s-arcs starting there.
pub fn local_arc_orbits(
    graph: &SimpleGraph,
    parts: &[u8],
    gens: &[VertexMap],
    s: u32,
) -> Result<[ArcOrbitReport; 2], AnalysisError> {
    check_arc_preconditions(graph, s)?;
    if !gens.iter().all(|g| g.preserves_parts(parts)) {
        return Err(AnalysisError::NotPartPreserving);
    }
    let codec = ArcCodec::new(graph, s);
    let total_all = graph.len() as u64 * codec.per_vertex;
    let report = |part: u8| {
        let size = parts.iter().filter(|&&p| p == part).count() as u64;
        let total = size * codec.per_vertex;
        let orbit = match parts.iter().position(|&p| p == part) {
            Some(root) => orbit_size(&codec, gens, root as u64 * codec.per_vertex, total_all),
            None => 0,
        };
        ArcOrbitReport {
            s,
            total,
            orbit_size: orbit,
            transitive: orbit == total,
            regular: false,
        }
    };
    Ok([report(0), report(1)])
}

/// Whether the orbit of vertex 0 under `gens` is everything.
pub fn vertex_transitive(graph: &SimpleGraph, gens: &[VertexMap]) -> bool {
    let codec = ArcCodec::new(graph, 0);
    orbit_size(&codec, gens, 0, graph.len() as u64) == graph.len() as u64
}

/// The groups acting on a component whose arc transitivity is examined: the
/// component group, its part-preserving half, those extended by the swap
/// `Lx -> L pi x`, and the part-preserving half extended by the swap composed
/// with `g_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    G,
    GPlus,
    M,
    A,
    APlus,
}

impl GroupKind {
    pub const ALL: [GroupKind; 5] = [
        GroupKind::G,
        GroupKind::GPlus,
        GroupKind::M,
        GroupKind::A,
        GroupKind::APlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::G => "G",
            GroupKind::GPlus => "Gplus",
            GroupKind::M => "M",
            GroupKind::A => "A",
            GroupKind::APlus => "Aplus",
        }
    }

    pub fn parse(s: &str) -> Option<GroupKind> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn preserves_parts(self) -> bool {
        matches!(self, GroupKind::GPlus | GroupKind::APlus)
    }

    /// Order of the group when the component is the whole graph (so that the
    /// component group is all of `G`); `None` otherwise.
    pub fn nominal_order(self, cg: &CosetGraph) -> Option<u128> {
        if !cg.is_whole_graph() {
            return None;
        }
        let g = cg.space().group().order();
        Some(match self {
            GroupKind::G | GroupKind::M | GroupKind::APlus => g,
            GroupKind::GPlus => g / 2,
            GroupKind::A => 2 * g,
        })
    }
}

/// Vertex maps generating the group `kind` on the component.
pub fn generator_set(cg: &CosetGraph, kind: GroupKind) -> Result<Vec<VertexMap>, AnalysisError> {
    let space = cg.space();
    let group = space.group();
    let l = space.l_group().elements();
    let g = space.g_alpha();
    let (aa, bb) = (l[1], l[3]);
    let base = [action_map(cg, &aa)?, action_map(cg, &bb)?];
    let even = || -> Result<Vec<VertexMap>, AnalysisError> {
        let mut out = base.to_vec();
        for x in l {
            out.push(action_map(cg, &group.mul(&group.mul(&g, x), &g))?);
        }
        Ok(out)
    };
    Ok(match kind {
        GroupKind::G => {
            let mut out = base.to_vec();
            out.push(action_map(cg, &g)?);
            out
        }
        GroupKind::GPlus => even()?,
        GroupKind::M => {
            let mut out = even()?;
            out.push(sigma_map(cg)?);
            out
        }
        GroupKind::A => {
            let mut out = base.to_vec();
            out.push(action_map(cg, &g)?);
            out.push(sigma_map(cg)?);
            out
        }
        GroupKind::APlus => {
            let mut out = even()?;
            out.push(sigma_map(cg)?.then(&action_map(cg, &g)?));
            out
        }
    })
}
