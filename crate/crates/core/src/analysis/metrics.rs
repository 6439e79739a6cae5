use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::AnalysisError;
use crate::graph::{SimpleGraph, UNREACHED};

pub const DEFAULT_GIRTH_SAMPLE: usize = 8;

/// Graphs up to this size get the all-pairs diameter.
const ALL_PAIRS_LIMIT: usize = 5000;

/// Shortest cycle through vertex 0, cross-checked from `sample` further
/// vertices drawn with a seeded generator. On a vertex-transitive graph all of
/// them agree and the common value is the girth.
pub fn girth(graph: &SimpleGraph, sample: usize, seed: u64) -> Result<u32, AnalysisError> {
    if graph.is_empty() {
        return Err(AnalysisError::Acyclic);
    }
    let base = graph
        .shortest_cycle_through(0, UNREACHED)
        .ok_or(AnalysisError::Acyclic)?;
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..sample {
        let v = rng.random_range(0..graph.len() as u32);
        let found = graph
            .shortest_cycle_through(v, UNREACHED)
            .unwrap_or(UNREACHED);
        if found != base {
            return Err(AnalysisError::GirthDisagreement {
                vertex: v,
                found,
                base,
            });
        }
    }
    Ok(base)
}

/// Eccentricity of vertex 0 when the caller has certified vertex transitivity,
/// and the exact all-pairs value for small graphs either way.
pub fn diameter(graph: &SimpleGraph, vertex_transitive: bool) -> Result<u32, AnalysisError> {
    if graph.len() <= ALL_PAIRS_LIMIT {
        return Ok(graph.diameter_exhaustive());
    }
    if !vertex_transitive {
        return Err(AnalysisError::NotVertexTransitive);
    }
    Ok(graph.eccentricity(0).0)
}

/// Vertices at maximal distance from `src`, ascending.
pub fn farthest_from(graph: &SimpleGraph, src: u32) -> (u32, Vec<u32>) {
    let dist = graph.bfs_distances(src);
    let ecc = dist
        .iter()
        .copied()
        .filter(|&d| d != UNREACHED)
        .max()
        .unwrap_or(0);
    let far = graph
        .vertices()
        .filter(|&v| dist[v as usize] == ecc)
        .collect();
    (ecc, far)
}

/// Whether `antipode` is the one vertex at maximal distance from vertex 0.
pub fn antipodal_check(graph: &SimpleGraph, antipode: u32) -> bool {
    farthest_from(graph, 0).1 == [antipode]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n as usize, &edges)
    }

    #[test]
    fn cycle_metrics() {
        let c = cycle(10);
        assert_eq!(girth(&c, 4, 0).unwrap(), 10);
        assert_eq!(diameter(&c, false).unwrap(), 5);
        assert!(antipodal_check(&c, 5));
        assert!(!antipodal_check(&cycle(9), 4));
        let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(matches!(girth(&path, 0, 0), Err(AnalysisError::Acyclic)));
    }

    #[test]
    fn disagreement_is_reported() {
        // a triangle with a pendant 4-cycle hanging off vertex 2
        let g =
            SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2)]);
        let err = (0..20).find_map(|seed| girth(&g, 4, seed).err());
        assert!(matches!(
            err,
            Some(AnalysisError::GirthDisagreement { base: 3, .. })
        ));
    }
}
