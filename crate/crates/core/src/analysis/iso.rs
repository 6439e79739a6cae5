use std::collections::BTreeSet;
use std::str::FromStr;

use super::AnalysisError;
use crate::cosetgraph::CosetSpace;
use crate::gf2::{Fel, Field};
use crate::graph::{SimpleGraph, UNREACHED};

/// Largest degree for which the whole vertex set is enumerated.
const ENUMERATION_MAX_DEGREE: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceGraph {
    K33,
    Petersen,
    Desargues,
}

impl FromStr for ReferenceGraph {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K33" => Ok(ReferenceGraph::K33),
            "Petersen" => Ok(ReferenceGraph::Petersen),
            "Desargues" => Ok(ReferenceGraph::Desargues),
            _ => Err(AnalysisError::UnknownName(s.to_string())),
        }
    }
}

impl ReferenceGraph {
    pub fn graph(self) -> SimpleGraph {
        match self {
            ReferenceGraph::K33 => {
                let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
                SimpleGraph::from_edges(6, &edges)
            }
            ReferenceGraph::Petersen => {
                // Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint
                let pairs: Vec<u32> = (0..5u32)
                    .flat_map(|i| (i + 1..5).map(move |j| (1 << i) | (1 << j)))
                    .collect();
                let mut edges = Vec::new();
                for (x, &p) in pairs.iter().enumerate() {
                    for (y, &q) in pairs.iter().enumerate().skip(x + 1) {
                        if p & q == 0 {
                            edges.push((x as u32, y as u32));
                        }
                    }
                }
                SimpleGraph::from_edges(pairs.len(), &edges)
            }
            ReferenceGraph::Desargues => {
                // bipartite double cover: v -> (v, 0) = v and (v, 1) = v + n
                let base = ReferenceGraph::Petersen.graph();
                let n = base.len() as u32;
                let edges: Vec<_> = base
                    .edges()
                    .flat_map(|(u, v)| [(u, v + n), (v, u + n)])
                    .collect();
                SimpleGraph::from_edges(2 * n as usize, &edges)
            }
        }
    }
}

pub fn reference_graph(name: &str) -> Result<SimpleGraph, AnalysisError> {
    Ok(name.parse::<ReferenceGraph>()?.graph())
}

fn distance_matrix(g: &SimpleGraph) -> Vec<Vec<u32>> {
    g.vertices().map(|v| g.bfs_distances(v)).collect()
}

/// Sorted distance profile of each vertex: how many vertices lie at each distance.
fn profiles(dist: &[Vec<u32>]) -> Vec<Vec<u32>> {
    dist.iter()
        .map(|row| {
            let mut counts = Vec::new();
            for &d in row {
                let d = if d == UNREACHED { 0 } else { d as usize + 1 };
                if counts.len() <= d {
                    counts.resize(d + 1, 0);
                }
                counts[d] += 1;
            }
            counts
        })
        .collect()
}

/// Isomorphism test by backtracking, pruned by distance profiles and by
/// requiring distances to already-placed vertices to match. Meant for graphs
/// of at most a few dozen vertices.
pub fn small_iso(g1: &SimpleGraph, g2: &SimpleGraph) -> bool {
    if g1.len() != g2.len() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let (d1, d2) = (distance_matrix(g1), distance_matrix(g2));
    let (p1, p2) = (profiles(&d1), profiles(&d2));
    let mut sorted1 = p1.clone();
    let mut sorted2 = p2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return false;
    }
    // place vertices in BFS order so each new vertex is adjacent to a placed one
    let mut order = Vec::with_capacity(g1.len());
    let mut placed = vec![false; g1.len()];
    for s in g1.vertices() {
        if placed[s as usize] {
            continue;
        }
        placed[s as usize] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g1.neighbors(u) {
                if !placed[w as usize] {
                    placed[w as usize] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut image = vec![UNREACHED; g1.len()];
    let mut used = vec![false; g2.len()];
    extend(0, &order, &d1, &d2, &p1, &p2, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[u32],
    d1: &[Vec<u32>],
    d2: &[Vec<u32>],
    p1: &[Vec<u32>],
    p2: &[Vec<u32>],
    image: &mut [u32],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth] as usize;
    for w in 0..used.len() {
        if used[w] || p1[v] != p2[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| d1[v][u as usize] == d2[w][image[u as usize] as usize]);
        if !consistent {
            continue;
        }
        image[v] = w as u32;
        used[w] = true;
        if extend(depth + 1, order, d1, d2, p1, p2, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = UNREACHED;
    }
    false
}

/// Classes of the connected parameters under `alpha -> alpha^2` and
/// `alpha -> alpha + 1`; every class must have exactly `2f` members.
pub fn iso_classes(field: &Field) -> Result<Vec<Vec<Fel>>, AnalysisError> {
    let f = field.degree();
    if f < 3 {
        return Err(AnalysisError::DegreeTooSmall(f));
    }
    let connected: BTreeSet<Fel> = field.connected_alphas().into_iter().collect();
    let mut remaining = connected.clone();
    let mut classes = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut class = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            if !class.insert(a) {
                continue;
            }
            for b in [field.square(a), field.add(a, Fel::ONE)] {
                if !connected.contains(&b) {
                    return Err(AnalysisError::StructureViolation(format!(
                        "{b:#x} is reached from a connected parameter but is not connected"
                    )));
                }
                stack.push(b);
            }
        }
        for a in &class {
            remaining.remove(a);
        }
        if class.len() != 2 * f as usize {
            return Err(AnalysisError::BadClassSize {
                size: class.len(),
                expected: 2 * f as usize,
            });
        }
        classes.push(class.into_iter().collect());
    }
    Ok(classes)
}

/// Whether the two parameters give the same edge set, comparing the neighbours
/// of every coset; the vertex set does not depend on the parameter.
pub fn graphs_equal_iff(field: &Field, alpha: Fel, beta: Fel) -> Result<bool, AnalysisError> {
    let f = field.degree();
    if f > ENUMERATION_MAX_DEGREE {
        return Err(AnalysisError::DegreeTooLarge(f));
    }
    let first = CosetSpace::new(field.clone(), alpha);
    let second = CosetSpace::new(field.clone(), beta);
    for key in first.all_vertex_keys() {
        let a = first.neighbors(key.rep())?;
        let b = second.neighbors(key.rep())?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}
