use serde::Serialize;

use super::arcs::{generator_set, GroupKind};
use super::maps::{action_map, VertexMap};
use super::AnalysisError;
use crate::bigroup::BigElem;
use crate::cosetgraph::CosetGraph;
use crate::graph::{SimpleGraph, UnionFind};
use crate::psl2::GroupElem2;

/// Orbits of the group generated by some vertex maps; labels are numbered by
/// least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub labels: Vec<u32>,
    pub count: usize,
}

impl OrbitPartition {
    /// Number of orbits meeting each part.
    pub fn count_per_part(&self, parts: &[u8]) -> [usize; 2] {
        let mut seen = vec![[false; 2]; self.count];
        let mut out = [0; 2];
        for (v, &l) in self.labels.iter().enumerate() {
            let p = parts[v] as usize;
            if !seen[l as usize][p] {
                seen[l as usize][p] = true;
                out[p] += 1;
            }
        }
        out
    }

    /// Whether the orbits are exactly the classes of `parts`.
    pub fn equals_parts(&self, parts: &[u8]) -> bool {
        // two orbits, each part meeting only one of them
        self.count == 2 && self.count_per_part(parts) == [1, 1]
    }

    /// Whether `map` carries every class of `self` onto a class of `other`,
    /// bijectively on classes.
    pub fn maps_onto(&self, map: &VertexMap, other: &OrbitPartition) -> bool {
        if self.count != other.count {
            return false;
        }
        let mut image = vec![u32::MAX; self.count];
        let mut hit = vec![false; other.count];
        for (v, &l) in self.labels.iter().enumerate() {
            let target = other.labels[map.apply(v as u32) as usize];
            let slot = &mut image[l as usize];
            if *slot == u32::MAX {
                if hit[target as usize] {
                    return false;
                }
                hit[target as usize] = true;
                *slot = target;
            } else if *slot != target {
                return false;
            }
        }
        true
    }
}

pub fn orbit_partition(n: usize, gens: &[VertexMap]) -> OrbitPartition {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for v in 0..n as u32 {
            uf.union(v, g.apply(v));
        }
    }
    OrbitPartition {
        count: uf.set_count(),
        labels: uf.labels(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientSummary {
    pub vertices: usize,
    pub edges: usize,
    pub cubic: bool,
    pub bipartite: bool,
    pub equal_halves: bool,
    pub cover_ok: bool,
    #[serde(skip)]
    pub graph: SimpleGraph,
}

fn factor_maps(cg: &CosetGraph, second: bool) -> Result<Vec<VertexMap>, AnalysisError> {
    let t = cg.space().group().psl();
    let one = GroupElem2::IDENTITY;
    [t.elem_a(), t.elem_b(), t.u(cg.alpha())]
        .iter()
        .map(|&h| {
            let g = if second {
                BigElem::new(one, h, false)
            } else {
                BigElem::new(h, one, false)
            };
            action_map(cg, &g)
        })
        .collect()
}

/// The graph on the orbits of the second direct factor, which acts by right
/// multiplication through `(1,a)`, `(1,b)`, `(1,u_alpha)`.
pub fn quotient_by_second_factor(cg: &CosetGraph) -> Result<QuotientSummary, AnalysisError> {
    let graph = cg.graph();
    let gens = factor_maps(cg, true)?;
    let orbits = orbit_partition(graph.len(), &gens);
    let mut lists = vec![Vec::new(); orbits.count];
    let mut locally_injective = true;
    for v in graph.vertices() {
        let lv = orbits.labels[v as usize];
        let mut images: Vec<u32> = graph
            .neighbors(v)
            .iter()
            .map(|&w| orbits.labels[w as usize])
            .collect();
        lists[lv as usize].extend(images.iter().copied());
        images.sort_unstable();
        images.dedup();
        locally_injective &= images.len() == graph.degree(v) && !images.contains(&lv);
    }
    let quotient = SimpleGraph::from_adjacency(lists);
    let cubic = quotient.is_regular(3);
    let coloring = quotient.two_coloring();
    let equal_halves = coloring
        .as_ref()
        .is_some_and(|c| 2 * c.iter().filter(|&&x| x == 0).count() == c.len());
    // a cover: each neighbourhood maps injectively, and the quotient has the
    // same valency, so the map is onto each quotient neighbourhood as well
    let cover_ok = locally_injective
        && graph
            .vertices()
            .all(|v| quotient.degree(orbits.labels[v as usize]) == graph.degree(v));
    Ok(QuotientSummary {
        vertices: quotient.len(),
        edges: quotient.edge_count(),
        cubic,
        bipartite: coloring.is_some(),
        equal_halves,
        cover_ok,
        graph: quotient,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    /// Orbits of the part-preserving subgroup are the two parts.
    pub even_orbits_are_parts: bool,
    /// Orbits per part of the second and first direct factors.
    pub second_factor_orbits: [usize; 2],
    pub first_factor_orbits: [usize; 2],
    /// `g_alpha` carries the orbits of each factor onto those of the other.
    pub swap_ok: bool,
    /// The two factors together are transitive on each part.
    pub joint_transitive: bool,
}

impl StructureReport {
    pub fn violation(&self) -> Option<String> {
        if !self.even_orbits_are_parts {
            return Some("part-preserving subgroup orbits differ from the parts".into());
        }
        if self
            .second_factor_orbits
            .iter()
            .chain(&self.first_factor_orbits)
            .any(|&c| c <= 2)
        {
            return Some("a direct factor has at most two orbits on a part".into());
        }
        if !self.swap_ok {
            return Some("g_alpha does not exchange the factor orbits".into());
        }
        if !self.joint_transitive {
            return Some("the product of the factors is not transitive on each part".into());
        }
        None
    }

    pub fn ensure(&self) -> Result<(), AnalysisError> {
        match self.violation() {
            Some(msg) => Err(AnalysisError::StructureViolation(msg)),
            None => Ok(()),
        }
    }
}

/// Orbit facts on a connected graph: the even subgroup, the two direct factors
/// of `T^2` and their exchange by `g_alpha`.
pub fn structure_checks_c_i(cg: &CosetGraph) -> Result<StructureReport, AnalysisError> {
    let n = cg.len();
    let parts = cg.parts();
    let even = orbit_partition(n, &generator_set(cg, GroupKind::GPlus)?);
    let second_gens = factor_maps(cg, true)?;
    let first_gens = factor_maps(cg, false)?;
    let second = orbit_partition(n, &second_gens);
    let first = orbit_partition(n, &first_gens);
    let swap = action_map(cg, &cg.space().g_alpha())?;
    let joint: Vec<VertexMap> = second_gens.into_iter().chain(first_gens).collect();
    Ok(StructureReport {
        even_orbits_are_parts: even.equals_parts(&parts),
        second_factor_orbits: second.count_per_part(&parts),
        first_factor_orbits: first.count_per_part(&parts),
        swap_ok: second.maps_onto(&swap, &first) && first.maps_onto(&swap, &second),
        joint_transitive: orbit_partition(n, &joint).equals_parts(&parts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        let shift = VertexMap::from_images(vec![1, 0, 3, 2]).unwrap();
        let p = orbit_partition(4, std::slice::from_ref(&shift));
        assert_eq!(p.count, 2);
        assert_eq!(p.labels, vec![0, 0, 1, 1]);
        assert!(p.equals_parts(&[0, 0, 1, 1]));
        assert!(!p.equals_parts(&[0, 1, 0, 1]));
        assert_eq!(p.count_per_part(&[0, 1, 0, 1]), [2, 2]);
        let cross = VertexMap::from_images(vec![2, 3, 0, 1]).unwrap();
        assert!(p.maps_onto(&cross, &p));
        let other = orbit_partition(4, &[VertexMap::from_images(vec![2, 1, 0, 3]).unwrap()]);
        assert!(!p.maps_onto(&VertexMap::identity(4), &other));
    }
}
