//! The cubic bipartite graphs on `Z_p x Z_p x Z_2`, `p = 1 mod 3`, with edges
//! `(x,y,0) ~ (x+1,y+1,1), (x+a,y+a^2,1), (x+a^2,y+a,1)` for `a` of order 3,
//! and the transitivity facts of their natural automorphism groups.
//!
//! Vertex `(x, y, eps)` has id `(x p + y) 2 + eps`.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{arc_orbits, orbit_partition, AnalysisError, VertexMap};
use crate::graph::SimpleGraph;

/// Largest prime accepted by [`zp_arc_check`].
pub const MAX_CHECK_PRIME: u32 = 31;

#[derive(Debug, Error)]
pub enum ZpError {
    #[error("{0} is not a prime congruent to 1 mod 3")]
    BadPrime(u32),
    #[error("{0} is above the supported bound {MAX_CHECK_PRIME}")]
    TooLarge(u32),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpVertex {
    pub x: u32,
    pub y: u32,
    pub eps: u8,
}

/// A named automorphism candidate, realised as a vertex permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZpAut {
    /// `(x, y, e) -> (x + u, y + v, e)`
    Translation(u32, u32),
    /// `(x, y, e) -> (a x, a^2 y, e)`
    Scale,
    /// `(x, y, e) -> (y, x, e)`
    Swap,
    /// `(x, y, e) -> (-x, -y, 1 - e)`
    Negate,
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone)]
pub struct ZpGraph {
    p: u32,
    a: u32,
    graph: SimpleGraph,
}

impl ZpGraph {
    /// Builds the graph; `a` is the least residue of multiplicative order 3.
    pub fn new(p: u32) -> Result<ZpGraph, ZpError> {
        if !is_prime(p) || p % 3 != 1 {
            return Err(ZpError::BadPrime(p));
        }
        let a = (2..p)
            .find(|&a| a * a % p != 1 && a * a % p * a % p == 1)
            .expect("order-3 residues exist when 3 divides p - 1");
        let a2 = a * a % p;
        let mut this = ZpGraph {
            p,
            a,
            graph: SimpleGraph::from_edges(0, &[]),
        };
        let mut edges = Vec::with_capacity(3 * (p * p) as usize);
        for x in 0..p {
            for y in 0..p {
                let from = this.id(ZpVertex { x, y, eps: 0 });
                for (dx, dy) in [(1, 1), (a, a2), (a2, a)] {
                    let to = this.id(ZpVertex {
                        x: (x + dx) % p,
                        y: (y + dy) % p,
                        eps: 1,
                    });
                    edges.push((from, to));
                }
            }
        }
        this.graph = SimpleGraph::from_edges(2 * (p * p) as usize, &edges);
        Ok(this)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The residue of order 3 used for the edges.
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    #[inline]
    pub fn id(&self, v: ZpVertex) -> u32 {
        (v.x * self.p + v.y) * 2 + v.eps as u32
    }

    #[inline]
    pub fn vertex(&self, id: u32) -> ZpVertex {
        ZpVertex {
            x: id / 2 / self.p,
            y: id / 2 % self.p,
            eps: (id % 2) as u8,
        }
    }

    pub fn parts(&self) -> Vec<u8> {
        self.graph.vertices().map(|v| (v % 2) as u8).collect()
    }

    fn image(&self, aut: ZpAut, v: ZpVertex) -> ZpVertex {
        let p = self.p;
        match aut {
            ZpAut::Translation(u, w) => ZpVertex {
                x: (v.x + u) % p,
                y: (v.y + w) % p,
                eps: v.eps,
            },
            ZpAut::Scale => ZpVertex {
                x: self.a * v.x % p,
                y: self.a * self.a % p * v.y % p,
                eps: v.eps,
            },
            ZpAut::Swap => ZpVertex {
                x: v.y,
                y: v.x,
                eps: v.eps,
            },
            ZpAut::Negate => ZpVertex {
                x: (p - v.x) % p,
                y: (p - v.y) % p,
                eps: 1 - v.eps,
            },
        }
    }

    /// The permutation of `aut`, checked to preserve the edge set.
    pub fn aut_map(&self, aut: ZpAut) -> Result<VertexMap, ZpError> {
        let perm = self
            .graph
            .vertices()
            .map(|id| self.id(self.image(aut, self.vertex(id))))
            .collect();
        Ok(VertexMap::automorphism(&self.graph, perm)?)
    }

    /// Generators of the translation group extended by the scaling and the
    /// composite of swap and negation.
    pub fn small_group_gens(&self) -> Result<Vec<VertexMap>, ZpError> {
        let swap_negate = self
            .aut_map(ZpAut::Swap)?
            .then(&self.aut_map(ZpAut::Negate)?);
        Ok(vec![
            self.aut_map(ZpAut::Translation(1, 0))?,
            self.aut_map(ZpAut::Translation(0, 1))?,
            self.aut_map(ZpAut::Scale)?,
            swap_negate,
        ])
    }

    /// Generators of the translation group extended by scaling, swap and negation.
    pub fn full_group_gens(&self) -> Result<Vec<VertexMap>, ZpError> {
        Ok(vec![
            self.aut_map(ZpAut::Translation(1, 0))?,
            self.aut_map(ZpAut::Translation(0, 1))?,
            self.aut_map(ZpAut::Scale)?,
            self.aut_map(ZpAut::Swap)?,
            self.aut_map(ZpAut::Negate)?,
        ])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZpReport {
    pub p: u32,
    pub a: u32,
    pub vertices: usize,
    pub edges: usize,
    pub cubic: bool,
    pub bipartite_halves: [usize; 2],
    pub small_group_1_arc_transitive: bool,
    pub small_group_2_arc_transitive: bool,
    pub full_group_2_arc_transitive: bool,
    /// Orbits of `{(x,y,e) -> (x+u,y,e)}` on each half.
    pub row_orbits: [usize; 2],
    /// Stabiliser of `(0,0,0)` in the smaller group cycles its three neighbours.
    pub scale_cycles_base_neighbours: bool,
}

pub fn zp_arc_check(p: u32) -> Result<ZpReport, ZpError> {
    if p > MAX_CHECK_PRIME {
        return Err(ZpError::TooLarge(p));
    }
    let zp = ZpGraph::new(p)?;
    let graph = zp.graph();
    let parts = zp.parts();
    let small = zp.small_group_gens()?;
    let full = zp.full_group_gens()?;
    let rows = orbit_partition(graph.len(), &[zp.aut_map(ZpAut::Translation(1, 0))?]);
    let coloring = graph.two_coloring();
    let halves = coloring.map_or([0, 0], |c| {
        let zeros = c.iter().filter(|&&x| x == 0).count();
        [zeros, c.len() - zeros]
    });
    let scale = zp.aut_map(ZpAut::Scale)?;
    let base = zp.id(ZpVertex { x: 0, y: 0, eps: 0 });
    let nbrs = graph.neighbors(base);
    let cycled = scale.apply(base) == base
        && nbrs
            .iter()
            .all(|&w| scale.apply(w) != w && nbrs.contains(&scale.apply(w)));
    Ok(ZpReport {
        p,
        a: zp.a(),
        vertices: graph.len(),
        edges: graph.edge_count(),
        cubic: graph.is_regular(3),
        bipartite_halves: halves,
        small_group_1_arc_transitive: arc_orbits(graph, &small, 1, None)?.transitive,
        small_group_2_arc_transitive: arc_orbits(graph, &small, 2, None)?.transitive,
        full_group_2_arc_transitive: arc_orbits(graph, &full, 2, None)?.transitive,
        row_orbits: rows.count_per_part(&parts),
        scale_cycles_base_neighbours: cycled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let zp = ZpGraph::new(7).unwrap();
        assert_eq!(zp.a(), 2);
        let g = zp.graph();
        assert_eq!((g.len(), g.edge_count()), (98, 147));
        assert!(g.is_regular(3));
        let base = zp.id(ZpVertex { x: 0, y: 0, eps: 0 });
        let mut expected: Vec<u32> = [(1, 1), (2, 4), (4, 2)]
            .iter()
            .map(|&(x, y)| zp.id(ZpVertex { x, y, eps: 1 }))
            .collect();
        expected.sort_unstable();
        assert_eq!(g.neighbors(base), &expected[..]);
        for id in g.vertices() {
            assert_eq!(zp.id(zp.vertex(id)), id);
        }
        assert!(matches!(ZpGraph::new(5), Err(ZpError::BadPrime(5))));
        assert!(matches!(ZpGraph::new(25), Err(ZpError::BadPrime(25))));
        assert!(matches!(zp_arc_check(37), Err(ZpError::TooLarge(37))));
    }

    #[test]
    fn checks_at_seven() {
        let r = zp_arc_check(7).unwrap();
        assert_eq!(r.bipartite_halves, [49, 49]);
        assert!(r.small_group_1_arc_transitive && !r.small_group_2_arc_transitive);
        assert!(r.full_group_2_arc_transitive);
        assert_eq!(r.row_orbits, [7, 7]);
        assert!(r.scale_cycles_base_neighbours);
    }
}
