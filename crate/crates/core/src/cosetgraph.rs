//! The coset graph on the right cosets of `L` in `G`, with `Lx ~ Ly` exactly when
//! `y x^-1` lies in `L g_alpha L`.
//!
//! A coset `Lx` is keyed by its least element in the byte-key order. Graphs are
//! built by a level-synchronous BFS from the coset `L` itself; neighbour keys of a
//! frontier are computed in parallel and ids are then handed out sequentially in
//! (parent id, neighbour key) order, so the numbering does not depend on the
//! number of threads.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::bigroup::{BiGroup, BigElem, LGroup};
use crate::closure::CapExceeded;
use crate::gf2::{Fel, Field};
use crate::graph::SimpleGraph;
use crate::psl2::GroupElem2;

pub const DEFAULT_VERTEX_CAP: usize = 12_000_000;

#[derive(Debug, Error)]
pub enum CosetError {
    #[error("coset has {0} neighbours instead of 3")]
    DegenerateValency(usize),
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
    #[error("{total} vertices do not split into components of size {component}")]
    NonIntegralComponents { total: u128, component: u128 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The least element of a right coset of `L`; equal keys mean equal cosets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexKey(BigElem);

impl VertexKey {
    #[inline]
    pub fn rep(&self) -> &BigElem {
        &self.0
    }

    /// Bipartition bit: the `pi`-exponent shared by every element of the coset.
    #[inline]
    pub fn part(&self) -> u8 {
        self.0.eps as u8
    }
}

impl Ord for VertexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key_cmp(&other.0)
    }
}

impl PartialOrd for VertexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Everything needed to compute keys and neighbours for one `(f, alpha)`.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    group: BiGroup,
    alpha: Fel,
    l: LGroup,
    // first coordinates of L, in the same order as `l`
    l_diag: [GroupElem2; 6],
    // g_alpha l for every l in L
    steps: [BigElem; 6],
}

impl CosetSpace {
    pub fn new(field: Field, alpha: Fel) -> CosetSpace {
        let group = BiGroup::new(field);
        let l = group.l_group();
        let g = group.g_alpha(alpha);
        let steps = l.elements().map(|x| group.mul(&g, &x));
        let l_diag = l.elements().map(|x| x.x);
        CosetSpace {
            group,
            alpha,
            l,
            l_diag,
            steps,
        }
    }

    #[inline]
    pub fn group(&self) -> &BiGroup {
        &self.group
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.group.field()
    }

    #[inline]
    pub fn alpha(&self) -> Fel {
        self.alpha
    }

    pub fn l_group(&self) -> &LGroup {
        &self.l
    }

    pub fn g_alpha(&self) -> BigElem {
        self.group.g_alpha(self.alpha)
    }

    /// Key of the coset `Lg`.
    ///
    /// Elements of `L` are diagonal with trivial `pi` part, so `l g` has first
    /// coordinate `h x` for the six `h`; these are pairwise distinct, which means
    /// the first coordinate alone decides the minimum.
    #[inline]
    pub fn vertex_key(&self, g: &BigElem) -> VertexKey {
        let t = self.group.psl();
        let mut best = 0;
        let mut best_x = t.mul(&self.l_diag[0], &g.x);
        let mut best_sort = best_x.sort_key();
        for (i, h) in self.l_diag.iter().enumerate().skip(1) {
            let x = t.mul(h, &g.x);
            let s = x.sort_key();
            if s < best_sort {
                best = i;
                best_x = x;
                best_sort = s;
            }
        }
        VertexKey(BigElem::new(best_x, t.mul(&self.l_diag[best], &g.y), g.eps))
    }

    /// Key by taking the minimum over all six full products; slower reference
    /// for [`CosetSpace::vertex_key`].
    pub fn vertex_key_reference(&self, g: &BigElem) -> VertexKey {
        let min = self
            .l
            .elements()
            .iter()
            .map(|l| self.group.mul(l, g))
            .min_by(|a, b| a.key_cmp(b))
            .unwrap();
        VertexKey(min)
    }

    /// The three neighbouring cosets `L g_alpha l g`, `l` ranging over all of `L`.
    pub fn neighbors(&self, g: &BigElem) -> Result<[VertexKey; 3], CosetError> {
        let mut keys: Vec<VertexKey> = self
            .steps
            .iter()
            .map(|s| self.vertex_key(&self.group.mul(s, g)))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        if keys.len() != 3 {
            return Err(CosetError::DegenerateValency(keys.len()));
        }
        Ok([keys[0], keys[1], keys[2]])
    }

    /// Same as [`CosetSpace::neighbors`] using one `l` per coset of
    /// `L ∩ L^g_alpha = <(b,b)>`, namely `1, (a,a), (a^2,a^2)`.
    #[inline]
    fn neighbors_fast(&self, g: &BigElem) -> [VertexKey; 3] {
        let mut out = [0, 1, 2].map(|i| self.vertex_key(&self.group.mul(&self.steps[i], g)));
        out.sort_unstable();
        out
    }

    /// `|G| / 6`.
    pub fn total_vertices(&self) -> u128 {
        self.group.order() / 6
    }

    pub fn base_key(&self) -> VertexKey {
        self.vertex_key(&BigElem::IDENTITY)
    }

    /// Connected component of the coset `L`, by level-synchronous BFS.
    pub fn build_component(&self, cap: usize) -> Result<CosetGraph, CosetError> {
        let base = self.base_key();
        let mut keys = vec![base];
        let mut index: HashMap<VertexKey, u32> = HashMap::new();
        index.insert(base, 0);
        let mut adj: Vec<[u32; 3]> = Vec::new();
        let mut start = 0usize;
        while start < keys.len() {
            let end = keys.len();
            let frontier: Vec<[VertexKey; 3]> = keys[start..end]
                .par_iter()
                .map(|k| self.neighbors_fast(k.rep()))
                .collect();
            for nbrs in frontier {
                if nbrs[0] == nbrs[1] || nbrs[1] == nbrs[2] {
                    return Err(CosetError::DegenerateValency(if nbrs[0] == nbrs[2] {
                        1
                    } else {
                        2
                    }));
                }
                let mut ids = [0u32; 3];
                for (slot, k) in ids.iter_mut().zip(nbrs) {
                    *slot = match index.get(&k) {
                        Some(&id) => id,
                        None => {
                            if keys.len() >= cap {
                                return Err(CapExceeded { cap }.into());
                            }
                            let id = keys.len() as u32;
                            index.insert(k, id);
                            keys.push(k);
                            id
                        }
                    };
                }
                adj.push(ids);
            }
            start = end;
        }
        let graph = SimpleGraph::from_adjacency(adj);
        Ok(CosetGraph {
            space: self.clone(),
            keys,
            index,
            graph,
        })
    }

    /// Every coset of `L` in `G`, by enumerating `T^2 x <pi>`; for small fields only.
    pub fn all_vertex_keys(&self) -> Vec<VertexKey> {
        let elems = self.group.psl().all_elements();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &eps in &[false, true] {
            for x in &elems {
                for y in &elems {
                    let k = self.vertex_key(&BigElem::new(*x, *y, eps));
                    if seen.insert(k) {
                        out.push(k);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of components: total vertex count over the size of the base component.
    pub fn component_count(&self, cap: usize) -> Result<u128, CosetError> {
        let comp = self.build_component(cap)?;
        component_count_from(self.total_vertices(), comp.len() as u128)
    }
}

pub fn component_count_from(total: u128, component: u128) -> Result<u128, CosetError> {
    if component == 0 || !total.is_multiple_of(component) {
        return Err(CosetError::NonIntegralComponents { total, component });
    }
    Ok(total / component)
}

/// `2^(2f) (2^(2f) - 1)^2 / 3`.
pub fn total_vertices(field: &Field) -> u128 {
    let q2 = 1u128 << (2 * field.degree());
    q2 * (q2 - 1) * (q2 - 1) / 3
}

/// A built component: keys indexed by vertex id (id 0 is the coset `L`).
#[derive(Debug, Clone)]
pub struct CosetGraph {
    space: CosetSpace,
    keys: Vec<VertexKey>,
    index: HashMap<VertexKey, u32>,
    graph: SimpleGraph,
}

impl CosetGraph {
    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn alpha(&self) -> Fel {
        self.space.alpha
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn keys(&self) -> &[VertexKey] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn id_of(&self, key: &VertexKey) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Id of the coset `Lg`, if it lies in this component.
    pub fn id_of_elem(&self, g: &BigElem) -> Option<u32> {
        self.id_of(&self.space.vertex_key(g))
    }

    pub fn part(&self, v: u32) -> u8 {
        self.keys[v as usize].part()
    }

    pub fn parts(&self) -> Vec<u8> {
        self.keys.iter().map(VertexKey::part).collect()
    }

    /// Whether the component is all of the coset graph.
    pub fn is_whole_graph(&self) -> bool {
        self.len() as u128 == self.space.total_vertices()
    }

    pub fn component_count(&self) -> Result<u128, CosetError> {
        component_count_from(self.space.total_vertices(), self.len() as u128)
    }

    /// Writes the edge list: a header line then `u v` per edge, `u < v`, ascending.
    pub fn export_edges<W: Write>(&self, mut sink: W) -> Result<(), CosetError> {
        writeln!(
            sink,
            "# gamma f={} alpha={:#x} poly={:#x} vertices={} edges={}",
            self.field().degree(),
            self.alpha().0,
            self.field().modulus(),
            self.len(),
            self.graph.edge_count()
        )?;
        for (u, v) in self.graph.edges() {
            writeln!(sink, "{u} {v}")?;
        }
        sink.flush()?;
        Ok(())
    }
}
