use rayon::prelude::*;

use super::AnalysisError;
use crate::bigroup::BigElem;
use crate::cosetgraph::CosetGraph;
use crate::graph::SimpleGraph;

/// A permutation of vertex ids, `perm[v]` being the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    perm: Vec<u32>,
}

impl VertexMap {
    pub fn identity(n: usize) -> VertexMap {
        VertexMap {
            perm: (0..n as u32).collect(),
        }
    }

    /// Wraps an image table; `None` unless it is a bijection of `0..n`.
    pub fn from_images(perm: Vec<u32>) -> Option<VertexMap> {
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            let slot = seen.get_mut(v as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(VertexMap { perm })
    }

    /// Like [`VertexMap::from_images`], but also requires that every edge of
    /// `graph` is carried to an edge.
    pub fn automorphism(graph: &SimpleGraph, perm: Vec<u32>) -> Result<VertexMap, AnalysisError> {
        let map = VertexMap::from_images(perm).ok_or(AnalysisError::NotAutomorphism(0, 0))?;
        if map.len() != graph.len() {
            return Err(AnalysisError::NotAutomorphism(0, 0));
        }
        match map.first_broken_edge(graph, graph) {
            Some((u, v)) => Err(AnalysisError::NotAutomorphism(u, v)),
            None => Ok(map),
        }
    }

    /// First edge `{u, v}` of `src` whose image is not an edge of `dst`.
    pub fn first_broken_edge(&self, src: &SimpleGraph, dst: &SimpleGraph) -> Option<(u32, u32)> {
        src.edges()
            .find(|&(u, v)| !dst.has_edge(self.apply(u), self.apply(v)))
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.perm[v as usize]
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap {
            perm: self.perm.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> VertexMap {
        let mut perm = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            perm[v as usize] = i as u32;
        }
        VertexMap { perm }
    }

    pub fn commutes_with(&self, other: &VertexMap) -> bool {
        self.then(other) == other.then(self)
    }

    /// Whether the map sends every vertex to a vertex with the same part bit.
    pub fn preserves_parts(&self, parts: &[u8]) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(i, &v)| parts[i] == parts[v as usize])
    }
}

fn images_of(
    cg: &CosetGraph,
    image: impl Fn(&BigElem) -> BigElem + Sync,
) -> Result<Vec<u32>, AnalysisError> {
    cg.keys()
        .par_iter()
        .enumerate()
        .map(|(v, key)| {
            cg.id_of_elem(&image(key.rep()))
                .ok_or(AnalysisError::VertexEscapesComponent(v as u32))
        })
        .collect()
}

/// Right multiplication `Lx -> Lxg` on a built component.
pub fn action_map(cg: &CosetGraph, g: &BigElem) -> Result<VertexMap, AnalysisError> {
    let group = cg.space().group();
    let perm = images_of(cg, |x| group.mul(x, g))?;
    VertexMap::automorphism(cg.graph(), perm)
}

/// `Lx -> L pi x`; well defined because `pi` centralises `L`.
pub fn sigma_map(cg: &CosetGraph) -> Result<VertexMap, AnalysisError> {
    let group = cg.space().group();
    let pi = group.pi();
    let perm = images_of(cg, |x| group.mul(&pi, x))?;
    VertexMap::automorphism(cg.graph(), perm)
}

/// The entrywise Frobenius on coset representatives, from the component `src`
/// over `alpha` to the component `dst` over `alpha^2`.
pub fn tau_bar_map(src: &CosetGraph, dst: &CosetGraph) -> Result<VertexMap, AnalysisError> {
    if src.field() != dst.field() {
        return Err(AnalysisError::FieldMismatch);
    }
    let t = src.space().group().psl();
    let perm: Vec<u32> = src
        .keys()
        .par_iter()
        .enumerate()
        .map(|(v, key)| {
            let g = key.rep();
            let image = BigElem::new(t.frob_aut(&g.x, 1), t.frob_aut(&g.y, 1), g.eps);
            dst.id_of_elem(&image)
                .ok_or(AnalysisError::VertexEscapesComponent(v as u32))
        })
        .collect::<Result<_, _>>()?;
    if src.len() != dst.len() {
        return Err(AnalysisError::NotIsomorphism(0, 0));
    }
    let map = VertexMap::from_images(perm).ok_or(AnalysisError::NotIsomorphism(0, 0))?;
    match map.first_broken_edge(src.graph(), dst.graph()) {
        Some((u, v)) => Err(AnalysisError::NotIsomorphism(u, v)),
        None => Ok(map),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosetgraph::CosetSpace;
    use crate::gf2::Field;

    fn component(f: u32, alpha: u32) -> CosetGraph {
        let field = Field::new(f, None).unwrap();
        CosetSpace::new(field, crate::gf2::Fel(alpha))
            .build_component(1 << 20)
            .unwrap()
    }

    #[test]
    fn action_basics() {
        let cg = component(2, 2);
        let group = cg.space().group();
        let id = action_map(&cg, &BigElem::IDENTITY).unwrap();
        assert!(id.is_identity());
        let aa = cg.space().l_group().elements()[1];
        assert_eq!(action_map(&cg, &aa).unwrap().apply(0), 0);
        let g = action_map(&cg, &cg.space().g_alpha()).unwrap();
        assert_ne!(cg.part(g.apply(0)), cg.part(0));
        let sigma = sigma_map(&cg).unwrap();
        assert!(sigma.then(&sigma).is_identity());
        assert!(!sigma.is_identity());
        assert_eq!(sigma.apply(0), cg.id_of_elem(&group.pi()).unwrap());
        assert!(sigma.commutes_with(&g));
    }

    #[test]
    fn map_algebra() {
        let m = VertexMap::from_images(vec![1, 2, 0]).unwrap();
        assert!(m.then(&m.inverse()).is_identity());
        assert!(!m.is_identity());
        assert!(VertexMap::from_images(vec![0, 0, 1]).is_none());
        assert!(VertexMap::from_images(vec![0, 3]).is_none());
        let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(VertexMap::automorphism(&path, vec![2, 1, 0]).is_ok());
        assert!(VertexMap::automorphism(&path, vec![1, 0, 2]).is_err());
    }
}
