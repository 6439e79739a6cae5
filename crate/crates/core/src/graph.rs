//! Compact undirected graphs in CSR form, plus the breadth-first utilities the
//! analyses share.

use std::collections::VecDeque;

pub const UNREACHED: u32 = u32::MAX;

/// An undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl SimpleGraph {
    /// Builds from adjacency lists; lists are sorted and deduplicated. The caller
    /// is responsible for symmetry, which [`SimpleGraph::is_symmetric`] checks.
    pub fn from_adjacency<I, L>(lists: I) -> SimpleGraph
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = u32>,
    {
        let mut offsets = vec![0u32];
        let mut targets = Vec::new();
        for list in lists {
            let start = targets.len();
            targets.extend(list);
            targets[start..].sort_unstable();
            let mut w = start;
            for r in start..targets.len() {
                if r == start || targets[r] != targets[w - 1] {
                    targets[w] = targets[r];
                    w += 1;
                }
            }
            targets.truncate(w);
            offsets.push(targets.len() as u32);
        }
        SimpleGraph { offsets, targets }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        SimpleGraph::from_adjacency(lists)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<u32> {
        0..self.len() as u32
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.vertices().all(|v| self.degree(v) == k)
    }

    pub fn is_symmetric(&self) -> bool {
        self.vertices().all(|u| {
            self.neighbors(u)
                .iter()
                .all(|&v| v != u && self.has_edge(v, u))
        })
    }

    pub fn bfs_distances(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest finite distance from `src`, and whether everything was reached.
    pub fn eccentricity(&self, src: u32) -> (u32, bool) {
        let dist = self.bfs_distances(src);
        let reached = dist.iter().all(|&d| d != UNREACHED);
        let ecc = dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHED)
            .max()
            .unwrap_or(0);
        (ecc, reached)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.eccentricity(0).1
    }

    /// Connected-component label per vertex, labels in order of first vertex.
    pub fn components(&self) -> (usize, Vec<u32>) {
        let mut label = vec![UNREACHED; self.len()];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if label[s as usize] != UNREACHED {
                continue;
            }
            label[s as usize] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if label[w as usize] == UNREACHED {
                        label[w as usize] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count as usize, label)
    }

    /// A proper 2-colouring if one exists (colour 0 on the least vertex of each component).
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.len()];
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if color[s as usize] != u8::MAX {
                continue;
            }
            color[s as usize] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u as usize];
                for &w in self.neighbors(u) {
                    match color[w as usize] {
                        u8::MAX => {
                            color[w as usize] = 1 - cu;
                            queue.push_back(w);
                        }
                        cw if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color)
    }

    /// Length of a shortest cycle through `src`, searching no deeper than needed
    /// to beat `bound`. `None` if no cycle shorter than `bound` passes through `src`.
    pub fn shortest_cycle_through(&self, src: u32, bound: u32) -> Option<u32> {
        CycleProbe::new(self.len()).shortest_cycle_through(self, src, bound)
    }

    /// Whether any cycle of length at most `len` exists (depth-limited search
    /// from every vertex).
    pub fn has_cycle_at_most(&self, len: u32) -> bool {
        let mut probe = CycleProbe::new(self.len());
        self.vertices()
            .any(|v| probe.shortest_cycle_through(self, v, len + 1).is_some())
    }

    /// Exact girth by searching from every vertex; only sensible for small graphs.
    pub fn girth_exhaustive(&self) -> Option<u32> {
        let mut best = UNREACHED;
        for v in self.vertices() {
            if let Some(g) = self.shortest_cycle_through(v, best) {
                best = g;
            }
        }
        (best != UNREACHED).then_some(best)
    }

    /// Largest eccentricity over all vertices.
    pub fn diameter_exhaustive(&self) -> u32 {
        self.vertices()
            .map(|v| self.eccentricity(v).0)
            .max()
            .unwrap_or(0)
    }
}

/// Scratch space for repeated cycle searches; only the touched entries are reset
/// between calls, so shallow searches cost time proportional to what they visit.
#[derive(Debug, Clone)]
pub struct CycleProbe {
    dist: Vec<u32>,
    parent: Vec<u32>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
}

impl CycleProbe {
    pub fn new(n: usize) -> CycleProbe {
        CycleProbe {
            dist: vec![UNREACHED; n],
            parent: vec![UNREACHED; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    pub fn shortest_cycle_through(&mut self, g: &SimpleGraph, src: u32, bound: u32) -> Option<u32> {
        for &v in &self.touched {
            self.dist[v as usize] = UNREACHED;
            self.parent[v as usize] = UNREACHED;
        }
        self.touched.clear();
        self.queue.clear();
        self.dist[src as usize] = 0;
        self.touched.push(src);
        self.queue.push_back(src);
        let mut best = bound;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            // every cycle detected from here on has length >= 2 du + 1
            if 2 * du + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if w == self.parent[u as usize] {
                    continue;
                }
                let dw = self.dist[w as usize];
                if dw == UNREACHED {
                    self.dist[w as usize] = du + 1;
                    self.parent[w as usize] = u;
                    self.touched.push(w);
                    self.queue.push_back(w);
                } else {
                    best = best.min(du + dw + 1);
                }
            }
        }
        (best < bound).then_some(best)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Dense class labels `0..set_count`, numbered by least member.
    pub fn labels(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut label_of_root = vec![UNREACHED; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n as u32 {
            let r = self.find(v) as usize;
            if label_of_root[r] == UNREACHED {
                label_of_root[r] = next;
                next += 1;
            }
            out[v as usize] = label_of_root[r];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n as usize, &edges)
    }

    #[test]
    fn cycles() {
        for n in 3..12 {
            let c = cycle(n);
            assert_eq!(c.edge_count(), n as usize);
            assert!(c.is_regular(2));
            assert!(c.is_symmetric());
            assert_eq!(c.girth_exhaustive(), Some(n));
            assert_eq!(c.diameter_exhaustive(), n / 2);
            assert_eq!(c.two_coloring().is_some(), n % 2 == 0);
            assert_eq!(c.shortest_cycle_through(0, n), None);
            assert!(c.has_cycle_at_most(n));
            assert!(!c.has_cycle_at_most(n - 1));
        }
    }

    #[test]
    fn trees_and_components() {
        let path = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.girth_exhaustive(), None);
        let two = SimpleGraph::from_edges(5, &[(0, 1), (3, 4)]);
        let (count, labels) = two.components();
        assert_eq!(count, 3);
        assert_eq!(labels, vec![0, 0, 1, 2, 2]);
        assert!(!two.is_connected());
        assert_eq!(two.edges().collect::<Vec<_>>(), vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn union_find() {
        let mut uf = UnionFind::new(6);
        assert!(uf.union(0, 3));
        assert!(uf.union(4, 3));
        assert!(!uf.union(0, 4));
        assert_eq!(uf.set_count(), 4);
        assert_eq!(uf.labels(), vec![0, 1, 2, 0, 0, 3]);
    }
}
