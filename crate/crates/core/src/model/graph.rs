use std::sync::OnceLock;

use crate::bitset::{BitMatrix, BitSet};

use super::{BlockPartition, ModelError};

/// Whether an edge lies inside one block or joins two blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Block,
    Crossing,
}

/// Simple undirected graph on a block partition.
///
/// Neighbour lists are sorted. The bit-matrix form of the adjacency is built
/// lazily on first use; large sparse graphs that never ask for it never pay
/// the `n^2 / 8` bytes.
#[derive(Clone, Debug)]
pub struct BlockedGraph {
    partition: BlockPartition,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    bits: OnceLock<BitMatrix>,
}

impl PartialEq for BlockedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition && self.adj == other.adj
    }
}

impl Eq for BlockedGraph {}

impl BlockedGraph {
    pub fn empty(partition: BlockPartition) -> Self {
        let n = partition.n();
        Self { partition, adj: vec![Vec::new(); n], edge_count: 0, bits: OnceLock::new() }
    }

    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated pairs.
    pub fn from_edges(
        partition: BlockPartition,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        let n = partition.n();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(ModelError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(ModelError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(ModelError::DuplicateEdge(a, b));
            }
            edge_count += list.len();
        }
        Ok(Self { partition, adj, edge_count: edge_count / 2, bits: OnceLock::new() })
    }

    /// Convenience constructor for a graph with a single block.
    pub fn single_block(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        Self::from_edges(BlockPartition::single(n)?, edges)
    }

    /// Caller guarantees `edges` has no loops, no repeats and in-range endpoints.
    pub(crate) fn from_unique_edges(partition: BlockPartition, edges: &[(usize, usize)]) -> Self {
        let n = partition.n();
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<usize>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
        Self { partition, adj, edge_count: edges.len(), bits: OnceLock::new() }
    }

    pub fn complete(partition: BlockPartition) -> Self {
        let n = partition.n();
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_unique_edges(partition, &edges)
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if let Some(bits) = self.bits.get() {
            return bits.get(u, v);
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    #[inline]
    pub fn block_of(&self, v: usize) -> usize {
        self.partition.block_of(v)
    }

    pub fn classify(&self, u: usize, v: usize) -> EdgeClass {
        if self.partition.same_block(u, v) {
            EdgeClass::Block
        } else {
            EdgeClass::Crossing
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Bit-matrix adjacency, built on first call.
    pub fn adjacency_bits(&self) -> &BitMatrix {
        self.bits.get_or_init(|| {
            let mut m = BitMatrix::new(self.n());
            for (u, list) in self.adj.iter().enumerate() {
                for &v in list {
                    m.set(u, v);
                }
            }
            m
        })
    }

    /// Neighbourhood of `v` as a bitset.
    pub fn neighbor_set(&self, v: usize) -> BitSet {
        BitSet::from_members(self.n(), self.adj[v].iter().copied())
    }

    /// Number of block edges and crossing edges at `v`.
    pub fn class_degrees(&self, v: usize) -> (usize, usize) {
        let r = self.partition.range(self.block_of(v));
        let block = self.adj[v].iter().filter(|w| r.contains(w)).count();
        (block, self.adj[v].len() - block)
    }

    /// Component label of every vertex, labels assigned in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// New graph with the given pairs added; pairs already present are skipped.
    pub fn with_added_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges = self.edge_vec();
        let mut seen: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
        for (u, v) in extra {
            let e = (u.min(v), u.max(v));
            if e.0 != e.1 && seen.insert(e) {
                edges.push(e);
            }
        }
        Self::from_unique_edges(self.partition.clone(), &edges)
    }

    /// New graph with the given pairs removed (absent pairs are ignored).
    pub fn without_edges(&self, removed: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let drop: std::collections::HashSet<(usize, usize)> =
            removed.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let edges: Vec<_> = self.edges().filter(|e| !drop.contains(e)).collect();
        Self::from_unique_edges(self.partition.clone(), &edges)
    }

    /// Subgraph induced by `vertices`, relabelled `0..m` in ascending order of
    /// the original index. Returns the graph and the local-to-global map.
    ///
    /// Blocks keep their order; blocks left empty are dropped.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Self, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut sizes = vec![0usize; self.partition.k()];
        for &v in &keep {
            sizes[self.block_of(v)] += 1;
        }
        sizes.retain(|&s| s > 0);
        let partition = if keep.is_empty() {
            BlockPartition::new(vec![1]).expect("nonempty")
        } else {
            BlockPartition::new(sizes).expect("sizes are positive")
        };
        if keep.is_empty() {
            // A zero-vertex graph cannot carry a partition; callers never ask for one.
            return (Self::empty(partition), keep);
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        (Self::from_unique_edges(partition, &edges), keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> BlockedGraph {
        BlockedGraph::complete(BlockPartition::new(vec![2, 2]).unwrap())
    }

    #[test]
    fn complete_graph_counts() {
        let g = k4();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.edges().count(), 6);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 0));
        assert_eq!(g.classify(0, 1), EdgeClass::Block);
        assert_eq!(g.classify(1, 2), EdgeClass::Crossing);
        assert_eq!(g.class_degrees(0), (1, 2));
    }

    #[test]
    fn rejects_malformed_edges() {
        let p = BlockPartition::single(3).unwrap();
        assert_eq!(
            BlockedGraph::from_edges(p.clone(), [(0, 3)]),
            Err(ModelError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(BlockedGraph::from_edges(p.clone(), [(1, 1)]), Err(ModelError::SelfLoop(1)));
        assert_eq!(
            BlockedGraph::from_edges(p, [(0, 2), (2, 0)]),
            Err(ModelError::DuplicateEdge(0, 2))
        );
    }

    #[test]
    fn bits_agree_with_lists() {
        let g = BlockedGraph::single_block(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let before: Vec<bool> = (0..25).map(|i| g.has_edge(i / 5, i % 5)).collect();
        g.adjacency_bits();
        let after: Vec<bool> = (0..25).map(|i| g.has_edge(i / 5, i % 5)).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = k4();
        let (h, map) = g.induced_subgraph(&[3, 1, 2]);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.partition().sizes(), &[1, 2]);
    }

    #[test]
    fn add_and_remove_edges() {
        let g = BlockedGraph::single_block(4, [(0, 1)]).unwrap();
        let h = g.with_added_edges([(1, 0), (2, 3), (3, 2)]);
        assert_eq!(h.edge_vec(), vec![(0, 1), (2, 3)]);
        assert_eq!(h.without_edges([(3, 2)]).edge_vec(), vec![(0, 1)]);
    }
}
