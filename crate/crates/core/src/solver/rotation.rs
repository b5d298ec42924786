use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::model::BlockedGraph;

use super::{overlay_adjacency, ForcedEdgeSet};

const NONE: usize = usize::MAX;

/// A path `v_0, ..., v_ℓ` with its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathState {
    path: Vec<usize>,
    on_path: BitSet,
}

impl PathState {
    /// # Panics
    /// If `path` is empty or repeats a vertex.
    pub fn new(n: usize, path: Vec<usize>) -> Self {
        assert!(!path.is_empty(), "a path has at least one vertex");
        let mut on_path = BitSet::new(n);
        for &v in &path {
            assert!(on_path.insert(v), "vertex {v} repeated on path");
        }
        Self { path, on_path }
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn fixed_end(&self) -> usize {
        self.path[0]
    }

    pub fn end(&self) -> usize {
        *self.path.last().expect("nonempty")
    }

    /// Length in edges.
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() == 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.on_path.contains(v)
    }

    pub fn on_path(&self) -> &BitSet {
        &self.on_path
    }

    pub fn reversed(&self) -> Self {
        let mut path = self.path.clone();
        path.reverse();
        Self { path, on_path: self.on_path.clone() }
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: usize,
    /// Position of the pivot in the parent path; the suffix after it is reversed.
    h: usize,
    pivot: usize,
    end: usize,
}

/// Paths reachable from a base path by rotations at the free end.
///
/// A state is stored as its parent and the pivot position of the rotation
/// that produced it. Rotating at position `h` reverses the suffix
/// `h+1..=ℓ`, so positions map by the involution `i ↦ h + 1 + ℓ - i` for
/// `i > h`; lookups walk the parent chain instead of copying paths.
#[derive(Clone, Debug)]
pub(crate) struct Arena {
    base: Vec<usize>,
    pos: Vec<usize>,
    nodes: Vec<Node>,
    node_of_end: HashMap<usize, usize>,
}

impl Arena {
    pub(crate) fn new(n: usize, base: Vec<usize>) -> Self {
        let mut pos = vec![NONE; n];
        for (i, &v) in base.iter().enumerate() {
            pos[v] = i;
        }
        let end = *base.last().expect("nonempty path");
        let root = Node { parent: NONE, h: NONE, pivot: NONE, end };
        Self { base, pos, nodes: vec![root], node_of_end: HashMap::from([(end, 0)]) }
    }

    fn last(&self) -> usize {
        self.base.len() - 1
    }

    pub(crate) fn base(&self) -> &[usize] {
        &self.base
    }

    pub(crate) fn end_of(&self, s: usize) -> usize {
        self.nodes[s].end
    }

    pub(crate) fn node_for_end(&self, x: usize) -> Option<usize> {
        self.node_of_end.get(&x).copied()
    }

    /// Ends in discovery order.
    pub(crate) fn ends(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().map(|n| n.end)
    }

    /// Pivot positions from the root down to `s`.
    fn ops(&self, mut s: usize) -> Vec<usize> {
        let mut ops = Vec::new();
        while self.nodes[s].parent != NONE {
            ops.push(self.nodes[s].h);
            s = self.nodes[s].parent;
        }
        ops.reverse();
        ops
    }

    fn pos_with(&self, ops: &[usize], v: usize) -> usize {
        let l = self.last();
        let mut p = self.pos[v];
        if p == NONE {
            return NONE;
        }
        for &h in ops {
            if p > h {
                p = h + 1 + l - p;
            }
        }
        p
    }

    pub(crate) fn vertex_at(&self, mut s: usize, mut i: usize) -> usize {
        let l = self.last();
        while self.nodes[s].parent != NONE {
            let h = self.nodes[s].h;
            if i > h {
                i = h + 1 + l - i;
            }
            s = self.nodes[s].parent;
        }
        self.base[i]
    }

    pub(crate) fn materialize(&self, s: usize) -> Vec<usize> {
        let mut path = self.base.clone();
        for h in self.ops(s) {
            path[h + 1..].reverse();
        }
        path
    }

    /// Pivot vertices from the base path down to state `s`.
    pub(crate) fn pivots(&self, mut s: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.nodes[s].parent != NONE {
            out.push(self.nodes[s].pivot);
            s = self.nodes[s].parent;
        }
        out.reverse();
        out
    }

    pub(crate) fn parent_end(&self, s: usize) -> Option<usize> {
        let p = self.nodes[s].parent;
        (p != NONE).then(|| self.nodes[p].end)
    }

    /// Breadth-first closure under rotations.
    ///
    /// `admissible(x, pred_x, y, new_end)` vets the rotation of the path
    /// ending at `x` about pivot `y`; the edge `y–new_end` is the one broken.
    /// `visit` sees each new state and stops the search by returning true.
    /// Every new state costs one unit of `budget`; `None` means the closure
    /// completed or the budget ran out without `visit` stopping it.
    pub(crate) fn explore(
        &mut self,
        adj: &[Vec<usize>],
        budget: &mut u64,
        mut admissible: impl FnMut(usize, usize, usize, usize) -> bool,
        mut visit: impl FnMut(&Self, usize) -> bool,
    ) -> Option<usize> {
        let l = self.last();
        if l < 2 {
            return None;
        }
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).collect();
        while let Some(s) = queue.pop_front() {
            let ops = self.ops(s);
            let x = self.nodes[s].end;
            let pred = self.vertex_at(s, l - 1);
            for &y in &adj[x] {
                let h = self.pos_with(&ops, y);
                if h == NONE || h + 1 >= l {
                    continue;
                }
                let new_end = self.vertex_at(s, h + 1);
                if self.node_of_end.contains_key(&new_end) || !admissible(x, pred, y, new_end) {
                    continue;
                }
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                let id = self.nodes.len();
                self.nodes.push(Node { parent: s, h, pivot: y, end: new_end });
                self.node_of_end.insert(new_end, id);
                if visit(self, id) {
                    return Some(id);
                }
                queue.push_back(id);
            }
        }
        None
    }
}

/// `End(v_0)` for a path, with rotation witnesses.
#[derive(Clone, Debug)]
pub struct RotationState {
    base_path: PathState,
    arena: Arena,
}

impl RotationState {
    pub fn base_path(&self) -> &PathState {
        &self.base_path
    }

    pub fn fixed_end(&self) -> usize {
        self.base_path.fixed_end()
    }

    /// Ends reachable by admissible rotations, in discovery order. The
    /// base path's own end comes first.
    pub fn end_set(&self) -> Vec<usize> {
        self.arena.ends().collect()
    }

    pub fn contains_end(&self, x: usize) -> bool {
        self.arena.node_for_end(x).is_some()
    }

    /// The path `P_x` ending at `x`, rebuilt from its rotation witness.
    pub fn path_for(&self, x: usize) -> Option<Vec<usize>> {
        self.arena.node_for_end(x).map(|s| self.arena.materialize(s))
    }

    /// Pivot vertices of the rotations that lead from the base path to `P_x`.
    pub fn rotation_sequence(&self, x: usize) -> Option<Vec<usize>> {
        self.arena.node_for_end(x).map(|s| self.arena.pivots(s))
    }

    /// The end whose path was rotated to produce `P_x` (`None` for the base end).
    pub fn witness_parent(&self, x: usize) -> Option<usize> {
        self.arena.node_for_end(x).and_then(|s| self.arena.parent_end(s))
    }

    /// `φ(x)`: the neighbour of `x` on `P_x`.
    pub fn anchor(&self, x: usize) -> Option<usize> {
        let l = self.base_path.len();
        if l == 0 {
            return None;
        }
        self.arena.node_for_end(x).map(|s| self.arena.vertex_at(s, l - 1))
    }

    pub fn anchors(&self) -> HashMap<usize, usize> {
        self.end_set().into_iter().filter_map(|x| Some((x, self.anchor(x)?))).collect()
    }
}

fn is_overlay_path(graph: &BlockedGraph, forced: &ForcedEdgeSet, path: &[usize]) -> bool {
    path.windows(2).all(|w| graph.has_edge(w[0], w[1]) || forced.contains(w[0], w[1]))
}

/// Closes `path` under admissible Pósa rotations with `v_0` fixed.
///
/// A rotation about pivot `v_h` (a neighbour of the end `v_ℓ`) replaces the
/// edge `v_h v_{h+1}` with `v_h v_ℓ`; it is admissible when `v_h v_{h+1}` is
/// not a forced pair. Forced pairs count as edges.
pub fn rotate_closure(
    graph: &BlockedGraph,
    path: &PathState,
    forced: &ForcedEdgeSet,
) -> RotationState {
    let adj = overlay_adjacency(graph, forced);
    let mut arena = Arena::new(graph.n(), path.path().to_vec());
    let mut budget = u64::MAX;
    arena.explore(
        &adj,
        &mut budget,
        |_, _, y, new_end| !forced.contains(y, new_end),
        |a, s| {
            if cfg!(debug_assertions) && graph.n() <= 256 {
                let p = a.materialize(s);
                debug_assert_eq!(p[0], path.fixed_end());
                debug_assert_eq!(p.len(), path.path().len());
                debug_assert!(is_overlay_path(graph, forced, &p));
            }
            false
        },
    );
    RotationState { base_path: path.clone(), arena }
}

/// Pairs `(x, y)` with `x ∈ End(v_0)` and `y ∈ End(x)` that are not yet
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoosterSet {
    pub pairs: Vec<(usize, usize)>,
    /// Set when the graph is disconnected and the path is not Hamiltonian:
    /// a booster then closes a cycle but the extension step that turns it
    /// into a longer path needs a route out of the path's component.
    pub needs_connectivity: bool,
}

pub fn booster_set(
    graph: &BlockedGraph,
    rotation: &RotationState,
    forced: &ForcedEdgeSet,
) -> BoosterSet {
    let mut pairs = BTreeSet::new();
    for x in rotation.end_set() {
        let px = rotation.path_for(x).expect("end has a witness");
        let reversed = PathState::new(graph.n(), px).reversed();
        let inner = rotate_closure(graph, &reversed, forced);
        for y in inner.end_set() {
            if y != x && !graph.has_edge(x, y) && !forced.contains(x, y) {
                pairs.insert((x.min(y), x.max(y)));
            }
        }
    }
    let hamiltonian_path = rotation.base_path().len() + 1 == graph.n();
    BoosterSet {
        pairs: pairs.into_iter().collect(),
        needs_connectivity: !hamiltonian_path && graph.component_count() > 1,
    }
}
