use rand::seq::index;
use serde::Serialize;

use crate::model::BlockedGraph;
use crate::rng::rng_from_seed;

use super::StitchError;

/// Vertices with fewer than two block edges in `base`.
pub fn find_problematic(base: &BlockedGraph) -> Vec<usize> {
    (0..base.n()).filter(|&v| base.class_degrees(v).0 < 2).collect()
}

/// The two green edges chosen at a problematic vertex, as the 2-path
/// `ends.0 - center - ends.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreenPath {
    pub center: usize,
    pub ends: (usize, usize),
}

impl GreenPath {
    pub fn vertices(&self) -> [usize; 3] {
        [self.ends.0, self.center, self.ends.1]
    }
}

/// Record of one supplant: the path, the edges deleted with its internal
/// vertices, and the new edge joining its ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Supplant {
    pub path: Vec<usize>,
    pub removed: Vec<(usize, usize)>,
    pub edge: (usize, usize),
    /// False when the ends were already adjacent.
    pub edge_is_new: bool,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Replaces the path `u_1 ... u_l` by the edge `u_1 u_l`, deleting every
/// edge at an internal vertex.
pub fn supplant(graph: &BlockedGraph, path: &[usize]) -> Result<(BlockedGraph, Supplant), StitchError> {
    let bad = |m: &str| StitchError::BadPath(m.to_string());
    if path.len() < 2 {
        return Err(bad("path needs two vertices"));
    }
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(bad("path repeats a vertex"));
    }
    if path.iter().any(|&v| v >= graph.n()) {
        return Err(bad("vertex out of range"));
    }
    if path.windows(2).any(|w| !graph.has_edge(w[0], w[1])) {
        return Err(bad("consecutive vertices not adjacent"));
    }
    let mut removed: Vec<(usize, usize)> = path[1..path.len() - 1]
        .iter()
        .flat_map(|&v| graph.neighbors(v).iter().map(move |&w| ordered(v, w)))
        .collect();
    removed.sort_unstable();
    removed.dedup();
    let edge = ordered(path[0], path[path.len() - 1]);
    let edge_is_new = !graph.has_edge(edge.0, edge.1);
    let out = graph.without_edges(removed.iter().copied()).with_added_edges([edge]);
    Ok((out, Supplant { path: path.to_vec(), removed, edge, edge_is_new }))
}

/// Inverse of [`supplant`].
pub fn expand(graph: &BlockedGraph, s: &Supplant) -> BlockedGraph {
    let g = if s.edge_is_new { graph.without_edges([s.edge]) } else { graph.clone() };
    g.with_added_edges(s.removed.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenCover {
    pub problematic: Vec<usize>,
    /// One per problematic vertex, in the same order.
    pub green_paths: Vec<GreenPath>,
    /// Ends of green edges other than the problematic vertex.
    pub green_vertices: Vec<usize>,
    /// The supplanted green edges, one per green path.
    pub green_edges: Vec<(usize, usize)>,
    /// Whole-selection redraws caused by overlapping choices.
    pub resamples: usize,
}

impl GreenCover {
    /// Green path whose supplant produced `edge`, if any.
    pub fn path_for(&self, u: usize, v: usize) -> Option<&GreenPath> {
        let e = ordered(u, v);
        self.green_paths.iter().find(|p| ordered(p.ends.0, p.ends.1) == e)
    }
}

/// `H`: the final graph with every problematic vertex cut out, plus the
/// green edges that replace the 2-paths through them.
#[derive(Clone, Debug)]
pub struct SupplantedGraph {
    /// Final graph minus all edges at problematic vertices; vertex labels
    /// are unchanged and problematic vertices are isolated.
    pub graph: BlockedGraph,
    pub green: Vec<(usize, usize)>,
    pub alive: Vec<bool>,
}

impl SupplantedGraph {
    /// `graph` with the green edges added.
    pub fn with_green(&self) -> BlockedGraph {
        self.graph.with_added_edges(self.green.iter().copied())
    }

    /// Surviving vertices of `block`, ascending.
    pub fn block_vertices(&self, block: usize) -> Vec<usize> {
        self.graph.partition().range(block).filter(|&v| self.alive[v]).collect()
    }
}

/// Minimum degree two in `final_graph`, and at most `d(v) - 2` edges at any
/// vertex `v` that are missing from `base`.
pub fn check_preconditions(final_graph: &BlockedGraph, base: &BlockedGraph) -> Result<(), StitchError> {
    if let Some(v) = (0..final_graph.n()).find(|&v| final_graph.degree(v) < 2) {
        return Err(StitchError::NotD2 { vertex: v });
    }
    for v in 0..final_graph.n() {
        let d = final_graph.degree(v);
        let added = d - base.degree(v);
        if added + 2 > d {
            return Err(StitchError::Col1 { vertex: v });
        }
    }
    Ok(())
}

/// Picks two incident edges uniformly at every problematic vertex and
/// supplants the resulting green 2-paths.
///
/// The 2-paths must be vertex disjoint with unproblematic ends; a selection
/// that violates this is redrawn in full, at most `max_retries` times.
pub fn build_green_cover(
    final_graph: &BlockedGraph,
    base: &BlockedGraph,
    seed: u64,
    max_retries: usize,
) -> Result<(GreenCover, SupplantedGraph), StitchError> {
    check_preconditions(final_graph, base)?;
    let n = final_graph.n();
    let problematic = find_problematic(base);
    let mut is_problematic = vec![false; n];
    for &u in &problematic {
        is_problematic[u] = true;
    }
    let mut rng = rng_from_seed(seed);
    let mut resamples = 0;
    let paths = loop {
        let mut used = vec![false; n];
        let mut paths = Vec::with_capacity(problematic.len());
        let mut clash = None;
        for &u in &problematic {
            let nb = final_graph.neighbors(u);
            let pick = index::sample(&mut rng, nb.len(), 2);
            let (a, b) = (nb[pick.index(0)], nb[pick.index(1)]);
            if clash.is_none() {
                if [u, a, b].iter().any(|&x| used[x]) || is_problematic[a] || is_problematic[b] {
                    clash = Some(u);
                } else {
                    for x in [u, a, b] {
                        used[x] = true;
                    }
                }
            }
            paths.push(GreenPath { center: u, ends: (a.min(b), a.max(b)) });
        }
        match clash {
            None => break paths,
            Some(vertex) if resamples >= max_retries => {
                return Err(StitchError::CoverExhausted { retries: max_retries, vertex })
            }
            Some(_) => resamples += 1,
        }
    };
    let mut green_vertices: Vec<usize> = paths.iter().flat_map(|p| [p.ends.0, p.ends.1]).collect();
    green_vertices.sort_unstable();
    let mut green_edges: Vec<(usize, usize)> = paths.iter().map(|p| p.ends).collect();
    green_edges.sort_unstable();
    let cut: Vec<(usize, usize)> = problematic
        .iter()
        .flat_map(|&u| final_graph.neighbors(u).iter().map(move |&w| ordered(u, w)))
        .collect();
    let h = SupplantedGraph {
        graph: final_graph.without_edges(cut),
        green: green_edges.clone(),
        alive: is_problematic.iter().map(|&p| !p).collect(),
    };
    let cover = GreenCover { problematic, green_paths: paths, green_vertices, green_edges, resamples };
    Ok((cover, h))
}
