use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::model::BlockedGraph;
use crate::rng::stream_seed;
use crate::solver::{
    backtrack_hamilton, posa_solve, verify_cycle, BacktrackOutcome, ForcedEdgeSet, PosaConfig,
    PosaVerdict,
};

use super::audit::hard_clauses;
use super::cover::{GreenCover, SupplantedGraph};
use super::StitchError;

/// Result of one per-block admissible Hamilton cycle search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockOutcome {
    Cycle(Vec<usize>),
    /// Proved impossible.
    None,
    /// Budget spent without an answer.
    GaveUp,
}

impl BlockOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            BlockOutcome::Cycle(_) => "cycle",
            BlockOutcome::None => "none",
            BlockOutcome::GaveUp => "gave_up",
        }
    }
}

/// Finds a Hamilton cycle of `graph` plus `forced` that uses every forced pair.
pub trait BlockSolver {
    fn solve(&self, graph: &BlockedGraph, forced: &ForcedEdgeSet, seed: u64) -> BlockOutcome;
}

/// Backtracking up to `backtrack_limit` vertices, rotation search above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefaultBlockSolver {
    pub backtrack_limit: usize,
    pub node_budget: u64,
    pub posa: PosaConfig,
}

impl Default for DefaultBlockSolver {
    fn default() -> Self {
        Self { backtrack_limit: 22, node_budget: 10_000_000, posa: PosaConfig::default() }
    }
}

impl BlockSolver for DefaultBlockSolver {
    fn solve(&self, graph: &BlockedGraph, forced: &ForcedEdgeSet, seed: u64) -> BlockOutcome {
        if graph.n() <= self.backtrack_limit {
            return match backtrack_hamilton(graph, forced, self.node_budget) {
                BacktrackOutcome::Cycle(c) => BlockOutcome::Cycle(c),
                BacktrackOutcome::None => BlockOutcome::None,
                BacktrackOutcome::Timeout => BlockOutcome::GaveUp,
            };
        }
        let cfg = PosaConfig { seed, ..self.posa.clone() };
        match posa_solve(graph, forced, &cfg).verdict {
            PosaVerdict::Cycle(c) => BlockOutcome::Cycle(c),
            PosaVerdict::Infeasible(_) => BlockOutcome::None,
            PosaVerdict::GaveUp => BlockOutcome::GaveUp,
        }
    }
}

/// One induction level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceLine {
    pub level: usize,
    pub block: usize,
    pub vertices: usize,
    pub forced: usize,
    pub outcome: String,
    pub paths: usize,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level={} block={} vertices={} forced={} outcome={} paths={}",
            self.level, self.block, self.vertices, self.forced, self.outcome, self.paths
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StitchResult {
    /// Hamilton cycle of the final graph.
    pub cycle: Vec<usize>,
    pub trace: Vec<TraceLine>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Pair expansions: every pair maps to the vertex sequence of the final
/// graph that it stands for, stored from the smaller end.
struct Expansions(HashMap<(usize, usize), Vec<usize>>);

impl Expansions {
    fn insert(&mut self, seq: Vec<usize>) {
        let (a, b) = (seq[0], seq[seq.len() - 1]);
        let seq = if a < b { seq } else { seq.into_iter().rev().collect() };
        self.0.insert(key(a, b), seq);
    }

    /// Sequence from `from` to `to`, or `None` if `(from, to)` is not a pair.
    fn walk(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let seq = self.0.get(&key(from, to))?;
        Some(if seq[0] == from { seq.clone() } else { seq.iter().rev().copied().collect() })
    }

    /// Appends the walk along `from -> to`, without its last vertex.
    fn push_step(&self, out: &mut Vec<usize>, from: usize, to: usize, pairs: &ForcedEdgeSet) {
        if pairs.contains(from, to) {
            let w = self.walk(from, to).expect("every pair has an expansion");
            out.extend_from_slice(&w[..w.len() - 1]);
        } else {
            out.push(from);
        }
    }
}

fn solve_block(
    h: &SupplantedGraph,
    block: usize,
    pairs: &[(usize, usize)],
    solver: &dyn BlockSolver,
    seed: u64,
    level: usize,
) -> Result<(Vec<usize>, usize, String), StitchError> {
    let verts = h.block_vertices(block);
    if verts.is_empty() {
        return Err(StitchError::EmptyBlock { block });
    }
    let (local, map) = h.graph.induced_subgraph(&verts);
    let to_local = |v: usize| map.binary_search(&v).expect("pair inside block");
    let forced = ForcedEdgeSet::new(local.n(), pairs.iter().map(|&(u, v)| (to_local(u), to_local(v))))
        .map_err(|e| StitchError::Internal(e.to_string()))?;
    let outcome = solver.solve(&local, &forced, seed);
    let label = outcome.label().to_string();
    match outcome {
        BlockOutcome::Cycle(c) => Ok((c.into_iter().map(|v| map[v]).collect(), verts.len(), label)),
        _ => Err(StitchError::BlockFailed { level, block, outcome: label }),
    }
}

/// Builds a Hamilton cycle of `final_graph` from per-block admissible cycles
/// of `h` that use every pair of `e_g`, peeling off the last block at each
/// level and supplanting its paths into new pairs for the remaining blocks.
pub fn stitch(
    final_graph: &BlockedGraph,
    h: &SupplantedGraph,
    cover: &GreenCover,
    e_g: &[(usize, usize)],
    solver: &dyn BlockSolver,
    seed: u64,
) -> Result<StitchResult, StitchError> {
    let n = final_graph.n();
    let k = final_graph.partition().k();
    let mut exp = Expansions(HashMap::new());
    for &(u, v) in e_g {
        let seq = match cover.path_for(u, v) {
            Some(p) => p.vertices().to_vec(),
            None => vec![u, v],
        };
        exp.insert(seq);
    }
    let mut pairs: Vec<(usize, usize)> = e_g.iter().map(|&(u, v)| key(u, v)).collect();
    let mut trace = Vec::new();
    for b in (1..k).rev() {
        let level = b + 1;
        let in_b = |v: usize| final_graph.block_of(v) == b;
        let inner: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(u, v)| in_b(u) && in_b(v)).collect();
        let leaving: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(u, v)| in_b(u) != in_b(v)).collect();
        let mut partner = HashMap::new();
        let mut ends = Vec::new();
        for &(u, v) in &leaving {
            let (inside, outside) = if in_b(u) { (u, v) } else { (v, u) };
            partner.insert(inside, outside);
            ends.push(inside);
        }
        ends.sort_unstable();
        if ends.is_empty() || ends.len() % 2 == 1 {
            return Err(StitchError::Audit {
                level,
                violation: super::Lemma6Violation::OddBlock { block: b },
            });
        }
        let pairing: Vec<(usize, usize)> = ends.chunks(2).map(|c| (c[0], c[1])).collect();
        let forced_b: Vec<(usize, usize)> = inner.iter().chain(&pairing).copied().collect();
        let seed_b = stream_seed(seed, level as u64);
        let attempt = solve_block(h, b, &forced_b, solver, seed_b, level);
        let (cycle, m, label) = match attempt {
            Ok(x) => x,
            Err(e) => {
                let verts = h.block_vertices(b).len();
                trace.push(TraceLine { level, block: b, vertices: verts, forced: forced_b.len(), outcome: e.label(), paths: 0 });
                return Err(e);
            }
        };
        let inner_set = ForcedEdgeSet::new(n, inner.iter().copied()).map_err(|e| StitchError::Internal(e.to_string()))?;
        let cut = ForcedEdgeSet::new(n, pairing.iter().copied()).map_err(|e| StitchError::Internal(e.to_string()))?;
        // rotate so the cycle starts just after a pairing edge
        let len = cycle.len();
        let start = (0..len)
            .find(|&i| cut.contains(cycle[(i + len - 1) % len], cycle[i]))
            .ok_or_else(|| StitchError::Internal("pairing edge missing from block cycle".into()))?;
        let order: Vec<usize> = (0..len).map(|i| cycle[(start + i) % len]).collect();
        let mut segments: Vec<Vec<usize>> = vec![vec![order[0]]];
        for w in order.windows(2) {
            if cut.contains(w[0], w[1]) {
                segments.push(vec![w[1]]);
            } else {
                segments.last_mut().expect("nonempty").push(w[1]);
            }
        }
        let mut fresh = Vec::new();
        for seg in &segments {
            let (s, t) = (seg[0], seg[seg.len() - 1]);
            let (x, y) = (partner[&s], partner[&t]);
            let mut walk = exp.walk(x, s).expect("leaving pair expands");
            walk.pop();
            for w in seg.windows(2) {
                exp.push_step(&mut walk, w[0], w[1], &inner_set);
            }
            walk.extend(exp.walk(t, y).expect("leaving pair expands"));
            exp.insert(walk);
            fresh.push(key(x, y));
        }
        trace.push(TraceLine { level, block: b, vertices: m, forced: forced_b.len(), outcome: label, paths: segments.len() });
        pairs.retain(|&(u, v)| !in_b(u) && !in_b(v));
        pairs.extend(fresh);
        pairs.sort_unstable();
        let remaining: Vec<usize> = (0..b).collect();
        if let Some(violation) = hard_clauses(final_graph, &pairs, &remaining).into_iter().next() {
            return Err(StitchError::Audit { level: b, violation });
        }
    }
    let seed_0 = stream_seed(seed, 1);
    let (cycle, m, label) = match solve_block(h, 0, &pairs, solver, seed_0, 1) {
        Ok(x) => x,
        Err(e) => {
            trace.push(TraceLine { level: 1, block: 0, vertices: h.block_vertices(0).len(), forced: pairs.len(), outcome: e.label(), paths: 0 });
            return Err(e);
        }
    };
    trace.push(TraceLine { level: 1, block: 0, vertices: m, forced: pairs.len(), outcome: label, paths: 1 });
    let all = ForcedEdgeSet::new(n, pairs.iter().copied()).map_err(|e| StitchError::Internal(e.to_string()))?;
    let mut out = Vec::with_capacity(n);
    for i in 0..cycle.len() {
        exp.push_step(&mut out, cycle[i], cycle[(i + 1) % cycle.len()], &all);
    }
    if !verify_cycle(final_graph, &out, &ForcedEdgeSet::empty(n)) || !green_paths_intact(&out, cover) {
        return Err(StitchError::Unverified);
    }
    Ok(StitchResult { cycle: out, trace })
}

/// Every green 2-path appears as three consecutive vertices of `cycle`.
pub fn green_paths_intact(cycle: &[usize], cover: &GreenCover) -> bool {
    let n = cycle.len();
    let mut pos = HashMap::with_capacity(n);
    for (i, &v) in cycle.iter().enumerate() {
        pos.insert(v, i);
    }
    cover.green_paths.iter().all(|p| {
        let Some(&c) = pos.get(&p.center) else { return false };
        let (prev, next) = (cycle[(c + n - 1) % n], cycle[(c + 1) % n]);
        key(prev, next) == key(p.ends.0, p.ends.1)
    })
}
