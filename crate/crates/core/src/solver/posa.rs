use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rotation::Arena;
use super::{overlay_adjacency, verify_cycle, ForcedEdgeSet};
use crate::bitset::BitSet;
use crate::model::BlockedGraph;
use crate::rng::{stream_seed, rng_from_seed, StreamRng};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaConfig {
    pub restarts: usize,
    /// Steps allowed per restart; `None` means `50 n ln n`.
    pub step_budget: Option<u64>,
    pub seed: u64,
}

impl Default for PosaConfig {
    fn default() -> Self {
        Self { restarts: 20, step_budget: None, seed: 0 }
    }
}

impl PosaConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

pub fn default_step_budget(n: usize) -> u64 {
    let nf = n.max(3) as f64;
    (50.0 * nf * nf.ln()).ceil() as u64
}

/// A certificate that no admissible Hamilton cycle exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infeasibility {
    /// Fewer than three vertices.
    TooSmall,
    /// A vertex with fewer than two usable neighbours.
    LowDegree(usize),
    /// A vertex incident to three or more required edges.
    Overloaded(usize),
    /// Required edges close a cycle that misses some vertices.
    ShortRequiredCycle { length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PosaVerdict {
    /// A Hamilton cycle that passed [`verify_cycle`].
    Cycle(Vec<usize>),
    Infeasible(Infeasibility),
    /// Every restart stagnated or ran out of steps.
    GaveUp,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaStats {
    pub restarts: usize,
    pub steps: u64,
    /// Longest path length (edges) reached across restarts.
    pub best_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaResult {
    pub verdict: PosaVerdict,
    pub stats: PosaStats,
}

impl PosaResult {
    pub fn cycle(&self) -> Option<&[usize]> {
        match &self.verdict {
            PosaVerdict::Cycle(c) => Some(c),
            _ => None,
        }
    }
}

/// Rotation–extension search for a Hamilton cycle through every forced pair.
///
/// An edge is *required* when it is a forced pair or is one of the two
/// usable edges of a vertex of usable degree two. The search keeps every
/// interior path vertex's required edges on the path and lets each end carry
/// at most one pending required edge, which must be the next extension.
/// Rotations never break a required edge. From a stuck path the search runs
/// a breadth-first rotation closure for the first path that can be extended
/// or closed, then repeats the closure from each reachable end with the ends
/// swapped. A cycle that misses vertices is reopened through the
/// lowest-index outside neighbour. Stagnation triggers a restart from a
/// fresh random vertex.
pub fn posa_solve(graph: &BlockedGraph, forced: &ForcedEdgeSet, config: &PosaConfig) -> PosaResult {
    let n = graph.n();
    let mut stats = PosaStats::default();
    let mut engine = match Engine::new(graph, forced) {
        Ok(e) => e,
        Err(Prep::Infeasible(why)) => {
            return PosaResult { verdict: PosaVerdict::Infeasible(why), stats };
        }
        Err(Prep::Solved(cycle)) => {
            stats.best_length = n - 1;
            let verdict = if verify_cycle(graph, &cycle, forced) { PosaVerdict::Cycle(cycle) } else { PosaVerdict::GaveUp };
            return PosaResult { verdict, stats };
        }
    };
    let per_restart = config.step_budget.unwrap_or_else(|| default_step_budget(n));
    for r in 0..config.restarts.max(1) {
        stats.restarts = r + 1;
        let mut rng = rng_from_seed(stream_seed(config.seed, r as u64));
        engine.budget = per_restart;
        let found = engine.attempt(&mut rng);
        stats.steps += per_restart - engine.budget;
        stats.best_length = stats.best_length.max(engine.best);
        if let Some(cycle) = found {
            if verify_cycle(graph, &cycle, forced) {
                return PosaResult { verdict: PosaVerdict::Cycle(cycle), stats };
            }
            debug_assert!(false, "engine produced an invalid cycle");
        }
    }
    PosaResult { verdict: PosaVerdict::GaveUp, stats }
}

enum Prep {
    Infeasible(Infeasibility),
    Solved(Vec<usize>),
}

struct Engine<'a> {
    graph: &'a BlockedGraph,
    forced: &'a ForcedEdgeSet,
    adj: Vec<Vec<usize>>,
    req: Vec<Vec<usize>>,
    budget: u64,
    best: usize,
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

impl<'a> Engine<'a> {
    fn new(graph: &'a BlockedGraph, forced: &'a ForcedEdgeSet) -> Result<Self, Prep> {
        let n = graph.n();
        if n < 3 {
            return Err(Prep::Infeasible(Infeasibility::TooSmall));
        }
        let adj = overlay_adjacency(graph, forced);
        let mut req: Vec<Vec<usize>> = vec![Vec::new(); n];
        let add = |req: &mut Vec<Vec<usize>>, u: usize, v: usize| {
            if !req[u].contains(&v) {
                req[u].push(v);
                req[v].push(u);
            }
        };
        for &(u, v) in forced.pairs() {
            add(&mut req, u, v);
        }
        for v in 0..n {
            match adj[v].len() {
                0 | 1 => return Err(Prep::Infeasible(Infeasibility::LowDegree(v))),
                2 => {
                    for &w in &adj[v] {
                        add(&mut req, v, w);
                    }
                }
                _ => {}
            }
        }
        if let Some(v) = (0..n).find(|&v| req[v].len() > 2) {
            return Err(Prep::Infeasible(Infeasibility::Overloaded(v)));
        }
        // Required edges form disjoint paths and cycles; a cycle is fatal
        // unless it spans everything.
        let mut parent: Vec<usize> = (0..n).collect();
        let mut size = vec![1usize; n];
        for u in 0..n {
            for &v in req[u].iter().filter(|&&v| v > u) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    if size[a] < n {
                        return Err(Prep::Infeasible(Infeasibility::ShortRequiredCycle {
                            length: size[a],
                        }));
                    }
                    return Err(Prep::Solved(Self::walk_required(&req)));
                }
                parent[a] = b;
                size[b] += size[a];
            }
        }
        Ok(Self { graph, forced, adj, req, budget: 0, best: 0 })
    }

    fn walk_required(req: &[Vec<usize>]) -> Vec<usize> {
        let mut cycle = vec![0, req[0][0]];
        while cycle.len() < req.len() {
            let (prev, cur) = (cycle[cycle.len() - 2], cycle[cycle.len() - 1]);
            let next = if req[cur][0] == prev { req[cur][1] } else { req[cur][0] };
            cycle.push(next);
        }
        cycle
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v) || self.forced.contains(u, v)
    }

    #[inline]
    fn is_req(&self, u: usize, v: usize) -> bool {
        self.req[u].contains(&v)
    }

    /// Every required edge at `x` goes to `a` or `b`.
    #[inline]
    fn fits(&self, x: usize, a: usize, b: usize) -> bool {
        self.req[x].iter().all(|&r| r == a || r == b)
    }

    /// `w` may become an end whose only path neighbour is `nbr`.
    #[inline]
    fn can_end(&self, w: usize, nbr: usize) -> bool {
        self.req[w].len() < 2 || self.req[w].contains(&nbr)
    }

    fn pending(&self, x: usize, nbr: Option<usize>) -> Option<usize> {
        self.req[x].iter().copied().find(|&r| Some(r) != nbr)
    }

    fn spend(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    fn attempt(&mut self, rng: &mut StreamRng) -> Option<Vec<usize>> {
        let n = self.graph.n();
        self.best = 0;
        let start = rng.random_range(0..n);
        let mut path = vec![start];
        let mut on = BitSet::new(n);
        on.insert(start);
        loop {
            self.grow(&mut path, &mut on, rng);
            path.reverse();
            self.grow(&mut path, &mut on, rng);
            self.best = self.best.max(path.len() - 1);
            if self.closable(&path) {
                if path.len() == n {
                    return Some(path);
                }
                if let Some(p) = self.reopen(&path, &on) {
                    if !self.spend() {
                        return None;
                    }
                    on.insert(*p.last().expect("nonempty"));
                    path = p;
                    continue;
                }
            }
            path = self.improve(&path, &on)?;
        }
    }

    fn grow(&mut self, path: &mut Vec<usize>, on: &mut BitSet, rng: &mut StreamRng) {
        loop {
            let x = *path.last().expect("nonempty");
            let nbr = (path.len() > 1).then(|| path[path.len() - 2]);
            let next = match self.pending(x, nbr) {
                Some(w) if on.contains(w) => None,
                Some(w) => Some(w),
                None => self.pick(x, on, rng),
            };
            let Some(w) = next else { return };
            if !self.spend() {
                return;
            }
            path.push(w);
            on.insert(w);
        }
    }

    /// Off-path neighbour of `x` with the fewest off-path neighbours of its
    /// own; ties broken uniformly.
    fn pick(&self, x: usize, on: &BitSet, rng: &mut StreamRng) -> Option<usize> {
        let mut best = None;
        let mut best_score = usize::MAX;
        let mut ties = 0u32;
        for &w in &self.adj[x] {
            if on.contains(w) || !self.can_end(w, x) {
                continue;
            }
            let score = self.adj[w].iter().filter(|&&u| !on.contains(u)).count();
            if score < best_score {
                best_score = score;
                best = Some(w);
                ties = 1;
            } else if score == best_score {
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    best = Some(w);
                }
            }
        }
        best
    }

    fn closable(&self, path: &[usize]) -> bool {
        let m = path.len();
        if m < 3 {
            return false;
        }
        let (v0, x) = (path[0], path[m - 1]);
        self.adjacent(v0, x) && self.fits(v0, path[1], x) && self.fits(x, path[m - 2], v0)
    }

    /// Treats `path` plus the edge between its ends as a cycle and opens it
    /// towards the lowest-index outside vertex that can be attached.
    fn reopen(&self, cycle: &[usize], on: &BitSet) -> Option<Vec<usize>> {
        let m = cycle.len();
        let mut choice: Option<(usize, usize, bool)> = None;
        for (i, &u) in cycle.iter().enumerate() {
            for &w in &self.adj[u] {
                if on.contains(w) || choice.is_some_and(|c| c.0 <= w) || !self.can_end(w, u) {
                    continue;
                }
                let succ = cycle[(i + 1) % m];
                let pred = cycle[(i + m - 1) % m];
                if !self.is_req(u, succ) {
                    choice = Some((w, i, true));
                } else if !self.is_req(u, pred) {
                    choice = Some((w, i, false));
                }
            }
        }
        let (w, i, forward) = choice?;
        let mut out = Vec::with_capacity(m + 1);
        if forward {
            out.extend_from_slice(&cycle[i + 1..]);
            out.extend_from_slice(&cycle[..=i]);
        } else {
            out.extend(cycle[..i].iter().rev());
            out.extend(cycle[i..].iter().rev());
        }
        out.push(w);
        Some(out)
    }

    /// Rotation closure with the first vertex fixed; returns the first
    /// rotated path that can grow or close, or the exhausted arena.
    fn search(&mut self, path: &[usize], on: &BitSet) -> Result<Vec<usize>, Arena> {
        let n = self.graph.n();
        let mut arena = Arena::new(n, path.to_vec());
        let mut budget = self.budget;
        let this = &*self;
        let hit = arena.explore(
            &this.adj,
            &mut budget,
            |x, pred, y, new_end| !this.is_req(y, new_end) && this.fits(x, pred, y),
            |a, s| this.state_improves(a, s, on),
        );
        self.budget = budget;
        match hit {
            Some(s) => Ok(arena.materialize(s)),
            None => Err(arena),
        }
    }

    fn state_improves(&self, a: &Arena, s: usize, on: &BitSet) -> bool {
        let l = a.base().len() - 1;
        let z = a.end_of(s);
        let pred = a.vertex_at(s, l - 1);
        match self.pending(z, Some(pred)) {
            Some(w) if !on.contains(w) => return true,
            Some(_) => {}
            None => {
                if self.adj[z].iter().any(|&w| !on.contains(w) && self.can_end(w, z)) {
                    return true;
                }
            }
        }
        let v0 = a.base()[0];
        if !self.adjacent(z, v0) {
            return false;
        }
        let v1 = a.vertex_at(s, 1);
        if !(self.fits(v0, v1, z) && self.fits(z, pred, v0)) {
            return false;
        }
        l + 1 == self.graph.n() || self.reopen(&a.materialize(s), on).is_some()
    }

    fn improve(&mut self, path: &[usize], on: &BitSet) -> Option<Vec<usize>> {
        let arena = match self.search(path, on) {
            Ok(p) => return Some(p),
            Err(a) => a,
        };
        // Swap ends: each reachable end becomes the fixed end in turn.
        let ends: Vec<usize> = arena.ends().collect();
        for x in ends {
            if self.budget == 0 {
                return None;
            }
            let mut px = arena.materialize(arena.node_for_end(x).expect("recorded end"));
            px.reverse();
            if let Ok(p) = self.search(&px, on) {
                return Some(p);
            }
        }
        None
    }
}
