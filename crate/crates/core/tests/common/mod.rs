//! Naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use blockham::model::{BlockPartition, BlockedGraph};
use blockham::rng::rng_from_seed;
use rand::Rng;

/// Each pair present with probability `p`, single block.
pub fn random_graph(n: usize, p: f64, seed: u64) -> BlockedGraph {
    random_blocked(BlockPartition::single(n).unwrap(), p, p, seed)
}

pub fn random_blocked(part: BlockPartition, p: f64, q: f64, seed: u64) -> BlockedGraph {
    let mut rng = rng_from_seed(seed ^ 0xa11ce);
    let n = part.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let prob = if part.block_of(u) == part.block_of(v) { p } else { q };
            if rng.random::<f64>() < prob {
                edges.push((u, v));
            }
        }
    }
    BlockedGraph::from_edges(part, edges).unwrap()
}

/// Adjacency matrix rebuilt from the edge iterator.
pub fn matrix(g: &BlockedGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

pub fn degree(m: &[Vec<bool>], v: usize) -> usize {
    m[v].iter().filter(|&&b| b).count()
}

/// Vertices outside `s` adjacent to some vertex of `s`, double loop.
pub fn naive_neighborhood(m: &[Vec<bool>], s: &[usize]) -> Vec<usize> {
    let inside: BTreeSet<usize> = s.iter().copied().collect();
    (0..m.len()).filter(|w| !inside.contains(w) && s.iter().any(|&v| m[v][*w])).collect()
}

pub fn naive_connected_components(m: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in 0..n {
                if m[v][w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Hamiltonicity by scanning every permutation that starts at vertex 0.
pub fn permutation_hamiltonian(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        let mut ok = m[0][rest[0]] && m[rest[n - 2]][0];
        for w in rest.windows(2) {
            ok = ok && m[w[0]][w[1]];
        }
        if ok {
            return true;
        }
        if !next_permutation(&mut rest) {
            return false;
        }
    }
}

/// Longest path length in edges by scanning all vertex orderings of every subset size.
pub fn permutation_longest_path(m: &[Vec<bool>]) -> usize {
    let n = m.len();
    let mut best = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut len = 0;
        while len + 1 < n && m[perm[len]][perm[len + 1]] {
            len += 1;
        }
        best = best.max(len);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Longest simple path by exhaustive depth-first search.
pub fn dfs_longest_path(m: &[Vec<bool>]) -> usize {
    fn go(m: &[Vec<bool>], v: usize, used: &mut [bool], depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        for w in 0..m.len() {
            if m[v][w] && !used[w] {
                used[w] = true;
                go(m, w, used, depth + 1, best);
                used[w] = false;
            }
        }
    }
    let n = m.len();
    let mut best = 0;
    let mut used = vec![false; n];
    for s in 0..n {
        used[s] = true;
        go(m, s, &mut used, 0, &mut best);
        used[s] = false;
    }
    best
}

/// Every Hamilton cycle, normalised to start at 0 with the smaller second vertex.
pub fn all_hamilton_cycles(m: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out = BTreeSet::new();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        let mut ok = m[0][rest[0]] && m[rest[n - 2]][0];
        for w in rest.windows(2) {
            ok = ok && m[w[0]][w[1]];
        }
        if ok && rest[0] < rest[n - 2] {
            let mut c = vec![0];
            c.extend_from_slice(&rest);
            out.insert(c);
        }
        if !next_permutation(&mut rest) {
            return out.into_iter().collect();
        }
    }
}

/// Normalises a cycle the same way as [`all_hamilton_cycles`].
pub fn normalise_cycle(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let z = c.iter().position(|&v| v == 0).unwrap();
    let fwd: Vec<usize> = (0..n).map(|i| c[(z + i) % n]).collect();
    if fwd[1] < fwd[n - 1] {
        fwd
    } else {
        let mut rev = vec![0];
        rev.extend(fwd[1..].iter().rev());
        rev
    }
}

/// Permutation of all vertices whose consecutive pairs (cyclically) are edges
/// or forced pairs, with every forced pair consecutive.
pub fn naive_is_hamilton_cycle(m: &[Vec<bool>], c: &[usize], forced: &[(usize, usize)]) -> bool {
    let n = m.len();
    if c.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in c {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let consecutive = |a: usize, b: usize| (0..n).any(|i| {
        let (x, y) = (c[i], c[(i + 1) % n]);
        (x == a && y == b) || (x == b && y == a)
    });
    let is_forced = |a: usize, b: usize| forced.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a));
    (0..n).all(|i| {
        let (x, y) = (c[i], c[(i + 1) % n]);
        m[x][y] || is_forced(x, y)
    }) && forced.iter().all(|&(a, b)| consecutive(a, b))
}

pub fn without(m: &[Vec<bool>], removed: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut out = m.to_vec();
    for &(u, v) in removed {
        out[u][v] = false;
        out[v][u] = false;
    }
    out
}

pub fn induced_edge_count(m: &[Vec<bool>], s: &[usize]) -> usize {
    let mut e = 0;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if m[u][v] {
                e += 1;
            }
        }
    }
    e
}

/// Shortest-path distances by repeated relaxation over the matrix.
pub fn distances_from(m: &[Vec<bool>], s: usize) -> Vec<usize> {
    let n = m.len();
    let mut d = vec![usize::MAX; n];
    d[s] = 0;
    let mut frontier = vec![s];
    let mut k = 0;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for w in 0..n {
                if m[v][w] && d[w] == usize::MAX {
                    d[w] = k;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    d
}

/// Hamiltonicity by plain depth-first search from vertex 0.
pub fn dfs_hamiltonian(m: &[Vec<bool>]) -> bool {
    fn go(m: &[Vec<bool>], v: usize, used: &mut [bool], depth: usize) -> bool {
        let n = m.len();
        if depth == n {
            return m[v][0];
        }
        for w in 0..n {
            if m[v][w] && !used[w] {
                used[w] = true;
                if go(m, w, used, depth + 1) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let n = m.len();
    if n < 3 {
        return false;
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(m, 0, &mut used, 1)
}
