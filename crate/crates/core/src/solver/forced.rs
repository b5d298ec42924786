use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::model::{BlockPartition, ParseError};

/// Vertex-disjoint pairs that a Hamilton cycle must traverse consecutively.
///
/// A pair need not be an edge of the graph; solvers treat it as an overlay
/// edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedEdgeSet {
    n: usize,
    pairs: Vec<(usize, usize)>,
    #[serde(skip)]
    partner: Vec<Option<usize>>,
}

impl ForcedEdgeSet {
    pub fn empty(n: usize) -> Self {
        Self { n, pairs: Vec::new(), partner: vec![None; n] }
    }

    /// Validates ranges, loops and disjointness. Pairs are stored as
    /// `(min, max)` in ascending order.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, SolverError> {
        let mut set = Self::empty(n);
        for (u, v) in pairs {
            set.insert(u, v)?;
        }
        set.pairs.sort_unstable();
        Ok(set)
    }

    fn insert(&mut self, u: usize, v: usize) -> Result<(), SolverError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(SolverError::ForcedOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(SolverError::ForcedLoop(u));
        }
        for w in [u, v] {
            if self.partner[w].is_some() {
                return Err(SolverError::ForcedOverlap(w));
            }
        }
        self.partner[u] = Some(v);
        self.partner[v] = Some(u);
        self.pairs.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    #[inline]
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner.get(v).copied().flatten()
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.partner(u) == Some(v)
    }

    /// `V(B)`, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs
    }

    /// `|B_{i,j}|` for every block pair `i <= j` that carries a pair.
    pub fn block_pair_counts(&self, partition: &BlockPartition) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for &(u, v) in &self.pairs {
            let (a, b) = (partition.block_of(u), partition.block_of(v));
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        counts
    }

    /// Rebuilds the partner index after deserialization.
    pub fn reindexed(self) -> Result<Self, SolverError> {
        Self::new(self.n, self.pairs)
    }
}

/// Reads `u v` lines (`#` comments) into a pair set over `n` vertices.
pub fn parse_forced_pairs(text: &str, n: usize) -> Result<ForcedEdgeSet, ParseError> {
    let mut set = ForcedEdgeSet::empty(n);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ParseError { line: i + 1, message };
        let mut it = line.split_whitespace();
        let mut vertex = || -> Result<usize, ParseError> {
            let t = it.next().ok_or_else(|| err("expected two vertices".into()))?;
            t.parse().map_err(|_| err(format!("bad vertex {t:?}")))
        };
        let (u, v) = (vertex()?, vertex()?);
        if it.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
        set.insert(u, v).map_err(|e| err(e.to_string()))?;
    }
    set.pairs.sort_unstable();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap_and_loops() {
        assert_eq!(ForcedEdgeSet::new(4, [(0, 1), (1, 2)]), Err(SolverError::ForcedOverlap(1)));
        assert_eq!(ForcedEdgeSet::new(4, [(2, 2)]), Err(SolverError::ForcedLoop(2)));
        assert!(ForcedEdgeSet::new(4, [(0, 4)]).is_err());
    }

    #[test]
    fn parses_pair_lines() {
        let set = parse_forced_pairs("# pairs\n3 1\n\n0 2 # tail\n", 4).unwrap();
        assert_eq!(set.pairs(), &[(0, 2), (1, 3)]);
        assert_eq!(parse_forced_pairs("0 1\n1 2", 3).unwrap_err().line, 2);
        assert!(parse_forced_pairs("0 9", 3).is_err());
        assert!(parse_forced_pairs("0", 3).is_err());
        assert!(parse_forced_pairs("0 1 2", 3).is_err());
    }

    #[test]
    fn counts_per_block_pair() {
        let part = BlockPartition::new(vec![2, 2, 2]).unwrap();
        let f = ForcedEdgeSet::new(6, [(5, 0), (1, 2), (3, 4)]).unwrap();
        assert_eq!(f.pairs(), &[(0, 5), (1, 2), (3, 4)]);
        let counts = f.block_pair_counts(&part);
        assert_eq!(counts[&(0, 2)], 1);
        assert_eq!(counts[&(0, 1)], 1);
        assert_eq!(counts[&(1, 2)], 1);
        assert!(f.contains(0, 5) && f.contains(5, 0) && !f.contains(0, 1));
    }
}
