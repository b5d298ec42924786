use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Vertex set `[n]` split into consecutive blocks `V_1..V_k`.
///
/// Vertices of block `i` occupy `offset(i)..offset(i) + sizes[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockPartition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockPartition {
    pub fn new(sizes: Vec<usize>) -> Result<Self, ModelError> {
        if sizes.is_empty() {
            return Err(ModelError::NoBlocks);
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(ModelError::EmptyBlock(i));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &s in &sizes {
            acc += s;
            offsets.push(acc);
        }
        Ok(Self { sizes, offsets })
    }

    /// A single block holding all `n` vertices.
    pub fn single(n: usize) -> Result<Self, ModelError> {
        Self::new(vec![n])
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.offsets[self.sizes.len()]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn range(&self, block: usize) -> Range<usize> {
        self.offsets[block]..self.offsets[block + 1]
    }

    /// Partition index of `v` (0-based).
    #[inline]
    pub fn block_of(&self, v: usize) -> usize {
        debug_assert!(v < self.n());
        self.offsets.partition_point(|&o| o <= v) - 1
    }

    #[inline]
    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of(u) == self.block_of(v)
    }
}

impl TryFrom<Vec<usize>> for BlockPartition {
    type Error = ModelError;

    fn try_from(sizes: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(sizes)
    }
}

impl From<BlockPartition> for Vec<usize> {
    fn from(p: BlockPartition) -> Self {
        p.sizes
    }
}
