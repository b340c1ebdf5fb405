use core::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::geometry::Rat;
use crate::triples::TripleSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("delta must lie in (0, 1], got {0}")]
    Delta(Rat),
    #[error("epsilon must lie in (0, 1], got {0}")]
    Epsilon(Rat),
    #[error("block size must be at least 1")]
    BlockSize,
    #[error("skinny bound must be at least 1")]
    SkinnyBound,
    #[error("k must be at least 1")]
    K,
}

/// Density, block size `M`, skinny bound `N`, goodness threshold `ε` and
/// k-system order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub delta: Rat,
    pub block_size: usize,
    pub skinny_bound: usize,
    pub epsilon: Rat,
    pub k: usize,
    /// Derandomized selection instead of seeded random choices.
    pub exhaustive: bool,
}

fn ceil_usize(r: &Rat) -> usize {
    let c = r.ceil().to_integer();
    usize::try_from(c).unwrap_or(usize::MAX)
}

/// Least `M` with `⌊δM/8⌋ ≥ 3`, i.e. `⌈24/δ⌉`, capped at `n`.
pub fn default_block_size(delta: &Rat, n: usize) -> usize {
    ceil_usize(&(Rat::from_integer(24.into()) / delta)).min(n).max(1)
}

/// `⌈32M³/δ⌉`, capped at `n`.
pub fn default_skinny_bound(delta: &Rat, m: usize, n: usize) -> usize {
    let m3 = BigInt::from(m).pow(3);
    ceil_usize(&(Rat::from_integer(m3 * 32) / delta)).min(n).max(1)
}

impl SearchParams {
    /// Parameters derived from `δ` on `n` points per class.
    pub fn from_delta(delta: Rat, n: usize) -> Result<Self, ParamError> {
        if delta <= Rat::zero() || delta > Rat::one() {
            return Err(ParamError::Delta(delta));
        }
        let block_size = default_block_size(&delta, n);
        let skinny_bound = default_skinny_bound(&delta, block_size, n);
        let epsilon = &delta / Rat::from_integer(8.into());
        Ok(SearchParams { delta, block_size, skinny_bound, epsilon, k: 3, exhaustive: false })
    }

    /// Parameters with `δ = |T| / n²` (at least `1/n²`, at most 1).
    pub fn for_system(t: &TripleSystem) -> Self {
        let n = t.n().max(1);
        let e = t.len().max(1);
        let delta = Rat::new(e.into(), (n * n).into()).min(Rat::one());
        Self::from_delta(delta, n).expect("density lies in (0, 1]")
    }

    pub fn with_block_size(mut self, m: usize) -> Self {
        self.block_size = m;
        self
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.delta <= Rat::zero() || self.delta > Rat::one() {
            return Err(ParamError::Delta(self.delta.clone()));
        }
        if self.epsilon <= Rat::zero() || self.epsilon > Rat::one() {
            return Err(ParamError::Epsilon(self.epsilon.clone()));
        }
        if self.block_size == 0 {
            return Err(ParamError::BlockSize);
        }
        if self.skinny_bound == 0 {
            return Err(ParamError::SkinnyBound);
        }
        if self.k == 0 {
            return Err(ParamError::K);
        }
        Ok(())
    }

    /// `δ·x/d` as an exact rational.
    pub(crate) fn delta_times(&self, x: usize, d: usize) -> Rat {
        &self.delta * Rat::new(x.into(), d.into())
    }
}

/// Consecutive index blocks of size `M` over A and over C; the last block
/// may be shorter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub size: usize,
    pub a_len: usize,
    pub c_len: usize,
}

impl BlockPartition {
    pub fn a_block(&self, i: usize) -> usize {
        i / self.size
    }

    pub fn c_block(&self, k: usize) -> usize {
        k / self.size
    }

    pub fn a_blocks(&self) -> usize {
        self.a_len.div_ceil(self.size)
    }

    pub fn c_blocks(&self) -> usize {
        self.c_len.div_ceil(self.size)
    }

    pub fn a_range(&self, block: usize) -> Range<usize> {
        block * self.size..((block + 1) * self.size).min(self.a_len)
    }

    pub fn c_range(&self, block: usize) -> Range<usize> {
        block * self.size..((block + 1) * self.size).min(self.c_len)
    }
}

pub fn partition_blocks(t: &TripleSystem, m: usize) -> Result<BlockPartition, ParamError> {
    if m == 0 {
        return Err(ParamError::BlockSize);
    }
    let [a_len, _, c_len] = t.sizes();
    Ok(BlockPartition { size: m, a_len, c_len })
}
