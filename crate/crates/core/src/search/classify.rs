use itertools::Itertools;

use super::evaluate::{prepare, EvalMode, ZeroMode};
use crate::arith::Rat;
use crate::model::EqSystem;
use crate::subspace::SplitSpace;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Nondegenerate,
    /// Vanishing blocks partitioning the terms (zero-based indices).
    Degenerate { witness: Vec<Vec<usize>> },
}

impl Status {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, Status::Nondegenerate)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub q: Vec<Rat>,
    pub status: Status,
    pub zero_mode: ZeroMode,
    pub pi: Vec<Rat>,
    pub pi_prime: Vec<Rat>,
}

pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Classifies `q` if it solves the equation.
///
/// Nonempty proper subsets are visited by size, then lexicographically; a
/// vanishing subset disjoint from the blocks already taken becomes a block.
/// The terms left over also vanish, since the whole sum and every block do.
pub fn classify(
    sys: &EqSystem,
    split: &SplitSpace,
    q: &[Rat],
    mode: EvalMode,
    subset_cap: usize,
) -> Result<Option<SolutionRecord>> {
    let s = sys.s();
    if s > subset_cap {
        return Err(Error::SubsetExplosion { terms: s, cap: subset_cap });
    }
    let prepared = prepare(sys, q, mode)?;
    if !prepared.subset_is_zero(|_| true) {
        return Ok(None);
    }
    let mut used = vec![false; s];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for size in 1..s {
        for subset in (0..s).combinations(size) {
            if subset.iter().any(|&i| used[i]) {
                continue;
            }
            if prepared.subset_is_zero(|i| subset.contains(&i)) {
                subset.iter().for_each(|&i| used[i] = true);
                blocks.push(subset);
            }
        }
    }
    let status = if blocks.is_empty() {
        Status::Nondegenerate
    } else {
        let rest: Vec<usize> = (0..s).filter(|&i| !used[i]).collect();
        if !rest.is_empty() {
            blocks.push(rest);
        }
        Status::Degenerate { witness: blocks }
    };
    let (pi, pi_prime) = split.project(q);
    Ok(Some(SolutionRecord {
        q: q.to_vec(),
        status,
        zero_mode: prepared.zero_mode,
        pi,
        pi_prime,
    }))
}
