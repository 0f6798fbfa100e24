//! Ground-truth subset-sum solvers used to validate every reduction claim.
//!
//! Two independent routes: a memoized reachability search over (prefix,
//! count, remaining target) states, which is pseudo-polynomial and handles
//! the large padded targets produced by the reductions, and a plain 2^n scan
//! for small instances. Targets are big integers, so the memo is keyed by a
//! map rather than a dense table.

use crate::instances::{Assignment, CardinalityInstance, SubsetSumInstance};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaselineError {
    #[error("exhaustive scan limited to {limit} weights, instance has {got}")]
    TooLargeForScan { limit: usize, got: usize },
}

const SCAN_LIMIT: usize = 25;

/// Decides a plain subset-sum instance and returns a witness if YES.
///
/// The witness is deterministic: among all solutions it is the one that is
/// lexicographically smallest as a 0/1 string (skip before take).
pub fn dp_subset_sum(inst: &SubsetSumInstance) -> Option<Assignment> {
    let mut search = ReachabilitySearch::new(inst.weights(), None);
    search.witness(inst.target())
}

/// Decides a cardinality-constrained instance and returns a witness if YES.
pub fn dp_cardinality(inst: &CardinalityInstance) -> Option<Assignment> {
    let mut search = ReachabilitySearch::new(inst.weights(), Some(inst.required_count()));
    search.witness(inst.target())
}

/// Enumerates every witness of a cardinality-constrained instance in
/// lexicographic 0/1-string order.
///
/// Desk-scale only: the output is materialized, so the number of witnesses
/// must be small enough to hold in memory.
pub fn enumerate_cardinality_witnesses(inst: &CardinalityInstance) -> Vec<Assignment> {
    let mut search = ReachabilitySearch::new(inst.weights(), Some(inst.required_count()));
    search.all_witnesses(inst.target())
}

/// Definitive verdict on a plain instance by scanning all 2^n subsets.
pub fn exhaustive_subset_sum(
    inst: &SubsetSumInstance,
) -> Result<Option<Assignment>, BaselineError> {
    exhaustive_scan(inst.weights(), inst.target(), None)
}

/// Definitive verdict on a cardinality instance by scanning all 2^n subsets.
pub fn exhaustive_cardinality(
    inst: &CardinalityInstance,
) -> Result<Option<Assignment>, BaselineError> {
    exhaustive_scan(inst.weights(), inst.target(), Some(inst.required_count()))
}

fn exhaustive_scan(
    weights: &[BigInt],
    target: &BigInt,
    required_count: Option<usize>,
) -> Result<Option<Assignment>, BaselineError> {
    let n = weights.len();
    if n > SCAN_LIMIT {
        return Err(BaselineError::TooLargeForScan {
            limit: SCAN_LIMIT,
            got: n,
        });
    }
    for mask in 0u64..(1u64 << n) {
        if let Some(r) = required_count {
            if mask.count_ones() as usize != r {
                continue;
            }
        }
        let mut sum = BigInt::zero();
        for (i, w) in weights.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += w;
            }
        }
        if sum == *target {
            let bits = (0..n).map(|i| mask >> i & 1 == 1).collect();
            return Ok(Some(Assignment::new(bits)));
        }
    }
    Ok(None)
}

/// Memoized reachability over suffixes: can items i.. realize (count, sum)?
struct ReachabilitySearch<'a> {
    weights: &'a [BigInt],
    required_count: Option<usize>,
    suffix_sums: Vec<BigInt>,
    memo: BTreeMap<(usize, usize, BigInt), bool>,
}

impl<'a> ReachabilitySearch<'a> {
    fn new(weights: &'a [BigInt], required_count: Option<usize>) -> Self {
        let n = weights.len();
        let mut suffix_sums = vec![BigInt::zero(); n + 1];
        for i in (0..n).rev() {
            suffix_sums[i] = &suffix_sums[i + 1] + &weights[i];
        }
        ReachabilitySearch {
            weights,
            required_count,
            suffix_sums,
            memo: BTreeMap::new(),
        }
    }

    fn feasible(&mut self, i: usize, count_left: usize, target: &BigInt) -> bool {
        if target.is_negative() || target > &self.suffix_sums[i] {
            return false;
        }
        let n = self.weights.len();
        if count_left > n - i {
            return false;
        }
        if i == n {
            return target.is_zero() && count_left == 0;
        }
        let key = (i, count_left, target.clone());
        if let Some(&cached) = self.memo.get(&key) {
            return cached;
        }
        let skip = self.feasible(i + 1, count_left, target);
        let take = if self.required_count.is_some() && count_left == 0 {
            false
        } else {
            let next_count = count_left.saturating_sub(1);
            let rest = target - &self.weights[i];
            !rest.is_negative() && self.feasible(i + 1, next_count, &rest)
        };
        let result = skip || take;
        self.memo.insert(key, result);
        result
    }

    fn witness(&mut self, target: &BigInt) -> Option<Assignment> {
        let count = self.required_count.unwrap_or(0);
        if !self.feasible(0, count, target) {
            return None;
        }
        let n = self.weights.len();
        let mut bits = Vec::with_capacity(n);
        let mut remaining = target.clone();
        let mut count_left = count;
        for i in 0..n {
            if self.feasible(i + 1, count_left, &remaining) {
                bits.push(false);
            } else {
                bits.push(true);
                remaining -= &self.weights[i];
                count_left = count_left.saturating_sub(1);
            }
        }
        debug_assert!(remaining.is_zero());
        Some(Assignment::new(bits))
    }

    fn all_witnesses(&mut self, target: &BigInt) -> Vec<Assignment> {
        let count = self.required_count.unwrap_or(0);
        let mut results = Vec::new();
        let mut bits = Vec::with_capacity(self.weights.len());
        self.collect(0, count, target.clone(), &mut bits, &mut results);
        results
    }

    fn collect(
        &mut self,
        i: usize,
        count_left: usize,
        remaining: BigInt,
        bits: &mut Vec<bool>,
        results: &mut Vec<Assignment>,
    ) {
        if i == self.weights.len() {
            if remaining.is_zero() && count_left == 0 {
                results.push(Assignment::new(bits.clone()));
            }
            return;
        }
        if self.feasible(i + 1, count_left, &remaining) {
            bits.push(false);
            self.collect(i + 1, count_left, remaining.clone(), bits, results);
            bits.pop();
        }
        let can_take = self.required_count.is_none() || count_left > 0;
        if can_take {
            let rest = &remaining - &self.weights[i];
            let next_count = count_left.saturating_sub(1);
            if !rest.is_negative() && self.feasible(i + 1, next_count, &rest) {
                bits.push(true);
                self.collect(i + 1, next_count, rest, bits, results);
                bits.pop();
            }
        }
    }
}
