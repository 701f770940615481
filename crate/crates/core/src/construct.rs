//! Set constructors: the random-deletion method, greedy constructions, and
//! the classical algebraic Sidon baseline.
//!
//! The deletion method samples S ⊆ [1,n] at density p, removes every
//! (h,g)-bad element (the largest offset of a configuration of g disjoint
//! congruent h-subsets), and keeps the rest. The remainder is weak-C_h[g]
//! for every sample: any surviving configuration would have had its own
//! largest offset marked.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::deletion_p;
use crate::error::{Error, Result};
use crate::incremental::IncrementalChecker;
use crate::set::{IntegerSet, Params};
use crate::shape::Shape;
use crate::verify::{shape_buckets, Budget, DEFAULT_BUDGET};

/// Full record of one random-deletion run.
#[derive(Debug, Clone)]
pub struct DeletionTrace {
    pub n: u64,
    pub params: Params,
    pub p: f64,
    pub seed: u64,
    pub sample: IntegerSet,
    pub bad: IntegerSet,
    pub result: IntegerSet,
    /// Whether |S| >= np/2 and |S_bad| <= np/4 held for this sample.
    pub success: bool,
    /// True when the exact bad-element search ran out of budget and the
    /// conservative strict variant was substituted.
    pub strict_fallback: bool,
}

impl DeletionTrace {
    /// Serializes as key=value lines for experiment logs.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "h={}", self.params.h);
        let _ = writeln!(out, "g={}", self.params.g);
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "p={:e}", self.p);
        let _ = writeln!(out, "np={}", self.n as f64 * self.p);
        let _ = writeln!(out, "sample_size={}", self.sample.len());
        let _ = writeln!(out, "bad_size={}", self.bad.len());
        let _ = writeln!(out, "result_size={}", self.result.len());
        let _ = writeln!(out, "success={}", self.success);
        let _ = writeln!(out, "strict_fallback={}", self.strict_fallback);
        out
    }
}

/// Samples each element of [1,n] independently with probability p.
/// Same seed, same set.
pub fn bernoulli_sample(n: u64, p: f64, seed: u64) -> Result<IntegerSet> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParam(format!(
            "sampling probability must lie strictly between 0 and 1, got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements = Vec::new();
    for m in 1..=n {
        if rng.gen_bool(p) {
            elements.push(m);
        }
    }
    Ok(IntegerSet::new(elements))
}

/// The exact set of (h,g)-bad elements of s: every m that is the largest
/// offset of g pairwise-disjoint congruent translates inside s.
pub fn bad_elements(s: &IntegerSet, p: &Params, budget: u64) -> Result<IntegerSet> {
    let g = p.g as usize;
    let buckets = shape_buckets(s, p.h);
    let mut budget = Budget::new(budget);
    let mut bad: BTreeSet<u64> = BTreeSet::new();
    for (deltas, offsets) in &buckets {
        if offsets.len() < g {
            continue;
        }
        let shape = Shape::new(deltas.clone()).expect("bucket keys are valid deltas");
        let pos_diffs = shape.positive_differences();
        for idx in (g - 1)..offsets.len() {
            let m = offsets[idx];
            if bad.contains(&m) {
                continue;
            }
            // need g-1 pairwise-disjoint translates below m, all avoiding m's
            let cands: Vec<usize> = (0..idx)
                .filter(|&j| {
                    let d = offsets[idx] - offsets[j];
                    pos_diffs.binary_search(&d).is_err()
                })
                .collect();
            if crate::verify::search_disjoint_indices(
                offsets,
                &pos_diffs,
                &cands,
                g - 1,
                &mut budget,
            )?
            .is_some()
            {
                bad.insert(m);
            }
        }
    }
    Ok(bad.into_iter().collect())
}

/// Conservative variant: marks every offset that is the g-th smallest or
/// later among some shape's translate offsets, disjoint or not. Deleting
/// these leaves a strict C_h[g] set, and the result contains bad_elements.
pub fn strict_bad_elements(s: &IntegerSet, p: &Params) -> IntegerSet {
    let g = p.g as usize;
    let buckets = shape_buckets(s, p.h);
    let mut bad: BTreeSet<u64> = BTreeSet::new();
    for offsets in buckets.values() {
        if offsets.len() >= g {
            bad.extend(&offsets[g - 1..]);
        }
    }
    bad.into_iter().collect()
}

/// One full run of the deletion construction: sample at p = deletion_p,
/// prune the bad elements, retry with fresh seeds until the size thresholds
/// of the success event hold (or retries run out). The returned result is
/// weak-C_h[g] regardless of success.
pub fn random_deletion(
    n: u64,
    p_params: &Params,
    seed: u64,
    max_retries: u32,
) -> Result<DeletionTrace> {
    let p = deletion_p(n, p_params.h, p_params.g);
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParam(format!(
            "n={n} is too small for the deletion density at (h,g)=({},{})",
            p_params.h, p_params.g
        )));
    }
    let np = n as f64 * p;
    let mut last = None;
    for attempt in 0..=max_retries {
        let attempt_seed = seed.wrapping_add(attempt as u64);
        let sample = bernoulli_sample(n, p, attempt_seed)?;
        let (bad, strict_fallback) = match bad_elements(&sample, p_params, DEFAULT_BUDGET) {
            Ok(bad) => (bad, false),
            Err(Error::BudgetExhausted(_)) => (strict_bad_elements(&sample, p_params), true),
            Err(e) => return Err(e),
        };
        let result = sample.minus(&bad);
        let success = sample.len() as f64 >= np / 2.0 && bad.len() as f64 <= np / 4.0;
        let trace = DeletionTrace {
            n,
            params: *p_params,
            p,
            seed: attempt_seed,
            sample,
            bad,
            result,
            success,
            strict_fallback,
        };
        if trace.success {
            return Ok(trace);
        }
        last = Some(trace);
    }
    Ok(last.expect("at least one attempt runs"))
}

/// Greedy constructor: scan m = 1..n, keep m when the kept set stays valid
/// under the given mode.
pub fn greedy(n: u64, p: &Params, budget: u64) -> Result<IntegerSet> {
    let mut checker = IncrementalChecker::new(p, budget);
    for m in 1..=n {
        if checker.can_add(m)? {
            checker.add(m);
        }
    }
    Ok(IntegerSet::new(checker.elements().to_vec()))
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The classical Erdős–Turán Sidon set {2qi + (i² mod q) : 0 <= i < q}
/// inside [0, 2q²).
pub fn sidon_erdos_turan(q: u64) -> Result<IntegerSet> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok((0..q).map(|i| 2 * q * i + (i * i) % q).collect())
}
