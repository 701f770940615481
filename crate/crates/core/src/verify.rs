//! Exact decision procedures for the C_h[g] and weak-C_h[g] properties.
//!
//! A set A fails C_h[g] when some h-element shape X has g distinct offsets
//! k with X + k ⊆ A. In weak mode the g translates must additionally be
//! pairwise disjoint, which we decide exactly by searching the conflict
//! graph on offsets for an independent set of size g.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::combo::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::set::{IntegerSet, Mode, Params};
use crate::shape::{Shape, Witness};

/// Default node budget for the weak-mode independent-set search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Witness lists are truncated to this many entries.
pub const WITNESS_CAP: usize = 16;
/// Cap on the number of h-subsets the brute-force oracle will enumerate.
pub const ORACLE_CAP: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The search budget ran out before a decision was reached.
    Undecided,
}

#[derive(Debug, Clone)]
pub struct ViolationReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub shapes_examined: u64,
    pub budget_exhausted: bool,
}

impl ViolationReport {
    pub fn holds(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Holds => Some(true),
            Verdict::Violated => Some(false),
            Verdict::Undecided => None,
        }
    }
}

/// All k ≥ 0 with {k} ∪ (k + deltas) ⊆ a, sorted increasing.
/// Since 0 is a point of every shape, candidates are exactly the elements of a.
pub fn translate_offsets(a: &IntegerSet, shape: &Shape) -> Vec<u64> {
    a.elements()
        .iter()
        .copied()
        .filter(|&k| shape.deltas().iter().all(|&d| a.contains(k + d)))
        .collect()
}

/// Buckets every h-subset of `a` by its canonical shape. Keys are delta
/// vectors; values are the offsets (minimum elements), increasing.
/// BTreeMap keeps shapes in lexicographic delta order for determinism.
pub(crate) fn shape_buckets(a: &IntegerSet, h: u32) -> BTreeMap<Vec<u64>, Vec<u64>> {
    let mut buckets: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
    let elems = a.elements();
    let h = h as usize;
    if h < 2 || elems.len() < h {
        return buckets;
    }
    let mut key = vec![0u64; h - 1];
    for i in 0..=(elems.len() - h) {
        let base = elems[i];
        for_each_combination(&elems[i + 1..], h - 1, |rest| {
            for (slot, &e) in key.iter_mut().zip(rest) {
                *slot = e - base;
            }
            buckets.entry(key.clone()).or_default().push(base);
            true
        });
    }
    buckets
}

/// Node budget for exact searches; exceeding it is an error, never a guess.
pub(crate) struct Budget {
    remaining: u64,
    limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            remaining: limit,
            limit,
        }
    }

    fn spend(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::BudgetExhausted(self.limit));
        }
        self.remaining -= 1;
        Ok(())
    }
}

fn intersects(pos_diffs: &[u64], k1: u64, k2: u64) -> bool {
    let d = k1.abs_diff(k2);
    d == 0 || pos_diffs.binary_search(&d).is_ok()
}

/// Branch-and-bound search for `need` pairwise non-conflicting offsets among
/// `cands` (indices into `offsets`). Picks the lowest index first, so the
/// returned set is the lexicographically first independent set.
pub(crate) fn search_disjoint_indices(
    offsets: &[u64],
    pos_diffs: &[u64],
    cands: &[usize],
    need: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    if need == 0 {
        return Ok(Some(Vec::new()));
    }
    if cands.len() < need {
        return Ok(None);
    }
    budget.spend()?;
    let v = cands[0];
    // include v
    let compatible: Vec<usize> = cands[1..]
        .iter()
        .copied()
        .filter(|&u| !intersects(pos_diffs, offsets[u], offsets[v]))
        .collect();
    if let Some(mut rest) =
        search_disjoint_indices(offsets, pos_diffs, &compatible, need - 1, budget)?
    {
        rest.insert(0, v);
        return Ok(Some(rest));
    }
    // exclude v
    search_disjoint_indices(offsets, pos_diffs, &cands[1..], need, budget)
}

/// Finds g offsets in `offsets` whose translates of `shape` are pairwise
/// disjoint, or None. Exact; errors when the node budget runs out.
pub(crate) fn find_disjoint_translates(
    shape: &Shape,
    offsets: &[u64],
    g: u32,
    budget: &mut Budget,
) -> Result<Option<Vec<u64>>> {
    let pos_diffs = shape.positive_differences();
    let cands: Vec<usize> = (0..offsets.len()).collect();
    Ok(
        search_disjoint_indices(offsets, &pos_diffs, &cands, g as usize, budget)?
            .map(|idx| idx.into_iter().map(|i| offsets[i]).collect()),
    )
}

fn translates_pairwise_disjoint(shape: &Shape, offsets: &[u64]) -> bool {
    let pos_diffs = shape.positive_differences();
    for i in 0..offsets.len() {
        for j in (i + 1)..offsets.len() {
            if intersects(&pos_diffs, offsets[i], offsets[j]) {
                return false;
            }
        }
    }
    true
}

/// Decides the strict C_h[g] property; always decides.
pub fn is_chg(a: &IntegerSet, p: &Params) -> ViolationReport {
    let buckets = shape_buckets(a, p.h);
    let mut witnesses = Vec::new();
    let mut shapes_examined = 0;
    for (deltas, offsets) in &buckets {
        shapes_examined += 1;
        if offsets.len() >= p.g as usize && witnesses.len() < WITNESS_CAP {
            let shape = Shape::new(deltas.clone()).expect("bucket keys are valid deltas");
            let chosen: Vec<u64> = offsets[..p.g as usize].to_vec();
            let disjoint = translates_pairwise_disjoint(&shape, &chosen);
            witnesses.push(Witness {
                shape,
                offsets: chosen,
                disjoint,
            });
        }
    }
    ViolationReport {
        verdict: if witnesses.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
        witnesses,
        shapes_examined,
        budget_exhausted: false,
    }
}

/// Decides the weak-C_h[g] property exactly within the node budget.
/// On exhaustion the verdict is Undecided, never a guess.
pub fn is_weak_chg(a: &IntegerSet, p: &Params, budget: u64) -> ViolationReport {
    let buckets = shape_buckets(a, p.h);
    let mut budget = Budget::new(budget);
    let mut witnesses = Vec::new();
    let mut shapes_examined = 0;
    let mut exhausted = false;
    for (deltas, offsets) in &buckets {
        shapes_examined += 1;
        if offsets.len() < p.g as usize {
            continue;
        }
        let shape = Shape::new(deltas.clone()).expect("bucket keys are valid deltas");
        match find_disjoint_translates(&shape, offsets, p.g, &mut budget) {
            Ok(Some(chosen)) => {
                if witnesses.len() < WITNESS_CAP {
                    witnesses.push(Witness {
                        shape,
                        offsets: chosen,
                        disjoint: true,
                    });
                }
            }
            Ok(None) => {}
            Err(Error::BudgetExhausted(_)) => {
                exhausted = true;
            }
            Err(_) => unreachable!("search only fails on budget"),
        }
    }
    let verdict = if !witnesses.is_empty() {
        Verdict::Violated
    } else if exhausted {
        Verdict::Undecided
    } else {
        Verdict::Holds
    };
    ViolationReport {
        verdict,
        witnesses,
        shapes_examined,
        budget_exhausted: exhausted,
    }
}

/// Fast C_2[g] test: every positive difference occurs at most g-1 times.
pub fn is_c2g_fast(a: &IntegerSet, g: u32) -> bool {
    let elems = a.elements();
    let mut counts: HashMap<u64, u32> = HashMap::new();
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            let c = counts.entry(elems[j] - elems[i]).or_insert(0);
            *c += 1;
            if *c > g - 1 {
                return false;
            }
        }
    }
    true
}

fn congruent(x: &[u64], y: &[u64]) -> bool {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).all(|(&xe, &ye)| xe - x[0] == ye - y[0])
}

fn overlap(x: &[u64], y: &[u64]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn tuple_search(
    subsets: &[Vec<u64>],
    start: usize,
    left: u32,
    weak: bool,
    chosen: &mut Vec<usize>,
) -> bool {
    if left == 0 {
        return true;
    }
    for i in start..subsets.len() {
        if !chosen.is_empty() {
            if !congruent(&subsets[chosen[0]], &subsets[i]) {
                continue;
            }
            if weak && chosen.iter().any(|&c| overlap(&subsets[c], &subsets[i])) {
                continue;
            }
        }
        chosen.push(i);
        if tuple_search(subsets, i + 1, left - 1, weak, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Reference oracle: enumerates g-tuples of distinct h-subsets of `a` and
/// tests congruence (and disjointness, in weak mode) directly on the
/// elements, with no shape normalization.
pub fn brute_force_verify(a: &IntegerSet, p: &Params) -> Result<bool> {
    let n = a.len();
    let h = p.h as usize;
    if binomial(n as u64, p.h as u64) > ORACLE_CAP {
        return Err(Error::OracleTooLarge {
            n,
            h,
            cap: ORACLE_CAP,
        });
    }
    let mut subsets: Vec<Vec<u64>> = Vec::new();
    for_each_combination(a.elements(), h, |s| {
        subsets.push(s.to_vec());
        true
    });
    let weak = p.mode == Mode::Weak;
    let mut chosen = Vec::new();
    Ok(!tuple_search(&subsets, 0, p.g, weak, &mut chosen))
}
