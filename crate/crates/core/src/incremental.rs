//! Incremental property checking under single-element insertion, used by
//! the greedy constructor and the exact search. Maintains per-shape offset
//! lists; adding an element only touches shapes realized by h-subsets that
//! contain it.

use std::collections::HashMap;

use crate::combo::for_each_combination;
use crate::error::Result;
use crate::set::{Mode, Params};
use crate::shape::Shape;
use crate::verify::{find_disjoint_translates, Budget};

pub(crate) struct IncrementalChecker {
    h: usize,
    g: usize,
    weak: bool,
    budget_limit: u64,
    elements: Vec<u64>,
    buckets: HashMap<Vec<u64>, Vec<u64>>,
}

/// Records the bucket insertions one `add` performed, so it can be undone.
pub(crate) struct UndoToken {
    element: u64,
    insertions: Vec<(Vec<u64>, u64)>,
}

impl IncrementalChecker {
    pub fn new(p: &Params, budget_limit: u64) -> Self {
        IncrementalChecker {
            h: p.h as usize,
            g: p.g as usize,
            weak: p.mode == Mode::Weak,
            budget_limit,
            elements: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// All (key, offset) pairs of h-subsets of elements ∪ {m} containing m.
    fn new_subsets(&self, m: u64) -> Vec<(Vec<u64>, u64)> {
        debug_assert!(!self.elements.contains(&m));
        let mut out = Vec::new();
        if self.elements.len() + 1 < self.h {
            return out;
        }
        let mut subset = vec![0u64; self.h];
        for_each_combination(&self.elements, self.h - 1, |rest| {
            subset.clear();
            subset.extend_from_slice(rest);
            let pos = subset.partition_point(|&e| e < m);
            subset.insert(pos, m);
            let base = subset[0];
            out.push((subset[1..].iter().map(|&e| e - base).collect(), base));
            true
        });
        out
    }

    /// Whether the tracked set stays valid when `m` is inserted.
    pub fn can_add(&self, m: u64) -> Result<bool> {
        let mut fresh: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
        for (key, offset) in self.new_subsets(m) {
            fresh.entry(key).or_default().push(offset);
        }
        let mut budget = Budget::new(self.budget_limit);
        for (key, new_offsets) in fresh {
            let existing = self.buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]);
            if existing.len() + new_offsets.len() < self.g {
                continue;
            }
            if !self.weak {
                return Ok(false);
            }
            let mut merged: Vec<u64> = existing.to_vec();
            merged.extend(new_offsets);
            merged.sort_unstable();
            let shape = Shape::new(key).expect("subset deltas are valid");
            if find_disjoint_translates(&shape, &merged, self.g as u32, &mut budget)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Inserts `m` unconditionally, returning an undo token.
    pub fn add(&mut self, m: u64) -> UndoToken {
        let insertions = self.new_subsets(m);
        for (key, offset) in &insertions {
            let bucket = self.buckets.entry(key.clone()).or_default();
            let pos = bucket.partition_point(|&k| k < *offset);
            bucket.insert(pos, *offset);
        }
        let pos = self.elements.partition_point(|&e| e < m);
        self.elements.insert(pos, m);
        UndoToken {
            element: m,
            insertions,
        }
    }

    /// Reverts a previous `add`. Tokens must be undone in LIFO order.
    pub fn undo(&mut self, token: UndoToken) {
        for (key, offset) in &token.insertions {
            let bucket = self.buckets.get_mut(key).expect("bucket exists");
            let pos = bucket.binary_search(offset).expect("offset recorded");
            bucket.remove(pos);
            if bucket.is_empty() {
                self.buckets.remove(key);
            }
        }
        let pos = self
            .elements
            .binary_search(&token.element)
            .expect("element recorded");
        self.elements.remove(pos);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::IntegerSet;
    use crate::verify::{is_chg, is_weak_chg, Verdict, DEFAULT_BUDGET};

    #[test]
    fn matches_full_verifier_on_incremental_growth() {
        let p = Params::strict(2, 2).unwrap();
        let mut checker = IncrementalChecker::new(&p, DEFAULT_BUDGET);
        for m in 1..=25u64 {
            let mut candidate: Vec<u64> = checker.elements().to_vec();
            candidate.push(m);
            let full = is_chg(&IntegerSet::new(candidate), &p).verdict == Verdict::Holds;
            assert_eq!(checker.can_add(m).unwrap(), full, "mismatch at m={m}");
            if full {
                checker.add(m);
            }
        }
        assert_eq!(checker.elements(), &[1, 2, 4, 8, 13, 21]);
    }

    #[test]
    fn weak_mode_matches_full_verifier() {
        let p = Params::weak(2, 2).unwrap();
        let mut checker = IncrementalChecker::new(&p, DEFAULT_BUDGET);
        for m in 1..=12u64 {
            let mut candidate: Vec<u64> = checker.elements().to_vec();
            candidate.push(m);
            let full = is_weak_chg(&IntegerSet::new(candidate), &p, DEFAULT_BUDGET).verdict
                == Verdict::Holds;
            assert_eq!(checker.can_add(m).unwrap(), full, "mismatch at m={m}");
            if full {
                checker.add(m);
            }
        }
    }

    #[test]
    fn undo_restores_state() {
        let p = Params::strict(3, 2).unwrap();
        let mut checker = IncrementalChecker::new(&p, DEFAULT_BUDGET);
        for m in [1u64, 2, 4, 9] {
            checker.add(m);
        }
        let before: Vec<u64> = checker.elements().to_vec();
        let ok_before = checker.can_add(12).unwrap();
        let token = checker.add(12);
        checker.undo(token);
        assert_eq!(checker.elements(), before.as_slice());
        assert_eq!(checker.can_add(12).unwrap(), ok_before);
    }
}
