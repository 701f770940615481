//! Exact maximum-size C_h[g] / weak-C_h[g] subset search on [1,n].
//!
//! Depth-first branch and bound over include/exclude decisions, trying
//! large elements first with the include branch explored first. Prunes on
//! the remaining-element count and, in strict mode, on the rigorous
//! theorem bound applied to the remaining prefix interval.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::bounds::thm1_rigorous;
use crate::error::Result;
use crate::incremental::IncrementalChecker;
use crate::set::{IntegerSet, Mode, Params};
use crate::verify::DEFAULT_BUDGET;

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub size: usize,
    pub example: IntegerSet,
    /// False when the time budget expired before the search tree was
    /// exhausted; the reported set is then only the best found.
    pub optimal: bool,
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: u64,
    pub size: usize,
    pub optimal: bool,
    pub example: IntegerSet,
}

struct Searcher {
    checker: IncrementalChecker,
    best: Vec<u64>,
    deadline: Instant,
    timed_out: bool,
    /// caps[e] bounds how many elements of [1,e] any valid set can contain
    /// (strict mode only; the weak maximum can exceed the strict bound).
    caps: Option<Vec<u64>>,
}

impl Searcher {
    fn remaining_cap(&self, e: u64) -> u64 {
        match &self.caps {
            Some(caps) => e.min(caps[e as usize]),
            None => e,
        }
    }

    // e is the next element to decide; elements e, e-1, ..., 1 remain.
    fn dfs(&mut self, e: u64) -> Result<()> {
        if self.timed_out {
            return Ok(());
        }
        if Instant::now() >= self.deadline {
            self.timed_out = true;
            return Ok(());
        }
        let current = self.checker.elements().len();
        if e == 0 {
            if current > self.best.len() {
                self.best = self.checker.elements().to_vec();
            }
            return Ok(());
        }
        if current + self.remaining_cap(e) as usize <= self.best.len() {
            return Ok(());
        }
        if self.checker.can_add(e)? {
            let token = self.checker.add(e);
            self.dfs(e - 1)?;
            self.checker.undo(token);
        }
        self.dfs(e - 1)
    }
}

fn max_chg_warm(
    n: u64,
    p: &Params,
    time_budget: Duration,
    warm: Option<&IntegerSet>,
) -> Result<SearchOutcome> {
    // the property is symmetric in (h, g), so the strict bound applies with
    // the parameters ordered as the theorem requires
    let caps = if p.mode == Mode::Strict {
        let (h, g) = (p.h.min(p.g), p.h.max(p.g));
        let mut caps = Vec::with_capacity(n as usize + 1);
        caps.push(0);
        for e in 1..=n {
            caps.push(thm1_rigorous(e, h, g)?);
        }
        Some(caps)
    } else {
        None
    };
    let mut searcher = Searcher {
        checker: IncrementalChecker::new(p, DEFAULT_BUDGET),
        best: warm.map(|w| w.elements().to_vec()).unwrap_or_default(),
        deadline: Instant::now() + time_budget,
        timed_out: false,
        caps,
    };
    searcher.dfs(n)?;
    Ok(SearchOutcome {
        size: searcher.best.len(),
        example: IntegerSet::new(searcher.best.clone()),
        optimal: !searcher.timed_out,
    })
}

/// Maximum-cardinality valid subset of [1,n], exact unless the time budget
/// expires (then optimal=false and the best found is returned).
pub fn max_chg(n: u64, p: &Params, time_budget: Duration) -> Result<SearchOutcome> {
    max_chg_warm(n, p, time_budget, None)
}

/// One row per n = 1..n_max, warm-starting each search from the previous
/// row's solution; `time_budget` applies per row.
pub fn extremal_table(n_max: u64, p: &Params, time_budget: Duration) -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut warm: Option<IntegerSet> = None;
    for n in 1..=n_max {
        let outcome = max_chg_warm(n, p, time_budget, warm.as_ref())?;
        warm = Some(outcome.example.clone());
        rows.push(TableRow {
            n,
            size: outcome.size,
            optimal: outcome.optimal,
            example: outcome.example,
        });
    }
    Ok(rows)
}

/// CSV with header `n,size,optimal,example`; example is space-separated.
pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,size,optimal,example\n");
    for row in rows {
        let example: Vec<String> = row.example.elements().iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.n,
            row.size,
            row.optimal,
            example.join(" ")
        );
    }
    out
}
