//! Counting-function statistics over prefixes of (would-be infinite)
//! C_h[g] sequences: block counts over the N intervals of length N
//! partitioning [0, N²), the class-count inequality they satisfy, and the
//! normalized counting statistic with its infimum estimate τ.

use std::fmt::Write as _;

use crate::combo::binomial;
use crate::error::{Error, Result};
use crate::set::{IntegerSet, Params};

#[derive(Debug, Clone)]
pub struct BlockProfile {
    /// Number of blocks N; block ν covers [(ν-1)N, νN).
    pub n_blocks: u64,
    pub counts: Vec<u64>,
    pub h: u32,
    pub g: u32,
    /// Σ_ν C(A_ν, h) — the number of "small" h-subsets.
    pub lhs: u64,
    /// (g-1) · C(N-1, h-1) — the class-count cap for C_h[g] sets.
    pub rhs: u64,
    /// Σ_ν A_ν^h.
    pub power_sum: u64,
}

/// A(x) = |{ a in A : a <= x }|.
pub fn counting_function(a: &IntegerSet, x: u64) -> u64 {
    a.elements().partition_point(|&e| e <= x) as u64
}

/// Block counts of `a` over the half-open partition of [0, N²) into N
/// intervals of length N. The paper's closed intervals overlap at the
/// multiples of N; the half-open reading makes A_ν = A(νN) - A((ν-1)N)
/// an exact partition.
pub fn block_profile(a: &IntegerSet, n_blocks: u64, p: &Params) -> Result<BlockProfile> {
    if n_blocks < 2 {
        return Err(Error::InvalidParam("N must be at least 2".into()));
    }
    let bound = n_blocks * n_blocks;
    if let Some(max) = a.max() {
        if max >= bound {
            return Err(Error::ElementOutOfRange {
                element: max,
                bound,
            });
        }
    }
    let mut counts = Vec::with_capacity(n_blocks as usize);
    let elems = a.elements();
    for nu in 1..=n_blocks {
        let lo = elems.partition_point(|&e| e < (nu - 1) * n_blocks);
        let hi = elems.partition_point(|&e| e < nu * n_blocks);
        counts.push((hi - lo) as u64);
    }
    let lhs = counts.iter().map(|&c| binomial(c, p.h as u64)).sum();
    let rhs = (p.g as u64 - 1) * binomial(n_blocks - 1, p.h as u64 - 1);
    let power_sum = counts.iter().map(|&c| c.pow(p.h)).sum();
    Ok(BlockProfile {
        n_blocks,
        counts,
        h: p.h,
        g: p.g,
        lhs,
        rhs,
        power_sum,
    })
}

/// A(x) (log x)^{1/h} / x^{1-1/h}, natural logarithm.
pub fn thm3_statistic(a: &IntegerSet, x: u64, h: u32) -> f64 {
    assert!(x >= 2, "statistic needs x >= 2");
    let count = counting_function(a, x) as f64;
    let xf = x as f64;
    let hf = h as f64;
    count * xf.ln().powf(1.0 / hf) / xf.powf(1.0 - 1.0 / hf)
}

/// Finite-data upper estimate of τ(m): the minimum of the statistic over
/// the sampled x values at or above m.
pub fn tau(a: &IntegerSet, m: u64, h: u32, sample_xs: &[u64]) -> Result<f64> {
    let mut best: Option<f64> = None;
    for &x in sample_xs {
        if x < m.max(2) {
            continue;
        }
        let v = thm3_statistic(a, x, h);
        best = Some(match best {
            Some(b) => b.min(v),
            None => v,
        });
    }
    best.ok_or(Error::EmptySample)
}

/// Default sampling grid for τ: geometric with ratio 2 from m to hi.
pub fn geometric_grid(m: u64, hi: u64) -> Vec<u64> {
    let mut xs = Vec::new();
    let mut x = m.max(2);
    while x < hi {
        xs.push(x);
        x = x.saturating_mul(2);
    }
    xs.push(hi.max(2));
    xs.dedup();
    xs
}

/// CSV: `nu,count` rows followed by a `N,h,g,lhs,rhs,power_sum` summary.
pub fn profile_to_csv(profile: &BlockProfile) -> String {
    let mut out = String::from("nu,count\n");
    for (i, c) in profile.counts.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, c);
    }
    let _ = writeln!(out, "N,h,g,lhs,rhs,power_sum");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        profile.n_blocks, profile.h, profile.g, profile.lhs, profile.rhs, profile.power_sum
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec())
    }

    #[test]
    fn counting_function_examples() {
        let a = set(&[1, 2, 5, 11]);
        assert_eq!(counting_function(&a, 5), 3);
        assert_eq!(counting_function(&a, 0), 0);
        let full: IntegerSet = (0..100).collect();
        assert_eq!(counting_function(&full, 49), 50);
    }

    #[test]
    fn block_profile_example() {
        let p = Params::strict(2, 2).unwrap();
        let profile = block_profile(&set(&[0, 1, 4, 8]), 3, &p).unwrap();
        assert_eq!(profile.counts, vec![2, 1, 1]);
        assert_eq!(profile.lhs, 1);
        assert_eq!(profile.rhs, 2);
        assert_eq!(profile.power_sum, 4 + 1 + 1);
    }

    #[test]
    fn block_profile_empty_and_spread() {
        let p = Params::strict(2, 2).unwrap();
        let profile = block_profile(&IntegerSet::empty(), 4, &p).unwrap();
        assert!(profile.counts.iter().all(|&c| c == 0));
        assert_eq!(profile.lhs, 0);

        // one element per block
        let a = set(&[0, 4, 8, 12]);
        let profile = block_profile(&a, 4, &p).unwrap();
        assert_eq!(profile.counts, vec![1, 1, 1, 1]);
        assert_eq!(profile.lhs, 0);
    }

    #[test]
    fn block_profile_totals_match_counting_function() {
        let a = set(&[0, 3, 7, 8, 15]);
        let p = Params::strict(2, 2).unwrap();
        let profile = block_profile(&a, 4, &p).unwrap();
        let total: u64 = profile.counts.iter().sum();
        assert_eq!(total, counting_function(&a, 15));
    }

    #[test]
    fn block_profile_range_check() {
        let p = Params::strict(2, 2).unwrap();
        assert!(matches!(
            block_profile(&set(&[9]), 3, &p),
            Err(Error::ElementOutOfRange {
                element: 9,
                bound: 9
            })
        ));
    }

    #[test]
    fn statistic_examples() {
        // full interval: A(x) = x + 1 over [0, x]
        let x = (std::f64::consts::E * std::f64::consts::E).floor() as u64; // 7
        let full: IntegerSet = (0..=x).collect();
        let v = thm3_statistic(&full, x, 2);
        let expected = (x as f64 + 1.0) * (x as f64).ln().sqrt() / (x as f64).sqrt();
        assert!((v - expected).abs() < 1e-12);

        let single = set(&[1]);
        let v = thm3_statistic(&single, 2, 3);
        assert!((v - 2f64.ln().powf(1.0 / 3.0) / 2f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn tau_examples() {
        let a = set(&[1, 2, 5, 11, 22]);
        let xs = [4u64, 8, 16];
        let t = tau(&a, 4, 2, &xs).unwrap();
        let direct = xs
            .iter()
            .map(|&x| thm3_statistic(&a, x, 2))
            .fold(f64::INFINITY, f64::min);
        assert!((t - direct).abs() < 1e-12);

        // singleton sample
        let t = tau(&a, 8, 2, &[8]).unwrap();
        assert!((t - thm3_statistic(&a, 8, 2)).abs() < 1e-12);

        assert!(matches!(tau(&a, 100, 2, &[8]), Err(Error::EmptySample)));
    }

    #[test]
    fn tau_non_decreasing_in_m() {
        let a: IntegerSet = (0..200).map(|i| i * i).collect();
        let xs = geometric_grid(2, 30_000);
        let mut prev = f64::NEG_INFINITY;
        for m in [2u64, 10, 100, 1000] {
            let t = tau(&a, m, 2, &xs).unwrap();
            assert!(t >= prev);
            prev = t;
        }
    }
}
