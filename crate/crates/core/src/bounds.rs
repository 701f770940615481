//! Upper-bound and density formulas for C_h[g] sets, plus a finite
//! probability-space checker for the overlapping inequality.

use crate::combo::for_each_combination;
use crate::error::{Error, Result};

fn check_order(n: u64, h: u32, g: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParam("n must be at least 1".into()));
    }
    if h < 2 || g < 2 {
        return Err(Error::InvalidParam("h and g must be at least 2".into()));
    }
    if h > g {
        return Err(Error::ParamOrder { h, g });
    }
    Ok(())
}

/// Leading term of the upper bound for |A| over C_h[g] sets in [1,n]:
/// (g-1)^{1/h} n^{1-1/h}. The lower-order error term is excluded.
pub fn thm1_leading(n: u64, h: u32, g: u32) -> Result<f64> {
    check_order(n, h, g)?;
    let h = h as f64;
    let g = g as f64;
    Ok((g - 1.0).powf(1.0 / h) * (n as f64).powf(1.0 - 1.0 / h))
}

/// Largest a in [1,n] satisfying
/// a^{h/(h-1)} <= (n+l) ((g-1)^{1/(h-1)} + (h-1) a^{1/(h-1)} / (l+1)).
fn largest_feasible(n: u64, h: u32, g: u32, ell: u64) -> u64 {
    let hf = h as f64;
    let gf = g as f64;
    let coeff = (n + ell) as f64;
    let base = (gf - 1.0).powf(1.0 / (hf - 1.0));
    let slope = (hf - 1.0) / (ell + 1) as f64;
    let feasible = |a: u64| {
        let af = a as f64;
        af.powf(hf / (hf - 1.0)) <= coeff * (base + slope * af.powf(1.0 / (hf - 1.0)))
    };
    // a^{h/(h-1)} is convex and the right side concave in a, so the feasible
    // region is a prefix [1, a*]; a = 1 is always feasible.
    if feasible(n) {
        return n;
    }
    let (mut lo, mut hi) = (1u64, n); // feasible(lo), !feasible(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Rigorous finite-n upper bound for |A| of any C_h[g] set A ⊆ [1,n].
/// The inequality holds for the true A at every l, so minimizing the
/// implied size cap over a geometric l-grid keeps the bound valid;
/// coarseness can only loosen it.
pub fn thm1_rigorous(n: u64, h: u32, g: u32) -> Result<u64> {
    check_order(n, h, g)?;
    let mut bound = n;
    let mut ell = 1u64;
    while ell <= 2 * n {
        bound = bound.min(largest_feasible(n, h, g, ell));
        // geometric grid, ratio 1.05
        ell = (ell + 1).max((ell as f64 * 1.05).ceil() as u64);
    }
    Ok(bound)
}

/// Exponent of the weak-C_h[g] lower bound:
/// (1-1/h)(1-1/g)(1+1/(hg-1)) = (hg-h-g+1)/(hg-1).
pub fn thm2_exponent(h: u32, g: u32) -> f64 {
    let hg = (h as f64) * (g as f64);
    (hg - h as f64 - g as f64 + 1.0) / (hg - 1.0)
}

/// Sampling density p solving 2pn = n^{g+h-1} (2p)^{hg}, i.e.
/// p = (1/2) n^{(2-g-h)/(hg-1)}.
pub fn deletion_p(n: u64, h: u32, g: u32) -> f64 {
    let exponent = (2.0 - g as f64 - h as f64) / ((h as f64) * (g as f64) - 1.0);
    0.5 * (n as f64).powf(exponent)
}

/// σ_m and σ_1 for a family of events over a uniform finite space.
/// Events are bitmasks over the first `space_size` points (≤ 64).
pub fn overlap_sigma(space_size: u32, events: &[u64], m: usize) -> Result<(f64, f64)> {
    if space_size == 0 || space_size > 64 {
        return Err(Error::InvalidParam(
            "space size must be between 1 and 64".into(),
        ));
    }
    if m < 1 || m > events.len() {
        return Err(Error::InvalidParam(format!(
            "m must lie in [1, {}]",
            events.len()
        )));
    }
    let space_mask = if space_size == 64 {
        u64::MAX
    } else {
        (1u64 << space_size) - 1
    };
    let size = space_size as f64;
    let sigma_1: f64 = events
        .iter()
        .map(|&e| (e & space_mask).count_ones() as f64 / size)
        .sum();
    let mut sigma_m = 0.0;
    let indices: Vec<usize> = (0..events.len()).collect();
    for_each_combination(&indices, m, |subset| {
        let inter = subset.iter().fold(space_mask, |acc, &j| acc & events[j]);
        sigma_m += inter.count_ones() as f64 / size;
        true
    });
    Ok((sigma_m, sigma_1))
}

/// The Jensen lower bound for σ_m given σ_1: the falling-factorial binomial
/// when σ_1 >= m-1. Below m-1 the falling product can turn positive again
/// (an even number of negative factors) while σ_m may be 0, so only the
/// trivial bound survives there.
pub fn overlap_lower_bound(sigma_1: f64, m: usize) -> f64 {
    let b = falling_binom(sigma_1, m);
    if m == 0 || sigma_1 >= (m - 1) as f64 {
        b
    } else {
        b.min(0.0)
    }
}

/// The falling-factorial binomial x(x-1)...(x-m+1)/m!.
pub fn falling_binom(x: f64, m: usize) -> f64 {
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 0..m {
        num *= x - i as f64;
        den *= (i + 1) as f64;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_examples() {
        assert!((thm1_leading(10_000, 2, 2).unwrap() - 100.0).abs() < 1e-9);
        let v = thm1_leading(1000, 3, 3).unwrap();
        assert!((v - 2f64.powf(1.0 / 3.0) * 1000f64.powf(2.0 / 3.0)).abs() < 1e-9);
        assert!((v - 125.99) < 0.01);
        assert!((thm1_leading(100, 2, 5).unwrap() - 20.0).abs() < 1e-9);
    }

    #[test]
    fn leading_rejects_h_above_g() {
        assert!(matches!(
            thm1_leading(100, 3, 2),
            Err(Error::ParamOrder { .. })
        ));
        assert!(matches!(
            thm1_rigorous(100, 3, 2),
            Err(Error::ParamOrder { .. })
        ));
    }

    #[test]
    fn rigorous_examples() {
        assert_eq!(thm1_rigorous(1, 2, 2).unwrap(), 1);
        let v = thm1_rigorous(100, 2, 2).unwrap();
        assert!((10..=100).contains(&v));
        // exact Sidon maximum in [1,100] is known to be well below the bound
        let v6 = thm1_rigorous(1_000_000, 2, 2).unwrap();
        assert!((1000..=1100).contains(&v6), "v6 = {v6}");
    }

    #[test]
    fn rigorous_monotone_in_n_and_g() {
        let mut prev = 0;
        for n in (10..200).step_by(17) {
            let v = thm1_rigorous(n, 2, 2).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        assert!(thm1_rigorous(80, 2, 3).unwrap() >= thm1_rigorous(80, 2, 2).unwrap());
    }

    #[test]
    fn exponent_values() {
        assert!((thm2_exponent(2, 2) - 1.0 / 3.0).abs() < 1e-12);
        assert!((thm2_exponent(3, 3) - 0.5).abs() < 1e-12);
        let near_half = thm2_exponent(2, 1000);
        assert!(near_half > 0.4997 && near_half < 0.5);
        // product form equals the closed form
        for h in 2..6u32 {
            for g in 2..6u32 {
                let (hf, gf) = (h as f64, g as f64);
                let product = (1.0 - 1.0 / hf) * (1.0 - 1.0 / gf) * (1.0 + 1.0 / (hf * gf - 1.0));
                assert!((thm2_exponent(h, g) - product).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deletion_p_examples() {
        let p = deletion_p(1_000_000, 2, 2);
        assert!((p - 5e-5).abs() / 5e-5 < 1e-9);
        let p = deletion_p(100_000, 2, 3);
        assert!((p - 5e-4).abs() / 5e-4 < 1e-9);
    }

    #[test]
    fn deletion_p_defining_identity() {
        for &(n, h, g) in &[
            (1000u64, 2u32, 2u32),
            (5000, 2, 3),
            (77, 3, 3),
            (123456, 3, 4),
        ] {
            let p = deletion_p(n, h, g);
            let nf = n as f64;
            let lhs = 2.0 * p * nf;
            let rhs = nf.powi((g + h - 1) as i32) * (2.0 * p).powi((h * g) as i32);
            assert!(
                (lhs - rhs).abs() / lhs < 1e-9,
                "identity fails at ({n},{h},{g})"
            );
            let np = nf * p;
            let via_exp = 0.5 * nf.powf(thm2_exponent(h, g));
            assert!((np - via_exp).abs() / np < 1e-9);
        }
    }

    #[test]
    fn overlap_examples() {
        // two identical events of probability 1/2 over a 2-point space
        let (s2, s1) = overlap_sigma(2, &[0b01, 0b01], 2).unwrap();
        assert!((s2 - 0.5).abs() < 1e-12);
        assert!((s1 - 1.0).abs() < 1e-12);
        assert!(s2 >= falling_binom(s1, 2));

        // event j = { x in [0,16) : bit j of x set }
        let mut events = Vec::new();
        for j in 0..4u32 {
            let mut mask = 0u64;
            for x in 0..16u64 {
                if x >> j & 1 == 1 {
                    mask |= 1 << x;
                }
            }
            events.push(mask);
        }
        let (s2, s1) = overlap_sigma(16, &events, 2).unwrap();
        assert!((s2 - 1.5).abs() < 1e-12);
        assert!((s1 - 2.0).abs() < 1e-12);
        assert!(s2 >= falling_binom(s1, 2) - 1e-12);

        let (sm, s1) = overlap_sigma(8, &[0b1010_1010], 1).unwrap();
        assert!((sm - s1).abs() < 1e-12);
    }

    #[test]
    fn overlap_bound_vanishes_below_regime() {
        // Five events over a 10-point space with probabilities
        // 1, 1, 1/2, 0, 0: sigma_1 = 2.5 but sigma_5 = 0 because two events
        // are empty. The raw falling product at m = 5 is positive (two
        // negative factors), so it is not a valid bound here; the clamped
        // form is.
        let full = (1u64 << 10) - 1;
        let events = [full, full, 0b11111, 0, 0];
        let (s5, s1) = overlap_sigma(10, &events, 5).unwrap();
        assert_eq!(s5, 0.0);
        assert!((s1 - 2.5).abs() < 1e-12);
        assert!(falling_binom(s1, 5) > 0.0);
        assert_eq!(overlap_lower_bound(s1, 5), 0.0);
        assert!(s5 >= overlap_lower_bound(s1, 5));
        // inside the regime the two forms agree
        assert_eq!(overlap_lower_bound(3.0, 2), falling_binom(3.0, 2));
    }

    #[test]
    fn exponent_sits_between_known_bounds() {
        for h in 2..7u32 {
            for g in 2..7u32 {
                let e = thm2_exponent(h, g);
                let (hf, gf) = (h as f64, g as f64);
                assert!(e < 1.0 - 1.0 / hf);
                assert!(e > (1.0 - 1.0 / hf) * (1.0 - 1.0 / gf));
            }
        }
    }
}
