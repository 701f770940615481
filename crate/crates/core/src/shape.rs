//! Canonical representatives of translation-congruence classes of h-sets.
//!
//! A shape stores the nonzero deltas of an h-set normalized so its minimum
//! is 0; two h-sets are translates of each other iff they normalize to the
//! same shape.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    deltas: Vec<u64>,
}

impl Shape {
    /// Builds a shape from strictly increasing positive deltas.
    pub fn new(deltas: Vec<u64>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::InvalidShape("a shape needs h >= 2 points".into()));
        }
        if deltas[0] == 0 {
            return Err(Error::InvalidShape("deltas must be positive".into()));
        }
        if deltas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidShape(
                "deltas must be strictly increasing".into(),
            ));
        }
        Ok(Shape { deltas })
    }

    /// Canonical representative of the congruence class of `points`:
    /// sort, subtract the minimum, drop the leading zero.
    pub fn normalize(points: &[u64]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidShape("a shape needs h >= 2 points".into()));
        }
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidShape("duplicate points".into()));
        }
        let min = sorted[0];
        Shape::new(sorted[1..].iter().map(|&p| p - min).collect())
    }

    pub fn deltas(&self) -> &[u64] {
        &self.deltas
    }

    /// Number of points, h = deltas.len() + 1.
    pub fn h(&self) -> usize {
        self.deltas.len() + 1
    }

    /// The points of the canonical representative: {0} ∪ deltas.
    pub fn points(&self) -> Vec<u64> {
        let mut p = Vec::with_capacity(self.h());
        p.push(0);
        p.extend_from_slice(&self.deltas);
        p
    }

    /// The full difference set { x - y : x, y ∈ {0} ∪ deltas }, sorted.
    /// Symmetric around 0 and contains 0.
    pub fn difference_set(&self) -> Vec<i64> {
        let pos = self.positive_differences();
        let mut out: Vec<i64> = pos.iter().map(|&d| -(d as i64)).collect();
        out.push(0);
        out.extend(pos.iter().map(|&d| d as i64));
        out.sort_unstable();
        out
    }

    /// The positive half of the difference set.
    pub fn positive_differences(&self) -> Vec<u64> {
        let points = self.points();
        let mut out = Vec::new();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                out.push(points[j] - points[i]);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether the translates at offsets `k1` and `k2` share an element,
    /// i.e. k1 - k2 lies in the difference set.
    pub fn translates_intersect(&self, k1: u64, k2: u64) -> bool {
        let d = k1.abs_diff(k2);
        d == 0 || self.positive_differences().binary_search(&d).is_ok()
    }
}

/// A certified violation: a shape together with g offsets whose translates
/// all lie inside the witnessed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub shape: Shape,
    pub offsets: Vec<u64>,
    /// True iff the g translates are pairwise element-disjoint.
    pub disjoint: bool,
}

impl Witness {
    /// Re-checks the witness against `a`: every translate must lie in `a`,
    /// and when `disjoint` is set all h*g sums must be distinct.
    pub fn validates_against(&self, a: &crate::set::IntegerSet) -> bool {
        let points = self.shape.points();
        for &k in &self.offsets {
            if !points.iter().all(|&p| a.contains(k + p)) {
                return false;
            }
        }
        if self.disjoint {
            let mut sums: Vec<u64> = self
                .offsets
                .iter()
                .flat_map(|&k| points.iter().map(move |&p| k + p))
                .collect();
            let total = sums.len();
            sums.sort_unstable();
            sums.dedup();
            if sums.len() != total {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(Shape::normalize(&[5, 7, 10]).unwrap().deltas(), &[2, 5]);
        assert_eq!(Shape::normalize(&[0, 2, 5]).unwrap().deltas(), &[2, 5]);
        assert_eq!(Shape::normalize(&[3, 1]).unwrap().deltas(), &[2]);
    }

    #[test]
    fn normalize_rejects_duplicates() {
        assert!(matches!(
            Shape::normalize(&[4, 4, 7]),
            Err(Error::InvalidShape(_))
        ));
        assert!(Shape::normalize(&[9]).is_err());
    }

    #[test]
    fn difference_set_examples() {
        let s = Shape::new(vec![1]).unwrap();
        assert_eq!(s.difference_set(), vec![-1, 0, 1]);
        let s = Shape::new(vec![2, 5]).unwrap();
        assert_eq!(s.difference_set(), vec![-5, -3, -2, 0, 2, 3, 5]);
    }

    #[test]
    fn intersection_test_matches_difference_set() {
        let s = Shape::new(vec![2, 5]).unwrap();
        assert!(s.translates_intersect(10, 13)); // 3 ∈ X - X
        assert!(s.translates_intersect(13, 10));
        assert!(!s.translates_intersect(10, 14)); // 4 ∉ X - X
        assert!(s.translates_intersect(7, 7));
    }
}
