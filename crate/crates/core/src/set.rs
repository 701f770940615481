//! The universal set object: a strictly increasing sequence of non-negative
//! 64-bit integers, plus the text file format shared by all CLI commands.

use std::fmt;

use crate::error::{Error, Result};

/// A finite set of non-negative integers, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    elements: Vec<u64>,
    n_hint: Option<u64>,
}

impl IntegerSet {
    /// Builds a set from arbitrary input, sorting and deduplicating.
    pub fn new(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntegerSet {
            elements,
            n_hint: None,
        }
    }

    /// Builds a set with a declared universe bound `n` (inclusive).
    pub fn with_hint(elements: Vec<u64>, n: u64) -> Result<Self> {
        let set = IntegerSet::new(elements);
        if let Some(&max) = set.elements.last() {
            if max > n {
                return Err(Error::InvalidSet(format!(
                    "element {max} exceeds the universe bound {n}"
                )));
            }
        }
        Ok(IntegerSet {
            n_hint: Some(n),
            ..set
        })
    }

    pub fn empty() -> Self {
        IntegerSet::new(Vec::new())
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn n_hint(&self) -> Option<u64> {
        self.n_hint
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The set `{ a + c : a in self }`.
    pub fn translate(&self, c: u64) -> Self {
        IntegerSet {
            elements: self.elements.iter().map(|&a| a + c).collect(),
            n_hint: None,
        }
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &IntegerSet) -> Self {
        IntegerSet {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&a| !other.contains(a))
                .collect(),
            n_hint: self.n_hint,
        }
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// Parses the set file format: one decimal integer per line, strictly
    /// increasing; lines starting with '#' and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value: u64 = line.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("expected a non-negative integer, got {line:?}"),
            })?;
            if let Some(&prev) = elements.last() {
                if value <= prev {
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: format!("elements must be strictly increasing ({prev} then {value})"),
                    });
                }
            }
            elements.push(value);
        }
        Ok(IntegerSet {
            elements,
            n_hint: None,
        })
    }
}

impl fmt::Display for IntegerSet {
    /// Serializes in the set file format (one element per line).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromIterator<u64> for IntegerSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        IntegerSet::new(iter.into_iter().collect())
    }
}

/// Whether the g translated copies must additionally be pairwise disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Weak,
}

/// The problem parameters (h, g) with the verification mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub h: u32,
    pub g: u32,
    pub mode: Mode,
}

impl Params {
    pub fn new(h: u32, g: u32, mode: Mode) -> Result<Self> {
        if h < 2 || g < 2 {
            return Err(Error::InvalidParam(format!(
                "h and g must both be at least 2, got h={h}, g={g}"
            )));
        }
        Ok(Params { h, g, mode })
    }

    pub fn strict(h: u32, g: u32) -> Result<Self> {
        Params::new(h, g, Mode::Strict)
    }

    pub fn weak(h: u32, g: u32) -> Result<Self> {
        Params::new(h, g, Mode::Weak)
    }

    pub fn swapped(&self) -> Params {
        Params {
            h: self.g,
            g: self.h,
            mode: self.mode,
        }
    }
}
