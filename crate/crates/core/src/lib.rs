//! Construction, verification, exact search and counting statistics for
//! C_h[g] and weak-C_h[g] integer sets — sets avoiding g translated
//! (and, in the weak case, pairwise-disjoint) copies of any h-element set.
//! Sidon sets are the case h = g = 2.

pub mod bounds;
pub mod combo;
pub mod construct;
pub mod error;
pub mod grid2d;
pub mod search;
pub mod seqstats;
pub mod set;
pub mod shape;
pub mod verify;

mod incremental;

pub use error::{Error, Result};
pub use set::{IntegerSet, Mode, Params};
pub use shape::{Shape, Witness};
pub use verify::{Verdict, ViolationReport};
