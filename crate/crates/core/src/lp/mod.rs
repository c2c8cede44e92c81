//! Exact linear programming: a rational simplex, forest-row separation, and
//! the degree-bounded spanning-tree relaxation solved by cutting planes.

mod lpa;
mod separation;
mod simplex;

pub use lpa::{CutOutcome, Lpa, LpaPoint};
pub use separation::{excess, separate_forest, separate_forest_all, separate_forest_exhaustive, ForestCut};
pub use simplex::{is_farkas_certificate, rank, simplex_solve, LinearProgram, LpOutcome, LpSolution, Row, Sense};
