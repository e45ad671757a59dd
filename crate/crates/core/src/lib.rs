//! Exact computations with Z2-graded Lie, associative, A-infinity and
//! L-infinity structures viewed as codifferentials on tensor, symmetric and
//! exterior coalgebras.

pub mod bracket;
pub mod coalgebra;
pub mod cochain;
pub mod cohomology;
pub mod duality;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod par;
pub mod selftest;
pub mod signs;
pub mod space;
pub mod structures;

pub use cochain::{Cochain, InnerProduct, ParityRule};
pub use linalg::{Matrix, Rational};
pub use signs::{Bidegree, GradingForm, Parity, Permutation};
pub use space::{GradedSpace, Kind, Word};
