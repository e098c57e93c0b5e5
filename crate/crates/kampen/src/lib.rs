//! Combinatorial machinery for small-cancellation group presentations:
//! free-group words over a finite alphabet, combinatorial 0/1/2-complexes,
//! maps with contours, van Kampen diagrams, S-maps with selection and
//! grading structures, explicit relator families, and bounded-diagram-search
//! word/conjugacy deciders.

pub mod complex;
pub mod decide;
pub mod diagram;
pub mod gmap;
pub mod presgen;
pub mod randgen;
pub mod rng;
pub mod smap;
pub mod words;

pub use words::{Alphabet, Letter, Word};
