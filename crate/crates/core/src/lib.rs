//! Generalized Delzant construction: from a simple convex polytope, rational or
//! not, to the data of a symplectic quasifold, with numerical verification.

pub mod construction;
pub mod corpus;
pub mod field;
pub mod geometry;
pub mod lattice;
pub mod plot;
pub mod polytope;
pub mod report;
pub mod verify;
