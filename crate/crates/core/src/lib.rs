//! Exact verification of a positive-entropy automorphism of a rational
//! surface over GF(32): field and polynomial arithmetic, lattice invariants
//! of the Coxeter element of E10, the cuspidal cubic model and the surface
//! checks, with structured reports.

pub mod cubic;
pub mod data;
pub mod gf2m;
pub mod lattice;
pub mod poly;
pub mod report;
pub mod suites;
pub mod surface;
