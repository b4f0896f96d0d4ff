//! Exact computation of Koszul homology, minimal generator counts and
//! complete intersection defects for Artinian local algebras over `F_p`.
//!
//! The layers build on each other:
//!
//! - [`linalg`]: matrices and echelonized subspaces over a prime field.
//! - [`poly`]: truncated power series `k[[Y]]/m^D` and the expression parser.
//! - [`algebra`]: local algebras `k[[Y]]/I`, ideals, `ν`, quotients, tensor
//!   products and presentation lifts.
//! - [`koszul`]: Koszul complexes and their homology.
//! - [`invariants`]: the complete intersection defect two ways and the
//!   `ν(H_1)` lower bound checks.
//! - [`tor`]: `Tor_1(R/I, R/J)` via `(I∩J)/IJ` and via the diagonal.
//! - [`harness`]: instance files, random generation, runs and reports.

pub mod algebra;
pub mod harness;
pub mod invariants;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod tor;
