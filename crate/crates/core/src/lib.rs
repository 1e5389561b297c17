//! Generalized toric codes over finite fields.
//!
//! A generalized toric code `C_U` is obtained by evaluating the monomials
//! `Y^u`, `u` in a subset `U` of `H = {0, .., q-2}^r`, at every point of the
//! torus `(F_q^*)^r`. Such codes are exactly the ideals of
//! `F_q[X_1..X_r] / (X_i^{q-1} - 1)`, their duals are again generalized
//! toric codes, and none of them is self-dual.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: `F_q` with exp/log tables and a fixed primitive element;
//! * [`exponents`]: the grid `H`, reduction, the involution `sigma`, dual
//!   exponent sets, the canonical ordering and polytope lattice points;
//! * [`linalg`]: dense matrices and Gaussian elimination over `F_q`;
//! * [`codes`]: evaluation matrix, code specs, encoding, shifts, convolution;
//! * [`structure`]: bilinear form, dual codes, ideal recovery, self-duality;
//! * [`distance`]: exact and certified minimum-distance engines;
//! * [`example`]: the `F_5`, `r = 2` reference instance.

pub mod codes;
pub mod distance;
pub mod example;
pub mod exponents;
pub mod field;
pub mod linalg;
pub mod structure;

pub use codes::{CodeError, CodeSpec, Codeword, EvaluationMatrix, Torus};
pub use distance::{Budget, DistanceError, DistanceResult, Method, WeightDistribution};
pub use exponents::{ExponentError, ExponentSet, ExponentVector, Grid, OrderedH, Polytope};
pub use field::{make_field, FieldElement, FieldError, FiniteField};
pub use linalg::Matrix;
pub use structure::{DualityReport, StructureError};
