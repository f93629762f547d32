//! Finite-field polynomial algebra at desk scale.
//!
//! The crate verifies, exhaustively where feasible, a family of claims about
//! square-free smooth polynomials in residue classes modulo an irreducible
//! `F` over `F_q`, and implements the recursive irreducible-polynomial
//! generators those claims support:
//!
//! - [`gf`]: construction of and arithmetic in `F_p` and `F_{p^n}`.
//! - [`polyring`]: the ring `F_q[X]` with factorization, enumeration, and
//!   exact counting formulas.
//! - [`residue`]: quotient fields `F_q[X]/F`, discrete logarithms,
//!   multiplicative characters, and exact character sums.
//! - [`apparatus`]: the subgroup/coset machinery behind the analytic
//!   argument, made concrete at small scale.
//! - [`bounds`]: the `(q, r)` case classification and the exact evaluation
//!   of the governing inequalities.
//! - [`verify`]: the residue-class verifier (candidate scan and
//!   subset-product reachability) and the sweep driver.
//! - [`sequences`]: the plus-1 and `h + N/h` irreducible-sequence
//!   generators, plus exhaustive branch exploration.
//! - [`suite`]: the end-to-end claim-verification suite used by the CLI and
//!   the acceptance tests.

pub mod apparatus;
pub mod arith;
pub mod bitring;
pub mod bounds;
pub mod exact;
pub mod gf;
pub mod polyring;
pub mod residue;
pub mod sequences;
pub mod verify;

pub use gf::{FFElement, FieldSpec};
pub use polyring::Poly;
