//! Exact computation in Thompson's groups `F` and `T`.
//!
//! Elements of `T` are stored as reduced marked tree pair diagrams
//! ([`MarkedPair`]). Everything else is built on top of them:
//!
//! * [`dyadic`] holds exact dyadic rationals and piecewise-linear circle
//!   homeomorphisms. Maps built from analytic generator formulas serve as an
//!   independent equality oracle for the combinatorial code.
//! * [`tree`] holds finite rooted binary trees in preorder encoding.
//! * [`diagram`] holds marked tree pair diagrams: reduction, multiplication,
//!   inversion and pcq factorization.
//! * [`word`] and [`rewrite`] hold words in the infinite generating set and
//!   two independent routes to the unique normal form: a geometric one
//!   (reduced diagram, then leaf exponents) and an algebraic one (relator
//!   rewriting, pumping, then caret-pair reductions).
//! * [`metric`] estimates word length and measures distortion of `F` in `T`
//!   and of the rotation subgroup.
//! * [`presentation`] lists the relators of both presentations of `T`.
//! * [`torsion`] computes element orders, balanced diagrams and conjugators
//!   to powers of the `c_i`.

pub mod diagram;
pub mod dyadic;
mod error;
pub mod metric;
pub mod presentation;
pub mod rewrite;
pub mod torsion;
pub mod tree;
pub mod word;

pub use diagram::MarkedPair;
pub use dyadic::{Dyadic, PlMap};
pub use error::{Error, Result};
pub use tree::Tree;
pub use word::{Letter, PcqForm, Word};
