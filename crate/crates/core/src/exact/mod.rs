//! Exact scalars over ℚ(i) and sparse linear algebra on a finite basis.

mod gaussian;
mod rank;
mod rational;
mod sparse;

pub use gaussian::{GaussianRational, ScalarOp};
pub use rank::{rank_of_span, real_rank_of_span, EchelonBasis};
pub use rational::Rational;
pub(crate) use sparse::collect_terms;
pub use sparse::{Ratio, SparseVector};
