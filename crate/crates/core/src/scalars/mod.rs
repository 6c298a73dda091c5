//! Exact scalars: Laurent polynomials in `q^{1/2}` over the Gaussian
//! rationals, formal square roots, and denominators in `q^{1/2}`.

mod gauss;
mod laurent;
mod radical;
mod scalar;
mod upoly;

use thiserror::Error;

pub use gauss::GaussRational;
pub use laurent::{EvalEnv, Laurent, Monomial, Var};
pub use radical::{Radical, RadicalSum};
pub use scalar::{EvalOutcome, Scalar};
pub use upoly::UPoly;

pub use num_complex::Complex64;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("evaluation at q = 0")]
    ZeroBase,
    #[error("symbol {0:?} has no value")]
    UnboundSymbol(Var),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} is not a polynomial in q^(1/2)")]
    NonInvertible(String),
    #[error("square root of a value that already carries radicals")]
    NestedRadical,
    #[error("denominator vanishes at the evaluation point")]
    Singular,
    #[error("evaluation produced a non-finite value")]
    NonFinite,
    #[error("no finite value at q = 1: {0}")]
    Divergent(String),
}

/// Exact rational `n/d` as a [`BigRational`].
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
