//! Exact symbolic arithmetic: polynomials over `Z`, rational functions with
//! denominators `prod (1 - c*m)`, truncated series, determinants and Smith forms.

mod matrix;
mod monomial;
mod polynomial;
mod rational;
mod series;
mod smith;

pub use matrix::{bareiss_determinant, determinant, evaluate_at_ones, Matrix};
pub use monomial::{Monomial, Var};
pub use polynomial::Polynomial;
pub use rational::{DenominatorFactor, RationalFunction};
pub use series::{series_expand, DegreeWeights, TruncatedSeries};
pub use smith::smith_normal_form;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("denominator factor {0} has weighted degree 0 and cannot be expanded")]
    NonExpandable(String),
    #[error("substitution turns a denominator factor into {0}")]
    DegenerateDenominator(String),
}
