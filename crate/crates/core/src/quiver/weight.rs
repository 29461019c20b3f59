use std::collections::HashMap;

use super::{ArrowIx, Quiver, QuiverError};
use crate::algebra::{Monomial, Polynomial, Var};

/// Assignment of a nonconstant monomial to every arrow, indexed like the arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    weights: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("expected {expected} weights, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("weight of arrow `{0}` is constant")]
    ConstantWeight(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

impl WeightFunction {
    /// Variable carrying the generic weight of the arrow named `arrow`.
    pub fn generic_var(arrow: &str) -> Var {
        Var::new(&format!("x_{arrow}"))
    }

    /// Arrow `e` gets the indeterminate `x_e`.
    pub fn generic(q: &Quiver) -> WeightFunction {
        WeightFunction {
            weights: q
                .arrow_ids()
                .map(|a| Monomial::var(Self::generic_var(q.arrow_name(a))))
                .collect(),
        }
    }

    /// Every arrow gets the same monomial.
    pub fn uniform(q: &Quiver, m: Monomial) -> Result<WeightFunction, WeightError> {
        Self::from_vec(q, vec![m; q.arrow_count()])
    }

    pub fn from_vec(q: &Quiver, weights: Vec<Monomial>) -> Result<WeightFunction, WeightError> {
        if weights.len() != q.arrow_count() {
            return Err(WeightError::WrongLength {
                expected: q.arrow_count(),
                got: weights.len(),
            });
        }
        if let Some(a) = q.arrow_ids().find(|a| weights[a.0].is_one()) {
            return Err(WeightError::ConstantWeight(q.arrow_name(a).into()));
        }
        Ok(WeightFunction { weights })
    }

    /// Weights given by arrow name; unnamed arrows keep the generic weight.
    pub fn from_names(q: &Quiver, named: &[(&str, Monomial)]) -> Result<WeightFunction, WeightError> {
        let mut w = Self::generic(q).weights;
        for (name, m) in named {
            let a = q
                .arrow_by_name(name)
                .ok_or_else(|| QuiverError::UnknownArrow((*name).into()))?;
            w[a.0] = m.clone();
        }
        Self::from_vec(q, w)
    }

    pub fn weight(&self, a: ArrowIx) -> &Monomial {
        &self.weights[a.0]
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.weights
    }

    pub fn path_weight(&self, path: &[ArrowIx]) -> Monomial {
        path.iter().fold(Monomial::one(), |acc, a| acc.mul(&self.weights[a.0]))
    }

    /// Applies an indeterminate-to-monomial substitution to every weight.
    pub fn specialize(&self, q: &Quiver, map: &HashMap<Var, Monomial>) -> Result<WeightFunction, WeightError> {
        let weights = self
            .weights
            .iter()
            .map(|m| {
                m.factors().iter().fold(Monomial::one(), |acc, &(v, e)| match map.get(&v) {
                    Some(image) => acc.mul(&image.pow(e)),
                    None => acc.mul(&Monomial::power_of(v, e)),
                })
            })
            .collect();
        Self::from_vec(q, weights)
    }

    /// Sends every weight indeterminate `v` to `-v`.
    pub fn negation_map(&self) -> HashMap<Var, Polynomial> {
        self.vars().into_iter().map(|v| (v, -Polynomial::var(v))).collect()
    }

    /// All indeterminates occurring in some weight, in declaration order.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.weights.iter().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
        vs.sort();
        vs.dedup();
        vs
    }
}
