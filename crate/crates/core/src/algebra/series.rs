//! Power series truncated at a bound on weighted total degree.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use super::rational::RationalFunction;
use super::AlgebraError;

/// Degree weighting of indeterminates; unlisted indeterminates get `default`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWeights {
    weights: HashMap<Var, u32>,
    default: u32,
}

impl Default for DegreeWeights {
    fn default() -> Self {
        DegreeWeights::uniform(1)
    }
}

impl DegreeWeights {
    pub fn uniform(default: u32) -> DegreeWeights {
        DegreeWeights {
            weights: HashMap::new(),
            default,
        }
    }

    pub fn with(mut self, v: Var, w: u32) -> DegreeWeights {
        self.weights.insert(v, w);
        self
    }

    pub fn of(&self, v: Var) -> u32 {
        self.weights.get(&v).copied().unwrap_or(self.default)
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(|v| self.of(v))
    }
}

/// A polynomial standing for a power series known up to weighted degree `bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: Polynomial,
    bound: u64,
    weights: DegreeWeights,
}

impl TruncatedSeries {
    pub fn new(poly: &Polynomial, weights: &DegreeWeights, bound: u64) -> TruncatedSeries {
        TruncatedSeries {
            poly: poly.truncate(|v| weights.of(v), bound),
            bound,
            weights: weights.clone(),
        }
    }

    pub fn zero(weights: &DegreeWeights, bound: u64) -> TruncatedSeries {
        TruncatedSeries::new(&Polynomial::zero(), weights, bound)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound.min(other.bound);
        TruncatedSeries::new(&(&self.poly + &other.poly), &self.weights, bound)
    }

    /// Product truncated at the smaller of the two bounds.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound.min(other.bound);
        let w = &self.weights;
        let mut out = Polynomial::zero();
        for (m1, c1) in self.poly.terms() {
            let d1 = w.degree(m1);
            if d1 > bound {
                continue;
            }
            for (m2, c2) in other.poly.terms() {
                if d1 + w.degree(m2) <= bound {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        TruncatedSeries {
            poly: out,
            bound,
            weights: w.clone(),
        }
    }

    /// Adds `term` (already a polynomial) if within the bound.
    pub fn add_poly(&mut self, p: &Polynomial) {
        let t = p.truncate(|v| self.weights.of(v), self.bound);
        self.poly.add_assign_ref(&t);
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg > {})", self.poly, self.bound)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Expands `r` as a power series up to weighted degree `bound`.
///
/// Each factor `1/(1 - c*m)` becomes `sum_k (c*m)^k`; this needs `m` of positive
/// weighted degree.
pub fn series_expand(
    r: &RationalFunction,
    weights: &DegreeWeights,
    bound: u64,
) -> Result<TruncatedSeries, AlgebraError> {
    let mut acc = TruncatedSeries::new(r.numerator(), weights, bound);
    for f in r.denominator() {
        let d = weights.degree(f.monomial());
        if d == 0 {
            return Err(AlgebraError::NonExpandable(f.to_string()));
        }
        let mut geometric = Polynomial::zero();
        let mut k = 0u32;
        while (k as u64) * d <= bound {
            let c: BigInt = Pow::pow(f.coeff().clone(), k);
            geometric.add_term(f.monomial().pow(k), c);
            k += 1;
        }
        if acc.poly.is_zero() {
            break;
        }
        acc = acc.mul(&TruncatedSeries {
            poly: geometric,
            bound,
            weights: weights.clone(),
        });
    }
    Ok(acc)
}
