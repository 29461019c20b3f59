//! Rational functions whose denominators are products of factors `1 - c*m`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use super::AlgebraError;

/// The denominator factor `1 - coeff*monomial`, with a nonconstant monomial.
///
/// The constant term is 1, so every factor is invertible as a formal power series.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DenominatorFactor {
    monomial: Monomial,
    coeff: BigInt,
}

impl DenominatorFactor {
    /// `1 - m`. Panics if `m` is constant.
    pub fn one_minus(m: Monomial) -> DenominatorFactor {
        DenominatorFactor::new(BigInt::one(), m)
    }

    /// `1 - c*m`. Panics if `m` is constant or `c` is zero.
    pub fn new(coeff: BigInt, monomial: Monomial) -> DenominatorFactor {
        assert!(!monomial.is_one(), "denominator factor needs a nonconstant monomial");
        assert!(!coeff.is_zero(), "denominator factor needs a nonzero coefficient");
        DenominatorFactor { monomial, coeff }
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::one_minus(&self.coeff, &self.monomial)
    }
}

impl fmt::Display for DenominatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_polynomial())
    }
}

impl fmt::Debug for DenominatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `numerator / prod(denominator)`.
///
/// Zero is stored with an empty denominator. Equality (`==`) is equality of
/// rational functions, decided by cross-multiplication, so it does not depend on
/// how far a value happens to be reduced.
#[derive(Clone)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Vec<DenominatorFactor>,
}

/// Multiset difference `a - b`; both sorted.
pub(crate) fn multiset_minus(a: &[DenominatorFactor], b: &[DenominatorFactor]) -> Vec<DenominatorFactor> {
    let mut out = Vec::new();
    let mut j = 0;
    for f in a {
        while j < b.len() && b[j] < *f {
            j += 1;
        }
        if j < b.len() && b[j] == *f {
            j += 1;
        } else {
            out.push(f.clone());
        }
    }
    out
}

/// Least common multiset (maximum multiplicities); both sorted.
pub(crate) fn multiset_lcm(a: &[DenominatorFactor], b: &[DenominatorFactor]) -> Vec<DenominatorFactor> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j] < a[i] {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push(a[i].clone());
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn product(factors: &[DenominatorFactor]) -> Polynomial {
    factors
        .iter()
        .fold(Polynomial::one(), |acc, f| &acc * &f.to_polynomial())
}

impl RationalFunction {
    pub fn zero() -> RationalFunction {
        RationalFunction::from(Polynomial::zero())
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from(Polynomial::one())
    }

    /// Builds `numerator / prod(denominator)` and cancels what divides exactly.
    pub fn new(numerator: Polynomial, mut denominator: Vec<DenominatorFactor>) -> RationalFunction {
        denominator.sort();
        let mut r = RationalFunction {
            numerator,
            denominator,
        };
        r.reduce();
        r
    }

    /// Builds without attempting any cancellation.
    pub fn new_unreduced(numerator: Polynomial, mut denominator: Vec<DenominatorFactor>) -> RationalFunction {
        if numerator.is_zero() {
            denominator.clear();
        }
        denominator.sort();
        RationalFunction {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[DenominatorFactor] {
        &self.denominator
    }

    pub fn denominator_polynomial(&self) -> Polynomial {
        product(&self.denominator)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial value if the denominator has cancelled completely.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.denominator.is_empty().then_some(&self.numerator)
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.denominator.len());
        let mut i = 0;
        while i < self.denominator.len() {
            let f = &self.denominator[i];
            let fp = f.to_polynomial();
            let mut j = i;
            while j < self.denominator.len() && self.denominator[j] == *f {
                match self.numerator.exact_div(&fp) {
                    Some(q) => self.numerator = q,
                    None => break,
                }
                j += 1;
            }
            let mut end = j;
            while end < self.denominator.len() && self.denominator[end] == *f {
                end += 1;
            }
            kept.extend_from_slice(&self.denominator[j..end]);
            i = end;
        }
        self.denominator = kept;
    }

    /// Mathematical equality by cross-multiplication after dropping shared factors.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        let only_self = multiset_minus(&self.denominator, &other.denominator);
        let only_other = multiset_minus(&other.denominator, &self.denominator);
        &self.numerator * &product(&only_other) == &other.numerator * &product(&only_self)
    }

    pub fn recip_of_factors(factors: Vec<DenominatorFactor>) -> RationalFunction {
        RationalFunction::new_unreduced(Polynomial::one(), factors)
    }

    /// Simultaneous substitution into numerator and denominator.
    ///
    /// Fails when a denominator factor stops having the shape `1 - c*m` with `m`
    /// nonconstant, unless it collapses to the unit `±1`.
    pub fn substitute(&self, map: &HashMap<Var, Polynomial>) -> Result<RationalFunction, AlgebraError> {
        let mut num = self.numerator.substitute(map);
        let mut den = Vec::with_capacity(self.denominator.len());
        for f in &self.denominator {
            let image = Polynomial::term(f.coeff.clone(), f.monomial.clone()).substitute(map);
            let factor = &Polynomial::one() - &image;
            if let Some(k) = factor.as_constant() {
                if k.is_one() {
                    continue;
                }
                if k == -BigInt::one() {
                    num = -num;
                    continue;
                }
                return Err(AlgebraError::DegenerateDenominator(factor.to_string()));
            }
            match image.as_term() {
                Some((c, m)) if !m.is_one() => den.push(DenominatorFactor::new(c.clone(), m.clone())),
                _ => return Err(AlgebraError::DegenerateDenominator(factor.to_string())),
            }
        }
        Ok(RationalFunction::new(num, den))
    }

    /// Multiplies every indeterminate in `vars` by -1.
    pub fn negate_vars(&self, vars: &[Var]) -> RationalFunction {
        let map: HashMap<Var, Polynomial> = vars.iter().map(|&v| (v, -Polynomial::var(v))).collect();
        self.substitute(&map)
            .expect("sign changes keep denominator factors in shape")
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.numerator.vars();
        vs.extend(self.denominator.iter().flat_map(|f| f.monomial.vars()));
        vs.sort();
        vs.dedup();
        vs
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Vec::new(),
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denominator == rhs.denominator {
            return RationalFunction::new(&self.numerator + &rhs.numerator, self.denominator.clone());
        }
        let lcm = multiset_lcm(&self.denominator, &rhs.denominator);
        let a = &self.numerator * &product(&multiset_minus(&lcm, &self.denominator));
        let b = &rhs.numerator * &product(&multiset_minus(&lcm, &rhs.denominator));
        RationalFunction::new(&a + &b, lcm)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.denominator.clone();
        den.extend_from_slice(&rhs.denominator);
        RationalFunction::new(&self.numerator * &rhs.numerator, den)
    }
}

impl fmt::Display for RationalFunction {
    /// `num / (1 - m1)*(1 - m2)`; a numerator with several terms is parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.num_terms() > 1 {
            write!(f, "({}) / ", self.numerator)?;
        } else {
            write!(f, "{} / ", self.numerator)?;
        }
        for (k, d) in self.denominator.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
