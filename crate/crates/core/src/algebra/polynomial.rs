//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};

/// Element of `Z[vars]`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Polynomial {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(1, m)
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::monomial(Monomial::var(v))
    }

    /// `1 - c*m`, the shape of every denominator factor.
    pub fn one_minus(c: &BigInt, m: &Monomial) -> Polynomial {
        &Polynomial::one() - &Polynomial::term(c.clone(), m.clone())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The polynomial's value if it is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Single term `(c, m)` if the polynomial has exactly one term.
    pub fn as_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        // multiplying by a monomial preserves the term order
        Polynomial {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if divisor.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return None;
                }
                out.insert(m.div(lm)?, q);
            }
            return Some(Polynomial { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let (qc, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Simultaneous substitution; indeterminates absent from `map` are kept.
    pub fn substitute(&self, map: &HashMap<Var, Polynomial>) -> Polynomial {
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                match map.get(&v) {
                    Some(image) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                acc = acc.mul_term(&BigInt::one(), &Monomial::from_factors(kept));
            }
            out.add_assign_ref(&acc);
        }
        out
    }

    /// Value at a point where every indeterminate takes the value `value`.
    pub fn evaluate_all(&self, value: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * num_traits::pow(value.clone(), m.degree() as usize))
            .sum()
    }

    /// Drops every term whose weighted degree exceeds `bound`.
    pub fn truncate(&self, weight: impl Fn(Var) -> u32, bound: u64) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(&weight) <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        out.add_assign_ref(small);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        let mut v: Vec<(Monomial, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial {
            terms: v.into_iter().collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: ascending graded-lex order, `*` products, `^` exponents,
    /// e.g. `1 + 2*q^3 + q^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Polynomial {
        Polynomial::var(Var::new("q"))
    }

    fn qp(e: u32) -> Polynomial {
        q().pow(e)
    }

    #[test]
    fn difference_of_squares() {
        let one = Polynomial::one();
        let lhs = &(&one + &q()) * &(&one - &q());
        assert_eq!(lhs, &one - &qp(2));
    }

    #[test]
    fn additive_identity() {
        let p = &qp(3) + &Polynomial::constant(7);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn square_of_one_plus_q3() {
        let a = &Polynomial::one() + &qp(3);
        let expected = Polynomial::from_terms([
            (Monomial::one(), BigInt::from(1)),
            (Monomial::power_of(Var::new("q"), 3), BigInt::from(2)),
            (Monomial::power_of(Var::new("q"), 6), BigInt::from(1)),
        ]);
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn rendering_is_canonical() {
        let p = &(&Polynomial::one() + &qp(3).scale(&BigInt::from(2))) + &qp(6);
        assert_eq!(p.to_string(), "1 + 2*q^3 + q^6");
        assert_eq!((-&p).to_string(), "-1 - 2*q^3 - q^6");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let one = Polynomial::one();
        let num = &one - &qp(6);
        let den = &one - &qp(3);
        assert_eq!(num.exact_div(&den).unwrap(), &one + &qp(3));
        assert!(den.exact_div(&num).is_none());
        assert!((&one + &q()).exact_div(&(&one - &q())).is_none());
        assert!(num.exact_div(&Polynomial::zero()).is_none());
    }

    #[test]
    fn substitution() {
        let (xa, xb) = (Var::new("sub_xa"), Var::new("sub_xb"));
        let p = &Polynomial::var(xa) * &Polynomial::var(xb);
        let map: HashMap<Var, Polynomial> = [(xa, q()), (xb, q())].into_iter().collect();
        assert_eq!(p.substitute(&map), qp(2));

        // 1 - (-1)^1 q at q = 1 is 2
        let odd_factor = &Polynomial::one() + &q();
        let at_one: HashMap<Var, Polynomial> = [(Var::new("q"), Polynomial::one())].into();
        assert_eq!(odd_factor.substitute(&at_one), Polynomial::constant(2));
    }

    #[test]
    fn negating_t_flips_odd_t_degree() {
        let t = Var::new("t");
        let m = Monomial::from_factors([(Var::new("q"), 6), (t, 5)]);
        let p = Polynomial::monomial(m);
        let map: HashMap<Var, Polynomial> = [(t, -Polynomial::var(t))].into();
        assert_eq!(p.substitute(&map), -&p);
    }
}
