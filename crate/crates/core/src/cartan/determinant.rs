use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{cartan_exact, CartanError};
use crate::algebra::{determinant, evaluate_at_ones, smith_normal_form, Matrix, Monomial, Polynomial, RationalFunction, Var};
use crate::quiver::{LocallyGentleQuiver, WeightFunction};

/// Product over full-relation cycles of `1 - (-1)^len w(C)` divided by the
/// product over no-relation cycles of `1 - w(C)`.
pub fn det_formula(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> RationalFunction {
    let cycles = lgq.minimal_cycles();
    let numerator = cycles
        .full_relations
        .iter()
        .fold(Polynomial::one(), |acc, c| &acc * &c.determinant_factor_polynomial(w));
    let denominator = cycles.no_relations.iter().map(|c| c.determinant_factor(w)).collect();
    RationalFunction::new(numerator, denominator)
}

/// Determinant of [`cartan_exact`] by fraction-free elimination.
pub fn det_elimination(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> RationalFunction {
    determinant(cartan_exact(lgq, w).entries())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalizationReport {
    /// elimination determinant equals the product of cycle factors
    pub determinant_matches: bool,
    /// invariant factors at all weights 1, Cartan matrix then diagonal form
    pub cartan_invariants: Vec<BigInt>,
    pub diagonal_invariants: Vec<BigInt>,
}

impl DiagonalizationReport {
    pub fn passed(&self) -> bool {
        self.determinant_matches && self.cartan_invariants == self.diagonal_invariants
    }
}

/// Checks that a gentle Cartan matrix behaves like the diagonal matrix of its
/// full-relation cycle factors: same determinant, and integrally equivalent
/// once every indeterminate is set to 1.
pub fn verify_diagonalization(
    lgq: &LocallyGentleQuiver,
    w: &WeightFunction,
) -> Result<DiagonalizationReport, CartanError> {
    if !lgq.is_gentle() {
        return Err(CartanError::NotGentle);
    }
    let cycles = lgq.minimal_cycles().full_relations;
    let product = cycles
        .iter()
        .fold(Polynomial::one(), |acc, c| &acc * &c.determinant_factor_polynomial(w));
    let cartan = cartan_exact(lgq, w);
    let determinant_matches = determinant(cartan.entries()) == RationalFunction::from(product);
    let at_ones = evaluate_at_ones(cartan.entries()).expect("gentle Cartan entries are polynomials");
    let n = cartan.size().max(cycles.len());
    let diag: Vec<BigInt> = cycles
        .iter()
        .map(|c| if c.len() % 2 == 1 { BigInt::from(2) } else { BigInt::zero() })
        .chain(std::iter::repeat(BigInt::one()))
        .take(n)
        .collect();
    let diagonal = Matrix::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { BigInt::zero() });
    Ok(DiagonalizationReport {
        determinant_matches,
        cartan_invariants: smith_normal_form(&at_ones),
        diagonal_invariants: smith_normal_form(&diagonal),
    })
}

/// Determinant specializations for the single-variable weighting by path length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollaries {
    /// determinant after sending every weight indeterminate to `q`
    pub cor1: RationalFunction,
    /// determinant at `q = 1`; `None` when the quiver is not gentle
    pub cor2: Option<BigInt>,
}

/// Determinant at weight 1: zero if some full-relation cycle has even length,
/// otherwise `2^(number of odd full-relation cycles)`.
pub fn corollary_two(lgq: &LocallyGentleQuiver) -> Result<BigInt, CartanError> {
    if !lgq.is_gentle() {
        return Err(CartanError::NotGentle);
    }
    let cycles = lgq.minimal_cycles().full_relations;
    if cycles.iter().any(|c| c.len() % 2 == 0) {
        return Ok(BigInt::zero());
    }
    Ok(BigInt::one() << cycles.len())
}

pub fn specialize_corollaries(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> Result<Corollaries, CartanError> {
    let q = Var::new("q");
    let map: HashMap<Var, Monomial> = w.vars().into_iter().map(|v| (v, Monomial::var(q))).collect();
    let wq = w
        .specialize(lgq.quiver(), &map)
        .expect("nonconstant weights stay nonconstant");
    let cor1 = det_formula(lgq, &wq);
    let cor2 = match corollary_two(lgq) {
        Ok(v) => {
            let at_one = cor1
                .as_polynomial()
                .expect("gentle determinant is a polynomial")
                .evaluate_all(&BigInt::one());
            if at_one != v {
                return Err(CartanError::Inconsistent(format!(
                    "determinant at q = 1 is {at_one}, cycle count predicts {v}"
                )));
            }
            Some(v)
        }
        Err(_) => None,
    };
    Ok(Corollaries { cor1, cor2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DenominatorFactor;
    use crate::catalog;
    use crate::quiver::Quiver;

    fn qp(e: u32) -> Polynomial {
        Polynomial::monomial(Monomial::power_of(Var::new("q"), e))
    }

    #[test]
    fn two_triangles_determinant() {
        let (lgq, w) = catalog::load(catalog::TWO_TRIANGLES);
        let expected = RationalFunction::new(
            (&Polynomial::one() + &qp(3)).pow(2),
            vec![DenominatorFactor::one_minus(Monomial::power_of(Var::new("q"), 6))],
        );
        assert_eq!(det_formula(&lgq, &w), expected);
        assert_eq!(det_elimination(&lgq, &w), expected);
        let c = specialize_corollaries(&lgq, &w).unwrap();
        assert_eq!(c.cor1, expected);
        assert_eq!(c.cor2, None);
    }

    #[test]
    fn gentle_loop_determinant() {
        let (lgq, w) = catalog::load(catalog::GENTLE_LOOP);
        let expected = RationalFunction::from(&Polynomial::one() + &qp(1));
        assert_eq!(det_formula(&lgq, &w), expected);
        assert_eq!(det_elimination(&lgq, &w), expected);
        let r = verify_diagonalization(&lgq, &w).unwrap();
        assert!(r.passed());
        assert_eq!(r.cartan_invariants, vec![BigInt::from(2)]);
    }

    #[test]
    fn critical_pair_has_unit_determinant() {
        let (lgq, w) = catalog::load(catalog::CRITICAL_PAIR);
        assert_eq!(det_formula(&lgq, &w), RationalFunction::one());
        assert_eq!(det_elimination(&lgq, &w), RationalFunction::one());
    }

    #[test]
    fn non_gentle_input_is_rejected() {
        let (lgq, w) = catalog::load(catalog::FREE_LOOP);
        assert_eq!(verify_diagonalization(&lgq, &w).unwrap_err(), CartanError::NotGentle);
        assert_eq!(corollary_two(&lgq).unwrap_err(), CartanError::NotGentle);
    }

    #[test]
    fn even_cycle_kills_the_determinant_at_one() {
        // 2-cycle with full relations
        let lgq = Quiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[("a", "b"), ("b", "a")])
            .unwrap()
            .validate()
            .unwrap();
        let w = WeightFunction::generic(lgq.quiver());
        let c = specialize_corollaries(&lgq, &w).unwrap();
        assert_eq!(c.cor2, Some(BigInt::zero()));
        assert_eq!(c.cor1, RationalFunction::from(&Polynomial::one() - &qp(2)));
        assert!(verify_diagonalization(&lgq, &w).unwrap().passed());
    }

    #[test]
    fn two_odd_cycles_give_four() {
        let lgq = Quiver::build(
            &["1", "2"],
            &[("a", "1", "1"), ("b", "2", "2"), ("c", "1", "2")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap()
        .validate()
        .unwrap();
        let w = WeightFunction::generic(lgq.quiver());
        assert_eq!(specialize_corollaries(&lgq, &w).unwrap().cor2, Some(BigInt::from(4)));
        assert!(verify_diagonalization(&lgq, &w).unwrap().passed());
    }
}
