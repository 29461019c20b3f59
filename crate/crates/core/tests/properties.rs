use std::collections::HashMap;

use gentle_core::algebra::{
    bareiss_determinant, series_expand, DegreeWeights, DenominatorFactor, Matrix, Monomial, Polynomial,
    RationalFunction, Var,
};
use gentle_core::cartan::{det_formula, verify_duality};
use gentle_core::configurations::{critical_quiver_from, enumerate_configurations};
use gentle_core::quiver::{random_locally_gentle, CycleKind, LocallyGentleQuiver, MinimalCycles, WeightFunction};
use num_bigint::BigInt;
use proptest::prelude::*;

fn vars() -> [Var; 3] {
    [Var::new("q"), Var::new("t"), Var::new("u")]
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        let [q, t, u] = vars();
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(c, a, b, d)| (Monomial::from_factors([(q, a), (t, b), (u, d)]), BigInt::from(c))),
        )
    })
}

fn nonconstant_monomial() -> impl Strategy<Value = Monomial> {
    (0u32..3, 0u32..3, 0u32..2)
        .prop_filter("nonconstant", |&(a, b, c)| a + b + c > 0)
        .prop_map(|(a, b, c)| {
            let [q, t, u] = vars();
            Monomial::from_factors([(q, a), (t, b), (u, c)])
        })
}

fn rational() -> impl Strategy<Value = RationalFunction> {
    (poly(), prop::collection::vec(nonconstant_monomial(), 0..3))
        .prop_map(|(p, dens)| RationalFunction::new(p, dens.into_iter().map(DenominatorFactor::one_minus).collect()))
}

fn quiver() -> impl Strategy<Value = LocallyGentleQuiver> {
    (1usize..=6, 0usize..=12, any::<u64>()).prop_map(|(n, m, seed)| random_locally_gentle(n, m, seed))
}

fn cofactor_det(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Polynomial::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_are_multiplicative(a in rational(), b in rational(), bound in 0u64..8) {
        let w = DegreeWeights::default();
        let lhs = series_expand(&(&a * &b), &w, bound).unwrap();
        let rhs = series_expand(&a, &w, bound).unwrap().mul(&series_expand(&b, &w, bound).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(size in 1usize..=3, entries in prop::collection::vec(poly(), 9)) {
        let rows: Vec<Vec<Polynomial>> = (0..size).map(|i| entries[i * 3..i * 3 + size].to_vec()).collect();
        let m = Matrix::from_rows(rows.clone());
        prop_assert_eq!(bareiss_determinant(&m), cofactor_det(&rows));
    }

    #[test]
    fn equality_is_an_equivalence(a in rational(), b in rational(), extra in nonconstant_monomial()) {
        prop_assert!(a == a.clone());
        prop_assert_eq!(a == b, b == a);
        // the same value written with a spurious common factor
        let f = DenominatorFactor::one_minus(extra);
        let mut dens = a.denominator().to_vec();
        dens.push(f.clone());
        let padded = RationalFunction::new_unreduced(a.numerator() * &f.to_polynomial(), dens);
        prop_assert!(padded == a);
        prop_assert_eq!(padded == b, a == b);
        let c = &b + &RationalFunction::zero();
        prop_assert!(!(a == b && b == c) || a == c);
    }

    #[test]
    fn successors_partition_composable_arrows(lgq in quiver()) {
        let q = lgq.quiver();
        for a in q.arrow_ids() {
            let mut next: Vec<_> = q.composable_after(a).collect();
            let mut split: Vec<_> = lgq.permitted_successor(a).into_iter().chain(lgq.forbidden_successor(a)).collect();
            next.sort();
            split.sort();
            prop_assert_eq!(next, split);
            let mut prev: Vec<_> = q.composable_before(a).collect();
            let mut split: Vec<_> = lgq.permitted_predecessor(a).into_iter().chain(lgq.forbidden_predecessor(a)).collect();
            prev.sort();
            split.sort();
            prop_assert_eq!(prev, split);
        }
    }

    #[test]
    fn cycles_are_well_formed(lgq in quiver()) {
        let q = lgq.quiver();
        let cycles = lgq.minimal_cycles();
        for (list, kind) in [(&cycles.full_relations, CycleKind::FullRelations), (&cycles.no_relations, CycleKind::NoRelations)] {
            let mut owners = vec![0; q.arrow_count()];
            for c in list {
                prop_assert_eq!(c.kind(), kind);
                let a = c.arrows();
                for k in 0..a.len() {
                    let (x, y) = (a[k], a[(k + 1) % a.len()]);
                    prop_assert_eq!(q.target(x), q.source(y));
                    prop_assert_eq!(q.is_relation(x, y), kind == CycleKind::FullRelations);
                    owners[x.0] += 1;
                }
                prop_assert!(a.iter().all(|&x| q.arrow_name(a[0]) <= q.arrow_name(x)));
            }
            prop_assert!(owners.iter().all(|&k| k <= 1));
        }
        prop_assert_eq!(lgq.is_gentle(), cycles.no_relations.is_empty());
    }

    #[test]
    fn dual_is_an_involution_swapping_cycles(lgq in quiver()) {
        let w = WeightFunction::generic(lgq.quiver());
        let d = lgq.dual();
        prop_assert_eq!(&d.dual(), &lgq);
        prop_assert_eq!(d.quiver().validate().unwrap(), d.clone());
        let c = lgq.minimal_cycles();
        let e = d.minimal_cycles();
        prop_assert_eq!(
            MinimalCycles::signature(&c.full_relations, &w),
            MinimalCycles::signature(&e.no_relations, &w)
        );
        prop_assert_eq!(
            MinimalCycles::signature(&c.no_relations, &w),
            MinimalCycles::signature(&e.full_relations, &w)
        );
    }

    #[test]
    fn dual_determinant_is_inverse_after_sign_change(lgq in quiver()) {
        let w = WeightFunction::generic(lgq.quiver());
        let dual = det_formula(&lgq.dual(), &w);
        let neg: HashMap<Var, Polynomial> = w.negation_map();
        let product = &det_formula(&lgq, &w) * &dual.substitute(&neg).unwrap();
        prop_assert_eq!(product, RationalFunction::one());
    }

    #[test]
    fn duality_on_random_quivers(lgq in quiver()) {
        prop_assert!(verify_duality(&lgq, &WeightFunction::generic(lgq.quiver())));
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..=6, m in 0usize..=12, seed in any::<u64>()) {
        prop_assert_eq!(random_locally_gentle(n, m, seed), random_locally_gentle(n, m, seed));
    }
}

#[test]
fn closedness_is_dihedrally_invariant() {
    for n in 2..=5 {
        for c in enumerate_configurations(n) {
            for k in 0..2 * n {
                for reflect in [false, true] {
                    assert_eq!(c.transformed(k, reflect).is_closed(), c.is_closed(), "{c}");
                }
            }
        }
    }
}

#[test]
fn critical_quivers_have_even_vertex_counts() {
    for n in 1..=4 {
        for c in enumerate_configurations(n).into_iter().filter(|c| c.is_closed()) {
            let (lgq, _) = critical_quiver_from(&c).unwrap();
            assert_eq!(lgq.quiver().vertex_count(), n);
            assert!(lgq.is_critical());
            assert_eq!(n % 2, 0);
            let cycles = lgq.minimal_cycles();
            assert_eq!(cycles.full_relations[0].len(), 2 * n);
            assert_eq!(cycles.no_relations[0].len(), 2 * n);
        }
    }
}
