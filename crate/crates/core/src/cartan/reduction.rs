use super::CartanError;
use crate::algebra::{Monomial, Polynomial};
use crate::quiver::{ArrowIx, CycleKind, LocallyGentleQuiver, MinimalCycle, Quiver, VertexIx, WeightFunction};

/// Result of removing one full-relations cycle by merging two arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub quiver: LocallyGentleQuiver,
    pub weights: WeightFunction,
    /// each of the form `1 - (-1)^len w(C)`
    pub extracted_factors: Vec<Polynomial>,
    /// the arrow replacing the composite of the incoming arrow and the cycle arrow
    pub merged_arrow: Option<ArrowIx>,
}

impl ReductionOutcome {
    pub fn factor_product(&self) -> Polynomial {
        self.extracted_factors
            .iter()
            .fold(Polynomial::one(), |acc, f| &acc * f)
    }
}

/// All `(cycle, vertex)` pairs accepted by [`reduce_step`].
pub fn applicable_reductions(lgq: &LocallyGentleQuiver) -> Vec<(MinimalCycle, VertexIx)> {
    let q = lgq.quiver();
    let mut out = Vec::new();
    for c in lgq.minimal_cycles().full_relations {
        for v in q.vertex_ids() {
            if c.visits(q, v) == 1 {
                out.push((c.clone(), v));
            }
        }
    }
    out
}

/// Removes the full-relations cycle `cycle` at the vertex `v1`.
///
/// Let `p1` be the cycle arrow leaving `v1` and `q1` the arrow entering `v1`
/// from outside the cycle. Both are replaced by one arrow `s(q1) -> t(p1)` of
/// weight `w(q1) w(p1)`, which inherits the relations of `q1` on the left and of
/// `p1` on the right. Without `q1`, `p1` is simply deleted.
pub fn reduce_step(
    lgq: &LocallyGentleQuiver,
    w: &WeightFunction,
    cycle: &MinimalCycle,
    v1: VertexIx,
) -> Result<ReductionOutcome, CartanError> {
    let q = lgq.quiver();
    let cycles = lgq.minimal_cycles();
    if cycle.kind() != CycleKind::FullRelations || !cycles.full_relations.contains(cycle) {
        return Err(CartanError::PreconditionViolated(format!(
            "{} is not a full-relations cycle of the quiver",
            cycle.display(q)
        )));
    }
    if v1.0 >= q.vertex_count() {
        return Err(CartanError::PreconditionViolated(format!("no vertex #{}", v1.0)));
    }
    let visits = cycle.visits(q, v1);
    if visits != 1 {
        return Err(CartanError::PreconditionViolated(format!(
            "cycle {} passes vertex {} {visits} times",
            cycle.display(q),
            q.vertex_name(v1)
        )));
    }
    let p1 = *cycle.arrows().iter().find(|&&a| q.source(a) == v1).expect("visited once");
    let p0 = *cycle.arrows().iter().find(|&&a| q.target(a) == v1).expect("visited once");
    let q1 = q.in_arrows(v1).find(|&a| a != p0);

    let mut factors = vec![cycle.determinant_factor_polynomial(w)];
    if let Some(q1) = q1 {
        if let Some(other) = cycles.full_relations.iter().find(|c| c.contains(q1)) {
            factors.push(other.determinant_factor_polynomial(w));
        }
    }

    let removed = |a: ArrowIx| a == p1 || Some(a) == q1;
    let mut nq = Quiver::new();
    for v in q.vertex_ids() {
        nq.add_vertex(q.vertex_name(v)).expect("names are unique");
    }
    let mut image: Vec<Option<ArrowIx>> = vec![None; q.arrow_count()];
    let mut weights: Vec<Monomial> = Vec::new();
    for a in q.arrow_ids().filter(|&a| !removed(a)) {
        image[a.0] = Some(nq.add_arrow(q.arrow_name(a), q.source(a), q.target(a)).expect("names are unique"));
        weights.push(w.weight(a).clone());
    }
    let merged = q1.map(|q1| {
        let mut name = format!("{}.{}", q.arrow_name(q1), q.arrow_name(p1));
        while nq.arrow_by_name(&name).is_some() {
            name.push_str(".m");
        }
        weights.push(w.weight(q1).mul(w.weight(p1)));
        (q1, nq.add_arrow(&name, q.source(q1), q.target(p1)).expect("fresh name"))
    });
    let invalid = CartanError::ReductionInvalid;
    for (a, b) in q.relations() {
        if let (Some(a), Some(b)) = (image[a.0], image[b.0]) {
            nq.add_relation(a, b).map_err(invalid)?;
        }
    }
    if let Some((q1, bar)) = merged {
        for r in q.in_arrows(q.source(q1)) {
            if let Some(nr) = image[r.0] {
                if q.is_relation(r, q1) {
                    nq.add_relation(nr, bar).map_err(invalid)?;
                }
            }
        }
        for s in q.out_arrows(q.target(p1)) {
            if let Some(ns) = image[s.0] {
                if q.is_relation(p1, s) {
                    nq.add_relation(bar, ns).map_err(invalid)?;
                }
            }
        }
        if q.source(q1) == q.target(p1) && q.is_relation(p1, q1) {
            nq.add_relation(bar, bar).map_err(invalid)?;
        }
    }
    let validated = nq.validate().map_err(invalid)?;
    let weights = WeightFunction::from_vec(validated.quiver(), weights).expect("products of nonconstant weights");
    Ok(ReductionOutcome {
        quiver: validated,
        weights,
        extracted_factors: factors,
        merged_arrow: merged.map(|(_, bar)| bar),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::det_elimination;
    use crate::catalog;
    use crate::algebra::{RationalFunction, Var};

    fn check_identity(lgq: &LocallyGentleQuiver, w: &WeightFunction, out: &ReductionOutcome) {
        let lhs = det_elimination(lgq, w);
        let rhs = &RationalFunction::from(out.factor_product()) * &det_elimination(&out.quiver, &out.weights);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_triangles_reduce_to_merged_triangles() {
        let (lgq, w) = catalog::load(catalog::TWO_TRIANGLES);
        let q = lgq.quiver();
        let a_cycle = lgq
            .minimal_cycles()
            .full_relations
            .into_iter()
            .find(|c| q.arrow_name(c.arrows()[0]) == "a1")
            .unwrap();
        let out = reduce_step(&lgq, &w, &a_cycle, q.vertex_by_name("1").unwrap()).unwrap();
        let one_plus_q3 = &Polynomial::one() + &Polynomial::monomial(Monomial::power_of(Var::new("q"), 3));
        assert_eq!(out.factor_product(), one_plus_q3.pow(2));
        let bar = out.merged_arrow.unwrap();
        let nq = out.quiver.quiver();
        assert_eq!(nq.arrow_name(bar), "b3.a1");
        assert_eq!(out.weights.weight(bar).to_string(), "q^2");
        let (merged, _) = catalog::load(catalog::MERGED_TRIANGLES);
        let names = |q: &Quiver| {
            let mut r: Vec<(String, String)> = q
                .relations()
                .map(|(a, b)| (q.arrow_name(a).replace("b3.a1", "c"), q.arrow_name(b).replace("b3.a1", "c")))
                .collect();
            r.sort();
            r
        };
        assert_eq!(names(nq), names(merged.quiver()));
        assert!(out.quiver.minimal_cycles().full_relations.is_empty());
        check_identity(&lgq, &w, &out);
    }

    #[test]
    fn without_incoming_arrow_only_the_cycle_arrow_goes() {
        // full-relations 2-cycle between 1 and 2, with a tail 2 -> 3
        let lgq = Quiver::build(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")],
            &[("a", "b"), ("b", "a")],
        )
        .unwrap()
        .validate()
        .unwrap();
        let w = WeightFunction::generic(lgq.quiver());
        let c = lgq.minimal_cycles().full_relations[0].clone();
        let out = reduce_step(&lgq, &w, &c, VertexIx(0)).unwrap();
        assert_eq!(out.merged_arrow, None);
        assert_eq!(out.extracted_factors.len(), 1);
        assert_eq!(out.quiver.quiver().arrow_count(), 2);
        check_identity(&lgq, &w, &out);
    }

    #[test]
    fn doubly_visited_vertex_is_rejected() {
        let (lgq, w) = catalog::load(catalog::CRITICAL_PAIR);
        let c = lgq.minimal_cycles().full_relations[0].clone();
        assert!(matches!(
            reduce_step(&lgq, &w, &c, VertexIx(0)),
            Err(CartanError::PreconditionViolated(_))
        ));
        assert!(applicable_reductions(&lgq).is_empty());
    }

    #[test]
    fn no_relation_cycle_is_rejected() {
        let (lgq, w) = catalog::load(catalog::FREE_LOOP);
        let c = lgq.minimal_cycles().no_relations[0].clone();
        assert!(matches!(
            reduce_step(&lgq, &w, &c, VertexIx(0)),
            Err(CartanError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn gentle_loop_reduces_to_a_point() {
        let (lgq, w) = catalog::load(catalog::GENTLE_LOOP);
        let c = lgq.minimal_cycles().full_relations[0].clone();
        let out = reduce_step(&lgq, &w, &c, VertexIx(0)).unwrap();
        assert_eq!(out.quiver.quiver().arrow_count(), 0);
        check_identity(&lgq, &w, &out);
    }
}
