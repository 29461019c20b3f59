//! Graded projective resolutions of simple modules, read off the
//! full-relation threads.
//!
//! The resolution of the simple module at `i` has `P_i` in degree 0 and, in
//! degree `d`, one projective for each full-relation thread from `i` of length at
//! least `d`, at the target of the thread's `d`-th arrow.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{series_expand, AlgebraError, DegreeWeights, Polynomial, TruncatedSeries};
use crate::cartan::cartan_exact;
use crate::quiver::{ArrowIx, LocallyGentleQuiver, VertexIx, WeightFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("at least one term must be requested")]
    NoTerms,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One projective summand `P_vertex<shift>`, reached along `path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub vertex: VertexIx,
    pub shift: i64,
    pub path: Vec<ArrowIx>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedResolution {
    pub base: VertexIx,
    /// `terms[d]` is the degree-`d` term; trailing empty terms are dropped
    pub terms: Vec<Vec<Summand>>,
    /// every thread ended within the requested number of terms
    pub finite: bool,
}

impl GradedResolution {
    /// Projective dimension when finite.
    pub fn length(&self) -> Option<usize> {
        self.finite.then(|| self.terms.len() - 1)
    }

    pub fn display<'a>(&'a self, lgq: &'a LocallyGentleQuiver) -> impl fmt::Display + 'a {
        ResolutionDisplay { res: self, lgq }
    }
}

struct ResolutionDisplay<'a> {
    res: &'a GradedResolution,
    lgq: &'a LocallyGentleQuiver,
}

impl fmt::Display for ResolutionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.lgq.quiver();
        for (d, term) in self.res.terms.iter().enumerate() {
            let parts: Vec<String> = term
                .iter()
                .map(|s| format!("P{}<{}>", q.vertex_name(s.vertex), s.shift))
                .collect();
            writeln!(f, "{d}: {}", parts.join(" + "))?;
        }
        if self.res.finite {
            write!(f, "finite, projective dimension {}", self.res.terms.len() - 1)
        } else {
            write!(f, "truncated after {} terms", self.res.terms.len())
        }
    }
}

/// Resolution of the simple module at `i`, truncated to `max_terms` terms.
pub fn resolution(lgq: &LocallyGentleQuiver, i: VertexIx, max_terms: usize) -> Result<GradedResolution, KoszulError> {
    let q = lgq.quiver();
    if i.0 >= q.vertex_count() {
        return Err(KoszulError::UnknownVertex(format!("#{}", i.0)));
    }
    if max_terms == 0 {
        return Err(KoszulError::NoTerms);
    }
    let mut terms = vec![vec![Summand {
        vertex: i,
        shift: 0,
        path: Vec::new(),
    }]];
    let mut finite = true;
    for start in q.out_arrows(i) {
        let mut path = vec![start];
        loop {
            let d = path.len();
            if d >= max_terms {
                finite = false;
                break;
            }
            if terms.len() <= d {
                terms.push(Vec::new());
            }
            let last = *path.last().expect("nonempty");
            terms[d].push(Summand {
                vertex: q.target(last),
                shift: -(d as i64),
                path: path.clone(),
            });
            match lgq.forbidden_successor(last) {
                Some(next) => path.push(next),
                None => break,
            }
        }
    }
    Ok(GradedResolution {
        base: i,
        terms,
        finite,
    })
}

/// Finite global dimension: no full-relations cycle.
pub fn gldim_finite(lgq: &LocallyGentleQuiver) -> bool {
    lgq.minimal_cycles().full_relations.is_empty()
}

/// Checks `sum_d (-1)^d sum_{summands s} w(s.path) C[s.vertex, j] = delta_ij`
/// up to weighted degree `bound`, for all `i, j`.
///
/// With every arrow weighted `t`, `w(s.path) = t^d` is the internal shift.
pub fn euler_characteristic_check(
    lgq: &LocallyGentleQuiver,
    w: &WeightFunction,
    degrees: &DegreeWeights,
    bound: u64,
) -> Result<bool, KoszulError> {
    let q = lgq.quiver();
    let n = q.vertex_count();
    let cartan = cartan_exact(lgq, w);
    let mut series = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            series.push(series_expand(cartan.entry(i, j), degrees, bound)?);
        }
    }
    let min_arrow_degree = q.arrow_ids().map(|a| degrees.degree(w.weight(a))).min().unwrap_or(1);
    // terms beyond this depth only contribute above the bound
    let depth = (bound / min_arrow_degree.max(1)) as usize + 2;
    for i in q.vertex_ids() {
        let res = resolution(lgq, i, depth)?;
        for j in 0..n {
            let mut acc = TruncatedSeries::zero(degrees, bound);
            for (d, term) in res.terms.iter().enumerate() {
                let sign = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
                for s in term {
                    let shift = TruncatedSeries::new(&Polynomial::term(sign.clone(), w.path_weight(&s.path)), degrees, bound);
                    acc = acc.add(&shift.mul(&series[s.vertex.0 * n + j]));
                }
            }
            let expected = if i.0 == j { Polynomial::one() } else { Polynomial::zero() };
            if acc.polynomial() != &expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, Var};
    use crate::catalog;
    use crate::quiver::Quiver;

    #[test]
    fn gentle_loop_resolution_never_ends() {
        let (lgq, _) = catalog::load(catalog::GENTLE_LOOP);
        let r = resolution(&lgq, VertexIx(0), 4).unwrap();
        assert!(!r.finite);
        assert_eq!(r.terms.len(), 4);
        for (d, term) in r.terms.iter().enumerate() {
            assert_eq!(term.len(), 1);
            assert_eq!(term[0].shift, -(d as i64));
            assert_eq!(term[0].vertex, VertexIx(0));
        }
        assert!(!gldim_finite(&lgq));
    }

    #[test]
    fn arrowless_vertex_resolves_itself() {
        let lgq = Quiver::build(&["v"], &[], &[]).unwrap().validate().unwrap();
        let r = resolution(&lgq, VertexIx(0), 1).unwrap();
        assert!(r.finite);
        assert_eq!(r.length(), Some(0));
        assert_eq!(r.display(&lgq).to_string(), "0: Pv<0>\nfinite, projective dimension 0");
    }

    #[test]
    fn errors() {
        let (lgq, _) = catalog::load(catalog::GENTLE_LOOP);
        assert!(matches!(resolution(&lgq, VertexIx(3), 2), Err(KoszulError::UnknownVertex(_))));
        assert_eq!(resolution(&lgq, VertexIx(0), 0).unwrap_err(), KoszulError::NoTerms);
    }

    #[test]
    fn free_loop_has_finite_global_dimension() {
        let (lgq, _) = catalog::load(catalog::FREE_LOOP);
        assert!(gldim_finite(&lgq));
        let r = resolution(&lgq, VertexIx(0), 5).unwrap();
        assert!(r.finite);
        assert_eq!(r.length(), Some(1));
    }

    #[test]
    fn chain_resolution_has_two_steps() {
        let lgq = Quiver::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")])
            .unwrap()
            .validate()
            .unwrap();
        let r = resolution(&lgq, VertexIx(0), 10).unwrap();
        assert_eq!(r.length(), Some(2));
        assert_eq!(r.terms[2][0].vertex, VertexIx(2));
    }

    #[test]
    fn euler_characteristic_on_fixtures() {
        let t = Var::new("t");
        let degrees = DegreeWeights::uniform(1).with(Var::new("q"), 0);
        for text in [catalog::GENTLE_LOOP, catalog::TWO_TRIANGLES, catalog::MERGED_TRIANGLES, catalog::CRITICAL_PAIR] {
            let (lgq, _) = catalog::load(text);
            let length = WeightFunction::uniform(lgq.quiver(), Monomial::var(t)).unwrap();
            assert!(euler_characteristic_check(&lgq, &length, &degrees, 10).unwrap(), "{text}");
            let qt = Monomial::from_factors([(Var::new("q"), 1), (t, 1)]);
            let qt = WeightFunction::uniform(lgq.quiver(), qt).unwrap();
            assert!(euler_characteristic_check(&lgq, &qt, &degrees, 10).unwrap(), "{text}");
        }
    }
}
