//! Weighted Cartan matrices and identities about their determinants.
//!
//! Entry `(i, j)` of the Cartan matrix is the sum of `w(p)` over nonzero paths
//! `p` from `i` to `j`. Since every arrow has at most one nonzero continuation,
//! the nonzero paths leaving `i` through an arrow `a` form a single thread, which
//! either stops or runs around a no-relations cycle forever. Entries are
//! therefore finite sums plus geometric tails.

mod determinant;
mod duality;
mod reduction;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{DegreeWeights, DenominatorFactor, Matrix, Polynomial, RationalFunction, TruncatedSeries};
use crate::quiver::{LocallyGentleQuiver, QuiverError, WeightFunction};

pub use determinant::{
    corollary_two, det_elimination, det_formula, specialize_corollaries, verify_diagonalization, Corollaries,
    DiagonalizationReport,
};
pub use duality::{duality_product, verify_duality};
pub use reduction::{applicable_reductions, reduce_step, ReductionOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("quiver is not gentle: it has a cycle without relations")]
    NotGentle,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("reduced quiver is not locally gentle: {0}")]
    ReductionInvalid(QuiverError),
    #[error("arrow `{0}` has weighted degree 0")]
    ZeroDegreeArrow(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

/// Vertex-indexed matrix of rational functions, rows in vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    vertices: Vec<String>,
    entries: Matrix<RationalFunction>,
}

impl CartanMatrix {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn entries(&self) -> &Matrix<RationalFunction> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[(i, j)]
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, vi) in self.vertices.iter().enumerate() {
            for (j, vj) in self.vertices.iter().enumerate() {
                writeln!(f, "C[{vi},{vj}] = {}", self.entries[(i, j)])?;
            }
        }
        Ok(())
    }
}

/// Exact Cartan matrix.
pub fn cartan_exact(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> CartanMatrix {
    cartan_with_signs(lgq, w, false)
}

/// Cartan matrix with each path weighted by `(-1)^length * w(p)`.
///
/// For generic weights this is the matrix evaluated at `x -> -x`.
pub fn cartan_alternating(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> CartanMatrix {
    cartan_with_signs(lgq, w, true)
}

fn cartan_with_signs(lgq: &LocallyGentleQuiver, w: &WeightFunction, alternating: bool) -> CartanMatrix {
    let q = lgq.quiver();
    let n = q.vertex_count();
    let rows: Vec<Vec<RationalFunction>> = (0..n)
        .into_par_iter()
        .map(|i| cartan_row(lgq, w, i, alternating))
        .collect();
    CartanMatrix {
        vertices: q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect(),
        entries: Matrix::from_rows(rows),
    }
}

fn cartan_row(lgq: &LocallyGentleQuiver, w: &WeightFunction, i: usize, alternating: bool) -> Vec<RationalFunction> {
    let q = lgq.quiver();
    let n = q.vertex_count();
    let mut finite = vec![Polynomial::zero(); n];
    finite[i] = Polynomial::one();
    // periodic threads grouped by their cycle factor
    let mut periodic: BTreeMap<DenominatorFactor, Vec<Polynomial>> = BTreeMap::new();
    let sign = |len: usize| BigInt::from(if alternating && len % 2 == 1 { -1 } else { 1 });
    for start in q.out_arrows(crate::quiver::VertexIx(i)) {
        let mut window = vec![Polynomial::zero(); n];
        let mut cur = start;
        let mut mono = w.weight(start).clone();
        let mut len = 1usize;
        let closed = loop {
            window[q.target(cur).0].add_term(mono.clone(), sign(len));
            match lgq.permitted_successor(cur) {
                None => break false,
                Some(next) if next == start => break true,
                Some(next) => {
                    // successors are injective: a thread revisits only its start
                    assert!(len <= q.arrow_count(), "thread longer than the arrow count");
                    mono = mono.mul(w.weight(next));
                    len += 1;
                    cur = next;
                }
            }
        };
        if closed {
            let factor = DenominatorFactor::new(sign(len), mono);
            let acc = periodic.entry(factor).or_insert_with(|| vec![Polynomial::zero(); n]);
            for (a, x) in acc.iter_mut().zip(&window) {
                a.add_assign_ref(x);
            }
        } else {
            for (a, x) in finite.iter_mut().zip(&window) {
                a.add_assign_ref(x);
            }
        }
    }
    (0..n)
        .map(|j| {
            let mut entry = RationalFunction::from(finite[j].clone());
            for (factor, window) in &periodic {
                if !window[j].is_zero() {
                    let tail = RationalFunction::new(window[j].clone(), vec![factor.clone()]);
                    entry = &entry + &tail;
                }
            }
            entry
        })
        .collect()
}

/// Truncated Cartan matrix by brute-force enumeration of nonzero paths.
///
/// Paths are grown one arrow at a time, checking the relation set directly,
/// until their weighted degree exceeds `bound`.
pub fn cartan_series_oracle(
    lgq: &LocallyGentleQuiver,
    w: &WeightFunction,
    weights: &DegreeWeights,
    bound: u64,
) -> Result<Matrix<TruncatedSeries>, CartanError> {
    let q = lgq.quiver();
    if let Some(a) = q.arrow_ids().find(|&a| weights.degree(w.weight(a)) == 0) {
        return Err(CartanError::ZeroDegreeArrow(q.arrow_name(a).to_string()));
    }
    let n = q.vertex_count();
    let mut sums = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in sums.iter_mut().enumerate() {
        row[i] = Polynomial::one();
        // frontier of (last arrow, weight) for nonzero paths starting at i
        let mut frontier: Vec<_> = q
            .out_arrows(crate::quiver::VertexIx(i))
            .map(|a| (a, w.weight(a).clone()))
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (last, mono) in frontier {
                if weights.degree(&mono) > bound {
                    continue;
                }
                row[q.target(last).0].add_term(mono.clone(), BigInt::from(1));
                for b in q.composable_after(last) {
                    if !q.is_relation(last, b) {
                        next.push((b, mono.mul(w.weight(b))));
                    }
                }
            }
            frontier = next;
        }
    }
    Ok(Matrix::from_fn(n, n, |i, j| TruncatedSeries::new(&sums[i][j], weights, bound)))
}
