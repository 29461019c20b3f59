use std::fmt;

use num_bigint::BigInt;

use super::{ArrowIx, LocallyGentleQuiver, Quiver, VertexIx, WeightFunction};
use crate::algebra::{DenominatorFactor, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    /// every consecutive pair, including last-first, is a relation
    FullRelations,
    /// no consecutive pair is a relation
    NoRelations,
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::FullRelations => "full-relations",
            CycleKind::NoRelations => "no-relations",
        })
    }
}

/// A primitive oriented cycle, rotated so that its least arrow id comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalCycle {
    arrows: Vec<ArrowIx>,
    kind: CycleKind,
}

impl MinimalCycle {
    pub fn arrows(&self) -> &[ArrowIx] {
        &self.arrows
    }

    pub fn kind(&self) -> CycleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains(&self, a: ArrowIx) -> bool {
        self.arrows.contains(&a)
    }

    pub fn weight(&self, w: &WeightFunction) -> Monomial {
        w.path_weight(&self.arrows)
    }

    /// Number of arrows of the cycle starting at `v`.
    pub fn visits(&self, q: &Quiver, v: VertexIx) -> usize {
        self.arrows.iter().filter(|&&a| q.source(a) == v).count()
    }

    /// `1 - (-1)^len * w(C)` for full-relation cycles, `1 - w(C)` otherwise.
    pub fn determinant_factor(&self, w: &WeightFunction) -> DenominatorFactor {
        let sign = if self.kind == CycleKind::FullRelations && self.len() % 2 == 1 {
            -1
        } else {
            1
        };
        DenominatorFactor::new(BigInt::from(sign), self.weight(w))
    }

    pub fn determinant_factor_polynomial(&self, w: &WeightFunction) -> Polynomial {
        self.determinant_factor(w).to_polynomial()
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        CycleDisplay { cycle: self, quiver: q }
    }
}

struct CycleDisplay<'a> {
    cycle: &'a MinimalCycle,
    quiver: &'a Quiver,
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.cycle.arrows.iter().map(|&a| self.quiver.arrow_name(a)).collect();
        write!(f, "({})", names.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinimalCycles {
    pub full_relations: Vec<MinimalCycle>,
    pub no_relations: Vec<MinimalCycle>,
}

impl MinimalCycles {
    /// Multiset of `(length, weight)` pairs, sorted.
    pub fn signature(cycles: &[MinimalCycle], w: &WeightFunction) -> Vec<(usize, Monomial)> {
        let mut s: Vec<_> = cycles.iter().map(|c| (c.len(), c.weight(w))).collect();
        s.sort();
        s
    }
}

impl LocallyGentleQuiver {
    /// Every primitive cycle of each kind, once, in order of their least arrow.
    pub fn minimal_cycles(&self) -> MinimalCycles {
        MinimalCycles {
            full_relations: self.cycles_along(CycleKind::FullRelations),
            no_relations: self.cycles_along(CycleKind::NoRelations),
        }
    }

    fn cycles_along(&self, kind: CycleKind) -> Vec<MinimalCycle> {
        let q = self.quiver();
        let step = |a| match kind {
            CycleKind::FullRelations => self.forbidden_successor(a),
            CycleKind::NoRelations => self.permitted_successor(a),
        };
        let mut seen = vec![false; q.arrow_count()];
        let mut out = Vec::new();
        for start in q.arrow_ids() {
            if seen[start.0] {
                continue;
            }
            // the successor map is injective, so a thread through `start` either
            // returns to `start` or never revisits anything
            let mut path = vec![start];
            let mut cur = start;
            let closed = loop {
                match step(cur) {
                    None => break false,
                    Some(n) if n == start => break true,
                    Some(n) => {
                        if path.len() > q.arrow_count() {
                            break false;
                        }
                        path.push(n);
                        cur = n;
                    }
                }
            };
            if !closed {
                continue;
            }
            for a in &path {
                seen[a.0] = true;
            }
            let lead = (0..path.len())
                .min_by(|&i, &j| q.arrow_name(path[i]).cmp(q.arrow_name(path[j])))
                .expect("cycle is nonempty");
            path.rotate_left(lead);
            out.push(MinimalCycle { arrows: path, kind });
        }
        out.sort_by(|a, b| q.arrow_name(a.arrows[0]).cmp(q.arrow_name(b.arrows[0])));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gentle_loop_has_one_full_relation_cycle() {
        let lgq = Quiver::build(&["v"], &[("e", "v", "v")], &[("e", "e")])
            .unwrap()
            .validate()
            .unwrap();
        let c = lgq.minimal_cycles();
        assert_eq!(c.full_relations.len(), 1);
        assert_eq!(c.full_relations[0].len(), 1);
        assert!(c.no_relations.is_empty());
        let w = WeightFunction::generic(lgq.quiver());
        assert_eq!(c.full_relations[0].determinant_factor(&w).to_string(), "(1 + x_e)");
    }

    #[test]
    fn rotation_puts_least_id_first() {
        // 2-cycle without relations, arrows declared out of name order
        let lgq = Quiver::build(&["1", "2"], &[("z", "1", "2"), ("b", "2", "1")], &[])
            .unwrap()
            .validate()
            .unwrap();
        let c = lgq.minimal_cycles();
        assert_eq!(c.no_relations.len(), 1);
        assert_eq!(c.no_relations[0].display(lgq.quiver()).to_string(), "(b z)");
        assert_eq!(c.no_relations[0].visits(lgq.quiver(), VertexIx(0)), 1);
    }

    #[test]
    fn open_threads_give_no_cycles() {
        let lgq = Quiver::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")])
            .unwrap()
            .validate()
            .unwrap();
        assert_eq!(lgq.minimal_cycles(), MinimalCycles::default());
    }
}
