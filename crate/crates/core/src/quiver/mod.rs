//! Quivers with quadratic monomial relations, and the locally gentle axioms.
//!
//! A [`Quiver`] stores vertices, arrows and relations `(a, b)` meaning the path
//! `ab` is zero. Paths compose left to right. [`Quiver::validate`] checks the
//! degree bound and the two uniqueness axioms and returns a
//! [`LocallyGentleQuiver`] with successor tables.

mod cycles;
mod format;
mod generate;
mod weight;

use std::collections::BTreeSet;
use std::fmt;

pub use cycles::{CycleKind, MinimalCycle, MinimalCycles};
pub use format::{parse_quiver, write_quiver, ParseError, QuiverFile};
pub use generate::random_locally_gentle;
pub use weight::{WeightError, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexIx(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowIx(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexIx,
    pub target: VertexIx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// at most two arrows start and at most two end at each vertex
    G2,
    /// at most one nonzero continuation in each direction
    G3,
    /// at most one zero continuation in each direction
    G5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::G2 => "G2",
            Axiom::G3 => "G3",
            Axiom::G5 => "G5",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation ({0}, {1}) is not composable")]
    MalformedRelation(String, String),
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("not locally gentle: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    AxiomViolations(Vec<AxiomViolation>),
}

/// A finite directed multigraph together with a set of length-2 zero relations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(ArrowIx, ArrowIx)>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    /// Convenience constructor from names: `arrows` are `(id, source, target)`.
    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[(&str, &str)],
    ) -> Result<Quiver, QuiverError> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for &(a, s, t) in arrows {
            let s = q.vertex_by_name(s).ok_or_else(|| QuiverError::UnknownVertex(s.into()))?;
            let t = q.vertex_by_name(t).ok_or_else(|| QuiverError::UnknownVertex(t.into()))?;
            q.add_arrow(a, s, t)?;
        }
        for &(a, b) in relations {
            let a = q.arrow_by_name(a).ok_or_else(|| QuiverError::UnknownArrow(a.into()))?;
            let b = q.arrow_by_name(b).ok_or_else(|| QuiverError::UnknownArrow(b.into()))?;
            q.add_relation(a, b)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexIx, QuiverError> {
        if self.vertex_by_name(name).is_some() {
            return Err(QuiverError::DuplicateVertex(name.into()));
        }
        self.vertices.push(name.into());
        Ok(VertexIx(self.vertices.len() - 1))
    }

    pub fn add_arrow(&mut self, name: &str, source: VertexIx, target: VertexIx) -> Result<ArrowIx, QuiverError> {
        if self.arrow_by_name(name).is_some() {
            return Err(QuiverError::DuplicateArrow(name.into()));
        }
        for v in [source, target] {
            if v.0 >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(format!("#{}", v.0)));
            }
        }
        self.arrows.push(Arrow {
            name: name.into(),
            source,
            target,
        });
        Ok(ArrowIx(self.arrows.len() - 1))
    }

    /// Declares the path `ab` zero. Fails unless `b` starts where `a` ends.
    pub fn add_relation(&mut self, a: ArrowIx, b: ArrowIx) -> Result<(), QuiverError> {
        if a.0 >= self.arrows.len() {
            return Err(QuiverError::UnknownArrow(format!("#{}", a.0)));
        }
        if b.0 >= self.arrows.len() {
            return Err(QuiverError::UnknownArrow(format!("#{}", b.0)));
        }
        if self.arrows[a.0].target != self.arrows[b.0].source {
            return Err(QuiverError::MalformedRelation(
                self.arrows[a.0].name.clone(),
                self.arrows[b.0].name.clone(),
            ));
        }
        self.relations.insert((a, b));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexIx> {
        (0..self.vertices.len()).map(VertexIx)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowIx> {
        (0..self.arrows.len()).map(ArrowIx)
    }

    pub fn vertex_name(&self, v: VertexIx) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowIx) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowIx) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowIx) -> VertexIx {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowIx) -> VertexIx {
        self.arrows[a.0].target
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexIx> {
        self.vertices.iter().position(|v| v == name).map(VertexIx)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowIx> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowIx)
    }

    pub fn relations(&self) -> impl Iterator<Item = (ArrowIx, ArrowIx)> + '_ {
        self.relations.iter().copied()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn is_relation(&self, a: ArrowIx, b: ArrowIx) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: VertexIx) -> impl Iterator<Item = ArrowIx> + '_ {
        self.arrow_ids().filter(move |&a| self.source(a) == v)
    }

    pub fn in_arrows(&self, v: VertexIx) -> impl Iterator<Item = ArrowIx> + '_ {
        self.arrow_ids().filter(move |&a| self.target(a) == v)
    }

    /// Arrows `b` such that `ab` is a path.
    pub fn composable_after(&self, a: ArrowIx) -> impl Iterator<Item = ArrowIx> + '_ {
        self.out_arrows(self.target(a))
    }

    /// Arrows `c` such that `ca` is a path.
    pub fn composable_before(&self, a: ArrowIx) -> impl Iterator<Item = ArrowIx> + '_ {
        self.in_arrows(self.source(a))
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let other = if a.source.0 == v {
                    a.target.0
                } else if a.target.0 == v {
                    a.source.0
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same arrows, with relations replaced by the complementary composable pairs.
    pub fn with_complemented_relations(&self) -> Quiver {
        let mut relations = BTreeSet::new();
        for a in self.arrow_ids() {
            for b in self.composable_after(a) {
                if !self.is_relation(a, b) {
                    relations.insert((a, b));
                }
            }
        }
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations,
        }
    }

    /// Checks the locally gentle axioms, reporting every violation.
    pub fn validate(&self) -> Result<LocallyGentleQuiver, QuiverError> {
        if self.vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut violations = Vec::new();
        for v in self.vertex_ids() {
            let (outs, ins) = (self.out_arrows(v).count(), self.in_arrows(v).count());
            if outs > 2 || ins > 2 {
                violations.push(AxiomViolation {
                    axiom: Axiom::G2,
                    witness: format!(
                        "vertex {} has out-degree {outs} and in-degree {ins}",
                        self.vertex_name(v)
                    ),
                });
            }
        }
        let n = self.arrows.len();
        let mut table = SuccessorTables {
            permitted_succ: vec![None; n],
            forbidden_succ: vec![None; n],
            permitted_pred: vec![None; n],
            forbidden_pred: vec![None; n],
        };
        for a in self.arrow_ids() {
            let name = self.arrow_name(a);
            let (zero, nonzero): (Vec<ArrowIx>, Vec<ArrowIx>) =
                self.composable_after(a).partition(|&b| self.is_relation(a, b));
            let (zero_before, nonzero_before): (Vec<ArrowIx>, Vec<ArrowIx>) =
                self.composable_before(a).partition(|&c| self.is_relation(c, a));
            let names = |v: &[ArrowIx]| v.iter().map(|&x| self.arrow_name(x)).collect::<Vec<_>>().join(", ");
            if nonzero.len() > 1 {
                violations.push(AxiomViolation {
                    axiom: Axiom::G3,
                    witness: format!("arrow {name} has nonzero successors {}", names(&nonzero)),
                });
            }
            if nonzero_before.len() > 1 {
                violations.push(AxiomViolation {
                    axiom: Axiom::G3,
                    witness: format!("arrow {name} has nonzero predecessors {}", names(&nonzero_before)),
                });
            }
            if zero.len() > 1 {
                violations.push(AxiomViolation {
                    axiom: Axiom::G5,
                    witness: format!("arrow {name} has zero successors {}", names(&zero)),
                });
            }
            if zero_before.len() > 1 {
                violations.push(AxiomViolation {
                    axiom: Axiom::G5,
                    witness: format!("arrow {name} has zero predecessors {}", names(&zero_before)),
                });
            }
            table.permitted_succ[a.0] = nonzero.first().copied();
            table.forbidden_succ[a.0] = zero.first().copied();
            table.permitted_pred[a.0] = nonzero_before.first().copied();
            table.forbidden_pred[a.0] = zero_before.first().copied();
        }
        if !violations.is_empty() {
            return Err(QuiverError::AxiomViolations(violations));
        }
        Ok(LocallyGentleQuiver {
            quiver: self.clone(),
            tables: table,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SuccessorTables {
    permitted_succ: Vec<Option<ArrowIx>>,
    forbidden_succ: Vec<Option<ArrowIx>>,
    permitted_pred: Vec<Option<ArrowIx>>,
    forbidden_pred: Vec<Option<ArrowIx>>,
}

/// A quiver certified to satisfy the locally gentle axioms.
///
/// Each arrow has at most one permitted (nonzero) and one forbidden (zero)
/// continuation on each side; these partition its composable neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyGentleQuiver {
    quiver: Quiver,
    tables: SuccessorTables,
}

impl LocallyGentleQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn into_quiver(self) -> Quiver {
        self.quiver
    }

    /// The unique `b` with `ab` nonzero.
    pub fn permitted_successor(&self, a: ArrowIx) -> Option<ArrowIx> {
        self.tables.permitted_succ[a.0]
    }

    /// The unique `b` with `ab` a relation.
    pub fn forbidden_successor(&self, a: ArrowIx) -> Option<ArrowIx> {
        self.tables.forbidden_succ[a.0]
    }

    pub fn permitted_predecessor(&self, a: ArrowIx) -> Option<ArrowIx> {
        self.tables.permitted_pred[a.0]
    }

    pub fn forbidden_predecessor(&self, a: ArrowIx) -> Option<ArrowIx> {
        self.tables.forbidden_pred[a.0]
    }

    /// The dual quiver: composable pairs swap between relation and non-relation.
    pub fn dual(&self) -> LocallyGentleQuiver {
        let q = self.quiver.with_complemented_relations();
        let tables = SuccessorTables {
            permitted_succ: self.tables.forbidden_succ.clone(),
            forbidden_succ: self.tables.permitted_succ.clone(),
            permitted_pred: self.tables.forbidden_pred.clone(),
            forbidden_pred: self.tables.permitted_pred.clone(),
        };
        LocallyGentleQuiver { quiver: q, tables }
    }

    /// Finite-dimensional case: no cycle without relations.
    pub fn is_gentle(&self) -> bool {
        self.minimal_cycles().no_relations.is_empty()
    }

    /// Connected, 2 in / 2 out at every vertex, and exactly one cycle of each
    /// kind, each running through all `2n` arrows.
    pub fn is_critical(&self) -> bool {
        let q = &self.quiver;
        if !q.is_connected() {
            return false;
        }
        if q.vertex_ids().any(|v| q.out_arrows(v).count() != 2 || q.in_arrows(v).count() != 2) {
            return false;
        }
        let cycles = self.minimal_cycles();
        let full = 2 * q.vertex_count();
        cycles.full_relations.len() == 1
            && cycles.no_relations.len() == 1
            && cycles.full_relations[0].len() == full
            && cycles.no_relations[0].len() == full
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gentle_loop() -> Quiver {
        Quiver::build(&["v"], &[("e", "v", "v")], &[("e", "e")]).unwrap()
    }

    #[test]
    fn gentle_loop_is_valid() {
        let lgq = gentle_loop().validate().unwrap();
        let e = ArrowIx(0);
        assert_eq!(lgq.forbidden_successor(e), Some(e));
        assert_eq!(lgq.permitted_successor(e), None);
        assert!(lgq.is_gentle());
    }

    #[test]
    fn arrowless_vertex_is_valid() {
        let lgq = Quiver::build(&["v"], &[], &[]).unwrap().validate().unwrap();
        assert!(lgq.is_gentle());
        assert!(!lgq.is_critical());
        assert_eq!(lgq.dual(), lgq);
    }

    #[test]
    fn three_loops_break_the_degree_bound() {
        let q = Quiver::build(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")], &[]).unwrap();
        match q.validate() {
            Err(QuiverError::AxiomViolations(vs)) => {
                assert!(vs.iter().any(|v| v.axiom == Axiom::G2 && v.witness.contains("vertex v")));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn every_violation_is_reported() {
        // two loops, no relations: each loop has two nonzero successors
        let q = Quiver::build(&["v"], &[("a", "v", "v"), ("b", "v", "v")], &[]).unwrap();
        let Err(QuiverError::AxiomViolations(vs)) = q.validate() else {
            panic!("expected violations");
        };
        assert_eq!(vs.iter().filter(|v| v.axiom == Axiom::G3).count(), 4);
        // all four relations: two zero successors each
        let q = Quiver::build(
            &["v"],
            &[("a", "v", "v"), ("b", "v", "v")],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        )
        .unwrap();
        let Err(QuiverError::AxiomViolations(vs)) = q.validate() else {
            panic!("expected violations");
        };
        assert_eq!(vs.iter().filter(|v| v.axiom == Axiom::G5).count(), 4);
    }

    #[test]
    fn non_composable_relation_is_rejected() {
        let err = Quiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[("a", "b")]).unwrap_err();
        assert_eq!(err, QuiverError::MalformedRelation("a".into(), "b".into()));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        assert!(matches!(Quiver::build(&["1", "1"], &[], &[]), Err(QuiverError::DuplicateVertex(_))));
        assert!(matches!(
            Quiver::build(&["1"], &[("a", "1", "1"), ("a", "1", "1")], &[]),
            Err(QuiverError::DuplicateArrow(_))
        ));
        assert_eq!(Quiver::new().validate().unwrap_err(), QuiverError::NoVertices);
    }

    #[test]
    fn dual_of_gentle_loop_has_no_relations() {
        let d = gentle_loop().validate().unwrap().dual();
        assert_eq!(d.quiver().relation_count(), 0);
        assert!(!d.is_gentle());
        assert_eq!(d.dual(), gentle_loop().validate().unwrap());
        // the dual's tables agree with validating the dual quiver from scratch
        assert_eq!(d.quiver().validate().unwrap(), d);
    }

    #[test]
    fn free_loop_is_not_critical() {
        let lgq = Quiver::build(&["v"], &[("e", "v", "v")], &[]).unwrap().validate().unwrap();
        assert!(!lgq.is_critical());
        assert!(!lgq.is_gentle());
    }
}
