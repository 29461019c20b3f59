//! Line-oriented quiver files.
//!
//! ```text
//! # comment
//! vertex 1
//! vertex 2
//! arrow a 1 -> 2
//! arrow b 2 -> 1
//! rel a b
//! weight a q^2*t
//! ```
//!
//! Ids must be declared before use. Arrows without a `weight` line get `x_<id>`.

use std::fmt::Write as _;

use super::{Quiver, QuiverError, WeightFunction};
use crate::algebra::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A parsed quiver file: the structural quiver and its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub quiver: Quiver,
    pub weights: WeightFunction,
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

pub fn parse_quiver(text: &str) -> Result<QuiverFile, ParseError> {
    let mut q = Quiver::new();
    let mut weights: Vec<(usize, usize, Monomial)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| ParseError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let lookup_arrow = |q: &Quiver, id: &str| {
            q.arrow_by_name(id)
                .ok_or_else(|| err(format!("unknown arrow `{id}`")))
        };
        match tokens.as_slice() {
            ["vertex", id] => {
                if !valid_id(id) {
                    return Err(err(format!("invalid vertex id `{id}`")));
                }
                q.add_vertex(id).map_err(|e| err(e.to_string()))?;
            }
            ["arrow", id, s, "->", t] => {
                if !valid_id(id) {
                    return Err(err(format!("invalid arrow id `{id}`")));
                }
                let s = q.vertex_by_name(s).ok_or_else(|| err(format!("unknown vertex `{s}`")))?;
                let t = q.vertex_by_name(t).ok_or_else(|| err(format!("unknown vertex `{t}`")))?;
                q.add_arrow(id, s, t).map_err(|e| err(e.to_string()))?;
            }
            ["rel", a, b] => {
                let a = lookup_arrow(&q, a)?;
                let b = lookup_arrow(&q, b)?;
                q.add_relation(a, b).map_err(|e| err(e.to_string()))?;
            }
            ["weight", a, m] => {
                let a = lookup_arrow(&q, a)?;
                let m = Monomial::parse(m).map_err(|e| err(format!("bad monomial: {e}")))?;
                if m.is_one() {
                    return Err(err("weight must be a nonconstant monomial".into()));
                }
                if weights.iter().any(|(_, b, _)| *b == a.0) {
                    return Err(err(format!("second weight for arrow `{}`", q.arrow_name(a))));
                }
                weights.push((line, a.0, m));
            }
            [kw, ..] if ["vertex", "arrow", "rel", "weight"].contains(kw) => {
                return Err(err(format!("malformed `{kw}` line")));
            }
            [kw, ..] => return Err(err(format!("unknown directive `{kw}`"))),
            [] => unreachable!("empty lines are skipped"),
        }
    }
    if q.vertex_count() == 0 {
        return Err(ParseError {
            line: text.lines().count().max(1),
            message: QuiverError::NoVertices.to_string(),
        });
    }
    let mut w: Vec<Monomial> = WeightFunction::generic(&q).as_slice().to_vec();
    for (_, a, m) in weights {
        w[a] = m;
    }
    let weights = WeightFunction::from_vec(&q, w).expect("weights checked while parsing");
    Ok(QuiverFile { quiver: q, weights })
}

/// Renders a quiver file; `weight` lines are omitted for generic weights.
pub fn write_quiver(q: &Quiver, w: &WeightFunction) -> String {
    let mut out = String::new();
    for v in q.vertex_ids() {
        writeln!(out, "vertex {}", q.vertex_name(v)).unwrap();
    }
    for a in q.arrow_ids() {
        let arrow = q.arrow(a);
        writeln!(
            out,
            "arrow {} {} -> {}",
            arrow.name,
            q.vertex_name(arrow.source),
            q.vertex_name(arrow.target)
        )
        .unwrap();
    }
    for (a, b) in q.relations() {
        writeln!(out, "rel {} {}", q.arrow_name(a), q.arrow_name(b)).unwrap();
    }
    for a in q.arrow_ids() {
        let generic = Monomial::var(WeightFunction::generic_var(q.arrow_name(a)));
        if w.weight(a) != &generic {
            writeln!(out, "weight {} {}", q.arrow_name(a), w.weight(a)).unwrap();
        }
    }
    out
}
