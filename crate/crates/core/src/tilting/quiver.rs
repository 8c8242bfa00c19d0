//! Quiver with relations for `End(T)` when `n >= d + 1`.
//!
//! Arrows are `x -> x + x_i` inside the interval. Relations are the
//! commutativity squares `x_i x_j = x_j x_i` and, for each non-pivot
//! hyperplane `i`, `x_i^{p_i} = sum_{j in B} mu_ij x_j^{p_j}` where
//! `l_i = sum_j mu_ij l_j`.

use std::fmt;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::TiltingDatum;
use crate::error::{GlError, Result};
use crate::gltype::{subsets_of_size, GLType};
use crate::lgroup::LElement;
use crate::linalg::{self, Q};

/// `from -> to` labelled by generator `gen` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub gen: usize,
}

/// `coef` times the path traversing generators `path` (0-based) in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTerm {
    pub path: Vec<usize>,
    pub coef: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Commutativity { i: usize, j: usize },
    Pivot { i: usize },
}

/// `sum terms = 0` between parallel paths starting at vertex `at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub at: usize,
    pub kind: RelationKind,
    pub terms: Vec<PathTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<LElement>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Pivot hyperplanes `B` (0-based).
    pub pivots: Vec<usize>,
    /// `(i, mu_i)` for every `i` outside `B`, with `mu_i` indexed like `pivots`.
    pub pivot_coefficients: Vec<(usize, Vec<Q>)>,
}

/// The lexicographically first `d+1` hyperplanes with independent
/// coefficient rows.
pub fn choose_pivots(t: &GLType) -> Result<Vec<usize>> {
    if t.n() <= t.d() {
        return Err(GlError::ArrowInsufficient { n: t.n(), d: t.d() });
    }
    subsets_of_size(t.n(), t.d() + 1)
        .into_iter()
        .find(|s| pivot_rank_ok(t, s))
        .ok_or_else(|| GlError::InvalidType("no d+1 hyperplanes are independent".into()))
}

fn pivot_rank_ok(t: &GLType, s: &[usize]) -> bool {
    let rows: Vec<Vec<Q>> = s.iter().map(|&i| t.hyperplane(i).to_vec()).collect();
    linalg::rank(&rows) == t.d() + 1
}

pub fn quiver_presentation(tilt: &TiltingDatum) -> Result<QuiverPresentation> {
    quiver_presentation_with_pivots(tilt, None)
}

/// Builds the presentation, optionally with a user-chosen pivot set.
pub fn quiver_presentation_with_pivots(
    tilt: &TiltingDatum,
    pivots: Option<&[usize]>,
) -> Result<QuiverPresentation> {
    let t = tilt.gl_type();
    let (n, d) = (t.n(), t.d());
    if n <= d {
        return Err(GlError::ArrowInsufficient { n, d });
    }
    let pivots = match pivots {
        None => choose_pivots(t)?,
        Some(b) => {
            let mut s = b.to_vec();
            s.sort_unstable();
            s.dedup();
            if s.len() != d + 1 || s.iter().any(|&i| i >= n) || !pivot_rank_ok(t, &s) {
                return Err(GlError::Input(format!(
                    "pivot set must be d+1 = {} distinct hyperplanes with independent rows",
                    d + 1
                )));
            }
            s
        }
    };

    // l_i = sum_j mu_j l_j, columns of the system are the pivot forms
    let system: Vec<Vec<Q>> = (0..=d)
        .map(|r| pivots.iter().map(|&j| t.hyperplane(j)[r].clone()).collect())
        .collect();
    let pivot_coefficients: Vec<(usize, Vec<Q>)> = (0..n)
        .filter(|i| !pivots.contains(i))
        .map(|i| {
            let mu = linalg::solve(&system, t.hyperplane(i)).expect("pivot rows are independent");
            (i, mu)
        })
        .collect();

    let g = tilt.group();
    let v = tilt.summands();
    let step = |k: usize, i: usize| tilt.index_of(&g.add(&v[k], &g.x(i, 1)));

    let mut arrows = Vec::new();
    for from in 0..v.len() {
        for i in 0..n {
            if let Some(to) = step(from, i) {
                arrows.push(Arrow { from, to, gen: i });
            }
        }
    }

    let mut relations = Vec::new();
    for (at, x) in v.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let far = g.add(&g.add(x, &g.x(i, 1)), &g.x(j, 1));
                if tilt.index_of(&far).is_some() {
                    relations.push(Relation {
                        at,
                        kind: RelationKind::Commutativity { i, j },
                        terms: vec![
                            PathTerm {
                                path: vec![i, j],
                                coef: Q::one(),
                            },
                            PathTerm {
                                path: vec![j, i],
                                coef: -Q::one(),
                            },
                        ],
                    });
                }
            }
        }
        // all power paths x_k^{p_k} end at at + c
        if tilt.index_of(&g.add(&v[at], &g.c(1))).is_none() {
            continue;
        }
        for (i, mu) in &pivot_coefficients {
            let mut terms = vec![PathTerm {
                path: vec![*i; t.weights()[*i] as usize],
                coef: Q::one(),
            }];
            for (&j, m) in pivots.iter().zip(mu) {
                if !m.is_zero() {
                    terms.push(PathTerm {
                        path: vec![j; t.weights()[j] as usize],
                        coef: -m.clone(),
                    });
                }
            }
            relations.push(Relation {
                at,
                kind: RelationKind::Pivot { i: *i },
                terms,
            });
        }
    }

    Ok(QuiverPresentation {
        vertices: v.to_vec(),
        arrows,
        relations,
        pivots,
        pivot_coefficients,
    })
}

fn path_text(path: &[usize]) -> String {
    path.iter()
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join(".")
}

impl QuiverPresentation {
    pub fn pivot_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations
            .iter()
            .filter(|r| matches!(r.kind, RelationKind::Pivot { .. }))
    }

    pub fn commutativity_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations
            .iter()
            .filter(|r| matches!(r.kind, RelationKind::Commutativity { .. }))
    }

    /// Generators are 1-based in the JSON form.
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| json!({
                "from": self.vertices[a.from].to_string(),
                "gen": a.gen + 1,
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({
                "at": self.vertices[r.at].to_string(),
                "terms": r.terms.iter().map(|t| json!({
                    "path": t.path.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "coef": linalg::format_rational(&t.coef),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Graphviz form of the underlying graph; edges labelled `x<i>`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n    rankdir=LR;\n");
        for (k, x) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "    v{k} [label=\"P({x})\"];");
        }
        for a in &self.arrows {
            let _ = writeln!(
                s,
                "    v{} -> v{} [label=\"x{}\"];",
                a.from,
                a.to,
                a.gen + 1
            );
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for QuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices ({}):", self.vertices.len())?;
        for x in &self.vertices {
            writeln!(f, "  {x}")?;
        }
        writeln!(f, "arrows ({}):", self.arrows.len())?;
        for a in &self.arrows {
            writeln!(
                f,
                "  {} -x{}-> {}",
                self.vertices[a.from],
                a.gen + 1,
                self.vertices[a.to]
            )?;
        }
        writeln!(f, "relations ({}):", self.relations.len())?;
        for r in &self.relations {
            let mut line = String::new();
            for (k, term) in r.terms.iter().enumerate() {
                let neg = term.coef < Q::zero();
                let mag = if neg {
                    -term.coef.clone()
                } else {
                    term.coef.clone()
                };
                let sign = match (k, neg) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                };
                let coef = if mag.is_one() {
                    String::new()
                } else {
                    format!("{}*", linalg::format_rational(&mag))
                };
                let _ = write!(line, "{sign}{coef}{}", path_text(&term.path));
            }
            writeln!(f, "  at {}: {line} = 0", self.vertices[r.at])?;
        }
        Ok(())
    }
}
