//! The tilting bundle `T = sum_{x in [0, dc]} P(x)`, its Cartan matrix and
//! the rigidity certificate. The endomorphism algebra and its quiver
//! presentation live in the submodules.

mod endo;
mod quiver;

pub use endo::{
    arrow_generation_check, arrow_generation_check_with, endo_algebra, EndoAlgebra, EndoElement,
    GenerationReport, PairSpan, StructureTable,
};
pub use quiver::{
    choose_pivots, quiver_presentation, quiver_presentation_with_pivots, Arrow, PathTerm,
    QuiverPresentation, Relation, RelationKind,
};

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::gltype::GLType;
use crate::lgroup::{LElement, LGroup};
use crate::projcohom::{self, CohomologyVector};
use crate::sweep::{self, Exec};

/// The summands of `T`, in canonical order.
#[derive(Clone, Debug)]
pub struct TiltingDatum {
    t: GLType,
    group: LGroup,
    summands: Vec<LElement>,
}

impl TiltingDatum {
    /// An arbitrary set of twists `P(x)`, sorted and deduplicated. Used to
    /// probe rigidity of candidate sets other than the interval.
    pub fn from_summands(t: &GLType, mut summands: Vec<LElement>) -> Self {
        summands.sort();
        summands.dedup();
        Self {
            t: t.clone(),
            group: LGroup::of(t),
            summands,
        }
    }

    pub fn gl_type(&self) -> &GLType {
        &self.t
    }

    pub fn group(&self) -> &LGroup {
        &self.group
    }

    pub fn summands(&self) -> &[LElement] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn index_of(&self, x: &LElement) -> Option<usize> {
        self.summands.binary_search(x).ok()
    }
}

/// `T` for a type in general position.
pub fn build_tilting(t: &GLType) -> Result<TiltingDatum> {
    t.ensure_valid()?;
    let group = LGroup::of(t);
    let summands = group.interval(t.d());
    Ok(TiltingDatum {
        t: t.clone(),
        group,
        summands,
    })
}

/// `dim Hom(P(x), P(y))` over all pairs of summands, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub vertices: Vec<LElement>,
    pub matrix: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i][j]
    }

    pub fn total(&self) -> u64 {
        self.matrix.iter().flatten().sum()
    }
}

pub fn cartan(tilt: &TiltingDatum) -> CartanMatrix {
    cartan_with(tilt, Exec::default())
}

pub fn cartan_with(tilt: &TiltingDatum, exec: Exec) -> CartanMatrix {
    let v = &tilt.summands;
    let d = tilt.t.d();
    let matrix = sweep::map_slice(exec, v, |x| {
        v.iter()
            .map(|y| projcohom::h0(projcohom::ell_of_difference(&tilt.group, x, y), d))
            .collect()
    });
    CartanMatrix {
        vertices: v.clone(),
        matrix,
    }
}

/// A nonzero `Ext^i(P(x), P(y))` with `i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtWitness {
    pub from: LElement,
    pub to: LElement,
    pub ell: i64,
    pub degree: usize,
    pub dim: String,
}

/// Pairwise Ext data of a set of summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub ok: bool,
    pub d: usize,
    /// `ells[i][j]` is the `c`-coefficient of `summand_j - summand_i`.
    pub ells: Vec<Vec<i64>>,
    pub ell_min: i64,
    pub ell_max: i64,
    /// Every `ell` lies in `[-d, d]`.
    pub window_ok: bool,
    pub failures: Vec<ExtWitness>,
}

impl fmt::Display for RigidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(
                f,
                "OK: all Ext^i, i>0 vanish; ell range [{},{}]",
                self.ell_min, self.ell_max
            )
        } else {
            writeln!(
                f,
                "FAIL: {} nonvanishing higher Ext; ell range [{},{}]",
                self.failures.len(),
                self.ell_min,
                self.ell_max
            )?;
            for w in &self.failures {
                writeln!(
                    f,
                    "  Ext^{}(P({}), P({})) = {} (ell = {})",
                    w.degree, w.from, w.to, w.dim, w.ell
                )?;
            }
            Ok(())
        }
    }
}

pub fn rigidity_report(tilt: &TiltingDatum) -> RigidityReport {
    rigidity_report_with(tilt, Exec::default())
}

pub fn rigidity_report_with(tilt: &TiltingDatum, exec: Exec) -> RigidityReport {
    let v = &tilt.summands;
    let d = tilt.t.d();
    let rows: Vec<(Vec<i64>, Vec<ExtWitness>)> = sweep::map_slice(exec, v, |x| {
        let mut ells = Vec::with_capacity(v.len());
        let mut bad = Vec::new();
        for y in v {
            let ell = projcohom::ell_of_difference(&tilt.group, x, y);
            ells.push(ell);
            // only h^d can be nonzero in positive degree
            if ell < -(d as i64) {
                let dims = CohomologyVector::of_line_bundle(ell, d);
                for (i, dim) in dims.dims.iter().enumerate().skip(1) {
                    if !dim.is_zero() {
                        bad.push(ExtWitness {
                            from: x.clone(),
                            to: y.clone(),
                            ell,
                            degree: i,
                            dim: dim.to_string(),
                        });
                    }
                }
            }
        }
        (ells, bad)
    });
    let mut ells = Vec::with_capacity(rows.len());
    let mut failures = Vec::new();
    for (e, b) in rows {
        ells.push(e);
        failures.extend(b);
    }
    let ell_min = ells.iter().flatten().copied().min().unwrap_or(0);
    let ell_max = ells.iter().flatten().copied().max().unwrap_or(0);
    let di = d as i64;
    RigidityReport {
        ok: failures.is_empty(),
        d,
        window_ok: ell_min >= -di && ell_max <= di,
        ells,
        ell_min,
        ell_max,
        failures,
    }
}
