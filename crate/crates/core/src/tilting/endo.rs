//! `End(T)` realised inside the graded ring: `Hom(P(x), P(y)) = R_{y-x}` and
//! composition is multiplication in `R`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::TiltingDatum;
use crate::glring::{GLRing, ReducedMonomial, RingElement};
use crate::lgroup::LElement;
use crate::linalg::{self, Q};
use crate::sweep::{self, Exec};

/// Structure constants keyed by a composable triple `(x, y, z)` of vertex
/// indices: `table[(x, y, z)][a][b]` is the coordinate vector, in the basis
/// of `(x, z)`, of basis element `a` of `(x, y)` followed by `b` of `(y, z)`.
pub type StructureTable = BTreeMap<(usize, usize, usize), Vec<Vec<Vec<Q>>>>;

#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    ring: GLRing,
    vertices: Vec<LElement>,
    degrees: Vec<Vec<LElement>>,
    basis: Vec<Vec<Vec<ReducedMonomial>>>,
}

/// An element of `End(T)`: coordinate vectors per component `(x, y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EndoElement {
    pub components: BTreeMap<(usize, usize), Vec<Q>>,
}

impl EndoElement {
    pub fn is_zero(&self) -> bool {
        self.components.values().all(|v| linalg::is_zero_row(v))
    }

    fn normalized(mut self) -> Self {
        self.components.retain(|_, v| !linalg::is_zero_row(v));
        self
    }
}

pub fn endo_algebra(tilt: &TiltingDatum) -> EndoAlgebra {
    let ring = GLRing::new(tilt.gl_type());
    let g = tilt.group();
    let vertices = tilt.summands().to_vec();
    let degrees: Vec<Vec<LElement>> = vertices
        .iter()
        .map(|x| vertices.iter().map(|y| g.sub(y, x)).collect())
        .collect();
    let basis = degrees
        .iter()
        .map(|row| row.iter().map(|deg| ring.monomial_basis(deg)).collect())
        .collect();
    EndoAlgebra {
        ring,
        vertices,
        degrees,
        basis,
    }
}

impl EndoAlgebra {
    pub fn ring(&self) -> &GLRing {
        &self.ring
    }

    pub fn vertices(&self) -> &[LElement] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Degree `y - x` of the component `(x, y)`.
    pub fn degree(&self, x: usize, y: usize) -> &LElement {
        &self.degrees[x][y]
    }

    pub fn basis(&self, x: usize, y: usize) -> &[ReducedMonomial] {
        &self.basis[x][y]
    }

    pub fn component_dim(&self, x: usize, y: usize) -> usize {
        self.basis[x][y].len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.iter().flatten().map(Vec::len).sum()
    }

    pub fn component_dims(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|b| b.len() as u64).collect())
            .collect()
    }

    /// Basis element `k` of `(x, y)` as a ring element.
    pub fn basis_element(&self, x: usize, y: usize, k: usize) -> RingElement {
        RingElement::monomial(self.basis[x][y][k].clone(), Q::one())
    }

    /// Coordinates of a ring element of degree `y - x`.
    pub fn coordinates(&self, f: &RingElement, x: usize, y: usize) -> Vec<Q> {
        self.ring.coordinates(f, &self.degrees[x][y])
    }

    pub fn to_ring(&self, coords: &[Q], x: usize, y: usize) -> RingElement {
        self.ring.from_coordinates(coords, &self.degrees[x][y])
    }

    /// `(x -> y)` followed by `(y -> z)`, as coordinates in `(x, z)`.
    pub fn compose(&self, f: &[Q], g: &[Q], x: usize, y: usize, z: usize) -> Vec<Q> {
        let prod = self
            .ring
            .multiply(&self.to_ring(f, x, y), &self.to_ring(g, y, z));
        self.coordinates(&prod, x, z)
    }

    /// Structure constants for one composable triple.
    pub fn structure_constants(&self, x: usize, y: usize, z: usize) -> Vec<Vec<Vec<Q>>> {
        (0..self.component_dim(x, y))
            .map(|a| {
                let ea = self.basis_element(x, y, a);
                (0..self.component_dim(y, z))
                    .map(|b| {
                        let prod = self.ring.multiply(&ea, &self.basis_element(y, z, b));
                        self.coordinates(&prod, x, z)
                    })
                    .collect()
            })
            .collect()
    }

    /// All nonzero-dimensional composable triples.
    pub fn structure_table(&self, exec: Exec) -> StructureTable {
        let n = self.len();
        let rows = sweep::map_range(exec, n, |x| {
            let mut out = Vec::new();
            for y in 0..n {
                if self.component_dim(x, y) == 0 {
                    continue;
                }
                for z in 0..n {
                    if self.component_dim(y, z) == 0 || self.component_dim(x, z) == 0 {
                        continue;
                    }
                    out.push(((x, y, z), self.structure_constants(x, y, z)));
                }
            }
            out
        });
        rows.into_iter().flatten().collect()
    }

    pub fn unit(&self) -> EndoElement {
        EndoElement {
            components: (0..self.len()).map(|x| ((x, x), vec![Q::one()])).collect(),
        }
    }

    /// `a` followed by `b`: component `(x, z)` collects `a_{xy} b_{yz}`.
    pub fn multiply(&self, a: &EndoElement, b: &EndoElement) -> EndoElement {
        let mut out: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
        for (&(x, y), fa) in &a.components {
            for (&(y2, z), fb) in b.components.range((y, 0)..=(y, usize::MAX)) {
                debug_assert_eq!(y, y2);
                let dim = self.component_dim(x, z);
                if dim == 0 {
                    continue;
                }
                let prod = self.compose(fa, fb, x, y, z);
                let slot = out.entry((x, z)).or_insert_with(|| vec![Q::zero(); dim]);
                for (s, p) in slot.iter_mut().zip(prod) {
                    *s += p;
                }
            }
        }
        EndoElement { components: out }.normalized()
    }

    /// Checks `(ab)c = a(bc)` on every basis triple along every chain
    /// `x -> y -> z -> w`, using only the structure table. Returns the number
    /// of triples checked and the failing chains.
    pub fn check_associativity(
        &self,
        table: &StructureTable,
    ) -> (usize, Vec<(usize, usize, usize, usize)>) {
        let mut checked = 0;
        let mut bad = Vec::new();
        let n = self.len();
        let zero = |k: usize| vec![Q::zero(); k];
        for (&(x, y, z), xyz) in table {
            for w in 0..n {
                let dw = self.component_dim(x, w);
                let (Some(xzw), Some(yzw), Some(xyw)) = (
                    table.get(&(x, z, w)),
                    table.get(&(y, z, w)),
                    table.get(&(x, y, w)),
                ) else {
                    continue;
                };
                for a in 0..self.component_dim(x, y) {
                    for b in 0..self.component_dim(y, z) {
                        for c in 0..self.component_dim(z, w) {
                            // (ab)c
                            let mut left = zero(dw);
                            for (k, coef) in xyz[a][b].iter().enumerate() {
                                if coef.is_zero() {
                                    continue;
                                }
                                for (l, v) in left.iter_mut().zip(&xzw[k][c]) {
                                    *l += coef * v;
                                }
                            }
                            // a(bc)
                            let mut right = zero(dw);
                            for (m, coef) in yzw[b][c].iter().enumerate() {
                                if coef.is_zero() {
                                    continue;
                                }
                                for (r, v) in right.iter_mut().zip(&xyw[a][m]) {
                                    *r += coef * v;
                                }
                            }
                            checked += 1;
                            if left != right {
                                bad.push((x, y, z, w));
                            }
                        }
                    }
                }
            }
        }
        bad.dedup();
        (checked, bad)
    }
}

/// Span of arrow-path composites for one ordered pair, against the Cartan entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSpan {
    pub from: LElement,
    pub to: LElement,
    pub span_dim: usize,
    pub cartan: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub ok: bool,
    pub pairs: Vec<PairSpan>,
    pub deficits: Vec<PairSpan>,
}

pub fn arrow_generation_check(tilt: &TiltingDatum) -> GenerationReport {
    arrow_generation_check_with(tilt, Exec::default())
}

/// For every pair `x <= y`, the dimension of the span of composites of
/// arrows `X_i : z -> z + x_i` along paths inside the interval.
///
/// Spans are propagated from each source in canonical vertex order, which is
/// a topological order for arrows.
pub fn arrow_generation_check_with(tilt: &TiltingDatum, exec: Exec) -> GenerationReport {
    let endo = endo_algebra(tilt);
    let g = tilt.group();
    let n = endo.len();
    let gens: Vec<LElement> = (0..tilt.gl_type().n()).map(|i| g.x(i, 1)).collect();
    let xs: Vec<RingElement> = (0..tilt.gl_type().n()).map(|i| endo.ring.x(i)).collect();
    // predecessors: (z, i) with z + x_i = y
    let preds: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|y| {
            gens.iter()
                .enumerate()
                .filter_map(|(i, xi)| tilt.index_of(&g.sub(&endo.vertices[y], xi)).map(|z| (z, i)))
                .collect()
        })
        .collect();

    let rows = sweep::map_range(exec, n, |x| {
        let mut spans: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n];
        spans[x] = vec![vec![Q::one()]];
        let mut out = Vec::new();
        for y in 0..n {
            if y != x {
                let mut vecs = Vec::new();
                for &(z, i) in &preds[y] {
                    for v in &spans[z] {
                        let f = endo.ring.multiply(&endo.to_ring(v, x, z), &xs[i]);
                        vecs.push(endo.coordinates(&f, x, y));
                    }
                }
                spans[y] = linalg::row_echelon(&vecs);
            }
            let cartan = endo.component_dim(x, y) as u64;
            if cartan > 0 || !spans[y].is_empty() {
                out.push(PairSpan {
                    from: endo.vertices[x].clone(),
                    to: endo.vertices[y].clone(),
                    span_dim: spans[y].len(),
                    cartan,
                });
            }
        }
        out
    });
    let pairs: Vec<PairSpan> = rows.into_iter().flatten().collect();
    let deficits: Vec<PairSpan> = pairs
        .iter()
        .filter(|p| (p.span_dim as u64) < p.cartan)
        .cloned()
        .collect();
    GenerationReport {
        ok: deficits.is_empty(),
        pairs,
        deficits,
    }
}
