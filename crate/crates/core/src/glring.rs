//! The `L`-graded ring `R = k[T, X] / (X_i^{p_i} - l_i(T))`.
//!
//! Elements are kept in the reduced monomial basis
//! `{ X^a T^s : 0 <= a_i < p_i }`, with `deg X_i = x_i` and `deg T_j = c`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::gltype::GLType;
use crate::lgroup::{LElement, LGroup};
use crate::linalg::{self, Q};

/// `X^xexp T^texp` with `xexp_i < p_i`.
///
/// Derived order is lex on `(xexp, texp)`, the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedMonomial {
    pub xexp: Vec<u32>,
    pub texp: Vec<u32>,
}

impl ReducedMonomial {
    pub fn t_degree(&self) -> u32 {
        self.texp.iter().sum()
    }
}

impl fmt::Display for ReducedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .xexp
            .iter()
            .enumerate()
            .map(|(i, &e)| (format!("X{}", i + 1), e))
            .chain(
                self.texp
                    .iter()
                    .enumerate()
                    .map(|(j, &e)| (format!("T{j}"), e)),
            )
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if e == 1 { v } else { format!("{v}^{e}") })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// An element of `R`; zero is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<ReducedMonomial, Q>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: ReducedMonomial, coef: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(m, coef);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ReducedMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ReducedMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: ReducedMonomial, coef: Q) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let mag = linalg::format_rational(&if neg { -c.clone() } else { c.clone() });
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if m.xexp.iter().chain(&m.texp).all(|&e| e == 0) {
                write!(f, "{sign}{mag}")?;
            } else {
                write!(f, "{sign}{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A formal polynomial in `T_0..T_d, X_1..X_n` with no reduction applied.
/// Keys are `(xexp, texp)` with arbitrary exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPoly {
    pub terms: BTreeMap<(Vec<u32>, Vec<u32>), Q>,
}

impl RawPoly {
    pub fn add_term(&mut self, xexp: Vec<u32>, texp: Vec<u32>, coef: Q) {
        let slot = self.terms.entry((xexp, texp)).or_insert_with(Q::zero);
        *slot += coef;
    }

    pub fn from_element(e: &RingElement) -> Self {
        let mut p = Self::default();
        for (m, c) in e.terms() {
            p.add_term(m.xexp.clone(), m.texp.clone(), c.clone());
        }
        p
    }
}

type TPoly = BTreeMap<Vec<u32>, Q>;

/// The ring `R(L, p)` of a type.
#[derive(Clone, Debug)]
pub struct GLRing {
    t: GLType,
    group: LGroup,
}

impl GLRing {
    pub fn new(t: &GLType) -> Self {
        Self {
            t: t.clone(),
            group: LGroup::of(t),
        }
    }

    pub fn gl_type(&self) -> &GLType {
        &self.t
    }

    pub fn group(&self) -> &LGroup {
        &self.group
    }

    fn nvars_t(&self) -> usize {
        self.t.d() + 1
    }

    pub fn one(&self) -> RingElement {
        RingElement::monomial(
            ReducedMonomial {
                xexp: vec![0; self.t.n()],
                texp: vec![0; self.nvars_t()],
            },
            Q::one(),
        )
    }

    /// `X_i` (0-based).
    pub fn x(&self, i: usize) -> RingElement {
        let mut raw = RawPoly::default();
        let mut xexp = vec![0; self.t.n()];
        xexp[i] = 1;
        raw.add_term(xexp, vec![0; self.nvars_t()], Q::one());
        self.reduce(&raw)
    }

    /// `T_j`.
    pub fn t(&self, j: usize) -> RingElement {
        let mut texp = vec![0; self.nvars_t()];
        texp[j] = 1;
        RingElement::monomial(
            ReducedMonomial {
                xexp: vec![0; self.t.n()],
                texp,
            },
            Q::one(),
        )
    }

    /// The linear form `l_i(T)` as a ring element.
    pub fn linear_form(&self, i: usize) -> RingElement {
        let mut e = RingElement::zero();
        for (j, c) in self.t.hyperplane(i).iter().enumerate() {
            let mut texp = vec![0; self.nvars_t()];
            texp[j] = 1;
            e.add_term(
                ReducedMonomial {
                    xexp: vec![0; self.t.n()],
                    texp,
                },
                c.clone(),
            );
        }
        e
    }

    fn mul_by_linear_form(&self, poly: &TPoly, i: usize) -> TPoly {
        let mut out = TPoly::new();
        for (texp, c) in poly {
            for (j, lam) in self.t.hyperplane(i).iter().enumerate() {
                if lam.is_zero() {
                    continue;
                }
                let mut e = texp.clone();
                e[j] += 1;
                *out.entry(e).or_insert_with(Q::zero) += c * lam;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn emit(&self, out: &mut RingElement, xexp: &[u32], poly: TPoly) {
        for (texp, c) in poly {
            out.add_term(
                ReducedMonomial {
                    xexp: xexp.to_vec(),
                    texp,
                },
                c,
            );
        }
    }

    /// Rewrites `X_i^{p_i} -> l_i(T)` until every `X`-exponent is below `p_i`.
    pub fn reduce(&self, poly: &RawPoly) -> RingElement {
        let mut out = RingElement::zero();
        for ((xexp, texp), coef) in &poly.terms {
            assert_eq!(xexp.len(), self.t.n(), "X-exponent length");
            assert_eq!(texp.len(), self.nvars_t(), "T-exponent length");
            if coef.is_zero() {
                continue;
            }
            let mut tpoly = TPoly::from([(texp.clone(), coef.clone())]);
            let mut rem = Vec::with_capacity(xexp.len());
            for (i, (&e, &p)) in xexp.iter().zip(self.t.weights()).enumerate() {
                let p = p as u32;
                for _ in 0..e / p {
                    tpoly = self.mul_by_linear_form(&tpoly, i);
                }
                rem.push(e % p);
            }
            self.emit(&mut out, &rem, tpoly);
        }
        out
    }

    /// Product in `R`. Exponent sums are below `2 p_i`, so each overflowing
    /// variable contributes exactly one factor `l_i(T)`.
    pub fn multiply(&self, f: &RingElement, g: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                let texp: Vec<u32> = mf.texp.iter().zip(&mg.texp).map(|(a, b)| a + b).collect();
                let mut tpoly = TPoly::from([(texp, cf * cg)]);
                let mut xexp = Vec::with_capacity(self.t.n());
                for (i, (&p, (a, b))) in self
                    .t
                    .weights()
                    .iter()
                    .zip(mf.xexp.iter().zip(&mg.xexp))
                    .enumerate()
                {
                    let s = a + b;
                    if s >= p as u32 {
                        tpoly = self.mul_by_linear_form(&tpoly, i);
                        xexp.push(s - p as u32);
                    } else {
                        xexp.push(s);
                    }
                }
                self.emit(&mut out, &xexp, tpoly);
            }
        }
        out
    }

    pub fn degree(&self, m: &ReducedMonomial) -> LElement {
        let mut raw: Vec<i64> = m.xexp.iter().map(|&e| e as i64).collect();
        raw.push(m.t_degree() as i64);
        self.group
            .normal_form(&raw)
            .expect("monomial has n exponents")
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self, f: &RingElement) -> Option<LElement> {
        let mut degs = f.terms().map(|(m, _)| self.degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Basis of `R_g`: `X^{a(g)} T^s` over all `|s| = ell(g)`, ordered by `s`
    /// lexicographically.
    pub fn monomial_basis(&self, g: &LElement) -> Vec<ReducedMonomial> {
        if g.ell() < 0 {
            return Vec::new();
        }
        let xexp: Vec<u32> = g.a().iter().map(|&v| v as u32).collect();
        compositions(g.ell() as u32, self.nvars_t())
            .into_iter()
            .map(|texp| ReducedMonomial {
                xexp: xexp.clone(),
                texp,
            })
            .collect()
    }

    /// `dim R_g = C(ell(g) + d, d)` for `ell(g) >= 0`, else 0.
    pub fn hilbert(&self, g: &LElement) -> u64 {
        crate::projcohom::h0(g.ell(), self.t.d())
    }

    /// Coordinates of a homogeneous `f` in [`Self::monomial_basis`] of `g`.
    pub fn coordinates(&self, f: &RingElement, g: &LElement) -> Vec<Q> {
        let basis = self.monomial_basis(g);
        debug_assert!(f.terms().all(|(m, _)| basis.binary_search(m).is_ok()));
        basis.iter().map(|m| f.coefficient(m)).collect()
    }

    pub fn from_coordinates(&self, coords: &[Q], g: &LElement) -> RingElement {
        let mut e = RingElement::zero();
        for (m, c) in self.monomial_basis(g).into_iter().zip(coords) {
            e.add_term(m, c.clone());
        }
        e
    }
}

/// Exponent vectors of length `vars` summing to `total`, lexicographically
/// ascending.
pub fn compositions(total: u32, vars: usize) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    if vars == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, vars - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
