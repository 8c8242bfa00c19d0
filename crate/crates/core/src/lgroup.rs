//! The rank one grading group `L(p) = <x_1, .., x_n, c> / (p_i x_i - c)`.
//!
//! Every element has a unique normal form `sum a_i x_i + ell c` with
//! `0 <= a_i < p_i`; the effective cone `L_+` is the set of normal forms with
//! `ell >= 0`, and `x <= y` iff `y - x` is effective.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{GlError, Result};
use crate::gltype::GLType;

/// An element of `L(p)` in normal form.
///
/// The derived order compares `ell` first and then `a` lexicographically,
/// which is the canonical vertex numbering used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LElement {
    ell: i64,
    a: Vec<i64>,
}

impl LElement {
    /// Coefficient of `c`.
    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// Torsion coordinates, `0 <= a_i < p_i`.
    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// Number of nonzero torsion coordinates.
    pub fn support(&self) -> usize {
        self.a.iter().filter(|&&v| v > 0).count()
    }

    /// The word `(a_1, .., a_n, ell)` this normal form came from.
    pub fn to_raw(&self) -> Vec<i64> {
        let mut w = self.a.clone();
        w.push(self.ell);
        w
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (v, format!("x{}", i + 1)))
            .collect();
        if self.ell != 0 {
            terms.push((self.ell, "c".to_string()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (coef, sym)) in terms.iter().enumerate() {
            let sign = if *coef < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            match coef.abs() {
                1 => write!(f, "{sign}{sym}")?,
                m => write!(f, "{sign}{m}*{sym}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses a word such as `"x1+4*x2-c"`, `"2*c"` or `"0"` into raw
/// coordinates `(b_1, .., b_n, m)`.
pub fn parse_word(text: &str, n: usize) -> Result<Vec<i64>> {
    let bad = |why: &str| GlError::Input(format!("cannot parse group element {text:?}: {why}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut raw = vec![0i64; n + 1];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        if term.is_empty() {
            return Err(bad("dangling sign"));
        }
        let (coef, sym) = match term.split_once('*') {
            Some((c, s)) => (c.parse::<i64>().map_err(|_| bad("bad coefficient"))?, s),
            None => match term.parse::<i64>() {
                Ok(0) => continue,
                Ok(_) => return Err(bad("bare integers other than 0 are ambiguous")),
                Err(_) => {
                    let digits =
                        term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                    if digits > 0 {
                        let c = term[..digits]
                            .parse::<i64>()
                            .map_err(|_| bad("bad coefficient"))?;
                        (c, &term[digits..])
                    } else {
                        (1, term)
                    }
                }
            },
        };
        let slot = if sym == "c" {
            n
        } else if let Some(idx) = sym.strip_prefix('x') {
            let i: usize = idx.parse().map_err(|_| bad("bad generator"))?;
            if i == 0 || i > n {
                return Err(bad("generator index out of range"));
            }
            i - 1
        } else {
            return Err(bad("unknown symbol"));
        };
        raw[slot] += sign * coef;
    }
    Ok(raw)
}

/// Arithmetic in `L(p)` for fixed weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGroup {
    p: Vec<i64>,
}

impl LGroup {
    pub fn new(weights: &[i64]) -> Self {
        assert!(weights.iter().all(|&p| p >= 1), "weights must be positive");
        Self {
            p: weights.to_vec(),
        }
    }

    pub fn of(t: &GLType) -> Self {
        Self::new(t.weights())
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.p
    }

    /// Reduces a raw word `sum b_i x_i + m c`, given as `n+1` integers, to
    /// normal form.
    pub fn normal_form(&self, raw: &[i64]) -> Result<LElement> {
        if raw.len() != self.n() + 1 {
            return Err(GlError::Input(format!(
                "word has {} coordinates, expected n+1 = {}",
                raw.len(),
                self.n() + 1
            )));
        }
        let mut ell = raw[self.n()];
        let a = raw[..self.n()]
            .iter()
            .zip(&self.p)
            .map(|(&b, &p)| {
                ell += b.div_euclid(p);
                b.rem_euclid(p)
            })
            .collect();
        Ok(LElement { ell, a })
    }

    pub fn parse(&self, text: &str) -> Result<LElement> {
        self.normal_form(&parse_word(text, self.n())?)
    }

    pub fn zero(&self) -> LElement {
        LElement {
            ell: 0,
            a: vec![0; self.n()],
        }
    }

    /// `k c`.
    pub fn c(&self, k: i64) -> LElement {
        LElement {
            ell: k,
            a: vec![0; self.n()],
        }
    }

    /// `k x_i` (0-based `i`).
    pub fn x(&self, i: usize, k: i64) -> LElement {
        let mut raw = vec![0; self.n() + 1];
        raw[i] = k;
        self.normal_form(&raw).expect("length is n+1")
    }

    fn check(&self, x: &LElement) -> Result<()> {
        if x.a.len() != self.n() {
            return Err(GlError::Input(format!(
                "element has {} torsion coordinates, group has n = {}",
                x.a.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Normal form of `x + sign * y`.
    pub fn group_op(&self, x: &LElement, y: &LElement, sign: i64) -> Result<LElement> {
        self.check(x)?;
        self.check(y)?;
        if sign != 1 && sign != -1 {
            return Err(GlError::Input(format!("sign must be +1 or -1, got {sign}")));
        }
        let mut raw: Vec<i64> = x.a.iter().zip(&y.a).map(|(u, v)| u + sign * v).collect();
        raw.push(x.ell + sign * y.ell);
        self.normal_form(&raw)
    }

    /// `x + y`; panics on length mismatch.
    pub fn add(&self, x: &LElement, y: &LElement) -> LElement {
        self.group_op(x, y, 1).expect("elements of this group")
    }

    /// `x - y`; panics on length mismatch.
    pub fn sub(&self, x: &LElement, y: &LElement) -> LElement {
        self.group_op(x, y, -1).expect("elements of this group")
    }

    pub fn neg(&self, x: &LElement) -> LElement {
        self.sub(&self.zero(), x)
    }

    /// Membership in `L_+`.
    pub fn is_effective(&self, x: &LElement) -> bool {
        x.ell >= 0
    }

    /// The partial order `x <= y` iff `y - x` is effective.
    pub fn le(&self, x: &LElement, y: &LElement) -> bool {
        self.is_effective(&self.sub(y, x))
    }

    /// The interval `[0, d c]` in canonical order.
    ///
    /// Membership is `ell >= 0` and `ell + #{i : a_i > 0} <= d`.
    pub fn interval(&self, d: usize) -> Vec<LElement> {
        let d = d as i64;
        let mut out = Vec::new();
        for ell in 0..=d {
            for a in self.torsion_reps() {
                let s = a.iter().filter(|&&v| v > 0).count() as i64;
                if ell + s <= d {
                    out.push(LElement { ell, a });
                }
            }
        }
        out.sort();
        out
    }

    /// All torsion vectors `0 <= a_i < p_i`, lexicographically ascending.
    pub fn torsion_reps(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for &p in &self.p {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..p).map(move |v| {
                        let mut w = prefix.clone();
                        w.push(v);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Builds an element from its normal-form data.
    pub fn element(&self, a: &[i64], ell: i64) -> Result<LElement> {
        if a.len() != self.n() || a.iter().zip(&self.p).any(|(&v, &p)| v < 0 || v >= p) {
            return Err(GlError::Input(format!(
                "{a:?} is not a normal-form torsion vector"
            )));
        }
        Ok(LElement { ell, a: a.to_vec() })
    }
}

/// `sum_{m=0}^{d} (d - m + 1) e_m(p_1 - 1, .., p_n - 1)`.
pub fn interval_size_formula(weights: &[i64], d: usize) -> i64 {
    // elementary symmetric polynomials by the product expansion
    let mut e = vec![1i64];
    for &p in weights {
        let mut next = vec![0i64; e.len() + 1];
        for (k, &v) in e.iter().enumerate() {
            next[k] += v;
            next[k + 1] += v * (p - 1);
        }
        e = next;
    }
    (0..=d)
        .map(|m| (d as i64 - m as i64 + 1) * e.get(m).copied().unwrap_or(0))
        .sum()
}
