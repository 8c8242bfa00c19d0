//! Bookkeeping model of the order `Lambda = T_{p_1}(O, O(-L_1)) (x) .. (x) T_{p_n}(O, O(-L_n))`.
//!
//! Sheaves that occur are line bundles `O(m + sum tw_i L_i)`, so an entry is a
//! [`DivisorTwist`]. Cohomology only sees the total degree, since `O(L_i)` is
//! isomorphic to `O(1)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{GlError, Result};
use crate::gltype::{self, GLType};
use crate::lgroup::{LElement, LGroup};

/// `O(m + sum_i tw_i L_i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorTwist {
    pub m: i64,
    pub tw: Vec<i64>,
}

impl DivisorTwist {
    pub fn zero(n: usize) -> Self {
        Self {
            m: 0,
            tw: vec![0; n],
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.m + self.tw.iter().sum::<i64>()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            m: self.m + other.m,
            tw: self.tw.iter().zip(&other.tw).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A column of `Lambda` up to twist: one line bundle per multi-index
/// `j = (j_1, .., j_n)` with `1 <= j_i <= p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnBundle {
    pub entries: BTreeMap<Vec<usize>, DivisorTwist>,
}

impl ColumnBundle {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// The entry at `(1, .., 1)`, i.e. `e P(x)`.
    pub fn top(&self) -> &DivisorTwist {
        self.entries.values().next().expect("rank is at least 1")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank(),
            "entries": self.entries.iter().map(|(j, tw)| serde_json::json!({
                "index": j,
                "m": tw.m,
                "tw": tw.tw,
            })).collect::<Vec<_>>(),
        })
    }
}

/// All multi-indices `1 <= j_i <= p_i`, lexicographically.
pub fn multi_indices(weights: &[i64]) -> Vec<Vec<usize>> {
    LGroup::new(weights)
        .torsion_reps()
        .into_iter()
        .map(|a| a.into_iter().map(|v| v as usize + 1).collect())
        .collect()
}

fn check_index(j: &[usize], t: &GLType) -> Result<()> {
    if j.len() != t.n()
        || j.iter()
            .zip(t.weights())
            .any(|(&v, &p)| v < 1 || v as i64 > p)
    {
        return Err(GlError::Input(format!(
            "multi-index {j:?} out of range for weights {:?}",
            t.weights()
        )));
    }
    Ok(())
}

/// Entry `(j, k)` of `Lambda`: `O(-L_i)` in every factor where `j_i < k_i`.
pub fn order_entry(j: &[usize], k: &[usize], t: &GLType) -> Result<DivisorTwist> {
    check_index(j, t)?;
    check_index(k, t)?;
    Ok(DivisorTwist {
        m: 0,
        tw: j
            .iter()
            .zip(k)
            .map(|(a, b)| if a < b { -1 } else { 0 })
            .collect(),
    })
}

/// Twist of the composite `Lambda_{j0 j1} Lambda_{j1 j2} ..` along a path of
/// multi-indices.
pub fn composite_entry(path: &[Vec<usize>], t: &GLType) -> Result<DivisorTwist> {
    let mut acc = DivisorTwist::zero(t.n());
    for w in path.windows(2) {
        acc = acc.add(&order_entry(&w[0], &w[1], t)?);
    }
    Ok(acc)
}

/// `P(x)` for a raw word `sum b_i x_i + m c`, without normalising.
///
/// Factor `i` is column `((-b_i) mod p_i) + 1` of `Lambda_i` twisted by
/// `ceil(b_i / p_i) L_i`, so entry `j` has `tw_i = ceil(b_i/p_i) - [j_i < col_i]`.
pub fn twisted_column_raw(raw: &[i64], t: &GLType) -> Result<ColumnBundle> {
    if raw.len() != t.n() + 1 {
        return Err(GlError::Input(format!(
            "word has {} coordinates, expected n+1 = {}",
            raw.len(),
            t.n() + 1
        )));
    }
    let (b, m) = raw.split_at(t.n());
    let cols: Vec<(i64, i64)> = b
        .iter()
        .zip(t.weights())
        .map(|(&bi, &p)| ((-bi).rem_euclid(p) + 1, ceil_div(bi, p)))
        .collect();
    let entries = multi_indices(t.weights())
        .into_iter()
        .map(|j| {
            let tw = j
                .iter()
                .zip(&cols)
                .map(|(&ji, &(col, up))| up - i64::from((ji as i64) < col))
                .collect();
            (j, DivisorTwist { m: m[0], tw })
        })
        .collect();
    Ok(ColumnBundle { entries })
}

/// `P(x)` for a normal-form element.
pub fn twisted_column(x: &LElement, t: &GLType) -> ColumnBundle {
    twisted_column_raw(&x.to_raw(), t).expect("normal form has n+1 coordinates")
}

/// Degree of `e P(x)`, read off the normal form.
pub fn top_entry(x: &LElement) -> i64 {
    x.ell()
}

/// Degree of `e P(w)` for a raw word: `sum floor(b_i / p_i) + m`.
pub fn top_entry_raw(raw: &[i64], t: &GLType) -> Result<i64> {
    if raw.len() != t.n() + 1 {
        return Err(GlError::Input("word length must be n+1".into()));
    }
    Ok(raw[..t.n()]
        .iter()
        .zip(t.weights())
        .map(|(&b, &p)| b.div_euclid(p))
        .sum::<i64>()
        + raw[t.n()])
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Local structure at a point of the open stratum of a set of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalType {
    /// 0-based hyperplane indices.
    pub stratum: Vec<usize>,
    /// Weights of the triangular factors `T_{p_i}(O_x, (a_i))`.
    pub weights: Vec<i64>,
    pub global_dimension: usize,
}

/// The stalk of `Lambda` at a point lying exactly on the hyperplanes in `s`
/// is Morita equivalent to the tensor product of `T_{p_i}(O_x, (a_i))`
/// over `i` in `s`.
pub fn local_type(s: &[usize], t: &GLType) -> Result<LocalType> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() || sorted.iter().any(|&i| i >= t.n()) {
        return Err(GlError::Input(format!(
            "{s:?} is not a subset of hyperplane indices"
        )));
    }
    if !gltype::strata(t)?.contains(&sorted) {
        return Err(GlError::NotAStratum(sorted));
    }
    Ok(LocalType {
        weights: sorted.iter().map(|&i| t.weights()[i]).collect(),
        stratum: sorted,
        global_dimension: t.d(),
    })
}
