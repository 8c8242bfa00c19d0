//! The defining datum of a GL order: dimension, weights and hyperplanes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GlError, Result};
use crate::linalg::{self, Q};

/// A type `(d, L, p)`: `n` hyperplanes `l_i(T) = sum_j coeffs[i][j] T_j` in
/// projective `d`-space with weights `p_i >= 1`.
///
/// Construction checks shapes and weights only; general position is checked
/// by [`validate_type`], which reports rather than fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLType {
    d: usize,
    weights: Vec<i64>,
    hyperplanes: Vec<Vec<Q>>,
}

impl GLType {
    pub fn new(d: usize, weights: Vec<i64>, hyperplanes: Vec<Vec<Q>>) -> Result<Self> {
        if d == 0 {
            return Err(GlError::Input(
                "projective dimension d must be positive".into(),
            ));
        }
        if weights.len() != hyperplanes.len() {
            return Err(GlError::Input(format!(
                "{} weights but {} hyperplanes",
                weights.len(),
                hyperplanes.len()
            )));
        }
        for (i, row) in hyperplanes.iter().enumerate() {
            if row.len() != d + 1 {
                return Err(GlError::Input(format!(
                    "hyperplane {} has {} coefficients, expected d+1 = {}",
                    i + 1,
                    row.len(),
                    d + 1
                )));
            }
        }
        if let Some((i, &p)) = weights.iter().enumerate().find(|(_, &p)| p < 1) {
            return Err(GlError::Weight {
                index: i + 1,
                value: p,
            });
        }
        Ok(Self {
            d,
            weights,
            hyperplanes,
        })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(d: usize, weights: &[i64], hyperplanes: &[&[i64]]) -> Result<Self> {
        let rows = hyperplanes
            .iter()
            .map(|r| r.iter().map(|&x| linalg::q(x)).collect())
            .collect();
        Self::new(d, weights.to_vec(), rows)
    }

    /// The type with no hyperplanes: the order is `O` itself.
    pub fn trivial(d: usize) -> Result<Self> {
        Self::new(d, Vec::new(), Vec::new())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn hyperplanes(&self) -> &[Vec<Q>] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &[Q] {
        &self.hyperplanes[i]
    }

    /// Product of the weights, the rank of the order as an `O`-module.
    pub fn rank(&self) -> usize {
        self.weights.iter().product::<i64>() as usize
    }

    /// Errors with [`GlError::InvalidType`] unless the hyperplanes are in
    /// general position.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate_type(self);
        if report.ok {
            Ok(())
        } else {
            Err(GlError::InvalidType(report.to_string()))
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TypeSpec = serde_json::from_str(text)
            .map_err(|e| GlError::Input(format!("malformed type spec: {e}")))?;
        spec.into_type()
    }

    pub fn to_spec(&self) -> TypeSpec {
        TypeSpec {
            d: self.d as i64,
            weights: self.weights.clone(),
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|r| r.iter().map(RationalInput::from_q).collect())
                .collect(),
        }
    }
}

/// On-disk form: `{"d": 2, "weights": [2, 2], "hyperplanes": [[1, 0, "1/2"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSpec {
    pub d: i64,
    pub weights: Vec<i64>,
    pub hyperplanes: Vec<Vec<RationalInput>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

impl RationalInput {
    fn to_q(&self) -> Result<Q> {
        match self {
            RationalInput::Int(v) => Ok(linalg::q(*v)),
            RationalInput::Text(s) => linalg::parse_rational(s),
        }
    }

    fn from_q(x: &Q) -> Self {
        match (x.is_integer(), i64::try_from(x.numer())) {
            (true, Ok(v)) => RationalInput::Int(v),
            _ => RationalInput::Text(linalg::format_rational(x)),
        }
    }
}

impl TypeSpec {
    pub fn into_type(self) -> Result<GLType> {
        if self.d < 1 {
            return Err(GlError::Input(format!("d = {} must be positive", self.d)));
        }
        let rows = self
            .hyperplanes
            .iter()
            .map(|r| {
                r.iter()
                    .map(RationalInput::to_q)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GLType::new(self.d as usize, self.weights, rows)
    }
}

/// Outcome of the general-position check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// A subset of hyperplanes (0-based indices) whose coefficient rows have
/// rank below the subset size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub subset: Vec<usize>,
    pub rank: usize,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "OK: hyperplanes in general position");
        }
        write!(f, "hyperplanes not in general position:")?;
        for v in &self.violations {
            let idx: Vec<String> = v.subset.iter().map(|i| (i + 1).to_string()).collect();
            write!(
                f,
                " subset {{{}}} has rank {} < {};",
                idx.join(","),
                v.rank,
                v.subset.len()
            )?;
        }
        Ok(())
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Checks that every set of at most `d+1` hyperplanes has linearly
/// independent coefficient rows. A zero row shows up as a singleton of rank 0.
pub fn validate_type(t: &GLType) -> ValidationReport {
    let mut violations = Vec::new();
    for size in 1..=(t.d + 1).min(t.n()) {
        for subset in subsets_of_size(t.n(), size) {
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| t.hyperplanes[i].clone()).collect();
            let r = linalg::rank(&rows);
            if r < size {
                violations.push(Violation { subset, rank: r });
            }
        }
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Index subsets whose hyperplane intersection is nonempty: all subsets of
/// size at most `d`, the empty set first, then by size and lexicographically.
pub fn strata(t: &GLType) -> Result<Vec<Vec<usize>>> {
    t.ensure_valid()?;
    Ok((0..=t.d.min(t.n()))
        .flat_map(|m| subsets_of_size(t.n(), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn golden_line_is_valid() {
        let t = GLType::from_ints(1, &[2, 2, 2], &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(validate_type(&t).ok);
    }

    #[test]
    fn golden_plane_is_valid() {
        let t = GLType::from_ints(
            2,
            &[2, 2, 2, 2],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
        )
        .unwrap();
        assert!(validate_type(&t).ok);
    }

    #[test]
    fn dependent_triple_is_reported() {
        let t = GLType::from_ints(2, &[2, 2, 2], &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        let r = validate_type(&t);
        assert!(!r.ok);
        assert_eq!(
            r.violations,
            vec![Violation {
                subset: vec![0, 1, 2],
                rank: 2
            }]
        );
        assert!(r.to_string().contains("subset {1,2,3} has rank 2 < 3"));
    }

    #[test]
    fn zero_row_and_repeated_point() {
        let t = GLType::from_ints(1, &[2, 2], &[&[0, 0], &[1, 1]]).unwrap();
        let r = validate_type(&t);
        assert!(r.violations.contains(&Violation {
            subset: vec![0],
            rank: 0
        }));
        let t = GLType::from_ints(1, &[2, 3], &[&[1, 2], &[2, 4]]).unwrap();
        assert!(!validate_type(&t).ok);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            GLType::from_ints(1, &[2, 2], &[&[1, 0]]),
            Err(GlError::Input(_))
        ));
        assert!(matches!(
            GLType::from_ints(2, &[2], &[&[1, 0]]),
            Err(GlError::Input(_))
        ));
        assert_eq!(
            GLType::from_ints(1, &[2, 0], &[&[1, 0], &[0, 1]]),
            Err(GlError::Weight { index: 2, value: 0 })
        );
        assert!(GLType::trivial(0).is_err());
    }

    #[test]
    fn strata_of_plane_example() {
        let t = GLType::from_ints(
            2,
            &[2, 2, 2, 2],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
        )
        .unwrap();
        let s = strata(&t).unwrap();
        assert_eq!(s.len(), 1 + 4 + 6);
        assert_eq!(s[0], Vec::<usize>::new());
        assert!(s.iter().all(|x| x.len() <= 2));
        // every triple really has full rank, so no triple meets
        for triple in subsets_of_size(4, 3) {
            let rows: Vec<_> = triple.iter().map(|&i| t.hyperplane(i).to_vec()).collect();
            assert_eq!(linalg::rank(&rows), 3);
        }
    }

    #[test]
    fn strata_of_three_points() {
        let t = GLType::from_ints(1, &[2, 2, 2], &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(strata(&t).unwrap(), vec![vec![], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn strata_count_formula() {
        let t = GLType::from_ints(
            3,
            &[2, 3, 2, 2, 2],
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 2, 3, 4],
            ],
        )
        .unwrap();
        let expected: usize = (0..=3).map(|m| binom(5, m)).sum();
        assert_eq!(strata(&t).unwrap().len(), expected);
    }

    #[test]
    fn strata_refuses_invalid_type() {
        let t = GLType::from_ints(1, &[2, 2], &[&[1, 1], &[2, 2]]).unwrap();
        assert!(matches!(strata(&t), Err(GlError::InvalidType(_))));
    }

    #[test]
    fn json_round_trip_with_fractions() {
        let t = GLType::from_json(
            r#"{"d": 1, "weights": [2, 3], "hyperplanes": [[1, "0"], ["1/2", -3]]}"#,
        )
        .unwrap();
        assert_eq!(t.hyperplane(1)[0], linalg::parse_rational("1/2").unwrap());
        let back = serde_json::to_string(&t.to_spec()).unwrap();
        assert_eq!(GLType::from_json(&back).unwrap(), t);
        assert!(GLType::from_json("{").is_err());
        assert!(GLType::from_json(r#"{"d": 0, "weights": [], "hyperplanes": []}"#).is_err());
    }
}
