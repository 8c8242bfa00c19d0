//! Re-grading `R` from `L` to the subgroup `Zc`.
//!
//! For coset representatives `I` of `L / Zc`, the component of degree `h` is
//! the matrix of graded pieces `(R_{i - j + hc})_{i,j in I}`, multiplied as
//! block matrices with entries multiplied in `R`.

use serde::Serialize;

use crate::error::{GlError, Result};
use crate::glring::{GLRing, ReducedMonomial, RingElement};
use crate::gltype::GLType;
use crate::lgroup::{LElement, LGroup};
use crate::ordermodel::{multi_indices, order_entry};
use crate::projcohom::h0;
use crate::sweep::{self, Exec};

/// A complete set of representatives of `L / Zc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReps {
    pub reps: Vec<LElement>,
}

impl CosetReps {
    /// `{ sum a_i x_i : 0 <= a_i < p_i }`, lexicographic in `a`.
    pub fn canonical(g: &LGroup) -> Self {
        Self {
            reps: g
                .torsion_reps()
                .into_iter()
                .map(|a| g.element(&a, 0).expect("torsion rep"))
                .collect(),
        }
    }

    /// Validates an arbitrary choice: one element per coset, in the order
    /// given.
    pub fn new(g: &LGroup, reps: Vec<LElement>) -> Result<Self> {
        let mut torsion: Vec<&[i64]> = reps.iter().map(|r| r.a()).collect();
        torsion.sort();
        torsion.dedup();
        let expected: usize = g.weights().iter().product::<i64>() as usize;
        if reps.len() != expected || torsion.len() != expected {
            return Err(GlError::Input(format!(
                "need exactly one representative for each of the {expected} cosets"
            )));
        }
        Ok(Self { reps })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the representative in the coset of `g`.
    pub fn index_of_coset(&self, g: &LElement) -> Option<usize> {
        self.reps.iter().position(|r| r.a() == g.a())
    }
}

/// `(A^{[Zc]})_h` with monomial bases per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegradedComponent {
    pub h: i64,
    pub reps: Vec<LElement>,
    pub blocks: Vec<Vec<Vec<ReducedMonomial>>>,
}

impl RegradedComponent {
    pub fn dims(&self) -> Vec<Vec<u64>> {
        self.blocks
            .iter()
            .map(|row| row.iter().map(|b| b.len() as u64).collect())
            .collect()
    }

    pub fn total_dim(&self) -> u64 {
        self.dims().iter().flatten().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "h": self.h,
            "reps": self.reps.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "dims": self.dims(),
        })
    }
}

/// Degree `i - j + hc` of block `(i, j)`.
pub fn block_degree(g: &LGroup, i: &LElement, j: &LElement, h: i64) -> LElement {
    g.add(&g.sub(i, j), &g.c(h))
}

pub fn regrade_component(h: i64, t: &GLType) -> RegradedComponent {
    let ring = GLRing::new(t);
    let reps = CosetReps::canonical(ring.group());
    regrade_component_with(h, &reps, &ring, Exec::default())
}

pub fn regrade_component_with(
    h: i64,
    reps: &CosetReps,
    ring: &GLRing,
    exec: Exec,
) -> RegradedComponent {
    let g = ring.group();
    let blocks = sweep::map_slice(exec, &reps.reps, |i| {
        reps.reps
            .iter()
            .map(|j| ring.monomial_basis(&block_degree(g, i, j, h)))
            .collect()
    });
    RegradedComponent {
        h,
        reps: reps.reps.clone(),
        blocks,
    }
}

/// An element of `(A^{[Zc]})_h`: a square matrix of ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegradedElement {
    pub h: i64,
    pub blocks: Vec<Vec<RingElement>>,
}

impl RegradedElement {
    pub fn zero(h: i64, size: usize) -> Self {
        Self {
            h,
            blocks: vec![vec![RingElement::zero(); size]; size],
        }
    }

    /// The unit of degree 0: `1` on the diagonal.
    pub fn identity(ring: &GLRing, size: usize) -> Self {
        let mut e = Self::zero(0, size);
        for (k, row) in e.blocks.iter_mut().enumerate() {
            row[k] = ring.one();
        }
        e
    }
}

fn check_element(ring: &GLRing, reps: &CosetReps, u: &RegradedElement) -> Result<()> {
    let g = ring.group();
    if u.blocks.len() != reps.len() || u.blocks.iter().any(|r| r.len() != reps.len()) {
        return Err(GlError::DegreeMismatch(
            "block matrix does not match the representatives".into(),
        ));
    }
    for (i, row) in u.blocks.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let want = block_degree(g, &reps.reps[i], &reps.reps[j], u.h);
            if ring.homogeneous_degree(f).as_ref() != Some(&want) {
                return Err(GlError::DegreeMismatch(format!(
                    "block ({i},{j}) of degree-{} element is not homogeneous of degree {want}",
                    u.h
                )));
            }
        }
    }
    Ok(())
}

/// `(uv)_{ij} = sum_k u_{ik} v_{kj}`, landing in degree `h + h'`.
pub fn regrade_multiply(
    ring: &GLRing,
    reps: &CosetReps,
    u: &RegradedElement,
    v: &RegradedElement,
) -> Result<RegradedElement> {
    check_element(ring, reps, u)?;
    check_element(ring, reps, v)?;
    let m = reps.len();
    let mut out = RegradedElement::zero(u.h + v.h, m);
    for i in 0..m {
        for k in 0..m {
            if u.blocks[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if v.blocks[k][j].is_zero() {
                    continue;
                }
                let p = ring.multiply(&u.blocks[i][k], &v.blocks[k][j]);
                out.blocks[i][j] = out.blocks[i][j].add(&p);
            }
        }
    }
    Ok(out)
}

/// Degree-`ell` dimension of `T_{p_1}(S, X_1^{p_1}) (x)_S .. (x)_S T_{p_n}(S, X_n^{p_n})`:
/// an entry strictly above the diagonal in `u` factors lies in `S_{ell - u}`.
pub fn triangular_tensor_dim(ell: i64, t: &GLType) -> u64 {
    let idx = multi_indices(t.weights());
    let mut total = 0;
    for j in &idx {
        for k in &idx {
            let upper = j.iter().zip(k).filter(|(a, b)| a < b).count() as i64;
            total += h0(ell - upper, t.d());
        }
    }
    total
}

/// `dim H^0(P^d, Lambda (x) O(ell))`, summed over the entries of the order.
pub fn b_algebra_dim(ell: i64, t: &GLType) -> Result<u64> {
    if ell < 0 {
        return Err(GlError::Input(format!(
            "section algebra degree {ell} must be nonnegative"
        )));
    }
    let idx = multi_indices(t.weights());
    let mut total = 0;
    for j in &idx {
        for k in &idx {
            total += h0(ell + order_entry(j, k, t)?.total_degree(), t.d());
        }
    }
    Ok(total)
}

/// `g = rep + hc`; returns `(h, index of rep)` in the canonical representatives.
pub fn transport_shift(g: &LElement, t: &GLType) -> (i64, usize) {
    let reps = CosetReps::canonical(&LGroup::of(t));
    let idx = reps
        .index_of_coset(g)
        .expect("every normal form has a canonical coset rep");
    (g.ell(), idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn line() -> GLType {
        GLType::from_ints(1, &[2, 2, 2], &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn trivial_type_is_rank_one() {
        for d in 1..=3 {
            let t = GLType::trivial(d).unwrap();
            for h in -2..=5 {
                let c = regrade_component(h, &t);
                assert_eq!(c.dims().len(), 1);
                assert_eq!(c.total_dim(), h0(h, d));
                assert_eq!(triangular_tensor_dim(h, &t), h0(h, d));
                if h >= 0 {
                    assert_eq!(b_algebra_dim(h, &t).unwrap(), h0(h, d));
                }
            }
        }
    }

    #[test]
    fn two_coset_block_pattern() {
        // weight-2 single hyperplane: reps {0, x1}, x1 - 0 = x1, 0 - x1 = x1 - c
        let t = GLType::from_ints(1, &[2], &[&[1, 0]]).unwrap();
        let ring = GLRing::new(&t);
        let g = ring.group();
        let reps = CosetReps::canonical(g);
        for h in 0..4 {
            let c = regrade_component_with(h, &reps, &ring, Exec::Sequential);
            let deg = |i: usize, j: usize| block_degree(g, &reps.reps[i], &reps.reps[j], h);
            assert_eq!(deg(0, 0), g.c(h));
            assert_eq!(deg(0, 1), g.add(&g.x(0, -1), &g.c(h)));
            assert_eq!(deg(1, 0), g.add(&g.x(0, 1), &g.c(h)));
            assert_eq!(c.dims()[0][1], h0(h - 1, 1));
            assert_eq!(c.dims()[1][0], h0(h, 1));
        }
    }

    #[test]
    fn line_example_degree_zero() {
        let t = line();
        assert_eq!(regrade_component(0, &t).total_dim(), 27);
        assert_eq!(triangular_tensor_dim(0, &t), 27);
        assert_eq!(b_algebra_dim(0, &t).unwrap(), 27);
        assert_eq!(triangular_tensor_dim(-1, &t), 0);
        assert!(b_algebra_dim(-1, &t).is_err());
    }

    #[test]
    fn section_algebra_single_weight() {
        let t = GLType::from_ints(1, &[2], &[&[1, 0]]).unwrap();
        assert_eq!(b_algebra_dim(1, &t).unwrap(), 7);
    }

    #[test]
    fn transport_examples() {
        let t = GLType::from_ints(1, &[2, 3], &[&[1, 0], &[0, 1]]).unwrap();
        let g = LGroup::of(&t);
        let reps = CosetReps::canonical(&g);
        assert_eq!(transport_shift(&g.zero(), &t), (0, 0));
        assert_eq!(transport_shift(&g.c(1), &t), (1, 0));
        let x = g.parse("x1+4*x2").unwrap();
        let (h, k) = transport_shift(&x, &t);
        assert_eq!(h, 1);
        assert_eq!(reps.reps[k], g.parse("x1+x2").unwrap());
        let (h2, k2) = transport_shift(&g.add(&x, &g.c(1)), &t);
        assert_eq!((h2, k2), (h + 1, k));
    }

    #[test]
    fn multiply_unit_and_single_entries() {
        let t = line();
        let ring = GLRing::new(&t);
        let reps = CosetReps::canonical(ring.group());
        let m = reps.len();
        let one = RegradedElement::identity(&ring, m);
        // u = X_3 in block (i, k) with i = x3, k = 0; v = X_3 in block (k, j) with j = x3
        let i = reps.reps.iter().position(|r| r.a() == [0, 0, 1]).unwrap();
        let k = 0;
        let mut u = RegradedElement::zero(0, m);
        u.blocks[i][k] = ring.x(2);
        let mut v = RegradedElement::zero(1, m);
        v.blocks[k][i] = ring.x(2);
        assert_eq!(regrade_multiply(&ring, &reps, &one, &u).unwrap(), u);
        assert_eq!(regrade_multiply(&ring, &reps, &u, &one).unwrap(), u);
        let uv = regrade_multiply(&ring, &reps, &u, &v).unwrap();
        assert_eq!(uv.h, 1);
        assert_eq!(uv.blocks[i][i], ring.multiply(&ring.x(2), &ring.x(2)));
        assert_eq!(
            uv.blocks.iter().flatten().filter(|f| !f.is_zero()).count(),
            1
        );
    }

    #[test]
    fn multiply_rejects_wrong_degrees() {
        let t = line();
        let ring = GLRing::new(&t);
        let reps = CosetReps::canonical(ring.group());
        let mut bad = RegradedElement::zero(0, reps.len());
        bad.blocks[0][0] = ring.x(0);
        let one = RegradedElement::identity(&ring, reps.len());
        assert!(matches!(
            regrade_multiply(&ring, &reps, &bad, &one),
            Err(GlError::DegreeMismatch(_))
        ));
        let mut scaled = one.clone();
        scaled.blocks[0][0] = ring.one().scale(&q(3));
        assert!(regrade_multiply(&ring, &reps, &scaled, &one).is_ok());
    }

    #[test]
    fn custom_reps_validation() {
        let g = LGroup::new(&[2, 2]);
        let mut reps = CosetReps::canonical(&g).reps;
        reps[1] = g.add(&reps[1], &g.c(3));
        assert!(CosetReps::new(&g, reps.clone()).is_ok());
        reps[2] = reps[1].clone();
        assert!(CosetReps::new(&g, reps).is_err());
        assert!(CosetReps::new(&g, vec![g.zero()]).is_err());
    }

    #[test]
    fn json_shape() {
        let v = regrade_component(0, &GLType::from_ints(1, &[2], &[&[1, 0]]).unwrap()).to_json();
        assert_eq!(v["h"], 0);
        assert_eq!(v["reps"], serde_json::json!(["0", "x1"]));
        assert_eq!(v["dims"], serde_json::json!([[1, 0], [1, 1]]));
    }
}
