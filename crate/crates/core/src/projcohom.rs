//! Cohomology of `O(ell)` on projective `d`-space and the Hom/Ext calculus
//! between the summands `P(x)`.
//!
//! `Ext^i(P(x), P(y)) = H^i(P^d, O(ell))` where `ell` is the `c`-coefficient
//! of the normal form of `y - x`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{GlError, Result};
use crate::gltype::GLType;
use crate::lgroup::{LElement, LGroup};

/// `C(n, k)` for `n >= 0`, exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `dim H^i(P^d, O(ell))`.
pub fn h(i: usize, ell: i64, d: usize) -> Result<BigUint> {
    if i > d {
        return Err(GlError::Input(format!(
            "cohomological degree {i} outside 0..={d}"
        )));
    }
    let d64 = d as i64;
    Ok(if i == 0 && ell >= 0 {
        binomial((ell + d64) as u64, d as u64)
    } else if i == d && ell < -d64 {
        binomial((-ell - 1) as u64, d as u64)
    } else {
        BigUint::zero()
    })
}

/// `dim H^0(P^d, O(ell))` as a machine integer; these are Hom dimensions
/// between small twists.
pub fn h0(ell: i64, d: usize) -> u64 {
    h(0, ell, d)
        .expect("degree 0 is always in range")
        .to_u64()
        .expect("h^0 fits in u64")
}

/// `(h^0, .., h^d)` of a line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyVector {
    pub dims: Vec<BigUint>,
}

impl CohomologyVector {
    pub fn of_line_bundle(ell: i64, d: usize) -> Self {
        Self {
            dims: (0..=d).map(|i| h(i, ell, d).expect("i <= d")).collect(),
        }
    }

    /// True when every `h^i` with `i > 0` vanishes.
    pub fn higher_vanish(&self) -> bool {
        self.dims.iter().skip(1).all(|x| x.is_zero())
    }
}

/// The `c`-coefficient of `y - x`.
pub fn ell_of_difference(g: &LGroup, x: &LElement, y: &LElement) -> i64 {
    g.sub(y, x).ell()
}

/// `dim Hom(P(x), P(y))`.
pub fn hom_dim(x: &LElement, y: &LElement, t: &GLType) -> u64 {
    h0(ell_of_difference(&LGroup::of(t), x, y), t.d())
}

/// `dim Ext^i(P(x), P(y))` for all `i`.
pub fn ext_dims(x: &LElement, y: &LElement, t: &GLType) -> CohomologyVector {
    CohomologyVector::of_line_bundle(ell_of_difference(&LGroup::of(t), x, y), t.d())
}
