#![allow(dead_code)]

use glorder::linalg::{self, Q};
use glorder::{validate_type, GLType};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_line() -> GLType {
    GLType::from_ints(1, &[2, 2, 2], &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
}

pub fn golden_plane() -> GLType {
    GLType::from_ints(
        2,
        &[2, 2, 2, 2],
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
    )
    .unwrap()
}

/// Random hyperplanes with small integer (occasionally fractional)
/// coefficients, redrawn until they are in general position.
pub fn random_hyperplanes(rng: &mut ChaCha8Rng, d: usize, weights: &[i64]) -> GLType {
    loop {
        let rows: Vec<Vec<Q>> = (0..weights.len())
            .map(|_| {
                (0..=d)
                    .map(|_| {
                        let num = rng.gen_range(-4i64..=4);
                        let den = if rng.gen_bool(0.2) {
                            rng.gen_range(2i64..=3)
                        } else {
                            1
                        };
                        linalg::parse_rational(&format!("{num}/{den}")).unwrap()
                    })
                    .collect()
            })
            .collect();
        let t = GLType::new(d, weights.to_vec(), rows).unwrap();
        if validate_type(&t).ok {
            return t;
        }
    }
}

/// A random type with `d` in `ds`, `n <= max_n`, weights in `1..=max_p`.
pub fn random_type(rng: &mut ChaCha8Rng, ds: &[usize], max_n: usize, max_p: i64) -> GLType {
    let d = ds[rng.gen_range(0..ds.len())];
    let n = rng.gen_range(0..=max_n);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_p)).collect();
    random_hyperplanes(rng, d, &weights)
}

/// Random type with at least `min_n` hyperplanes and weight product at most `max_prod`.
pub fn random_type_bounded(
    rng: &mut ChaCha8Rng,
    ds: &[usize],
    min_n: usize,
    max_n: usize,
    max_p: i64,
    max_prod: i64,
) -> GLType {
    loop {
        let d = ds[rng.gen_range(0..ds.len())];
        let n = rng.gen_range(min_n..=max_n);
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_p)).collect();
        if weights.iter().product::<i64>() <= max_prod {
            return random_hyperplanes(rng, d, &weights);
        }
    }
}

/// Nondecreasing weight tuples with entries >= 2 and product <= `max_prod`.
pub fn weight_tuples(max_prod: i64) -> Vec<Vec<i64>> {
    fn go(min: i64, prod: i64, max_prod: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        let mut p = min;
        while prod * p <= max_prod {
            cur.push(p);
            go(p, prod * p, max_prod, cur, out);
            cur.pop();
            p += 1;
        }
    }
    let mut out = Vec::new();
    go(2, 1, max_prod, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Oracles on raw words, independent of the library's normal form.

/// Equality of raw words `(b_1..b_n, m)` modulo `p_i x_i = c`.
pub fn words_equal(p: &[i64], u: &[i64], v: &[i64]) -> bool {
    let n = p.len();
    let mut c_total = u[n] - v[n];
    for i in 0..n {
        let diff = u[i] - v[i];
        if diff % p[i] != 0 {
            return false;
        }
        c_total += diff / p[i];
    }
    c_total == 0
}

fn nonneg_words(p: &[i64], bound: &[i64], c_max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (0..=b).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    // c itself is effective even when there are no x_i
    let c_bound = bound.iter().copied().max().unwrap_or(0).max(c_max);
    out.into_iter()
        .flat_map(|w| {
            (0..=c_bound).map(move |m| {
                let mut w = w.clone();
                w.push(m);
                w
            })
        })
        .filter(|w| w.len() == p.len() + 1)
        .collect()
}

fn c_max_of(x: &[i64]) -> i64 {
    x.last().copied().unwrap_or(0).max(0)
}

/// `x` is a nonnegative word in the `x_i` and `c` (searched up to `b_i <= bound_i`).
pub fn effective_by_search(p: &[i64], x: &[i64], bound: &[i64]) -> bool {
    nonneg_words(p, bound, c_max_of(x))
        .iter()
        .any(|w| words_equal(p, w, x))
}

/// `[0, dc]` by search: classes of nonnegative words `w` with `dc - w`
/// again a nonnegative word. One representative word per class.
pub fn interval_by_search(p: &[i64], d: i64) -> Vec<Vec<i64>> {
    let bound: Vec<i64> = p.iter().map(|&pi| pi * d).collect();
    let n = p.len();
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for w in nonneg_words(p, &bound, d) {
        if !reps.iter().any(|r| words_equal(p, r, &w)) {
            reps.push(w);
        }
    }
    let candidates = nonneg_words(p, &bound, d);
    reps.retain(|w| {
        let mut rest: Vec<i64> = w[..n].iter().map(|v| -v).collect();
        rest.push(d - w[n]);
        candidates.iter().any(|u| words_equal(p, u, &rest))
    });
    reps
}

/// Arrows `(x, i)` with `x` and `x + x_i` both in the interval, by search.
pub fn arrow_count_by_search(p: &[i64], d: i64) -> usize {
    let iv = interval_by_search(p, d);
    let mut count = 0;
    for w in &iv {
        for i in 0..p.len() {
            let mut s = w.clone();
            s[i] += 1;
            if iv.iter().any(|r| words_equal(p, r, &s)) {
                count += 1;
            }
        }
    }
    count
}
