//! Reference implementations that share no code with the library's
//! counting, continued fraction or determinant routines. Only the `Poset`
//! accessors `len` and `lt` are used.
#![allow(dead_code)]

use std::collections::HashMap;

use lext_core::Poset;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn pred_masks(p: &Poset) -> Vec<u64> {
    let n = p.len();
    assert!(n <= 64, "oracle masks hold at most 64 elements");
    (0..n)
        .map(|v| (0..n).filter(|&u| p.lt(u, v)).fold(0u64, |m, u| m | 1 << u))
        .collect()
}

/// Every linear extension as a position vector (`pos[u]` is 1-based).
pub fn extensions(p: &Poset) -> Vec<Vec<u8>> {
    let n = p.len();
    let preds = pred_masks(p);
    let mut out = Vec::new();
    let mut pos = vec![0u8; n];
    fn go(n: usize, preds: &[u64], placed: u64, depth: usize, pos: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if depth == n {
            out.push(pos.clone());
            return;
        }
        for u in 0..n {
            if placed >> u & 1 == 0 && preds[u] & !placed == 0 {
                pos[u] = depth as u8 + 1;
                go(n, preds, placed | 1 << u, depth + 1, pos, out);
            }
        }
    }
    go(n, &preds, 0, 0, &mut pos, &mut out);
    out
}

/// Extensions whose positions match every `(element, value)` pin.
pub fn tally(exts: &[Vec<u8>], pins: &[(usize, usize)]) -> u64 {
    exts.iter()
        .filter(|f| pins.iter().all(|&(u, c)| f[u] as usize == c))
        .count() as u64
}

/// Number of linear extensions of `P − skip` (elements in `skip` are
/// ignored) with each pinned element at its value. Layered over placed sets.
pub fn count_memo(p: &Poset, pins: &[(usize, usize)], skip: &[usize]) -> BigUint {
    let n = p.len();
    let preds = pred_masks(p);
    let skip_mask = skip.iter().fold(0u64, |m, &u| m | 1 << u);
    let size = n - skip.len();
    let mut at_value = vec![None; size + 2];
    for &(u, c) in pins {
        if c == 0 || c > size {
            return BigUint::zero();
        }
        if at_value[c].is_some_and(|w| w != u) || pins.iter().any(|&(w, d)| w == u && d != c) {
            return BigUint::zero();
        }
        at_value[c] = Some(u);
    }
    let pinned = |u: usize| pins.iter().find(|&&(w, _)| w == u).map(|&(_, c)| c);
    let mut layer: HashMap<u64, BigUint> = HashMap::new();
    layer.insert(skip_mask, BigUint::one());
    for step in 1..=size {
        let mut next: HashMap<u64, BigUint> = HashMap::new();
        for (mask, ways) in &layer {
            for u in 0..n {
                if mask >> u & 1 == 1 || preds[u] & !mask & !skip_mask != 0 {
                    continue;
                }
                if at_value[step].is_some_and(|w| w != u) || pinned(u).is_some_and(|c| c != step) {
                    continue;
                }
                *next.entry(mask | 1 << u).or_default() += ways;
            }
        }
        layer = next;
    }
    layer.into_values().sum()
}

pub fn e(p: &Poset) -> BigUint {
    count_memo(p, &[], &[])
}

pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `e(P) / e(P − x)`
pub fn rho(p: &Poset, x: usize) -> BigRational {
    ratio(&e(p), &count_memo(p, &[], &[x]))
}

/// `N(value)` for pins plus `x` at `value`; zero outside `[1, n]`.
pub fn n_at(p: &Poset, fixed: &[(usize, usize)], x: usize, value: i64) -> BigUint {
    if value < 1 || value as usize > p.len() {
        return BigUint::zero();
    }
    let mut pins = fixed.to_vec();
    pins.push((x, value as usize));
    count_memo(p, &pins, &[])
}

/// `(N(a−1), N(a), N(a+1))`
pub fn neighbourhood(p: &Poset, fixed: &[(usize, usize)], x: usize, a: usize) -> [BigUint; 3] {
    let a = a as i64;
    [n_at(p, fixed, x, a - 1), n_at(p, fixed, x, a), n_at(p, fixed, x, a + 1)]
}

/// `N(a)² − N(a−1)·N(a+1)` as a signed integer.
pub fn signed_defect(c: &[BigUint; 3]) -> BigInt {
    let b = |v: &BigUint| BigInt::from(v.clone());
    b(&c[1]) * b(&c[1]) - b(&c[0]) * b(&c[2])
}

/// Largest antichain, by checking every subset.
pub fn width(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|u| (0..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || !p.lt(u, v)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Quotients of `p/q` by repeated division.
pub fn euclid(mut p: u64, mut q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    loop {
        out.push(p / q);
        let r = p % q;
        if r == 0 {
            return out;
        }
        p = q;
        q = r;
    }
}

/// `[a₀; a₁, …]` evaluated from the back.
pub fn cf_eval(qs: &[u64]) -> BigRational {
    let mut v = BigRational::from_integer(BigInt::from(*qs.last().unwrap()));
    for &a in qs[..qs.len() - 1].iter().rev() {
        v = BigRational::from_integer(BigInt::from(a)) + v.recip();
    }
    v
}

/// Cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Every square minor in `{−1, 0, 1}`. Rows equal up to sign are merged.
pub fn totally_unimodular(a: &[Vec<i64>]) -> bool {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in a {
        let neg: Vec<i64> = r.iter().map(|v| -v).collect();
        if r.iter().any(|&v| v != 0) && !rows.contains(r) && !rows.contains(&neg) {
            rows.push(r.clone());
        }
    }
    let cols = a.first().map_or(0, Vec::len);
    for k in 1..=rows.len().min(cols) {
        let cs = subsets(cols, k);
        for rs in subsets(rows.len(), k) {
            for c in &cs {
                let m: Vec<Vec<i64>> = rs.iter().map(|&i| c.iter().map(|&j| rows[i][j]).collect()).collect();
                if det(&m).abs() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, i| a * BigUint::from(i))
}
