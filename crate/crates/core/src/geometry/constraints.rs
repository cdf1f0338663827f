//! H-descriptions of order polytopes, chain polytopes and their slices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::VertexPolytope;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::Caps;

/// `{α : Aα ≤ b}` with some coordinates pinned to constants. Columns of
/// pinned coordinates are zero in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub vars: usize,
    #[serde(default)]
    pub fixed: BTreeMap<usize, i64>,
}

impl ConstraintSystem {
    fn new(vars: usize) -> Self {
        ConstraintSystem {
            a: Vec::new(),
            b: Vec::new(),
            vars,
            fixed: BTreeMap::new(),
        }
    }

    fn push(&mut self, coeffs: &[(usize, i64)], rhs: i64) {
        let mut row = vec![0; self.vars];
        for &(j, c) in coeffs {
            row[j] += c;
        }
        self.a.push(row);
        self.b.push(rhs);
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.vars).filter(|j| !self.fixed.contains_key(j)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} right-hand sides",
                self.a.len(),
                self.b.len()
            )));
        }
        if let Some(r) = self.a.iter().find(|r| r.len() != self.vars) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a system on {} variables",
                r.len(),
                self.vars
            )));
        }
        for (&j, _) in &self.fixed {
            if j >= self.vars {
                return Err(Error::DimensionMismatch(format!("fixed coordinate {j} out of range")));
            }
            if self.a.iter().any(|r| r[j] != 0) {
                return Err(Error::DimensionMismatch(format!("fixed coordinate {j} has an active column")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.fixed.iter().all(|(&j, &v)| point[j] == v)
            && self.a.iter().zip(&self.b).all(|(row, &rhs)| {
                row.iter().zip(point).map(|(c, x)| c * x).sum::<i64>() <= rhs
            })
    }
}

/// `0 ≤ α_x ≤ 1` and `α_u ≤ α_v` for every cover `u ⋖ v`.
pub fn order_polytope(p: &Poset) -> ConstraintSystem {
    let n = p.len();
    let mut c = ConstraintSystem::new(n);
    for x in 0..n {
        c.push(&[(x, -1)], 0);
        c.push(&[(x, 1)], 1);
    }
    for (u, v) in p.covers() {
        c.push(&[(u, 1), (v, -1)], 0);
    }
    c
}

/// Maximal chains of `p`, each listed bottom to top.
pub fn maximal_chains(p: &Poset) -> Vec<Vec<usize>> {
    let covers = p.covers();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for &(u, v) in &covers {
        up[u].push(v);
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = p.minimals().into_iter().map(|m| vec![m]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().unwrap();
        if up[top].is_empty() {
            out.push(chain);
        } else {
            for &v in &up[top] {
                let mut next = chain.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// `β_x ≥ 0` and `Σ_{x ∈ C} β_x ≤ 1` for every maximal chain `C`.
pub fn chain_polytope(p: &Poset) -> ConstraintSystem {
    let n = p.len();
    let mut c = ConstraintSystem::new(n);
    for x in 0..n {
        c.push(&[(x, -1)], 0);
    }
    for chain in maximal_chains(p) {
        let coeffs: Vec<(usize, i64)> = chain.iter().map(|&x| (x, 1)).collect();
        c.push(&coeffs, 1);
    }
    c
}

/// Slices `S₀, …, S_k` of the order polytope for a chain `z₁ ≺ … ≺ z_k`:
/// `S_i` pins `α_x = 0` for `x ⪯ z_i` and `α_x = 1` for `x ⪰ z_{i+1}`.
pub fn slices(p: &Poset, zs: &[usize]) -> Result<Vec<ConstraintSystem>> {
    for &z in zs {
        p.check_label(z)?;
    }
    if zs.windows(2).any(|w| !p.lt(w[0], w[1])) {
        return Err(Error::precondition("fixed elements must form a chain z₁ ≺ … ≺ z_k"));
    }
    let n = p.len();
    let k = zs.len();
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut fixed = BTreeMap::new();
        for x in 0..n {
            if i >= 1 && p.le(x, zs[i - 1]) {
                fixed.insert(x, 0);
            } else if i < k && p.le(zs[i], x) {
                fixed.insert(x, 1);
            }
        }
        let mut c = ConstraintSystem::new(n);
        c.fixed = fixed;
        let free = c.free_coords();
        for &x in &free {
            c.push(&[(x, -1)], 0);
            c.push(&[(x, 1)], 1);
        }
        // a relation between free elements never passes through a pinned one
        for (u, v) in p.covers() {
            if !c.fixed.contains_key(&u) && !c.fixed.contains_key(&v) {
                c.push(&[(u, 1), (v, -1)], 0);
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every square minor has determinant in `{0, ±1}`. Zero rows and columns
/// and rows repeated up to sign are dropped first; none of these change
/// the answer.
pub fn is_totally_unimodular(a: &[Vec<i64>], cap: usize) -> Result<bool> {
    if a.iter().flatten().any(|&v| !(-1..=1).contains(&v)) {
        return Ok(false);
    }
    let cols = a.first().map_or(0, Vec::len);
    let active: Vec<usize> = (0..cols).filter(|&j| a.iter().any(|r| r[j] != 0)).collect();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in a {
        let mut row: Vec<i64> = active.iter().map(|&j| r[j]).collect();
        if row.iter().all(|&v| v == 0) {
            continue;
        }
        if row.iter().find(|&&v| v != 0) == Some(&-1) {
            row.iter_mut().for_each(|v| *v = -*v);
        }
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let size = rows.len().min(active.len());
    if size > cap {
        return Err(Error::CapExceeded {
            what: "TU check minor size",
            limit: cap,
            got: size,
            flag: "--cap-minor",
        });
    }
    for k in 2..=size {
        let cs = combinations(active.len(), k);
        for rsel in combinations(rows.len(), k) {
            for csel in &cs {
                let sub: Vec<Vec<i64>> = rsel
                    .iter()
                    .map(|&i| csel.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                let d = det_bareiss(&sub);
                if d > BigInt::from(1) || d < BigInt::from(-1) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All 0/1 points of the system. For order-polytope-derived systems these
/// are exactly the vertices.
pub fn vertices(c: &ConstraintSystem) -> Result<VertexPolytope> {
    vertices_with(c, &Caps::default())
}

pub fn vertices_with(c: &ConstraintSystem, caps: &Caps) -> Result<VertexPolytope> {
    c.validate()?;
    let free = c.free_coords();
    if free.len() > caps.vertex_free {
        return Err(Error::CapExceeded {
            what: "free coordinates in vertex enumeration",
            limit: caps.vertex_free,
            got: free.len(),
            flag: "--cap-free",
        });
    }
    let mut base = vec![0i64; c.vars];
    for (&j, &v) in &c.fixed {
        base[j] = v;
    }
    let mut points = Vec::new();
    for bits in 0u64..1 << free.len() {
        let mut pt = base.clone();
        for (t, &j) in free.iter().enumerate() {
            pt[j] = (bits >> t & 1) as i64;
        }
        if c.contains(&pt) {
            points.push(pt);
        }
    }
    if points.is_empty() {
        return Err(Error::precondition("system has no 0/1 point"));
    }
    let verts = points
        .into_iter()
        .map(|p| p.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let fixedmask = (0..c.vars).map(|j| c.fixed.contains_key(&j)).collect();
    VertexPolytope::with_fixedmask(verts, fixedmask)
}
