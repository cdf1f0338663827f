//! Facets of a full-dimensional integer point set by the double description
//! method, plus affine-rank utilities.
//!
//! Facets `a·x ≤ β` are the extreme rays of the cone
//! `{(a, β) : a·p ≤ β for every point p}`. Rays are kept as primitive
//! integer vectors; adjacency uses the combinatorial test on tight sets.

use num_integer::Integer;

use crate::error::{Error, Result};

/// `a·x ≤ beta` with `gcd(a, beta) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub a: Vec<i128>,
    pub beta: i128,
}

fn overflow() -> Error {
    Error::InternalContradiction("integer overflow in hull computation".into())
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|v| acc.checked_add(v)).ok_or_else(overflow)
    })
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// Rank of integer row vectors (fraction-free elimination, rows kept
/// primitive to bound growth).
pub fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (p, q) = (m[r][c], m[i][c]);
            let mut row = Vec::with_capacity(cols);
            for j in 0..cols {
                let v = m[i][j]
                    .checked_mul(p)
                    .and_then(|x| m[r][j].checked_mul(q).and_then(|y| x.checked_sub(y)))
                    .ok_or_else(overflow)?;
                row.push(v);
            }
            m[i] = primitive(row);
        }
        r += 1;
    }
    Ok(r)
}

/// Dimension of the affine hull of `points`.
pub fn affine_dim(points: &[Vec<i128>]) -> Result<usize> {
    let Some(p0) = points.first() else {
        return Ok(0);
    };
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Integer determinant by fraction-free elimination.
fn det(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or_else(overflow)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// A nonzero vector orthogonal to `rows` (`rows.len() + 1` columns, full
/// row rank assumed) via signed maximal minors.
fn null_vector(rows: &[Vec<i128>]) -> Result<Vec<i128>> {
    let cols = rows.len() + 1;
    let mut v = Vec::with_capacity(cols);
    for k in 0..cols {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect())
            .collect();
        let d = det(&minor)?;
        v.push(if k % 2 == 0 { d } else { -d });
    }
    Ok(primitive(v))
}

type Bits = Vec<u64>;

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_count(a: &Bits) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

struct Ray {
    y: Vec<i128>,
    tight: Bits,
}

/// Facets of `conv(points)` for a point set spanning `R^d`.
pub fn facets(points: &[Vec<i128>]) -> Result<Vec<Facet>> {
    let Some(first) = points.first() else {
        return Err(Error::precondition("no points"));
    };
    let d = first.len();
    let np = points.len();
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.iter().copied().chain(std::iter::once(-1)).collect())
        .collect();

    // d + 1 affinely independent points, i.e. linearly independent rows
    let mut basis: Vec<usize> = Vec::with_capacity(d + 1);
    for i in 0..np {
        let mut trial: Vec<Vec<i128>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial)? == trial.len() {
            basis.push(i);
            if basis.len() == d + 1 {
                break;
            }
        }
    }
    if basis.len() < d + 1 {
        return Err(Error::DegenerateInput {
            claimed: d,
            actual: basis.len().saturating_sub(1),
        });
    }

    let words = np.div_ceil(64);
    let mut rays: Vec<Ray> = Vec::with_capacity(d + 1);
    for (bi, &i) in basis.iter().enumerate() {
        let others: Vec<Vec<i128>> = basis
            .iter()
            .enumerate()
            .filter(|&(bj, _)| bj != bi)
            .map(|(_, &j)| rows[j].clone())
            .collect();
        let mut y = null_vector(&others)?;
        if dot(&rows[i], &y)? > 0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        let mut tight = vec![0u64; words];
        for &j in basis.iter().filter(|&&j| j != i) {
            bit_set(&mut tight, j);
        }
        rays.push(Ray { y, tight });
    }

    let in_basis: Vec<bool> = (0..np).map(|i| basis.contains(&i)).collect();
    for i in (0..np).filter(|&i| !in_basis[i]) {
        let r = &rows[i];
        let vals: Vec<i128> = rays.iter().map(|ray| dot(r, &ray.y)).collect::<Result<_>>()?;
        if vals.iter().all(|&v| v <= 0) {
            for (ray, &v) in rays.iter_mut().zip(&vals) {
                if v == 0 {
                    bit_set(&mut ray.tight, i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] < 0).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = bits_and(&rays[p].tight, &rays[q].tight);
                if bits_count(&common) + 1 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != q)
                    .all(|k| !bits_subset(&common, &rays[k].tight));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], vals[q]);
                let y: Vec<i128> = rays[q]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(&yq, &yp)| {
                        vp.checked_mul(yq)
                            .and_then(|a| vq.checked_mul(yp).and_then(|b| a.checked_sub(b)))
                            .ok_or_else(overflow)
                    })
                    .collect::<Result<_>>()?;
                let mut tight = common;
                bit_set(&mut tight, i);
                next.push(Ray {
                    y: primitive(y),
                    tight,
                });
            }
        }
        let old = std::mem::take(&mut rays);
        for (k, mut ray) in old.into_iter().enumerate() {
            if vals[k] < 0 {
                rays.push(ray);
            } else if vals[k] == 0 {
                bit_set(&mut ray.tight, i);
                rays.push(ray);
            }
        }
        rays.extend(next);
    }

    let mut out: Vec<Facet> = rays
        .into_iter()
        .map(|ray| {
            let mut y = ray.y;
            let beta = y.pop().unwrap();
            Facet { a: y, beta }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Facets by checking the hyperplane through every `d`-subset of points.
/// Exponential; kept as an independent check of [`facets`].
pub fn facets_brute_force(points: &[Vec<i128>]) -> Result<Vec<Facet>> {
    let d = points.first().map_or(0, Vec::len);
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.iter().copied().chain(std::iter::once(-1)).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if points.len() < d {
        return Ok(out);
    }
    loop {
        let sub: Vec<Vec<i128>> = idx.iter().map(|&i| rows[i].clone()).collect();
        if rank(&sub)? == d {
            let y = null_vector(&sub)?;
            let vals: Vec<i128> = rows.iter().map(|r| dot(r, &y)).collect::<Result<_>>()?;
            let sign = if vals.iter().all(|&v| v <= 0) {
                Some(1)
            } else if vals.iter().all(|&v| v >= 0) {
                Some(-1)
            } else {
                None
            };
            if let Some(s) = sign {
                let mut a: Vec<i128> = y.iter().map(|v| v * s).collect();
                let beta = a.pop().unwrap();
                out.push(Facet { a, beta });
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            k -= 1;
            if idx[k] < points.len() - d + k {
                idx[k] += 1;
                for t in k + 1..d {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}
