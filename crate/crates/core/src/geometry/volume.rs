//! Exact volumes by facet-pyramid recursion, Minkowski combinations and
//! mixed volumes by polynomial interpolation.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::hull::{affine_dim, facets};
use super::{slices, vertices_with, VertexPolytope};
use crate::error::{Error, Result};
use crate::linext::{count_pinned_with, CountInstance};
use crate::poset::Poset;
use crate::Caps;

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `Vol_d` of a point set spanning `Z^d`:
/// `Vol_d = (1/d) Σ_F (β − a·c)/|a_j| · Vol_{d−1}(π_j F)` with `c` one of the
/// points and `π_j` dropping a coordinate where the facet normal is nonzero.
fn volume_full_dim(points: &[Vec<i128>]) -> Result<BigRational> {
    let d = points[0].len();
    match d {
        0 => return Ok(BigRational::one()),
        1 => {
            let lo = points.iter().map(|p| p[0]).min().unwrap();
            let hi = points.iter().map(|p| p[0]).max().unwrap();
            return Ok(rat(hi - lo));
        }
        _ => {}
    }
    let c = &points[0];
    let mut total = BigRational::zero();
    for f in facets(points)? {
        let ac: i128 = f.a.iter().zip(c).map(|(a, x)| a * x).sum();
        let h = f.beta - ac;
        if h == 0 {
            continue;
        }
        let j = (0..d)
            .filter(|&j| f.a[j] != 0)
            .min_by_key(|&j| f.a[j].abs())
            .expect("facet normal is nonzero");
        let mut face: Vec<Vec<i128>> = points
            .iter()
            .filter(|p| p.iter().zip(&f.a).map(|(x, a)| x * a).sum::<i128>() == f.beta)
            .map(|p| {
                p.iter()
                    .enumerate()
                    .filter(|&(t, _)| t != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        face.sort();
        face.dedup();
        let sub = volume_full_dim(&face)?;
        total += sub * rat(h) / rat(f.a[j].abs());
    }
    Ok(total / rat(d as i128))
}

/// Volume in the axis-aligned affine hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub volume: BigRational,
    /// Number of coordinates the points actually vary in.
    pub dim: usize,
    /// Set when `dim` is below the polytope's declared dimension.
    pub degenerate: bool,
}

/// Intrinsic volume of `v` over its varying coordinates.
pub fn volume(v: &VertexPolytope) -> Result<BigRational> {
    Ok(volume_with(v, &Caps::default())?.volume)
}

pub fn volume_with(v: &VertexPolytope, caps: &Caps) -> Result<VolumeReport> {
    let coords = v.varying_coords();
    let d = coords.len();
    if d > caps.dim {
        return Err(Error::CapExceeded {
            what: "polytope dimension",
            limit: caps.dim,
            got: d,
            flag: "--cap-dim",
        });
    }
    let (pts, den) = v.integer_projection(&coords)?;
    let actual = affine_dim(&pts)?;
    if actual < d {
        // not axis-aligned: the intrinsic volume would need square roots
        return Err(Error::DegenerateInput {
            claimed: v.claimed_dim(),
            actual,
        });
    }
    let raw = volume_full_dim(&pts)?;
    let scale = BigRational::from_integer(num_traits::pow(den, d));
    Ok(VolumeReport {
        volume: raw / scale,
        dim: d,
        degenerate: d < v.claimed_dim(),
    })
}

/// `Σ wᵢ Pᵢ` as the deduplicated set of all sums of one vertex per summand.
pub fn minkowski_combination(weights: &[BigRational], polys: &[VertexPolytope]) -> Result<VertexPolytope> {
    if weights.len() != polys.len() || polys.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} polytopes",
            weights.len(),
            polys.len()
        )));
    }
    let ambient = polys[0].ambient();
    if polys.iter().any(|p| p.ambient() != ambient) {
        return Err(Error::DimensionMismatch("summands live in different dimensions".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::precondition("Minkowski weights must be positive"));
    }
    let mut acc: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); ambient]];
    for (w, p) in weights.iter().zip(polys) {
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for a in &acc {
            for v in p.vertices() {
                next.push(a.iter().zip(v).map(|(x, y)| x + w * y).collect::<Vec<_>>());
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    let fixedmask = (0..ambient)
        .map(|j| polys.iter().all(|p| p.fixedmask()[j]))
        .collect();
    VertexPolytope::with_fixedmask(acc, fixedmask)
}

fn multinomial(d: usize, parts: &[usize]) -> BigUint {
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |a, i| a * BigUint::from(i));
    parts.iter().fold(fact(d), |acc, &m| acc / fact(m))
}

/// Exponent vectors `β ∈ N^r` with `|β| ≤ d`, in a fixed order.
fn monomials(r: usize, d: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials(r - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exact least-squares-free solve of a consistent overdetermined system.
fn solve_exact(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let rows = m.len();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
                let t = &f * &rhs[r];
                rhs[i] -= t;
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if r < cols || rhs[r..].iter().any(|v| !v.is_zero()) {
        return Err(Error::SingularInterpolation);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in piv_cols.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(x)
}

/// `V(Q₁^{m₁}, …, Q_r^{m_r})` for at most three distinct bodies.
///
/// The ambient dimension is `d = Σ mᵢ`. When the bodies with positive
/// multiplicity sum to something of dimension below `d`, the mixed volume
/// is 0; a sum of dimension above `d` is an error.
pub fn mixed_volume(entries: &[(VertexPolytope, usize)]) -> Result<BigRational> {
    mixed_volume_with(entries, &Caps::default())
}

pub fn mixed_volume_with(entries: &[(VertexPolytope, usize)], caps: &Caps) -> Result<BigRational> {
    let mut bodies: Vec<(VertexPolytope, usize)> = Vec::new();
    for (p, m) in entries.iter().filter(|(_, m)| *m > 0) {
        match bodies.iter_mut().find(|(q, _)| q.vertices() == p.vertices()) {
            Some((_, mm)) => *mm += m,
            None => bodies.push((p.clone(), *m)),
        }
    }
    if bodies.is_empty() {
        return Ok(BigRational::one());
    }
    if bodies.len() > 3 {
        return Err(Error::CapExceeded {
            what: "distinct bodies in a mixed volume",
            limit: 3,
            got: bodies.len(),
            flag: "fewer distinct arguments",
        });
    }
    let d: usize = bodies.iter().map(|(_, m)| m).sum();
    let polys: Vec<VertexPolytope> = bodies.iter().map(|(p, _)| p.clone()).collect();
    let ones = vec![BigRational::one(); polys.len()];
    let sum = minkowski_combination(&ones, &polys)?;
    let coords = sum.varying_coords();
    let (pts, _) = sum.integer_projection(&coords)?;
    let hull_dim = affine_dim(&pts)?;
    if hull_dim < d {
        return Ok(BigRational::zero());
    }
    if hull_dim > d {
        return Err(Error::DimensionMismatch(format!(
            "multiplicities sum to {d} but the bodies span dimension {hull_dim}"
        )));
    }
    if d > caps.dim {
        return Err(Error::CapExceeded {
            what: "mixed-volume dimension",
            limit: caps.dim,
            got: d,
            flag: "--cap-dim",
        });
    }
    let r = polys.len();
    if r == 1 {
        return Ok(volume_with(&polys[0], caps)?.volume);
    }

    // λ = (1, t₂, …, t_r), t ∈ {1, …, d+1}^{r−1}
    let mut grid: Vec<Vec<usize>> = vec![vec![]];
    for _ in 1..r {
        grid = grid
            .into_iter()
            .flat_map(|g| {
                (1..=d + 1).map(move |t| {
                    let mut g = g.clone();
                    g.push(t);
                    g
                })
            })
            .collect();
    }
    let vols: Vec<BigRational> = grid
        .par_iter()
        .map(|g| {
            let mut w = vec![BigRational::one()];
            w.extend(g.iter().map(|&t| rat(t as i128)));
            let s = minkowski_combination(&w, &polys)?;
            Ok(volume_with(&s, caps)?.volume)
        })
        .collect::<Result<_>>()?;
    let monos = monomials(r - 1, d);
    let matrix: Vec<Vec<BigRational>> = grid
        .iter()
        .map(|g| {
            monos
                .iter()
                .map(|beta| {
                    let v: i128 = g.iter().zip(beta).map(|(&t, &e)| (t as i128).pow(e as u32)).product();
                    rat(v)
                })
                .collect()
        })
        .collect();
    let coeffs = solve_exact(matrix, vols)?;
    let target: Vec<usize> = bodies[1..].iter().map(|(_, m)| *m).collect();
    let idx = monos.iter().position(|b| *b == target).expect("target monomial present");
    let mults: Vec<usize> = bodies.iter().map(|(_, m)| *m).collect();
    let coef = &coeffs[idx];
    Ok(coef / BigRational::from_integer(BigInt::from(multinomial(d, &mults))))
}

/// Both sides of the slice identity
/// `V(S₀^{c₁−1}, S₁^{c₂−c₁−1}, …, S_k^{n−c_k}) = N_{z,c}(P)/(n−k)!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaPol {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

fn slice_bodies(p: &Poset, zs: &[usize], caps: &Caps) -> Result<Vec<VertexPolytope>> {
    slices(p, zs)?
        .iter()
        .map(|s| vertices_with(s, caps))
        .collect()
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |a, i| a * BigUint::from(i))
}

/// Multiplicities `(c₁−1, c₂−c₁−1, …, n−c_k)`.
fn slice_multiplicities(n: usize, cs: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(cs.len() + 1);
    let mut prev = 0;
    for &c in cs {
        out.push(c - prev - 1);
        prev = c;
    }
    out.push(n - prev);
    out
}

pub fn verify_sta_pol(p: &Poset, zs: &[usize], cs: &[usize]) -> Result<StaPol> {
    verify_sta_pol_with(p, zs, cs, &Caps::default())
}

pub fn verify_sta_pol_with(p: &Poset, zs: &[usize], cs: &[usize], caps: &Caps) -> Result<StaPol> {
    let n = p.len();
    let k = zs.len();
    if cs.len() != k {
        return Err(Error::DimensionMismatch("one value per fixed element".into()));
    }
    if cs.windows(2).any(|w| w[0] >= w[1]) || cs.iter().any(|&c| c == 0 || c > n) {
        return Err(Error::precondition("values must increase within [1, n]"));
    }
    let bodies = slice_bodies(p, zs, caps)?;
    let entries: Vec<(VertexPolytope, usize)> = bodies
        .into_iter()
        .zip(slice_multiplicities(n, cs))
        .collect();
    let lhs = mixed_volume_with(&entries, caps)?;
    let pins: Vec<(usize, usize)> = zs.iter().copied().zip(cs.iter().copied()).collect();
    let count = count_pinned_with(p, &pins, caps)?;
    let rhs = BigRational::new(BigInt::from(count), BigInt::from(factorial(n - k)));
    Ok(StaPol {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `δ = V(K,L,Q…)² − V(K,K,Q…)·V(L,L,Q…)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AfDefect {
    pub v_kl: BigRational,
    pub v_kk: BigRational,
    pub v_ll: BigRational,
    pub delta: BigRational,
}

pub fn af_defect(k: &VertexPolytope, l: &VertexPolytope, qs: &[(VertexPolytope, usize)]) -> Result<AfDefect> {
    af_defect_with(k, l, qs, &Caps::default())
}

pub fn af_defect_with(
    k: &VertexPolytope,
    l: &VertexPolytope,
    qs: &[(VertexPolytope, usize)],
    caps: &Caps,
) -> Result<AfDefect> {
    let with = |extra: [(&VertexPolytope, usize); 2]| -> Result<BigRational> {
        let mut e: Vec<(VertexPolytope, usize)> = qs.to_vec();
        for (p, m) in extra {
            e.push((p.clone(), m));
        }
        mixed_volume_with(&e, caps)
    };
    let v_kl = with([(k, 1), (l, 1)])?;
    let v_kk = with([(k, 2), (l, 0)])?;
    let v_ll = with([(k, 0), (l, 2)])?;
    let delta = &v_kl * &v_kl - &v_kk * &v_ll;
    if delta.is_negative() {
        return Err(Error::InternalContradiction(format!(
            "negative Alexandrov–Fenchel defect {delta}"
        )));
    }
    Ok(AfDefect {
        v_kl,
        v_kk,
        v_ll,
        delta,
    })
}

/// Slices realizing a Stanley instance as an Alexandrov–Fenchel instance:
/// `(n−k−1)!²·δ(K, L, Q…) = Φ`.
#[derive(Clone, Debug)]
pub struct AfInstance {
    pub k: VertexPolytope,
    pub l: VertexPolytope,
    pub qs: Vec<(VertexPolytope, usize)>,
    /// `(n − k − 1)!`, relating mixed volumes to counts.
    pub scale: BigUint,
}

/// Requires the fixed elements together with `x` to form a chain in value
/// order, and `a ± 1` to be free values.
pub fn stanley_af_instance(inst: &CountInstance) -> Result<AfInstance> {
    stanley_af_instance_with(inst, &Caps::default())
}

pub fn stanley_af_instance_with(inst: &CountInstance, caps: &Caps) -> Result<AfInstance> {
    let n = inst.n();
    let mut chain: Vec<(usize, usize)> = inst.fixed.clone();
    chain.push((inst.x, inst.a));
    chain.sort_by_key(|&(_, c)| c);
    let zs: Vec<usize> = chain.iter().map(|&(z, _)| z).collect();
    let cs: Vec<usize> = chain.iter().map(|&(_, c)| c).collect();
    let j = chain.iter().position(|&(z, _)| z == inst.x).unwrap();
    let lo = if j == 0 { 0 } else { cs[j - 1] };
    let hi = if j + 1 == cs.len() { n + 1 } else { cs[j + 1] };
    if inst.a < lo + 2 || inst.a + 2 > hi {
        return Err(Error::precondition(
            "a − 1 and a + 1 must be free values between the neighbouring fixed values",
        ));
    }
    let bodies = slice_bodies(&inst.poset, &zs, caps)?;
    let mut mults = slice_multiplicities(n, &cs);
    // x is chain element j: slices j and j+1 flank it
    mults[j] -= 1;
    mults[j + 1] -= 1;
    let k = bodies[j].clone();
    let l = bodies[j + 1].clone();
    let qs = bodies.into_iter().zip(mults).filter(|(_, m)| *m > 0).collect();
    Ok(AfInstance {
        k,
        l,
        qs,
        scale: factorial(n - chain.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{chain_polytope, order_polytope, vertices};
    use crate::linext::count;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn pts(v: &[&[i64]]) -> VertexPolytope {
        VertexPolytope::from_integer_points(&v.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn square() -> VertexPolytope {
        pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&square()).unwrap(), r(1, 1));
        let t = vertices(&order_polytope(&Poset::chain(2))).unwrap();
        assert_eq!(volume(&t).unwrap(), r(1, 2));
        let seg = pts(&[&[0, 5], &[3, 5]]);
        assert_eq!(volume(&seg).unwrap(), r(3, 1));
        assert_eq!(volume(&pts(&[&[1, 2]])).unwrap(), r(1, 1));
        let diag = pts(&[&[0, 0], &[1, 1]]);
        assert!(matches!(volume(&diag), Err(Error::DegenerateInput { .. })));
    }

    #[test]
    fn declared_fixedmask_flags_degenerate() {
        let p: Vec<Vec<BigRational>> = vec![vec![r(0, 1), r(0, 1)], vec![r(1, 1), r(0, 1)]];
        let v = VertexPolytope::with_fixedmask(p, vec![false, false]).unwrap();
        let rep = volume_with(&v, &Caps::default()).unwrap();
        assert_eq!((rep.volume, rep.dim, rep.degenerate), (r(1, 1), 1, true));
    }

    #[test]
    fn rational_vertices() {
        let tri = VertexPolytope::new(vec![
            vec![r(0, 1), r(0, 1)],
            vec![r(1, 2), r(0, 1)],
            vec![r(0, 1), r(1, 3)],
        ])
        .unwrap();
        assert_eq!(volume(&tri).unwrap(), r(1, 12));
    }

    #[test]
    fn minkowski_examples() {
        let one = BigRational::one();
        let s2 = minkowski_combination(&[one.clone(), one.clone()], &[square(), square()]).unwrap();
        assert_eq!(volume(&s2).unwrap(), r(4, 1));
        let h = pts(&[&[0, 0], &[1, 0]]);
        let v = pts(&[&[0, 0], &[0, 1]]);
        let sq = minkowski_combination(&[one.clone(), one.clone()], &[h, v]).unwrap();
        assert_eq!(volume(&sq).unwrap(), r(1, 1));
        let cube = vertices(&order_polytope(&Poset::antichain(3))).unwrap();
        let tri = vertices(&order_polytope(&Poset::chain(2))).unwrap();
        for (body, d) in [(cube, 3u32), (tri, 2)] {
            let base = volume(&body).unwrap();
            for lam in [r(2, 1), r(3, 2)] {
                let s = minkowski_combination(&[lam.clone()], &[body.clone()]).unwrap();
                assert_eq!(volume(&s).unwrap(), &base * num_traits::pow(lam, d as usize));
            }
        }
        assert!(minkowski_combination(&[one.clone()], &[square(), square()]).is_err());
        assert!(minkowski_combination(&[one.clone(), one], &[square(), pts(&[&[0]])]).is_err());
    }

    #[test]
    fn mixed_volume_examples() {
        // V(K, L) for the square and a horizontal segment
        let seg = pts(&[&[0, 0], &[1, 0]]);
        assert_eq!(mixed_volume(&[(square(), 1), (seg.clone(), 1)]).unwrap(), r(1, 2));
        // diagonal: V(K, K) = Vol(K)
        assert_eq!(mixed_volume(&[(square(), 2)]).unwrap(), r(1, 1));
        assert_eq!(mixed_volume(&[(square(), 1), (square(), 1)]).unwrap(), r(1, 1));
        // two parallel segments span only a line
        assert_eq!(mixed_volume(&[(seg.clone(), 2)]).unwrap(), r(0, 1));
        assert!(mixed_volume(&[(square(), 1)]).is_err());
        for n in 1..=4 {
            for p in crate::corpus::poset_classes(n) {
                let o = vertices(&order_polytope(&p)).unwrap();
                assert_eq!(mixed_volume(&[(o.clone(), n)]).unwrap(), volume(&o).unwrap());
            }
        }
    }

    #[test]
    fn mixed_volume_symmetry_and_multilinearity() {
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let seg = pts(&[&[0, 0], &[1, 1]]);
        let a = mixed_volume(&[(tri.clone(), 1), (seg.clone(), 1)]).unwrap();
        let b = mixed_volume(&[(seg.clone(), 1), (tri.clone(), 1)]).unwrap();
        assert_eq!(a, b);
        // V(K, L + M) = V(K, L) + V(K, M)
        let one = BigRational::one();
        let lm = minkowski_combination(&[one.clone(), one], &[tri.clone(), seg.clone()]).unwrap();
        let lhs = mixed_volume(&[(square(), 1), (lm, 1)]).unwrap();
        let rhs = mixed_volume(&[(square(), 1), (tri, 1)]).unwrap()
            + mixed_volume(&[(square(), 1), (seg, 1)]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn three_body_mixed_volume() {
        // V(e₁, e₂, e₃ segments) = 1/3! · Vol(unit cube) = 1/6
        let e = |j: usize| {
            let mut a = vec![0i64; 3];
            a[j] = 1;
            VertexPolytope::from_integer_points(&[vec![0, 0, 0], a]).unwrap()
        };
        assert_eq!(mixed_volume(&[(e(0), 1), (e(1), 1), (e(2), 1)]).unwrap(), r(1, 6));
    }

    #[test]
    fn two_poset_volumes() {
        for n in 0..=4 {
            for p in crate::corpus::poset_classes(n) {
                let e = BigInt::from(count(&p).unwrap());
                let nf: BigInt = (1..=n as i64).product::<i64>().into();
                let want = BigRational::new(e, nf);
                assert_eq!(volume(&vertices(&order_polytope(&p)).unwrap()).unwrap(), want);
                assert_eq!(volume(&vertices(&chain_polytope(&p)).unwrap()).unwrap(), want);
            }
        }
    }

    #[test]
    fn sta_pol_examples() {
        let c2 = Poset::chain(2);
        let s = verify_sta_pol(&c2, &[0], &[1]).unwrap();
        assert!(s.equal);
        assert_eq!(s.lhs, r(1, 1));
        let a2 = Poset::antichain(2);
        for z in 0..2 {
            for c in 1..=2 {
                assert!(verify_sta_pol(&a2, &[z], &[c]).unwrap().equal);
            }
        }
        assert!(verify_sta_pol(&a2, &[0, 1], &[1, 2]).is_err());
    }

    #[test]
    fn af_examples() {
        let k = square();
        let d = af_defect(&k, &k, &[]).unwrap();
        assert!(d.delta.is_zero());
        let big = minkowski_combination(&[r(2, 1)], &[square()]).unwrap();
        assert!(af_defect(&k, &big, &[]).unwrap().delta.is_zero());
        let seg = pts(&[&[0, 0], &[1, 0]]);
        assert!(af_defect(&k, &seg, &[]).unwrap().delta.is_positive());
    }

    #[test]
    fn af_matches_stanley_defect() {
        // V-poset x ≺ y, x ≺ z with an extra free element
        let p = Poset::from_relations(4, &[(0, 1), (0, 2)]).unwrap();
        for x in 0..4 {
            for a in 2..=3 {
                let inst = CountInstance::new(p.clone(), vec![], x, a).unwrap();
                let af = stanley_af_instance(&inst).unwrap();
                let d = af_defect(&af.k, &af.l, &af.qs).unwrap();
                let phi = crate::linext::stanley_defect(&inst).unwrap();
                let s = BigRational::from_integer(BigInt::from(af.scale.clone()));
                assert_eq!(d.delta * &s * &s, BigRational::from_integer(BigInt::from(phi)));
            }
        }
    }
}
