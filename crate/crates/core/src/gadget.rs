//! Poset transformers with exact counting contracts.
//!
//! Every gadget returns a fresh poset plus named marks; inputs are never
//! modified. Elements of the inputs keep their relative label order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linext::{count_pinned_with, count_with, CountInstance};
use crate::poset::{Poset, PosetJson};
use crate::Caps;

/// A constructed poset with its designated elements and parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetOutput {
    pub poset: Poset,
    pub marks: BTreeMap<String, usize>,
    pub params: BTreeMap<String, u64>,
    /// Name of the construction that produced this poset.
    pub provenance: String,
}

#[derive(Serialize)]
pub struct GadgetJson {
    pub poset: PosetJson,
    pub marks: BTreeMap<String, usize>,
    pub params: BTreeMap<String, u64>,
    pub provenance: String,
}

impl GadgetOutput {
    fn new(poset: Poset, provenance: &str, marks: &[(&str, usize)], params: &[(&str, u64)]) -> Self {
        GadgetOutput {
            poset,
            marks: marks.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            provenance: provenance.to_string(),
        }
    }

    pub fn mark(&self, name: &str) -> usize {
        self.marks[name]
    }

    /// The designated minimal element of a ratio gadget.
    pub fn x(&self) -> usize {
        self.mark("x")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn to_json(&self) -> GadgetJson {
        GadgetJson {
            poset: self.poset.to_json(),
            marks: self.marks.clone(),
            params: self.params.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

fn require_minimal(p: &Poset, x: usize, role: &str) -> Result<()> {
    p.check_label(x)?;
    if !p.is_minimal(x) {
        return Err(Error::precondition(format!("{role} = {x} is not a minimal element")));
    }
    Ok(())
}

/// Adds `k − k'` isolated elements pinned at positions `n+1, …, n+k−k'`.
pub fn pad_fixed(inst: &CountInstance, k: usize) -> Result<CountInstance> {
    let (n, k0) = (inst.n(), inst.k());
    if k < k0 {
        return Err(Error::precondition(format!("cannot pad {k0} fixed elements down to {k}")));
    }
    let extra = k - k0;
    let poset = inst.poset.disjoint_sum(&Poset::antichain(extra));
    let mut fixed = inst.fixed.clone();
    fixed.extend((0..extra).map(|i| (n + i, n + i + 1)));
    CountInstance::new(poset, fixed, inst.x, inst.a)
}

/// An instance with a new global bottom and top; see [`ensure_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounded {
    pub instance: CountInstance,
    pub bottom: usize,
    pub top: usize,
}

/// `C₁ ⊕ P ⊕ C₁`. Old labels shift by one, all values by one. The new
/// extremes are forced to positions `1` and `n+2`, so they are not added to
/// the fixed list and every count is unchanged.
pub fn ensure_bounded(inst: &CountInstance) -> Bounded {
    let n = inst.n();
    let poset = Poset::chain(1)
        .linear_sum(&inst.poset)
        .linear_sum(&Poset::chain(1));
    let fixed = inst.fixed.iter().map(|&(z, c)| (z + 1, c + 1)).collect();
    let instance = CountInstance::new(poset, fixed, inst.x + 1, inst.a + 1)
        .expect("shifted instance stays valid");
    Bounded {
        instance,
        bottom: 0,
        top: n + 1,
    }
}

/// Output of [`flat_to_stanley`]: the Stanley instance on `P + C₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatToStanley {
    pub instance: CountInstance,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Number of fixed values below `a`.
    pub ell: usize,
}

/// Builds `(Q, y, b)` with `Q = P + C₃` (`u ≺ v ≺ w`), `u` pinned at `a`,
/// `w` at `a+4`, fixed values above `a` shifted by 3 and `b = a+2`.
/// The result has zero Stanley defect iff `N(a) = N(a+1)` in the input.
pub fn flat_to_stanley(inst: &CountInstance) -> Result<FlatToStanley> {
    let (n, a) = (inst.n(), inst.a);
    if a + 1 > n {
        return Err(Error::precondition(format!("need a ≤ n − 1, got a = {a}, n = {n}")));
    }
    if inst.fixed.iter().any(|&(_, c)| c == a + 1) {
        return Err(Error::precondition(format!("value a + 1 = {} is already fixed", a + 1)));
    }
    let poset = inst.poset.disjoint_sum(&Poset::chain(3));
    let (u, v, w) = (n, n + 1, n + 2);
    let ell = inst.fixed.iter().filter(|&&(_, c)| c < a).count();
    let mut fixed: Vec<(usize, usize)> = inst.fixed[..ell].to_vec();
    fixed.push((u, a));
    fixed.push((w, a + 4));
    fixed.extend(inst.fixed[ell..].iter().map(|&(z, c)| (z, c + 3)));
    let instance = CountInstance::new(poset, fixed, inst.x, a + 2)?;
    Ok(FlatToStanley {
        instance,
        u,
        v,
        w,
        ell,
    })
}

/// Diagnostic counts of the flat-to-Stanley construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MCounts {
    /// extensions with `x` at `a` and an element above `x` at `a+1`
    pub m1: BigUint,
    /// extensions with `x` at `a+1` and an element below `x` at `a`
    pub m2: BigUint,
    /// extensions with `x` at `a` and an element incomparable to `x` at `a+1`
    pub m3: BigUint,
}

pub fn m_counts(inst: &CountInstance, caps: &Caps) -> Result<MCounts> {
    let (p, x, a) = (&inst.poset, inst.x, inst.a);
    let mut m = MCounts {
        m1: BigUint::default(),
        m2: BigUint::default(),
        m3: BigUint::default(),
    };
    for y in (0..p.len()).filter(|&y| y != x) {
        if p.lt(x, y) {
            m.m1 += count_pinned_with(p, &inst.pins_plus(a, &[(y, a + 1)]), caps)?;
        } else if p.lt(y, x) {
            m.m2 += count_pinned_with(p, &inst.pins_plus(a + 1, &[(y, a)]), caps)?;
        } else {
            m.m3 += count_pinned_with(p, &inst.pins_plus(a, &[(y, a + 1)]), caps)?;
        }
    }
    Ok(m)
}

/// `R = (P* − x) ⊕ {z} ⊕ (Q − y)` plus `w`, with `p ≺ w` iff `x ≺ p` in `P`
/// and `w ≺ q` iff `y ≺ q` in `Q`. Then `N(R, z, n+1) = e(P)·e(Q−y)` and
/// `N(R, z, n) = e(P−x)·e(Q)` for `n = |P|`, so the instance at `c = n` is
/// flat iff `ρ(P, x) = ρ(Q, y)`.
pub fn crle_to_flat(p: &Poset, x: usize, q: &Poset, y: usize) -> Result<GadgetOutput> {
    require_minimal(p, x, "x")?;
    require_minimal(q, y, "y")?;
    let (n, m) = (p.len(), q.len());
    let (pp, pmap) = p.delete(x)?;
    let (qq, qmap) = q.delete(y)?;
    let z = n - 1;
    let qoff = n;
    let w = n + m - 1;
    let mut rel = Vec::new();
    for (i, j) in pp.relations() {
        rel.push((j, i));
    }
    for (i, j) in qq.relations() {
        rel.push((qoff + i, qoff + j));
    }
    for i in 0..n - 1 {
        rel.push((i, z));
        if p.lt(x, pmap[i]) {
            rel.push((i, w));
        }
    }
    for j in 0..m - 1 {
        rel.push((z, qoff + j));
        if q.lt(y, qmap[j]) {
            rel.push((w, qoff + j));
        }
    }
    let r = Poset::from_relations(n + m, &rel)?;
    Ok(GadgetOutput::new(
        r,
        "crle_to_flat",
        &[("z", z), ("w", w)],
        &[("c", n as u64)],
    ))
}

/// The mediant gadget: `ρ(R, z) = m + (1 + ρ(Q,y)/ρ(P,x))⁻¹` with `m = |P|`.
/// Built on `(P* − x) ⊕ {v} ⊕ (Q − y)` plus `w` (emulating `x` or `y`) and
/// `z`, which lies below `v` and `Q − y` and is incomparable to the rest.
pub fn mediant_gadget(p: &Poset, x: usize, q: &Poset, y: usize) -> Result<GadgetOutput> {
    require_minimal(p, x, "x")?;
    require_minimal(q, y, "y")?;
    let (m, n) = (p.len(), q.len());
    let (pp, pmap) = p.delete(x)?;
    let (qq, qmap) = q.delete(y)?;
    let qoff = m - 1;
    let (v, w, z) = (m + n - 2, m + n - 1, m + n);
    let mut rel = Vec::new();
    for (i, j) in pp.relations() {
        rel.push((j, i));
    }
    for (i, j) in qq.relations() {
        rel.push((qoff + i, qoff + j));
    }
    for i in 0..m - 1 {
        rel.push((i, v));
        if p.lt(x, pmap[i]) {
            rel.push((i, w));
        }
    }
    for j in 0..n - 1 {
        rel.push((v, qoff + j));
        rel.push((z, qoff + j));
        if q.lt(y, qmap[j]) {
            rel.push((w, qoff + j));
        }
    }
    rel.push((z, v));
    let r = Poset::from_relations(m + n + 1, &rel)?;
    Ok(GadgetOutput::new(
        r,
        "mediant",
        &[("x", z), ("v", v), ("w", w)],
        &[("m", m as u64)],
    ))
}

/// Both sides of the two counting identities behind [`mediant_gadget`]:
/// `e(R) = m·e(P−x)·e(Q) + (m+1)·e(P)·e(Q−y)` and
/// `e(R−z) = e(P−x)·e(Q) + e(P)·e(Q−y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MediantIdentities {
    pub e_r: BigUint,
    pub e_r_predicted: BigUint,
    pub e_r_minus_z: BigUint,
    pub e_r_minus_z_predicted: BigUint,
}

impl MediantIdentities {
    pub fn hold(&self) -> bool {
        self.e_r == self.e_r_predicted && self.e_r_minus_z == self.e_r_minus_z_predicted
    }
}

pub fn mediant_identities(p: &Poset, x: usize, q: &Poset, y: usize, caps: &Caps) -> Result<MediantIdentities> {
    let g = mediant_gadget(p, x, q, y)?;
    let e = |p: &Poset| count_with(p, caps);
    let (ep, eq) = (e(p)?, e(q)?);
    let epx = e(&p.delete(x)?.0)?;
    let eqy = e(&q.delete(y)?.0)?;
    let m = BigUint::from(p.len());
    let a = &epx * &eq;
    let b = &ep * &eqy;
    Ok(MediantIdentities {
        e_r: e(&g.poset)?,
        e_r_predicted: &m * &a + (&m + 1u32) * &b,
        e_r_minus_z: e(&g.poset.delete(g.x())?.0)?,
        e_r_minus_z_predicted: a + b,
    })
}

/// `Y = X + z` with `z ≺ u` for every `u ≠ x` and `z ∥ x`.
fn ks_poset(p: &Poset, x: usize) -> Result<Poset> {
    require_minimal(p, x, "x")?;
    let n = p.len();
    let mut rel = p.relations();
    rel.extend((0..n).filter(|&u| u != x).map(|u| (n, u)));
    Poset::from_relations(n + 1, &rel)
}

/// `ρ(Q, z) = 1 + 1/ρ(P, x)`.
pub fn reciprocal_plus_one(p: &Poset, x: usize) -> Result<GadgetOutput> {
    let q = ks_poset(p, x)?;
    let z = p.len();
    Ok(GadgetOutput::new(q, "reciprocal_plus_one", &[("x", z), ("prev", x)], &[]))
}

/// `ρ(Q, x) = 1 + ρ(P, x)` on the same poset as [`reciprocal_plus_one`].
pub fn plus_one(p: &Poset, x: usize) -> Result<GadgetOutput> {
    let q = ks_poset(p, x)?;
    let z = p.len();
    Ok(GadgetOutput::new(q, "plus_one", &[("x", x), ("z", z)], &[]))
}

/// Output of [`quad_to_crle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCrle {
    pub p: GadgetOutput,
    pub q: GadgetOutput,
    /// Whether the inputs were relabeled `(1,2,3,4) → (4,3,2,1)` to get
    /// `n₂ ≥ n₃`; the outputs are swapped back so `p` always carries `P₁`.
    pub relabeled: bool,
}

/// Two ratio posets with `ρ(P,x) = ρ(Q,y)` iff `ρ₁ρ₂ = ρ₃ρ₄`:
/// `ρ(P,x) = n₂ + (1 + ρ₁/ρ₃)⁻¹` and `ρ(Q,y) = n₂ + (1 + ρ₄/ρ₂)⁻¹`.
pub fn quad_to_crle(parts: [(&Poset, usize); 4]) -> Result<QuadCrle> {
    for (i, &(p, x)) in parts.iter().enumerate() {
        require_minimal(p, x, &format!("x{}", i + 1))?;
    }
    let relabeled = parts[1].0.len() < parts[2].0.len();
    let [p1, p2, p3, p4] = if relabeled {
        [parts[3], parts[2], parts[1], parts[0]]
    } else {
        parts
    };
    let (n2, n3) = (p2.0.len(), p3.0.len());
    let mut left = mediant_gadget(p3.0, p3.1, p1.0, p1.1)?;
    for _ in n3..n2 {
        let x = left.x();
        left = plus_one(&left.poset, x)?;
    }
    left.provenance = "quad_to_crle".into();
    left.params = [("n2".to_string(), n2 as u64)].into();
    let mut right = mediant_gadget(p2.0, p2.1, p4.0, p4.1)?;
    right.provenance = "quad_to_crle".into();
    right.params = [("n2".to_string(), n2 as u64)].into();
    let (p, q) = if relabeled { (right, left) } else { (left, right) };
    Ok(QuadCrle { p, q, relabeled })
}

/// Width-two poset with `ρ(P, x) = [a₀; a₁, …, a_s]` on `Σ aᵢ` elements.
pub fn cf_poset(quotients: &[u64]) -> Result<GadgetOutput> {
    if quotients.is_empty() || quotients.contains(&0) {
        return Err(Error::precondition("quotients must be nonempty and at least 1"));
    }
    let last = quotients[quotients.len() - 1] as usize;
    // C_{a−1} + {x}: x can be inserted at any of a places
    let mut poset = Poset::chain(last - 1).disjoint_sum(&Poset::chain(1));
    let mut x = last - 1;
    for &a in quotients[..quotients.len() - 1].iter().rev() {
        let g = reciprocal_plus_one(&poset, x)?;
        let mut xx = g.x();
        let mut pp = g.poset;
        for _ in 1..a {
            let h = plus_one(&pp, xx)?;
            xx = h.x();
            pp = h.poset;
        }
        poset = pp;
        x = xx;
    }
    let total: u64 = quotients.iter().sum();
    Ok(GadgetOutput::new(poset, "cf_poset", &[("x", x)], &[("size", total)]))
}

/// Poset whose reciprocal ratio `1/ρ(P, x)` equals `[0; a₁, …, a_s]`.
pub fn cf_poset_reciprocal(quotients: &[u64]) -> Result<GadgetOutput> {
    let mut g = cf_poset(quotients)?;
    g.provenance = "cf_poset_reciprocal".into();
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::cf_value_u64;
    use crate::linext::{count, enumerate, rho};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// `ρ` by enumeration, independent of the DP.
    fn rho_enum(p: &Poset, x: usize) -> BigRational {
        let all = enumerate(p).unwrap().count();
        let first = enumerate(p).unwrap().filter(|f| f.position(x) == 1).count();
        // e(P − x) = #{f : f(x) = 1} when x is minimal
        r(all as i64, first as i64)
    }

    fn n_enum(inst: &CountInstance, value: usize) -> u64 {
        enumerate(&inst.poset)
            .unwrap()
            .filter(|f| {
                f.position(inst.x) == value && inst.fixed.iter().all(|&(z, c)| f.position(z) == c)
            })
            .count() as u64
    }

    #[test]
    fn pad_examples() {
        let i = CountInstance::new(Poset::chain(2), vec![], 0, 1).unwrap();
        let p = pad_fixed(&i, 2).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.fixed, vec![(2, 3), (3, 4)]);
        for a in 1..=2 {
            assert_eq!(n_enum(&CountInstance { a, ..i.clone() }, a), n_enum(&CountInstance { a, ..p.clone() }, a));
        }
        assert_eq!(pad_fixed(&i, 0).unwrap(), i);
        assert!(pad_fixed(&p, 1).is_err());
        let j = CountInstance::new(Poset::antichain(2), vec![], 0, 1).unwrap();
        let pj = pad_fixed(&j, 1).unwrap();
        assert_eq!((n_enum(&j, 1), n_enum(&pj, 1)), (1, 1));
    }

    #[test]
    fn bounded_examples() {
        let i = CountInstance::new(Poset::antichain(2), vec![], 0, 1).unwrap();
        let b = ensure_bounded(&i);
        assert_eq!(b.instance.n(), 4);
        assert_eq!(b.instance.poset.minimals(), vec![b.bottom]);
        assert_eq!(b.instance.poset.maximals(), vec![b.top]);
        for a in 1..=2 {
            assert_eq!(n_enum(&i, a), n_enum(&b.instance, a + 1));
        }
        let c = CountInstance::new(Poset::chain(1), vec![], 0, 1).unwrap();
        let bc = ensure_bounded(&c);
        assert_eq!(bc.instance.poset, Poset::chain(3));
        assert_eq!(bc.instance.a, 2);
        assert_eq!(n_enum(&bc.instance, 2), 1);
    }

    #[test]
    fn flat_to_stanley_antichain() {
        let i = CountInstance::new(Poset::antichain(3), vec![], 0, 2).unwrap();
        let b = ensure_bounded(&i).instance;
        let out = flat_to_stanley(&b).unwrap();
        assert_eq!(out.instance.k(), 2);
        let q = &out.instance;
        let bq = q.a;
        let d = crate::linext::stanley_defect(q).unwrap();
        assert_eq!(d, BigUint::default());
        // enumeration cross-check on the 8-element output
        let (lo, mid, hi) = (n_enum(q, bq - 1), n_enum(q, bq), n_enum(q, bq + 1));
        assert_eq!(mid * mid, lo * hi);
    }

    #[test]
    fn flat_to_stanley_non_flat() {
        // V-poset x ≺ y, x ≺ z at a = 1: N(1) = 2, N(2) = 0
        let p = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let i = CountInstance::new(p, vec![], 0, 1).unwrap();
        let out = flat_to_stanley(&i).unwrap();
        let m = m_counts(&i, &Caps::default()).unwrap();
        let d = crate::linext::stanley_defect(&out.instance).unwrap();
        let diff = if m.m1 > m.m2 { &m.m1 - &m.m2 } else { &m.m2 - &m.m1 };
        assert_eq!(d, &diff * &diff);
        assert!(d > BigUint::default());
    }

    #[test]
    fn flat_to_stanley_preconditions() {
        let i = CountInstance::new(Poset::antichain(3), vec![], 0, 3).unwrap();
        assert!(flat_to_stanley(&i).is_err());
        let j = CountInstance::new(Poset::antichain(4), vec![(1, 3)], 0, 2).unwrap();
        assert!(flat_to_stanley(&j).is_err());
        let k = CountInstance::new(Poset::antichain(5), vec![(1, 1), (2, 5)], 0, 3).unwrap();
        let out = flat_to_stanley(&k).unwrap();
        assert_eq!(out.ell, 1);
        assert_eq!(out.instance.fixed, vec![(1, 1), (5, 3), (7, 7), (2, 8)]);
        assert_eq!(out.instance.a, 5);
    }

    /// `F(b, ·, ·)` census by enumeration of `Q`.
    fn census(out: &FlatToStanley, value: usize) -> [u64; 4] {
        let q = &out.instance;
        let x = q.x;
        let mut f = [0u64; 4];
        for e in enumerate(&q.poset).unwrap() {
            if e.position(x) != value || q.fixed.iter().any(|&(z, c)| e.position(z) != c) {
                continue;
            }
            let (lc, uc) = crate::linext::companions(&e, x, q.a).unwrap();
            let (cl, cu) = (q.poset.comparable(x, lc), q.poset.comparable(x, uc));
            // order: (com,inc), (inc,com), (com,com), (inc,inc)
            let idx = match (cl, cu) {
                (true, false) => 0,
                (false, true) => 1,
                (true, true) => 2,
                (false, false) => 3,
            };
            f[idx] += 1;
        }
        f
    }

    #[test]
    fn companion_census_matches_m_counts() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut done = 0;
        while done < 40 {
            let n = rand::Rng::gen_range(&mut rng, 3..=6);
            let p = crate::corpus::random_labeled_poset(&mut rng, n, 0.4);
            let k = rand::Rng::gen_range(&mut rng, 0..=1);
            let inst = crate::corpus::random_instance(&mut rng, &p, k);
            let Ok(out) = flat_to_stanley(&inst) else { continue };
            let m = m_counts(&inst, &Caps::default()).unwrap();
            let to = |b: &BigUint| u64::try_from(b).unwrap();
            let (m1, m2, m3) = (to(&m.m1), to(&m.m2), to(&m.m3));
            let b = out.instance.a;
            assert_eq!(census(&out, b), [m2, m1, 0, 2 * m3]);
            assert_eq!(census(&out, b + 1), [m2, m2, 0, 2 * m3]);
            assert_eq!(census(&out, b - 1), [m1, m1, 0, 2 * m3]);
            done += 1;
        }
    }

    #[test]
    fn crle_examples() {
        let a2 = Poset::antichain(2);
        let g = crle_to_flat(&a2, 0, &a2, 0).unwrap();
        assert_eq!(g.len(), 4);
        let inst = CountInstance::new(g.poset.clone(), vec![], g.mark("z"), 2).unwrap();
        assert_eq!((n_enum(&inst, 3), n_enum(&inst, 2)), (2, 2));
        let c2 = Poset::chain(2);
        let g = crle_to_flat(&a2, 0, &c2, 0).unwrap();
        let inst = CountInstance::new(g.poset.clone(), vec![], g.mark("z"), 2).unwrap();
        assert_ne!(n_enum(&inst, 3), n_enum(&inst, 2));
        assert!(crle_to_flat(&c2, 1, &a2, 0).is_err());
    }

    #[test]
    fn mediant_examples() {
        let a2 = Poset::antichain(2);
        let g = mediant_gadget(&a2, 0, &a2, 1).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.poset.is_minimal(g.x()));
        assert_eq!(rho_enum(&g.poset, g.x()), r(5, 2));
        let g = mediant_gadget(&a2, 0, &Poset::chain(2), 0).unwrap();
        assert_eq!(rho_enum(&g.poset, g.x()), r(8, 3));
        let v = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        for (pp, x, qq, y) in [(&a2, 0, &v, 0), (&v, 0, &Poset::chain(2), 0), (&v, 0, &v, 0)] {
            assert!(mediant_identities(pp, x, qq, y, &Caps::default()).unwrap().hold());
        }
    }

    #[test]
    fn ks_examples() {
        let a2 = Poset::antichain(2);
        let g = reciprocal_plus_one(&a2, 0).unwrap();
        assert_eq!(rho_enum(&g.poset, g.x()), r(3, 2));
        assert_eq!(count(&g.poset).unwrap(), BigUint::from(3u32));
        let g = reciprocal_plus_one(&Poset::chain(2), 0).unwrap();
        assert_eq!(rho_enum(&g.poset, g.x()), r(2, 1));
        let g = plus_one(&a2, 0).unwrap();
        assert_eq!(rho_enum(&g.poset, g.x()), r(3, 1));
        let g = plus_one(&Poset::chain(3), 0).unwrap();
        assert_eq!(rho_enum(&g.poset, g.x()), r(2, 1));
        let mut h = plus_one(&a2, 1).unwrap();
        for t in 2..=4 {
            h = plus_one(&h.poset, h.x()).unwrap();
            assert_eq!(rho(&h.poset, h.x()).unwrap(), r(2 + t, 1));
        }
        assert!(plus_one(&Poset::chain(2), 1).is_err());
    }

    #[test]
    fn quad_examples() {
        let a2 = Poset::antichain(2);
        let a3 = Poset::antichain(3);
        let out = quad_to_crle([(&a2, 0), (&a2, 0), (&a2, 0), (&a2, 0)]).unwrap();
        assert_eq!(rho(&out.p.poset, out.p.x()).unwrap(), rho(&out.q.poset, out.q.x()).unwrap());
        let out = quad_to_crle([(&a3, 0), (&a2, 0), (&a2, 0), (&a2, 0)]).unwrap();
        assert_ne!(rho(&out.p.poset, out.p.x()).unwrap(), rho(&out.q.poset, out.q.x()).unwrap());
        // n₂ < n₃ exercises the relabeling
        let out = quad_to_crle([(&a3, 0), (&a2, 0), (&a3, 0), (&a2, 1)]).unwrap();
        assert!(out.relabeled);
        assert!(out.p.len() <= 3 + 3 + 1 && out.q.len() <= 2 + 3 + 1);
        assert_eq!(rho(&out.p.poset, out.p.x()).unwrap(), rho(&out.q.poset, out.q.x()).unwrap());
    }

    #[test]
    fn cf_examples() {
        let g = cf_poset(&[3]).unwrap();
        assert_eq!(g.poset, Poset::chain(2).disjoint_sum(&Poset::chain(1)));
        assert_eq!(rho_enum(&g.poset, g.x()), r(3, 1));
        let g = cf_poset(&[2, 3]).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(rho_enum(&g.poset, g.x()), r(7, 3));
        assert!(g.poset.width() <= 2);
        let g = cf_poset_reciprocal(&[1]).unwrap();
        assert_eq!(g.len(), 1);
        assert!(rho(&g.poset, g.x()).unwrap().is_one());
        assert_eq!(rho(&cf_poset_reciprocal(&[2]).unwrap().poset, 0).unwrap(), r(2, 1));
        assert!(cf_poset(&[]).is_err());
        assert!(cf_poset(&[2, 0]).is_err());
        assert_eq!(
            rho(&cf_poset(&[1, 2, 2]).unwrap().poset, cf_poset(&[1, 2, 2]).unwrap().x()).unwrap(),
            cf_value_u64(&[1, 2, 2]).unwrap()
        );
    }
}
