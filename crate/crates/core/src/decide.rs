//! Stanley-equality verdicts and the pipeline turning a ratio verification
//! question into a single Stanley instance with two fixed elements.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cf::{cf_expand_u64, find_good_m, GoodM};
use crate::error::{Error, Result};
use crate::gadget::{cf_poset, crle_to_flat, ensure_bounded, flat_to_stanley, pad_fixed, quad_to_crle};
use crate::linext::{count_pinned_with, defect_from_counts, rho_with, CountInstance};
use crate::poset::{Poset, PosetJson};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Battery,
}

/// Whether `N(a)² = N(a−1)·N(a+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityVerdict {
    pub equal: bool,
    /// `(N(a−1), N(a), N(a+1))`
    pub counts: [BigUint; 3],
    pub defect: BigUint,
    pub method: Method,
    /// Why the battery was not used, when it was not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn verdict(counts: [BigUint; 3], equal: Option<bool>, method: Method, note: Option<String>) -> Result<EqualityVerdict> {
    let defect = defect_from_counts(&counts[0], &counts[1], &counts[2])?;
    Ok(EqualityVerdict {
        equal: equal.unwrap_or_else(|| defect.is_zero()),
        counts,
        defect,
        method,
        note,
    })
}

/// Ground truth from exact counts.
pub fn esta_bruteforce(inst: &CountInstance) -> Result<EqualityVerdict> {
    esta_bruteforce_with(inst, &Caps::default())
}

pub fn esta_bruteforce_with(inst: &CountInstance, caps: &Caps) -> Result<EqualityVerdict> {
    verdict(inst.neighbourhood(caps)?, None, Method::Brute, None)
}

/// The vanishing battery for one fixed element: no extension with `x` at
/// `a' ∈ {a−1, a, a+1}` puts an element comparable to `x` at another value
/// of that window. Assumes `2 ≤ a ≤ n−1` and `c` outside the window.
fn battery(p: &Poset, z: usize, c: usize, x: usize, a: usize, caps: &Caps) -> Result<bool> {
    let window = [a - 1, a, a + 1];
    let ys: Vec<usize> = p.comparable_set(x)?.into_iter().filter(|&y| y != z).collect();
    let hits: Vec<bool> = ys
        .par_iter()
        .map(|&y| -> Result<bool> {
            for &ap in &window {
                for &bp in window.iter().filter(|&&b| b != ap) {
                    let pins = [(z, c), (x, ap), (y, bp)];
                    if !count_pinned_with(p, &pins, caps)?.is_zero() {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        })
        .collect::<Result<_>>()?;
    Ok(!hits.into_iter().any(|h| h))
}

/// Equality for one fixed element `z ↦ c`, decided by the companion
/// vanishing battery. Boundary values of `a`, vanishing neighbour counts and
/// `c` adjacent to `a` are decided from the counts, with a note.
pub fn esta1_decide(p: &Poset, z: usize, c: usize, x: usize, a: usize) -> Result<EqualityVerdict> {
    esta1_decide_with(p, z, c, x, a, &Caps::default())
}

pub fn esta1_decide_with(
    p: &Poset,
    z: usize,
    c: usize,
    x: usize,
    a: usize,
    caps: &Caps,
) -> Result<EqualityVerdict> {
    let inst = CountInstance::new(p.clone(), vec![(z, c)], x, a)?;
    let n = p.len();
    if c + 1 >= a && c <= a + 1 {
        let v = esta_bruteforce_with(&inst, caps)?;
        return Ok(EqualityVerdict {
            note: Some("fixed value adjacent to a; decided by brute force".into()),
            ..v
        });
    }
    let counts = inst.neighbourhood(caps)?;
    if a == 1 || a == n || counts.iter().any(Zero::is_zero) {
        return verdict(counts, None, Method::Battery, Some("vanishing neighbour count".into()));
    }
    // c < a after dualizing if needed
    let equal = if c < a {
        battery(p, z, c, x, a, caps)?
    } else {
        battery(&p.dual(), z, n + 1 - c, x, n + 1 - a, caps)?
    };
    verdict(counts, Some(equal), Method::Battery, None)
}

/// No fixed elements: an isolated element pinned at `n+1` makes this a
/// one-fixed-element question with identical counts.
pub fn esta0_decide(p: &Poset, x: usize, a: usize) -> Result<EqualityVerdict> {
    esta0_decide_with(p, x, a, &Caps::default())
}

pub fn esta0_decide_with(p: &Poset, x: usize, a: usize, caps: &Caps) -> Result<EqualityVerdict> {
    let inst = CountInstance::new(p.clone(), vec![], x, a)?;
    let padded = pad_fixed(&inst, 1)?;
    let (z, c) = padded.fixed[0];
    esta1_decide_with(&padded.poset, z, c, x, a, caps)
}

/// `ρ(P₁,x₁)·ρ(P₂,x₂) =? ρ(P₃,x₃)·ρ(P₄,x₄)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadInstance {
    pub parts: [(Poset, usize); 4],
}

impl QuadInstance {
    pub fn new(parts: [(Poset, usize); 4]) -> Result<Self> {
        for (i, (p, x)) in parts.iter().enumerate() {
            p.check_label(*x)?;
            if !p.is_minimal(*x) {
                return Err(Error::precondition(format!("x{} = {x} is not minimal", i + 1)));
            }
        }
        Ok(QuadInstance { parts })
    }
}

pub fn evaluate_quad(q: &QuadInstance) -> Result<bool> {
    evaluate_quad_with(q, &Caps::default())
}

pub fn evaluate_quad_with(q: &QuadInstance, caps: &Caps) -> Result<bool> {
    let r: Vec<BigRational> = q
        .parts
        .iter()
        .map(|(p, x)| rho_with(p, *x, caps))
        .collect::<Result<_>>()?;
    Ok(&r[0] * &r[1] == &r[2] * &r[3])
}

/// `ρ(P, x) =? A/B`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerInstance {
    pub poset: Poset,
    pub x: usize,
    pub a: u64,
    pub b: u64,
}

impl VerInstance {
    pub fn new(poset: Poset, x: usize, a: u64, b: u64) -> Result<Self> {
        poset.check_label(x)?;
        if !poset.is_minimal(x) {
            return Err(Error::precondition(format!("x = {x} is not minimal")));
        }
        if b == 0 || b > a || a.gcd(&b) != 1 {
            return Err(Error::precondition(format!(
                "need coprime 1 ≤ B ≤ A, got A = {a}, B = {b}"
            )));
        }
        Ok(VerInstance { poset, x, a, b })
    }

    pub fn target(&self) -> BigRational {
        BigRational::new(BigInt::from(self.a), BigInt::from(self.b))
    }
}

/// One construction step of a pipeline, with the poset it produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranscriptEntry {
    pub step: String,
    pub size: usize,
    pub poset: PosetJson,
    pub marks: BTreeMap<String, usize>,
    pub params: BTreeMap<String, String>,
}

impl TranscriptEntry {
    fn new(step: &str, poset: &Poset, marks: &[(&str, usize)], params: &[(&str, String)]) -> Self {
        TranscriptEntry {
            step: step.into(),
            size: poset.len(),
            poset: poset.to_json(),
            marks: marks.iter().map(|&(k, v)| (k.into(), v)).collect(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

/// Output of [`verrle_to_quad`].
#[derive(Clone, Debug)]
pub struct VerQuad {
    pub quad: QuadInstance,
    /// `⌊A/B⌋`
    pub k: u64,
    /// `A/B = k·A'/B'` in lowest terms.
    pub a_prime: u64,
    pub b_prime: u64,
    /// `None` when `A' = B' = 1`.
    pub good_m: Option<GoodM>,
    pub transcript: Vec<TranscriptEntry>,
}

/// Builds `(P,x; P₂,x₂; P₃,x₃; P₄,x₄)` with `ρ₂ = B'/m`, `ρ₃ = k`, `ρ₄ = A'/m`,
/// so that the quad equation holds iff `ρ(P, x) = A/B`.
pub fn verrle_to_quad(inst: &VerInstance, seed: u64) -> Result<VerQuad> {
    let (a, b, n) = (inst.a, inst.b, inst.poset.len() as u64);
    if a == b || a > n * b {
        return Err(Error::DegenerateRatio(format!("{a}/{b}")));
    }
    let k = a / b;
    let (num, den) = (a, k * b);
    let g = num.gcd(&den);
    let (ap, bp) = (num / g, den / g);
    let (m, good_m) = if ap == bp {
        (1, None)
    } else {
        let gm = find_good_m(ap, bp, seed)?;
        (gm.m, Some(gm))
    };
    let p3 = cf_poset(&[k])?;
    let q2 = quotients_u64(bp, m)?;
    let q4 = quotients_u64(ap, m)?;
    let p2 = cf_poset(&q2)?;
    let p4 = cf_poset(&q4)?;
    let join = |q: &[u64]| q.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let transcript = vec![
        TranscriptEntry::new(
            "input",
            &inst.poset,
            &[("x", inst.x)],
            &[("target", format!("{a}/{b}"))],
        ),
        TranscriptEntry::new("p2", &p2.poset, &[("x", p2.x())], &[("rho", format!("{bp}/{m}")), ("quotients", join(&q2))]),
        TranscriptEntry::new("p3", &p3.poset, &[("x", p3.x())], &[("rho", k.to_string())]),
        TranscriptEntry::new("p4", &p4.poset, &[("x", p4.x())], &[("rho", format!("{ap}/{m}")), ("quotients", join(&q4))]),
    ];
    let quad = QuadInstance::new([
        (inst.poset.clone(), inst.x),
        (p2.poset.clone(), p2.x()),
        (p3.poset.clone(), p3.x()),
        (p4.poset.clone(), p4.x()),
    ])?;
    Ok(VerQuad {
        quad,
        k,
        a_prime: ap,
        b_prime: bp,
        good_m,
        transcript,
    })
}

/// Quotients of `num/den ≥ 1` as machine integers.
fn quotients_u64(num: u64, den: u64) -> Result<Vec<u64>> {
    let e = cf_expand_u64(num, den)?;
    e.quotients
        .iter()
        .map(|q| q.to_u64().ok_or_else(|| Error::precondition("quotient overflow")))
        .collect()
}

/// A Stanley instance with two fixed elements whose equality verdict answers
/// `ρ(P, x) =? A/B`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub instance: CountInstance,
    pub transcript: Vec<TranscriptEntry>,
    /// Size predicted from the component sizes; equals `instance.n()`.
    pub size_bound: usize,
    /// Set when the answer followed from `1 ≤ ρ ≤ n` without gadgets.
    pub constant: bool,
}

/// Fixed instances with known verdicts, used when no gadget is needed.
fn constant_instance(equal: bool) -> CountInstance {
    // antichain: N = (2, 2, 2); chain: N = (0, 1, 0)
    let p = if equal { Poset::antichain(5) } else { Poset::chain(5) };
    CountInstance::new(p, vec![(0, 1), (4, 5)], 2, 3).expect("valid constant instance")
}

pub fn hardness_witness(inst: &VerInstance, seed: u64) -> Result<Witness> {
    let (a, b, n) = (inst.a, inst.b, inst.poset.len() as u64);
    if a == b || a > n * b {
        // ρ = 1 exactly when x is the only minimal element; ρ ≤ n always
        let equal = a == b && inst.poset.minimals() == [inst.x];
        let instance = constant_instance(equal);
        let transcript = vec![TranscriptEntry::new(
            "constant",
            &instance.poset,
            &[("x", instance.x)],
            &[("target", format!("{a}/{b}")), ("equal", equal.to_string())],
        )];
        let size_bound = instance.n();
        return Ok(Witness {
            instance,
            transcript,
            size_bound,
            constant: true,
        });
    }
    let vq = verrle_to_quad(inst, seed)?;
    let mut transcript = vq.transcript;
    let [(p1, x1), (p2, x2), (p3, x3), (p4, x4)] = &vq.quad.parts;
    let sizes = [p1.len(), p2.len(), p3.len(), p4.len()];
    let crle = quad_to_crle([(p1, *x1), (p2, *x2), (p3, *x3), (p4, *x4)])?;
    transcript.push(TranscriptEntry::new(
        "quad_to_crle.p",
        &crle.p.poset,
        &[("x", crle.p.x())],
        &[("relabeled", crle.relabeled.to_string())],
    ));
    transcript.push(TranscriptEntry::new("quad_to_crle.q", &crle.q.poset, &[("x", crle.q.x())], &[]));
    let flat = crle_to_flat(&crle.p.poset, crle.p.x(), &crle.q.poset, crle.q.x())?;
    let c = crle.p.len();
    transcript.push(TranscriptEntry::new(
        "crle_to_flat",
        &flat.poset,
        &[("z", flat.mark("z")), ("w", flat.mark("w"))],
        &[("c", c.to_string())],
    ));
    let flat_inst = CountInstance::new(flat.poset.clone(), vec![], flat.mark("z"), c)?;
    let bounded = ensure_bounded(&flat_inst);
    transcript.push(TranscriptEntry::new(
        "ensure_bounded",
        &bounded.instance.poset,
        &[("x", bounded.instance.x), ("bottom", bounded.bottom), ("top", bounded.top)],
        &[("a", bounded.instance.a.to_string())],
    ));
    let st = flat_to_stanley(&bounded.instance)?;
    transcript.push(TranscriptEntry::new(
        "flat_to_stanley",
        &st.instance.poset,
        &[("x", st.instance.x), ("u", st.u), ("v", st.v), ("w", st.w)],
        &[
            ("a", st.instance.a.to_string()),
            ("fixed", format!("{:?}", st.instance.fixed)),
        ],
    ));
    // |P| = n₁ + max(n₂, n₃) + 1, |Q| = n₂' + n₄' + 1 after the relabel
    let (l, r) = if crle.relabeled {
        (sizes[3] + sizes[2].max(sizes[1]) + 1, sizes[2] + sizes[0] + 1)
    } else {
        (sizes[0] + sizes[1].max(sizes[2]) + 1, sizes[1] + sizes[3] + 1)
    };
    let size_bound = l + r + 2 + 3;
    Ok(Witness {
        instance: st.instance,
        transcript,
        size_bound,
        constant: false,
    })
}
