//! Self-check suites: every counting identity the library relies on,
//! re-verified against enumeration or exact recomputation.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cf::{cf_expand_u64, cf_value_u64, quotient_sum, tail_fraction, yao_knuth_asymptotic, yao_knuth_mean};
use crate::corpus::{all_instances, poset_classes, random_instance, random_labeled_poset};
use crate::decide::{esta1_decide, esta_bruteforce, hardness_witness, VerInstance};
use crate::gadget::{
    cf_poset, crle_to_flat, flat_to_stanley, m_counts, mediant_gadget, mediant_identities, pad_fixed, plus_one,
    quad_to_crle, reciprocal_plus_one,
};
use crate::geometry::{
    af_defect, chain_polytope, is_totally_unimodular, order_polytope, slices, stanley_af_instance,
    verify_sta_pol, vertices, volume,
};
use crate::linext::{count, enumerate, rho, stanley_defect, CountInstance};
use crate::poset::Poset;
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level {s:?}; expected quick or full")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// Instances examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub level: Level,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Outcome = std::result::Result<usize, String>;

struct Ctx {
    level: Level,
    seed: u64,
}

impl Ctx {
    fn pick(&self, quick: usize, full: usize) -> usize {
        match self.level {
            Level::Quick => quick,
            Level::Full => full,
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e(s: impl std::fmt::Display) -> String {
    s.to_string()
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
}

fn n_enum(inst: &CountInstance, value: usize) -> Result<usize, String> {
    Ok(enumerate(&inst.poset)
        .map_err(e)?
        .filter(|f| f.position(inst.x) == value && inst.fixed.iter().all(|&(z, c)| f.position(z) == c))
        .count())
}

fn small_pair(rng: &mut ChaCha8Rng, max: usize) -> (Poset, usize) {
    let n = rng.gen_range(1..=max);
    let d = rng.gen_range(0.0..0.7);
    let p = random_labeled_poset(rng, n, d);
    let mins = p.minimals();
    let x = mins[rng.gen_range(0..mins.len())];
    (p, x)
}

fn count_vs_enumeration(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 0..=c.pick(4, 5) {
        for p in poset_classes(n) {
            let by_enum = enumerate(&p).map_err(e)?.count();
            ensure!(count(&p).map_err(e)? == BigUint::from(by_enum), "e(P) mismatch on {:?}", p.to_json());
            for inst in all_instances(&p, 1.min(n.saturating_sub(1))) {
                let dp = inst.n_at(inst.a as i64).map_err(e)?;
                ensure!(dp == BigUint::from(n_enum(&inst, inst.a)?), "N mismatch on {inst:?}");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn rho_vs_enumeration(c: &Ctx) -> Outcome {
    let mut rng = c.rng(2);
    let total = c.pick(60, 500);
    for _ in 0..total {
        let (p, x) = small_pair(&mut rng, c.pick(7, 9));
        let all = enumerate(&p).map_err(e)?.count();
        let first = enumerate(&p).map_err(e)?.filter(|f| f.position(x) == 1).count();
        let want = BigRational::new(all.into(), first.into());
        ensure!(rho(&p, x).map_err(e)? == want, "rho mismatch on {:?}", p.to_json());
    }
    Ok(total)
}

fn stanley_inequality(c: &Ctx) -> Outcome {
    let mut rng = c.rng(3);
    let total = c.pick(300, 2000);
    for i in 0..total {
        let k = i % 3;
        let n = rng.gen_range(k + 1..=8);
        let d = rng.gen_range(0.0..0.6);
        let p = random_labeled_poset(&mut rng, n, d);
        let inst = random_instance(&mut rng, &p, k);
        stanley_defect(&inst).map_err(e)?;
    }
    Ok(total)
}

fn padding(c: &Ctx) -> Outcome {
    let mut rng = c.rng(4);
    let total = c.pick(60, 200);
    for _ in 0..total {
        let n = rng.gen_range(2..=6);
        let p = random_labeled_poset(&mut rng, n, 0.4);
        let k = rng.gen_range(0..=1);
        let inst = random_instance(&mut rng, &p, k);
        let padded = pad_fixed(&inst, inst.k() + rng.gen_range(0..=2)).map_err(e)?;
        for v in 0..=n as i64 + 1 {
            ensure!(inst.n_at(v).map_err(e)? == padded.n_at(v).map_err(e)?, "padding changed N({v})");
        }
    }
    Ok(total)
}

fn flat_biconditional(c: &Ctx) -> Outcome {
    let mut rng = c.rng(5);
    let mut checked = 0;
    while checked < c.pick(60, 200) {
        let n = rng.gen_range(2..=6);
        let p = random_labeled_poset(&mut rng, n, 0.4);
        let k = rng.gen_range(0..=1);
        let inst = random_instance(&mut rng, &p, k);
        let Ok(out) = flat_to_stanley(&inst) else { continue };
        let m = m_counts(&inst, &Caps::default()).map_err(e)?;
        let q = &out.instance;
        let [lo, mid, hi] = q.neighbourhood(&Caps::default()).map_err(e)?;
        let two = BigUint::from(2u32);
        ensure!(mid == &m.m1 + &m.m2 + &two * &m.m3, "N(b) identity");
        ensure!(hi == &two * (&m.m2 + &m.m3), "N(b+1) identity");
        ensure!(lo == &two * (&m.m1 + &m.m3), "N(b-1) identity");
        let d = stanley_defect(q).map_err(e)?;
        let diff = if m.m1 > m.m2 { &m.m1 - &m.m2 } else { &m.m2 - &m.m1 };
        ensure!(d == &diff * &diff, "defect is not (M1-M2)^2");
        let flat = inst.n_at(inst.a as i64).map_err(e)? == inst.n_at(inst.a as i64 + 1).map_err(e)?;
        ensure!(flat == d.is_zero(), "flatness biconditional");
        checked += 1;
    }
    Ok(checked)
}

fn crle_products(c: &Ctx) -> Outcome {
    let mut rng = c.rng(6);
    let total = c.pick(60, 200);
    for _ in 0..total {
        let (p, x) = small_pair(&mut rng, 6);
        let (q, y) = small_pair(&mut rng, 6);
        let g = crle_to_flat(&p, x, &q, y).map_err(e)?;
        let n = p.len();
        let inst = CountInstance::new(g.poset.clone(), vec![], g.mark("z"), n).map_err(e)?;
        let ep = count(&p).map_err(e)?;
        let eq = count(&q).map_err(e)?;
        let epx = count(&p.delete(x).map_err(e)?.0).map_err(e)?;
        let eqy = count(&q.delete(y).map_err(e)?.0).map_err(e)?;
        ensure!(inst.n_at(n as i64 + 1).map_err(e)? == &ep * &eqy, "N(z, n+1) identity");
        ensure!(inst.n_at(n as i64).map_err(e)? == &epx * &eq, "N(z, n) identity");
    }
    Ok(total)
}

fn mediant(c: &Ctx) -> Outcome {
    let mut rng = c.rng(7);
    let total = c.pick(60, 200);
    for _ in 0..total {
        let (p, x) = small_pair(&mut rng, 6);
        let (q, y) = small_pair(&mut rng, 6);
        ensure!(mediant_identities(&p, x, &q, y, &Caps::default()).map_err(e)?.hold(), "counting identities");
        let g = mediant_gadget(&p, x, &q, y).map_err(e)?;
        let (rp, rq) = (rho(&p, x).map_err(e)?, rho(&q, y).map_err(e)?);
        let m = BigRational::from_integer(p.len().into());
        let want = m + (BigRational::one() + rq / rp).recip();
        ensure!(rho(&g.poset, g.x()).map_err(e)? == want, "mediant formula");
    }
    Ok(total)
}

fn ks(c: &Ctx) -> Outcome {
    let mut rng = c.rng(8);
    let total = c.pick(60, 200);
    for _ in 0..total {
        let (p, x) = small_pair(&mut rng, 6);
        let r = rho(&p, x).map_err(e)?;
        let g = reciprocal_plus_one(&p, x).map_err(e)?;
        ensure!(rho(&g.poset, g.x()).map_err(e)? == BigRational::one() + r.recip(), "1 + 1/rho");
        let g = plus_one(&p, x).map_err(e)?;
        ensure!(rho(&g.poset, g.x()).map_err(e)? == BigRational::one() + r, "1 + rho");
    }
    Ok(total)
}

fn quad(c: &Ctx) -> Outcome {
    let mut rng = c.rng(9);
    let total = c.pick(60, 200);
    for _ in 0..total {
        let parts: Vec<(Poset, usize)> = (0..4).map(|_| small_pair(&mut rng, 5)).collect();
        let refs = [0, 1, 2, 3].map(|i| (&parts[i].0, parts[i].1));
        let out = quad_to_crle(refs).map_err(e)?;
        let r: Vec<BigRational> = parts.iter().map(|(p, x)| rho(p, *x)).collect::<Result<_, _>>().map_err(e)?;
        let lhs = rho(&out.p.poset, out.p.x()).map_err(e)? == rho(&out.q.poset, out.q.x()).map_err(e)?;
        ensure!(lhs == (&r[0] * &r[1] == &r[2] * &r[3]), "quad biconditional");
        let s: Vec<usize> = parts.iter().map(|(p, _)| p.len()).collect();
        let mid = s[1].max(s[2]);
        ensure!(out.p.len() <= s[0] + mid + 1 && out.q.len() <= s[3] + mid + 1, "size bound");
    }
    Ok(total)
}

fn quotient_tuples(sum: u64) -> Vec<Vec<u64>> {
    if sum == 0 {
        return vec![vec![]];
    }
    (1..=sum)
        .flat_map(|a| {
            quotient_tuples(sum - a).into_iter().map(move |mut t| {
                t.insert(0, a);
                t
            })
        })
        .collect()
}

fn cf_posets(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for s in 1..=c.pick(7, 9) as u64 {
        for q in quotient_tuples(s) {
            let g = cf_poset(&q).map_err(e)?;
            ensure!(g.len() as u64 == s && g.poset.width() <= 2, "size or width for {q:?}");
            ensure!(rho(&g.poset, g.x()).map_err(e)? == cf_value_u64(&q).map_err(e)?, "value for {q:?}");
            checked += 1;
        }
    }
    Ok(checked)
}

fn cf_round_trip(c: &Ctx) -> Outcome {
    let top = c.pick(120, 500) as u64;
    let bad: Vec<(u64, u64)> = (1..=top)
        .into_par_iter()
        .flat_map_iter(|p| (1..=top).map(move |q| (p, q)))
        .filter(|&(p, q)| {
            let x = cf_expand_u64(p, q).unwrap();
            x.value != BigRational::new(p.into(), q.into()) || cf_value_u64(&x.quotients.iter().map(|v| v.to_u64().unwrap()).collect::<Vec<_>>()).unwrap() != x.value
        })
        .collect();
    ensure!(bad.is_empty(), "round trip failed at {:?}", bad[0]);
    Ok((top * top) as usize)
}

fn quotient_sum_invariance(c: &Ctx) -> Outcome {
    let top = c.pick(80, 200) as u64;
    let mut checked = 0;
    for a in 1..=top {
        for m in 1..=a {
            let s = quotient_sum(m, a).map_err(e)?;
            // S only depends on the reduced fraction and on its quotients
            let g = num_integer::gcd(m, a);
            ensure!(s == quotient_sum(m / g, a / g).map_err(e)?, "S_{a}({m}) not reduction-invariant");
            let q = cf_expand_u64(m, a).map_err(e)?;
            ensure!(q.qsum == BigUint::from(s), "S_{a}({m}) disagrees with the expansion");
            checked += 1;
        }
    }
    Ok(checked)
}

fn yao_knuth(c: &Ctx) -> Outcome {
    let ns: &[u64] = match c.level {
        Level::Quick => &[1_000, 10_000],
        Level::Full => &[1_000, 10_000, 100_000],
    };
    for &n in ns {
        let mean = yao_knuth_mean(n).map_err(e)?.to_f64().unwrap_or(f64::NAN);
        let target = yao_knuth_asymptotic(n);
        ensure!((mean / target - 1.0).abs() <= 0.3, "mean {mean} vs {target} at n = {n}");
        let t = tail_fraction(n);
        ensure!(t <= 0.45, "tail fraction {t} at n = {n}");
    }
    Ok(ns.len())
}

fn battery(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 2..=c.pick(5, 6) {
        for p in poset_classes(n) {
            for inst in all_instances(&p, 1) {
                let (z, cc) = inst.fixed[0];
                let d = esta1_decide(&p, z, cc, inst.x, inst.a).map_err(e)?;
                ensure!(d.equal == esta_bruteforce(&inst).map_err(e)?.equal, "battery disagrees on {inst:?}");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn polytope_volumes(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 0..=c.pick(4, 5) {
        let fact: u64 = (1..=n as u64).product();
        for p in poset_classes(n) {
            let want = ratio(&count(&p).map_err(e)?, &BigUint::from(fact));
            let vo = volume(&vertices(&order_polytope(&p)).map_err(e)?).map_err(e)?;
            let vc = volume(&vertices(&chain_polytope(&p)).map_err(e)?).map_err(e)?;
            ensure!(vo == want && vc == want, "volumes of {:?}", p.to_json());
            checked += 1;
        }
    }
    Ok(checked)
}

fn slices_tu(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 1..=c.pick(4, 5) {
        for p in poset_classes(n) {
            for z in 0..n {
                for s in slices(&p, &[z]).map_err(e)? {
                    ensure!(is_totally_unimodular(&s.a, 6).map_err(e)?, "slice not TU");
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn chain_choices(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    (0..n).flat_map(|z| (1..=n).map(move |c| (z, c))).collect()
}

fn sta_pol(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 1..=c.pick(3, 4) {
        for p in poset_classes(n) {
            for (z, cc) in chain_choices(&p) {
                let s = verify_sta_pol(&p, &[z], &[cc]).map_err(e)?;
                ensure!(s.equal, "slice mixed volume {} vs {}", s.lhs, s.rhs);
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn af_vs_stanley(c: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 3..=c.pick(3, 4) {
        for p in poset_classes(n) {
            for inst in all_instances(&p, 0) {
                let Ok(af) = stanley_af_instance(&inst) else { continue };
                let d = af_defect(&af.k, &af.l, &af.qs).map_err(e)?;
                let phi = stanley_defect(&inst).map_err(e)?;
                let s = BigRational::from_integer(BigInt::from(af.scale.clone()));
                ensure!(d.delta.clone() * &s * &s == ratio(&phi, &BigUint::one()), "scaled defect mismatch");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn witness(c: &Ctx) -> Outcome {
    let mut rng = c.rng(10);
    let total = c.pick(8, 50);
    let targets = [(2u64, 1u64), (3, 2), (5, 2), (3, 1), (4, 3), (5, 3), (1, 1)];
    for i in 0..total {
        let (p, x) = small_pair(&mut rng, c.pick(4, 6));
        let r = rho(&p, x).map_err(e)?;
        // alternate between the true ratio and fixed targets
        let (a, b) = if i % 2 == 0 {
            (r.numer().to_u64().unwrap(), r.denom().to_u64().unwrap())
        } else {
            targets[i % targets.len()]
        };
        let inst = VerInstance::new(p, x, a, b).map_err(e)?;
        let w = hardness_witness(&inst, c.seed).map_err(e)?;
        ensure!(w.instance.k() == 2, "witness has k = {}", w.instance.k());
        let v = esta_bruteforce(&w.instance).map_err(e)?;
        ensure!(v.equal == (r == inst.target()), "witness verdict for {a}/{b}");
    }
    Ok(total)
}

type Check = (&'static str, fn(&Ctx) -> Outcome);

const CHECKS: &[Check] = &[
    ("extension counts match enumeration", count_vs_enumeration),
    ("relative counts match enumeration", rho_vs_enumeration),
    ("Stanley inequality", stanley_inequality),
    ("padding preserves counts", padding),
    ("flatness gadget identities and biconditional", flat_biconditional),
    ("comparison gadget product identities", crle_products),
    ("mediant identities and formula", mediant),
    ("reciprocal-plus-one and plus-one", ks),
    ("quadruple gadget biconditional and size bounds", quad),
    ("width-two continued fraction posets", cf_posets),
    ("continued fraction round trip", cf_round_trip),
    ("quotient sum invariance", quotient_sum_invariance),
    ("Yao-Knuth mean and tail", yao_knuth),
    ("one-fixed-element battery equals brute force", battery),
    ("order and chain polytope volumes", polytope_volumes),
    ("slices are totally unimodular", slices_tu),
    ("slice mixed volume formula", sta_pol),
    ("Alexandrov-Fenchel defect matches Stanley defect", af_vs_stanley),
    ("hardness witness biconditional", witness),
];

/// Runs every suite at `level`; suites run concurrently, each from its own
/// seed-derived generator.
pub fn run(level: Level, seed: u64) -> Report {
    let ctx = Ctx { level, seed };
    let checks = CHECKS
        .par_iter()
        .map(|&(name, f)| {
            let t = Instant::now();
            let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&ctx)))
                .unwrap_or_else(|_| Err("panicked".into()));
            let millis = t.elapsed().as_millis();
            match out {
                Ok(checked) => CheckReport {
                    name,
                    passed: true,
                    checked,
                    failure: None,
                    millis,
                },
                Err(msg) => CheckReport {
                    name,
                    passed: false,
                    checked: 0,
                    failure: Some(msg),
                    millis,
                },
            }
        })
        .collect();
    Report { level, seed, checks }
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}
