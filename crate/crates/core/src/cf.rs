//! Continued fractions, quotient sums `S_A(m)`, and the good-`m` search.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// `[a₀; a₁, …, a_s]` in canonical form (last quotient > 1 when `s ≥ 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFExpansion {
    pub quotients: Vec<BigUint>,
    pub value: BigRational,
    /// Sum of all quotients, `a₀` included.
    pub qsum: BigUint,
}

/// Euclid on the reduced fraction `num/den`.
pub fn cf_expand(num: &BigUint, den: &BigUint) -> Result<CFExpansion> {
    if den.is_zero() {
        return Err(Error::precondition("denominator must be at least 1"));
    }
    let g = num.gcd(den);
    let (mut p, mut q) = if g.is_zero() {
        (BigUint::zero(), BigUint::one())
    } else {
        (num / &g, den / &g)
    };
    let value = BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
    let mut quotients = Vec::new();
    loop {
        let (a, r) = p.div_rem(&q);
        quotients.push(a);
        if r.is_zero() {
            break;
        }
        p = q;
        q = r;
    }
    let qsum = quotients.iter().sum();
    Ok(CFExpansion {
        quotients,
        value,
        qsum,
    })
}

pub fn cf_expand_u64(num: u64, den: u64) -> Result<CFExpansion> {
    cf_expand(&BigUint::from(num), &BigUint::from(den))
}

fn check_quotients(q: &[BigUint]) -> Result<()> {
    if q.is_empty() {
        return Err(Error::precondition("empty quotient list"));
    }
    if q[1..].iter().any(Zero::is_zero) {
        return Err(Error::precondition("quotients after the first must be at least 1"));
    }
    Ok(())
}

/// `a₀ + 1/(a₁ + 1/(… + 1/a_s))`, either representation accepted.
pub fn cf_value(quotients: &[BigUint]) -> Result<BigRational> {
    check_quotients(quotients)?;
    let mut acc = BigRational::from_integer(BigInt::from(quotients[quotients.len() - 1].clone()));
    for a in quotients[..quotients.len() - 1].iter().rev() {
        if acc.is_zero() {
            return Err(Error::precondition("zero tail quotient"));
        }
        acc = BigRational::from_integer(BigInt::from(a.clone())) + acc.recip();
    }
    Ok(acc)
}

pub fn cf_value_u64(quotients: &[u64]) -> Result<BigRational> {
    let q: Vec<BigUint> = quotients.iter().map(|&a| BigUint::from(a)).collect();
    cf_value(&q)
}

/// Rewrites a trailing quotient 1 into the canonical shorter form.
pub fn canonicalize(quotients: &[BigUint]) -> Result<Vec<BigUint>> {
    check_quotients(quotients)?;
    let mut q = quotients.to_vec();
    if q.len() >= 2 && q[q.len() - 1].is_one() {
        q.pop();
        *q.last_mut().unwrap() += 1u32;
    }
    Ok(q)
}

fn euclid_sum(mut p: u64, mut q: u64) -> u64 {
    let mut s = 0;
    while q != 0 {
        s += p / q;
        let r = p % q;
        p = q;
        q = r;
    }
    s
}

/// `S_A(m)`: sum of the quotients of the reduced fraction `m/A`.
pub fn quotient_sum(m: u64, a: u64) -> Result<u64> {
    if m == 0 || m > a {
        return Err(Error::precondition(format!("need 1 ≤ m ≤ A, got m = {m}, A = {a}")));
    }
    // Euclid's quotients do not change under scaling by gcd(m, A).
    Ok(euclid_sum(m, a))
}

/// Exact mean `(1/n)·Σ_{m ≤ n} S_n(m)`.
pub fn yao_knuth_mean(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::precondition("n must be at least 2"));
    }
    let total: u128 = (1..=n).map(|m| euclid_sum(m, n) as u128).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(n)))
}

/// `(6/π²)(ln n)²`
pub fn yao_knuth_asymptotic(n: u64) -> f64 {
    let l = (n as f64).ln();
    6.0 / (std::f64::consts::PI * std::f64::consts::PI) * l * l
}

/// Fraction of `m ∈ [n]` with `S_n(m) > 2(ln n)²`.
pub fn tail_fraction(n: u64) -> f64 {
    let bound = 2.0 * (n as f64).ln().powi(2);
    let over = (1..=n).filter(|&m| euclid_sum(m, n) as f64 > bound).count();
    over as f64 / n as f64
}

/// Result of [`find_good_m`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodM {
    pub m: u64,
    /// Multiplier applied to both `2(ln ·)²` bounds; 1 means unrelaxed.
    pub slack: f64,
    pub s_a: u64,
    pub s_b: u64,
    pub bound_a: f64,
    pub bound_b: f64,
}

fn bound(x: u64, slack: f64) -> f64 {
    slack * 2.0 * (x as f64).ln().powi(2)
}

/// Searches `m ∈ [1, B]` with `S_A(m) ≤ slack·2(ln A)²` and
/// `S_B(m) ≤ slack·2(ln B)²`: seeded sampling first, then an ascending scan.
pub fn find_good_m_with_slack(a: u64, b: u64, seed: u64, slack: f64) -> Result<GoodM> {
    if b == 0 || a.gcd(&b) != 1 || !(b < a && a < 2 * b) {
        return Err(Error::precondition(format!(
            "need gcd(A, B) = 1 and B < A < 2B, got A = {a}, B = {b}"
        )));
    }
    let (ba, bb) = (bound(a, slack), bound(b, slack));
    let good = |m: u64| {
        let (sa, sb) = (euclid_sum(m, a), euclid_sum(m, b));
        (sa as f64 <= ba && sb as f64 <= bb).then_some((sa, sb))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = (0..64.min(b)).map(|_| rng.gen_range(1..=b));
    let found = sampled.chain(1..=b).find_map(|m| good(m).map(|s| (m, s)));
    match found {
        Some((m, (s_a, s_b))) => {
            debug_assert_eq!(quotient_sum(m, a).ok(), Some(s_a));
            Ok(GoodM {
                m,
                slack,
                s_a,
                s_b,
                bound_a: ba,
                bound_b: bb,
            })
        }
        None => Err(Error::NotFound { b, slack }),
    }
}

/// [`find_good_m_with_slack`] at slack 1, then 1.5, then growing by 1.5×
/// until some `m` qualifies. `m = B` has `S_B = 1`, so this terminates.
pub fn find_good_m(a: u64, b: u64, seed: u64) -> Result<GoodM> {
    let mut slack = 1.0;
    loop {
        match find_good_m_with_slack(a, b, seed, slack) {
            Err(Error::NotFound { .. }) => {
                slack = if slack < 1.5 { 1.5 } else { slack * 1.5 };
            }
            other => return other,
        }
    }
}
