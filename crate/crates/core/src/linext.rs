//! Exact counting and enumeration of (position-constrained) linear extensions.
//!
//! Counting runs a dynamic program over the lattice of order ideals: an ideal
//! of size `s - 1` is extended by an element `u` at position `s`. Position
//! constraints ("pins") restrict which element may occupy a pinned position
//! and where a pinned element may go. Small posets use a dense table indexed
//! by bitmask; larger ones a hash map per layer with a node budget.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::bits::{IdealKey, Mask};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::Caps;

/// A linear extension `f`, stored both ways round. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    pos: Vec<usize>,
    order: Vec<usize>,
}

impl LinearExtension {
    /// Builds from a sequence of elements listed by increasing position.
    pub fn from_order(order: Vec<usize>) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &u) in order.iter().enumerate() {
            pos[u] = i + 1;
        }
        LinearExtension { pos, order }
    }

    /// `f(u)`
    pub fn position(&self, u: usize) -> usize {
        self.pos[u]
    }

    /// `f⁻¹(p)`
    pub fn element_at(&self, p: usize) -> usize {
        self.order[p - 1]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn respects(&self, p: &Poset) -> bool {
        p.relations()
            .into_iter()
            .all(|(u, v)| self.pos[u] < self.pos[v])
    }
}

/// Depth-first enumeration of `E(P)` in lexicographic order of the element
/// sequence `f⁻¹(1), f⁻¹(2), …`.
pub struct Extensions<'a> {
    poset: &'a Poset,
    prefix: Vec<usize>,
    placed: Vec<bool>,
    /// next candidate label to try at each depth
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> Extensions<'a> {
    fn available(&self, u: usize) -> bool {
        !self.placed[u] && self.poset.below(u).iter().all(|w| self.placed[w])
    }
}

impl Iterator for Extensions<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        let n = self.poset.len();
        if self.done {
            return None;
        }
        if n == 0 {
            self.done = true;
            return Some(LinearExtension::from_order(vec![]));
        }
        loop {
            let depth = self.prefix.len();
            if depth == n {
                let out = LinearExtension::from_order(self.prefix.clone());
                // backtrack one level so the next call resumes the search
                let u = self.prefix.pop().unwrap();
                self.placed[u] = false;
                self.cursor.pop();
                return Some(out);
            }
            let start = self.cursor[depth];
            match (start..n).find(|&u| self.available(u)) {
                Some(u) => {
                    self.cursor[depth] = u + 1;
                    self.prefix.push(u);
                    self.placed[u] = true;
                    self.cursor.push(0);
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.cursor.pop();
                    let u = self.prefix.pop().unwrap();
                    self.placed[u] = false;
                }
            }
        }
    }
}

/// Streams every linear extension of `p` exactly once.
pub fn enumerate(p: &Poset) -> Result<Extensions<'_>> {
    enumerate_with(p, &Caps::default())
}

pub fn enumerate_with<'a>(p: &'a Poset, caps: &Caps) -> Result<Extensions<'a>> {
    if p.len() > caps.enumerate_n {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            limit: caps.enumerate_n,
            got: p.len(),
            flag: "--cap-enum",
        });
    }
    Ok(Extensions {
        poset: p,
        prefix: Vec::with_capacity(p.len()),
        placed: vec![false; p.len()],
        cursor: vec![0],
        done: false,
    })
}

/// Position constraints `element ↦ position` (1-based).
#[derive(Clone, Debug)]
struct Pins {
    pos_of: Vec<Option<usize>>,
    elem_at: Vec<Option<usize>>,
}

impl Pins {
    /// `None` when the constraints are unsatisfiable on their face
    /// (out-of-range position, one element twice, one position twice).
    fn new(n: usize, pins: &[(usize, usize)]) -> Option<Pins> {
        let mut pos_of = vec![None; n];
        let mut elem_at = vec![None; n + 1];
        for &(u, p) in pins {
            if p == 0 || p > n {
                return None;
            }
            match (pos_of[u], elem_at[p]) {
                (None, None) => {
                    pos_of[u] = Some(p);
                    elem_at[p] = Some(u);
                }
                (Some(q), Some(v)) if q == p && v == u => {}
                _ => return None,
            }
        }
        Some(Pins { pos_of, elem_at })
    }
}

trait Counter: Clone + Send {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_add(&mut self, other: &Self);
    fn into_big(self) -> BigUint;
}

impl Counter for u64 {
    fn c_zero() -> Self {
        0
    }
    fn c_one() -> Self {
        1
    }
    fn c_add(&mut self, other: &Self) {
        *self += *other;
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Counter for u128 {
    fn c_zero() -> Self {
        0
    }
    fn c_one() -> Self {
        1
    }
    fn c_add(&mut self, other: &Self) {
        *self += *other;
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Counter for BigUint {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_one() -> Self {
        One::one()
    }
    fn c_add(&mut self, other: &Self) {
        *self += other;
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Dense table DP for `n ≤ 14`; masks in increasing numeric order are a
/// topological order of the ideal lattice.
fn dense_dp(p: &Poset, pins: &Pins) -> u64 {
    let n = p.len();
    let preds: Vec<u32> = (0..n)
        .map(|v| p.below(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    let mut table = vec![0u64; 1 << n];
    table[0] = 1;
    for mask in 0..full {
        let c = table[mask as usize];
        if c == 0 {
            continue;
        }
        let s = mask.count_ones() as usize + 1;
        if let Some(e) = pins.elem_at[s] {
            if mask >> e & 1 == 0 && preds[e] & !mask == 0 {
                table[(mask | 1 << e) as usize] += c;
            }
            continue;
        }
        let mut free = full & !mask;
        while free != 0 {
            let u = free.trailing_zeros() as usize;
            free &= free - 1;
            if pins.pos_of[u].is_none() && preds[u] & !mask == 0 {
                table[(mask | 1 << u) as usize] += c;
            }
        }
    }
    table[full as usize]
}

fn sparse_dp<K: IdealKey, C: Counter>(p: &Poset, pins: &Pins, budget: usize) -> Result<C> {
    let n = p.len();
    let preds: Vec<K> = (0..n).map(|v| K::from_set(p.below(v))).collect();
    let mut layer: FxHashMap<K, C> = FxHashMap::default();
    layer.insert(K::empty(), C::c_one());
    for s in 1..=n {
        let mut next: FxHashMap<K, C> =
            FxHashMap::with_capacity_and_hasher(layer.len(), Default::default());
        let over = |len: usize| {
            (len > budget).then_some(Error::CapExceeded {
                what: "order-ideal layer size",
                limit: budget,
                got: len,
                flag: "--cap-ideals",
            })
        };
        for (ideal, c) in &layer {
            let mut push = |key: K| {
                next.entry(key)
                    .and_modify(|e: &mut C| e.c_add(c))
                    .or_insert_with(|| c.clone());
            };
            match pins.elem_at[s] {
                Some(e) => {
                    if !ideal.contains(e) && preds[e].is_subset(ideal) {
                        push(ideal.with(e));
                    }
                }
                None => {
                    for u in 0..n {
                        if !ideal.contains(u)
                            && pins.pos_of[u].is_none()
                            && preds[u].is_subset(ideal)
                        {
                            push(ideal.with(u));
                        }
                    }
                }
            }
            if let Some(e) = over(next.len()) {
                return Err(e);
            }
        }
        if next.is_empty() {
            return Ok(C::c_zero());
        }
        layer = next;
    }
    Ok(layer.into_values().next().unwrap_or_else(C::c_zero))
}

fn sparse_dispatch<C: Counter>(p: &Poset, pins: &Pins, budget: usize) -> Result<C> {
    match p.len().div_ceil(64) {
        0 | 1 => sparse_dp::<Mask<1>, C>(p, pins, budget),
        2 => sparse_dp::<Mask<2>, C>(p, pins, budget),
        3 | 4 => sparse_dp::<Mask<4>, C>(p, pins, budget),
        _ => sparse_dp::<Mask<8>, C>(p, pins, budget),
    }
}

fn run_dp(p: &Poset, pins: &Pins, caps: &Caps) -> Result<BigUint> {
    let n = p.len();
    if n > caps.max_elements {
        return Err(Error::CapExceeded {
            what: "poset size",
            limit: caps.max_elements,
            got: n,
            flag: "--cap-n",
        });
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    // n! bounds every count, so the counter width follows from n alone.
    if n <= 14 {
        Ok(BigUint::from(dense_dp(p, pins)))
    } else if n <= 20 {
        sparse_dispatch::<u64>(p, pins, caps.ideal_budget).map(Counter::into_big)
    } else if n <= 34 {
        sparse_dispatch::<u128>(p, pins, caps.ideal_budget).map(Counter::into_big)
    } else {
        sparse_dispatch::<BigUint>(p, pins, caps.ideal_budget)
    }
}

/// Number of linear extensions with every `(element, position)` pin honoured.
/// Out-of-range positions and conflicting pins yield 0.
pub fn count_pinned_with(p: &Poset, pins: &[(usize, usize)], caps: &Caps) -> Result<BigUint> {
    for &(u, _) in pins {
        p.check_label(u)?;
    }
    match Pins::new(p.len(), pins) {
        Some(pins) => run_dp(p, &pins, caps),
        None => Ok(BigUint::zero()),
    }
}

pub fn count_pinned(p: &Poset, pins: &[(usize, usize)]) -> Result<BigUint> {
    count_pinned_with(p, pins, &Caps::default())
}

/// `e(P)`
pub fn count(p: &Poset) -> Result<BigUint> {
    count_with(p, &Caps::default())
}

pub fn count_with(p: &Poset, caps: &Caps) -> Result<BigUint> {
    count_pinned_with(p, &[], caps)
}

/// The argument tuple of `N_{z,c}(P, x, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountInstance {
    pub poset: Poset,
    /// `(z_i, c_i)` sorted by increasing value.
    pub fixed: Vec<(usize, usize)>,
    pub x: usize,
    pub a: usize,
}

impl CountInstance {
    pub fn new(poset: Poset, mut fixed: Vec<(usize, usize)>, x: usize, a: usize) -> Result<Self> {
        let n = poset.len();
        poset.check_label(x)?;
        fixed.sort_by_key(|&(_, c)| c);
        for (i, &(z, c)) in fixed.iter().enumerate() {
            poset.check_label(z)?;
            if z == x {
                return Err(Error::precondition(format!("x = {x} is also a fixed element")));
            }
            if c == 0 || c > n {
                return Err(Error::precondition(format!("fixed value {c} outside [1, {n}]")));
            }
            if c == a {
                return Err(Error::precondition(format!("value {a} used by x and z = {z}")));
            }
            if fixed[..i].iter().any(|&(w, d)| w == z || d == c) {
                return Err(Error::precondition("fixed elements and values must be distinct"));
            }
        }
        if a == 0 || a > n {
            return Err(Error::precondition(format!("a = {a} outside [1, {n}]")));
        }
        Ok(CountInstance { poset, fixed, x, a })
    }

    pub fn k(&self) -> usize {
        self.fixed.len()
    }

    pub fn n(&self) -> usize {
        self.poset.len()
    }

    fn pins_with_x(&self, value: usize) -> Vec<(usize, usize)> {
        let mut pins = self.fixed.clone();
        pins.push((self.x, value));
        pins
    }

    /// `N_{z,c}(P, x, value)` for any integer value; 0 outside `[1, n]`.
    pub fn n_at(&self, value: i64) -> Result<BigUint> {
        self.n_at_with(value, &Caps::default())
    }

    pub fn n_at_with(&self, value: i64, caps: &Caps) -> Result<BigUint> {
        if value < 1 || value as usize > self.n() {
            return Ok(BigUint::zero());
        }
        count_pinned_with(&self.poset, &self.pins_with_x(value as usize), caps)
    }

    /// `(N(a−1), N(a), N(a+1))`
    pub fn neighbourhood(&self, caps: &Caps) -> Result<[BigUint; 3]> {
        let a = self.a as i64;
        Ok([
            self.n_at_with(a - 1, caps)?,
            self.n_at_with(a, caps)?,
            self.n_at_with(a + 1, caps)?,
        ])
    }

    /// Extra pins on top of the instance's own (x at `x_value`).
    pub fn pins_plus(&self, x_value: usize, extra: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut pins = self.pins_with_x(x_value);
        pins.extend_from_slice(extra);
        pins
    }
}

/// `N_{z,c}(P, x, a)`, or `N_{z,c}(P)` when `drop_x` is set.
pub fn count_fixed(inst: &CountInstance, drop_x: bool) -> Result<BigUint> {
    count_fixed_with(inst, drop_x, &Caps::default())
}

pub fn count_fixed_with(inst: &CountInstance, drop_x: bool, caps: &Caps) -> Result<BigUint> {
    if drop_x {
        count_pinned_with(&inst.poset, &inst.fixed, caps)
    } else {
        inst.n_at_with(inst.a as i64, caps)
    }
}

/// `ρ(P, x) = e(P) / e(P − x)`.
pub fn rho(p: &Poset, x: usize) -> Result<BigRational> {
    rho_with(p, x, &Caps::default())
}

pub fn rho_with(p: &Poset, x: usize, caps: &Caps) -> Result<BigRational> {
    p.check_label(x)?;
    let (sub, _) = p.delete(x)?;
    let num = count_with(p, caps)?;
    let den = count_with(&sub, caps)?;
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// `Φ = N(a)² − N(a+1)·N(a−1)`. A negative value would contradict the
/// Stanley inequality and is reported as an internal error.
pub fn stanley_defect(inst: &CountInstance) -> Result<BigUint> {
    stanley_defect_with(inst, &Caps::default())
}

pub fn stanley_defect_with(inst: &CountInstance, caps: &Caps) -> Result<BigUint> {
    let [lo, mid, hi] = inst.neighbourhood(caps)?;
    defect_from_counts(&lo, &mid, &hi)
}

pub(crate) fn defect_from_counts(lo: &BigUint, mid: &BigUint, hi: &BigUint) -> Result<BigUint> {
    let lhs = BigInt::from(mid * mid);
    let rhs = BigInt::from(hi * lo);
    let d = lhs - rhs;
    d.to_biguint().ok_or_else(|| {
        Error::InternalContradiction(format!(
            "negative Stanley defect: N = ({lo}, {mid}, {hi})"
        ))
    })
}

/// Sound necessary conditions for a pin set to admit a linear extension.
/// Returns `true` only when the count is certainly zero.
pub fn pins_obviously_vanish(p: &Poset, pins: &[(usize, usize)]) -> bool {
    let n = p.len();
    if pins.iter().any(|&(u, _)| u >= n) || Pins::new(n, pins).is_none() {
        return true;
    }
    for &(u, pu) in pins {
        // |{w ⪯ u}| ≤ pu and |{w ⪰ u}| ≤ n − pu + 1
        if p.below(u).len() + 1 > pu || p.above(u).len() + 1 > n + 1 - pu {
            return true;
        }
    }
    for &(u, pu) in pins {
        for &(v, pv) in pins {
            if pu >= pv || u == v {
                continue;
            }
            if p.lt(v, u) {
                return true;
            }
            if p.lt(u, v) {
                let mut between = p.above(u).clone();
                between.intersect_with(p.below(v));
                if between.len() > pv - pu - 1 {
                    return true;
                }
            }
        }
    }
    false
}

/// `N_{z,c}(P, x, a) = 0`? The interval filter may answer "vanishing"
/// directly; a "non-vanishing" answer always comes from the counting DP.
pub fn is_vanishing(inst: &CountInstance) -> Result<bool> {
    is_vanishing_pins(&inst.poset, &inst.pins_with_x(inst.a), &Caps::default())
}

pub fn is_vanishing_pins(p: &Poset, pins: &[(usize, usize)], caps: &Caps) -> Result<bool> {
    if pins_obviously_vanish(p, pins) {
        return Ok(true);
    }
    Ok(count_pinned_with(p, pins, caps)?.is_zero())
}

/// `N(P, x, a) = N(P, x, a+1)` under the same fixed elements.
pub fn flat_check(inst: &CountInstance) -> Result<bool> {
    flat_check_with(inst, &Caps::default())
}

pub fn flat_check_with(inst: &CountInstance, caps: &Caps) -> Result<bool> {
    let a = inst.a as i64;
    Ok(inst.n_at_with(a, caps)? == inst.n_at_with(a + 1, caps)?)
}

/// Companions of `x` in `f` around value `b`: the two elements other than
/// `x` at positions `b−1, b, b+1`, lower one first.
pub fn companions(f: &LinearExtension, x: usize, b: usize) -> Result<(usize, usize)> {
    let fx = f.position(x);
    if b < 2 || b + 1 > f.len() {
        return Err(Error::precondition(format!(
            "window {}..={} not inside [1, {}]",
            b as i64 - 1,
            b + 1,
            f.len()
        )));
    }
    if fx + 1 < b || fx > b + 1 {
        return Err(Error::precondition(format!("f(x) = {fx} not within 1 of {b}")));
    }
    let mut com = (b - 1..=b + 1).map(|p| f.element_at(p)).filter(|&u| u != x);
    let lc = com.next().unwrap();
    let uc = com.next().unwrap();
    Ok((lc, uc))
}
