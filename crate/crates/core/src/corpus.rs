//! Poset and instance generators for exhaustive and randomized suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linext::{enumerate, CountInstance};
use crate::poset::Poset;

/// Random poset on `n` elements: each pair `i < j` becomes a relation
/// `i ≺ j` with probability `density`, then the closure is taken. Labels are
/// therefore natural; density 1 gives a chain and density 0 an antichain.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let density = density.clamp(0.0, 1.0);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relations(n, &pairs).expect("label-increasing pairs are acyclic")
}

/// Like [`random_poset`] but with labels shuffled.
pub fn random_labeled_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let p = random_poset(rng, n, density);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    p.relabel(&perm).expect("shuffle is a permutation")
}

/// [`random_poset`] (or the shuffled variant) from a ChaCha generator seeded
/// with `seed`; identical seeds give identical posets.
pub fn seeded_poset(seed: u64, n: usize, density: f64, shuffle: bool) -> Poset {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    if shuffle {
        random_labeled_poset(&mut rng, n, density)
    } else {
        random_poset(&mut rng, n, density)
    }
}

/// Up-closed and down-closed subsets used when adjoining a new element.
fn extensions_by_one(p: &Poset, natural: bool) -> Vec<Poset> {
    let n = p.len();
    let is_down = |s: u32| (0..n).all(|u| s >> u & 1 == 0 || p.below(u).iter().all(|w| s >> w & 1 == 1));
    let is_up = |s: u32| (0..n).all(|u| s >> u & 1 == 0 || p.above(u).iter().all(|w| s >> w & 1 == 1));
    let downs: Vec<u32> = (0u32..1 << n).filter(|&s| is_down(s)).collect();
    let ups: Vec<u32> = if natural {
        vec![0]
    } else {
        (0u32..1 << n).filter(|&s| is_up(s)).collect()
    };
    let mut out = Vec::new();
    for &d in &downs {
        for &u in &ups {
            if d & u != 0 {
                continue;
            }
            // every d ≺ new ≺ u forces d ≺ u
            let ok = (0..n).all(|a| {
                d >> a & 1 == 0 || (0..n).all(|b| u >> b & 1 == 0 || p.lt(a, b))
            });
            if !ok {
                continue;
            }
            let q = Poset::from_closed_fn(n + 1, |a, b| match (a == n, b == n) {
                (false, false) => p.lt(a, b),
                (true, false) => u >> b & 1 == 1,
                (false, true) => d >> a & 1 == 1,
                (true, true) => false,
            });
            out.push(q);
        }
    }
    out
}

/// Every labeled poset on exactly `n` elements (`n ≤ 6`).
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 6, "labeled corpus is limited to n ≤ 6");
    let mut level = vec![Poset::empty()];
    for _ in 0..n {
        level = level.iter().flat_map(|p| extensions_by_one(p, false)).collect();
    }
    level
}

/// Relation code of `p` relabeled so that `order[i]` becomes `i`.
fn code_under(p: &Poset, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if p.lt(order[i], order[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// One representative per isomorphism class of posets on `n ≤ 7` elements,
/// naturally labeled.
pub fn poset_classes(n: usize) -> Vec<Poset> {
    assert!(n <= 7, "isomorphism-class corpus is limited to n ≤ 7");
    let mut level = vec![Poset::empty()];
    for _ in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in level.iter().flat_map(|p| extensions_by_one(p, true)) {
            // minimum code over natural relabelings is an isomorphism invariant
            let code = enumerate(&p)
                .expect("n within enumeration cap")
                .map(|f| code_under(&p, f.order()))
                .min()
                .unwrap_or(0);
            if seen.insert(code) {
                next.push(p);
            }
        }
        level = next;
    }
    level
}

/// Every `(z, c, x, a)` instance on `p` with exactly `k ≤ 2` fixed elements,
/// `z` and `c` listed in increasing value order.
pub fn all_instances(p: &Poset, k: usize) -> Vec<CountInstance> {
    let n = p.len();
    let mut out = Vec::new();
    let mut push = |fixed: Vec<(usize, usize)>, x: usize, a: usize| {
        if let Ok(i) = CountInstance::new(p.clone(), fixed, x, a) {
            out.push(i);
        }
    };
    for x in 0..n {
        for a in 1..=n {
            match k {
                0 => push(vec![], x, a),
                1 => {
                    for z in (0..n).filter(|&z| z != x) {
                        for c in (1..=n).filter(|&c| c != a) {
                            push(vec![(z, c)], x, a);
                        }
                    }
                }
                2 => {
                    for z1 in (0..n).filter(|&z| z != x) {
                        for z2 in (0..n).filter(|&z| z != x && z != z1) {
                            for c1 in 1..=n {
                                for c2 in c1 + 1..=n {
                                    if c1 != a && c2 != a {
                                        push(vec![(z1, c1), (z2, c2)], x, a);
                                    }
                                }
                            }
                        }
                    }
                }
                _ => panic!("all_instances supports k ≤ 2"),
            }
        }
    }
    out
}

/// Uniformly chosen valid instance with `k < n` fixed elements on `p`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, p: &Poset, k: usize) -> CountInstance {
    let n = p.len();
    assert!(k < n, "need room for x");
    let mut elems: Vec<usize> = (0..n).collect();
    elems.shuffle(rng);
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    let fixed = (0..k).map(|i| (elems[i + 1], values[i + 1])).collect();
    CountInstance::new(p.clone(), fixed, elems[0], values[0]).expect("distinct by construction")
}
