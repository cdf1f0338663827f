mod common;

use lext_core::cf::cf_value_u64;
use lext_core::corpus::seeded_poset;
use lext_core::decide::{evaluate_quad, hardness_witness, verrle_to_quad, VerInstance};
use lext_core::geometry::{order_polytope, ConstraintSystem};
use lext_core::{Error, Poset};
use num_bigint::BigInt;
use num_rational::BigRational;

use common as oracle;

#[test]
fn transcripts_replay_to_their_posets() {
    let p = seeded_poset(7, 5, 0.3, true);
    let x = p.minimals()[0];
    let truth = oracle::rho(&p, x);
    let inst = VerInstance::new(p.clone(), x, truth.numer().try_into().unwrap(), truth.denom().try_into().unwrap()).unwrap();
    let w = hardness_witness(&inst, 3).unwrap();
    assert!(!w.constant);
    for entry in &w.transcript {
        let q = Poset::from_json(&entry.poset).unwrap();
        assert_eq!(q.len(), entry.size, "{}", entry.step);
        for &m in entry.marks.values() {
            assert!(m < q.len(), "{}", entry.step);
        }
    }
    let last = w.transcript.last().unwrap();
    assert_eq!(Poset::from_json(&last.poset).unwrap(), w.instance.poset);
}

#[test]
fn quad_parts_carry_the_intended_ratios() {
    let p = Poset::from_relations(4, &[(0, 2), (1, 3)]).unwrap();
    let truth = oracle::rho(&p, 0);
    for (a, b, want) in [(2u64, 1u64, truth == BigRational::from_integer(2.into())), (5, 3, false)] {
        let v = VerInstance::new(p.clone(), 0, a, b).unwrap();
        let q = verrle_to_quad(&v, 1).unwrap();
        assert_eq!(evaluate_quad(&q.quad).unwrap(), want);
        let [_, (p2, x2), (p3, x3), (p4, x4)] = &q.quad.parts;
        let m = q.good_m.as_ref().map_or(1, |g| g.m);
        let r = |n: u64, d: u64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(oracle::rho(p2, *x2), r(q.b_prime, m));
        assert_eq!(oracle::rho(p3, *x3), cf_value_u64(&[q.k]).unwrap());
        assert_eq!(oracle::rho(p4, *x4), r(q.a_prime, m));
    }
}

#[test]
fn degenerate_targets_are_reported() {
    let p = Poset::antichain(3);
    let v = VerInstance::new(p, 0, 4, 1).unwrap();
    assert!(matches!(verrle_to_quad(&v, 0), Err(Error::DegenerateRatio(_))));
    let w = hardness_witness(&v, 0).unwrap();
    assert!(w.constant);
    assert_eq!(w.instance.k(), 2);
}

#[test]
fn json_round_trips() {
    let p = seeded_poset(19, 8, 0.4, true);
    let text = serde_json::to_string(&p.to_json()).unwrap();
    assert_eq!(Poset::parse_json(&text).unwrap(), p);
    let sys = order_polytope(&p);
    let back: ConstraintSystem = serde_json::from_str(&serde_json::to_string(&sys).unwrap()).unwrap();
    assert_eq!(back, sys);
}
