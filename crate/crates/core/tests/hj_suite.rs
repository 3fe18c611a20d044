use std::time::Instant;

use fano_quotients::hj::{
    chain_matrix, discrepancies, hj_expand, k2_correction, mod_inverse, CyclicSing,
};
use fano_quotients::scalar::{frac, rat};
use fano_quotients::Rat;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Right fold of b₁ − 1/(b₂ − 1/(…)).
fn fold(b: &[u64]) -> Rat {
    let mut acc: Option<Rat> = None;
    for &x in b.iter().rev() {
        acc = Some(match acc {
            None => rat(x as i64),
            Some(a) => rat(x as i64) - a.recip(),
        });
    }
    acc.unwrap()
}

fn valid_pairs(max_n: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=max_n).flat_map(|n| (1..n).filter(move |q| q.gcd(&n) == 1).map(move |q| (n, q)))
}

#[test]
fn continued_fraction_round_trip_up_to_200() {
    let start = Instant::now();
    for (n, q) in valid_pairs(200) {
        let s = CyclicSing::new(n, q).unwrap();
        let b = hj_expand(&s);
        assert_eq!(fold(&b), frac(s.n() as i64, s.q() as i64), "A_{{{n},{q}}}");
        assert!(b.iter().all(|&x| x >= 2));
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn stored_q_is_the_smaller_of_q_and_its_inverse() {
    for (n, q) in valid_pairs(60) {
        let s = CyclicSing::new(n, q).unwrap();
        let qi = mod_inverse(q, n).unwrap();
        assert_eq!(s.q(), q.min(qi));
        assert_eq!((q * qi) % n, 1 % n);
    }
}

#[test]
fn discrepancies_solve_adjunction_system() {
    for (n, q) in valid_pairs(200) {
        let s = CyclicSing::new(n, q).unwrap();
        let chain = s.chain();
        let (b, a) = (&chain.selfints, &chain.discrepancies);
        for i in 0..b.len() {
            let mut lhs = -rat(b[i] as i64) * &a[i];
            if i > 0 {
                lhs += &a[i - 1];
            }
            if i + 1 < b.len() {
                lhs += &a[i + 1];
            }
            assert_eq!(lhs, rat(2 - b[i] as i64), "A_{{{n},{q}}} row {i}");
        }
        for a in &chain.discrepancies {
            assert!(
                !a.is_negative() && *a < Rat::one(),
                "A_{{{n},{q}}} discrepancy {a}"
            );
        }
    }
}

#[test]
fn du_val_chains_have_no_correction() {
    for n in 2..=200u64 {
        let s = CyclicSing::new(n, n - 1).unwrap();
        assert!(s.is_du_val());
        let chain = s.chain();
        assert_eq!(chain.len() as u64, n - 1);
        assert!(chain.selfints.iter().all(|&b| b == 2));
        assert!(chain.discrepancies.iter().all(Zero::is_zero));
        assert!(k2_correction(&s).is_zero());
    }
}

#[test]
fn chains_named_in_the_catalog() {
    let check = |n, q, b: &[u64], a: &[Rat], corr: Rat| {
        let s = CyclicSing::new(n, q).unwrap();
        let chain = s.chain();
        let mut rev = b.to_vec();
        rev.reverse();
        let mut arev = a.to_vec();
        arev.reverse();
        assert!(
            (chain.selfints == b && chain.discrepancies == a)
                || (chain.selfints == rev && chain.discrepancies == arev),
            "A_{{{n},{q}}}: {:?}",
            chain
        );
        assert_eq!(k2_correction(&s), corr);
    };
    check(2, 1, &[2], &[rat(0)], rat(0));
    check(3, 2, &[2, 2], &[rat(0), rat(0)], rat(0));
    check(4, 3, &[2, 2, 2], &[rat(0), rat(0), rat(0)], rat(0));
    // A_{3,1}: one (−3)-curve, K_Z = g*K_Y − (1/3)E.
    check(3, 1, &[3], &[frac(1, 3)], frac(-1, 3));
    let m = chain_matrix(&[3, 4]);
    assert_eq!(
        m.mul_vec(&[frac(6, 11), frac(7, 11)]).unwrap(),
        vec![rat(-1), rat(-2)]
    );
    // A_{11,3}: K_Z = g*K_Y − (6A + 7B)/11 with A² = −3, B² = −4.
    check(11, 3, &[3, 4], &[frac(6, 11), frac(7, 11)], frac(-20, 11));
    // A_{15,4}: 15/4 = 4 − 1/4, a = (2/5)(1, 1)... solved directly below.
    let s = CyclicSing::new(15, 4).unwrap();
    assert_eq!(s.chain().selfints, vec![4, 4]);
    assert_eq!(s.chain().discrepancies, vec![frac(2, 3), frac(2, 3)]);
    // (7,3): 7/3 = 3 − 1/(2 − 1/2).
    let s = CyclicSing::new(7, 3).unwrap();
    let b = s.chain().selfints;
    assert!(b == vec![3, 2, 2] || b == vec![2, 2, 3]);
    assert_eq!(discrepancies(&b).unwrap(), s.chain().discrepancies);
}

proptest! {
    #[test]
    fn correction_invariant_under_chain_reversal((n, q) in (2u64..=200).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |(n, q)| q.gcd(n) == 1)) {
        let s = CyclicSing::new(n, q).unwrap();
        let qi = mod_inverse(q, n).unwrap();
        let t = CyclicSing::new(n, qi).unwrap();
        prop_assert_eq!(k2_correction(&s), k2_correction(&t));
        let mut b = s.chain().selfints;
        let a = discrepancies(&b).unwrap();
        b.reverse();
        let mut ar = discrepancies(&b).unwrap();
        ar.reverse();
        prop_assert_eq!(a, ar);
        // The reversed chain expands n over the other of q, q⁻¹.
        prop_assert_eq!(fold(&b), frac(n as i64, q.max(qi) as i64));
    }

    #[test]
    fn correction_is_nonpositive((n, q) in (2u64..=200).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |(n, q)| q.gcd(n) == 1)) {
        let s = CyclicSing::new(n, q).unwrap();
        prop_assert!(!k2_correction(&s).is_positive());
    }
}
