use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::corpus;

fn lit(a: &Alphabet, s: &str) -> Slp {
    Slp::literal(a, s).unwrap()
}

fn bits() -> Alphabet {
    Alphabet::binary()
}

fn oracle(p1: &Slp, p2: &Slp, rel: &Relation) -> Verdict {
    let w1 = p1.expand(1 << 20).unwrap();
    let w2 = p2.expand(1 << 20).unwrap();
    match naive_compare(&w1, &w2, rel) {
        Some(i) => Verdict::Fails(Nat::from(i)),
        None => Verdict::Holds,
    }
}

#[test]
fn examples() {
    let r = Relation::bit_order();
    let b = bits();
    assert_eq!(
        comp_slp(&lit(&b, "0101"), &lit(&b, "0111"), &r, 100),
        Ok(Verdict::Holds)
    );
    assert_eq!(
        comp_slp(&lit(&b, "0101"), &lit(&b, "0011"), &r, 100),
        Ok(Verdict::Fails(Nat::from(1u32)))
    );
    assert!(matches!(
        comp_slp(&lit(&b, "01"), &lit(&b, "011"), &r, 100),
        Err(CompareError::LengthMismatch { .. })
    ));
    let w = Alphabet::new(['a', 'b', '?']);
    assert_eq!(
        partial_word_match(&lit(&w, "a?"), &lit(&w, "ab"), 100),
        Ok(Verdict::Holds)
    );
    assert_eq!(
        partial_word_match(&lit(&w, "ab"), &lit(&w, "ba"), 100),
        Ok(Verdict::Fails(Nat::from(0u32)))
    );
}

#[test]
fn budget_is_enforced() {
    let b = bits();
    let zeros = Slp::repeat_symbol(&b, '0', &Nat::from(1000u32)).unwrap();
    // A flat literal shares no block with the doubling program.
    let other = lit(&b, &"0".repeat(1000));
    assert_eq!(
        comp_slp(&other, &zeros, &Relation::equality(b.clone()), 5),
        Ok(Verdict::BudgetExceeded)
    );
    assert_eq!(
        comp_slp(&other, &zeros, &Relation::equality(b), 5000),
        Ok(Verdict::Holds)
    );
}

#[test]
fn memo_skips_repeated_blocks() {
    let b = bits();
    let huge = Slp::repeat_symbol(&b, '0', &(Nat::from(1u32) << 80u32)).unwrap();
    assert_eq!(
        comp_slp(&huge, &huge, &Relation::bit_order(), 1000),
        Ok(Verdict::Holds)
    );
}

#[test]
fn partial_orders_are_validated() {
    let abc = Alphabet::new(['a', 'b', 'c']);
    assert!(PartialOrderSpec::new(abc.clone(), [('a', 'b'), ('b', 'c'), ('a', 'c')]).is_ok());
    assert!(matches!(
        PartialOrderSpec::new(abc.clone(), [('a', 'b'), ('b', 'c')]),
        Err(CompareError::NotAnOrder(_))
    ));
    assert!(matches!(
        PartialOrderSpec::new(abc.clone(), [('a', 'b'), ('b', 'a')]),
        Err(CompareError::NotAnOrder(_))
    ));
    assert!(PartialOrderSpec::try_from(Relation::wildcard()).is_err());
    assert_eq!(Relation::parse("0<=1").unwrap(), Relation::bit_order());
    assert_eq!(Relation::parse("wildcard").unwrap(), Relation::wildcard());
    assert!(Relation::parse("0<1").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_naive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alphabet, rel) = match rng.gen_range(0..3) {
            0 => (bits(), Relation::equality(bits())),
            1 => (bits(), Relation::bit_order()),
            _ => (Alphabet::new(['a', 'b', '?']), Relation::wildcard()),
        };
        let (p1, p2) = corpus::random_equal_length_pair(&mut rng, &alphabet, 10_000);
        prop_assert_eq!(comp_slp(&p1, &p2, &rel, u64::MAX).unwrap(), oracle(&p1, &p2, &rel));
    }

    #[test]
    fn reflexive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = corpus::random_slp(&mut rng, &bits(), 12, 5000);
        prop_assert_eq!(comp_slp(&p, &p, &Relation::bit_order(), u64::MAX).unwrap(), Verdict::Holds);
    }

    #[test]
    fn monotone_in_relation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2) = corpus::random_equal_length_pair(&mut rng, &bits(), 3000);
        let small = Relation::equality(bits());
        let big = Relation::bit_order();
        prop_assert!(small.is_subset(&big));
        if comp_slp(&p1, &p2, &small, u64::MAX).unwrap().holds() {
            prop_assert!(comp_slp(&p1, &p2, &big, u64::MAX).unwrap().holds());
        }
    }
}
