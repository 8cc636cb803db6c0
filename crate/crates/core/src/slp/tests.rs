use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::corpus::random_slp;

fn nat(n: u64) -> Nat {
    Nat::from(n)
}

fn bin() -> Alphabet {
    Alphabet::binary()
}

fn p0() -> Slp {
    parse_slp("alphabet: 01\nS -> X Y\nX -> Z O\nY -> O Z\nZ -> 0\nO -> 1\n").unwrap()
}

fn word(p: &Slp) -> String {
    p.expand(1 << 20).unwrap()
}

fn lit(w: &str) -> Slp {
    Slp::literal(&Alphabet::new(w.chars().chain("01".chars())), w).unwrap()
}

fn doubling(n: usize, leaf: char) -> Slp {
    let mut text = String::from("alphabet: 01\n");
    for i in 0..n {
        text.push_str(&format!("A{i} -> A{} A{}\n", i + 1, i + 1));
    }
    text.push_str(&format!("A{n} -> {leaf}\n"));
    parse_slp(&text).unwrap()
}

#[test]
fn validate_examples() {
    let ok = parse_draft("alphabet: 01\nS -> A B\nA -> 0\nB -> 1\n").unwrap();
    assert_eq!(validate(&ok), Ok(()));
    let cyc = parse_draft("alphabet: 01\nS -> S\n").unwrap();
    assert_eq!(validate(&cyc), Err(Diagnostic::Cycle("S".into())));
    let missing = parse_draft("alphabet: 01\nS -> A X\nA -> 0\n").unwrap();
    assert_eq!(
        validate(&missing),
        Err(Diagnostic::MissingProduction("X".into()))
    );
    let dup = parse_draft("alphabet: 01\nS -> A\nA -> 0\nA -> 1\n").unwrap();
    assert_eq!(
        validate(&dup),
        Err(Diagnostic::DuplicateProduction("A".into()))
    );
    let longer = parse_draft("alphabet: 01\nS -> A\nA -> B\nB -> S\n").unwrap();
    assert!(matches!(validate(&longer), Err(Diagnostic::Cycle(_))));
}

#[test]
fn expand_and_length() {
    let p = parse_slp("alphabet: 01\nS -> A B\nA -> 0\nB -> 1\n").unwrap();
    assert_eq!(p.expand(10).unwrap(), "01");
    assert_eq!(p.length(), &nat(2));
    let q = parse_slp("alphabet: 01\nS -> A A\nA -> B B\nB -> 1\n").unwrap();
    assert_eq!(q.expand(10).unwrap(), "1111");
    let d40 = doubling(40, '1');
    assert_eq!(
        d40.expand(1_000_000),
        Err(SlpError::CapExceeded {
            length: nat(1 << 40)
        })
    );
    assert_eq!(doubling(60, '1').length(), &nat(1 << 60));
    let e = parse_slp("alphabet: 01\nS -> eps\n").unwrap();
    assert_eq!(e.length(), &nat(0));
    assert_eq!(e.expand(0).unwrap(), "");
}

#[test]
fn query_examples() {
    let p = p0();
    assert_eq!(word(&p), "0110");
    assert_eq!(p.query(&nat(2)).unwrap(), '1');
    assert_eq!(p.query(&nat(0)).unwrap(), '0');
    assert!(matches!(
        p.query(&nat(4)),
        Err(SlpError::IndexOutOfRange { .. })
    ));
    let d = doubling(50, '1');
    assert_eq!(d.query(&(nat(1 << 50) - 1u32)).unwrap(), '1');
}

#[test]
fn cnf_examples() {
    let p = parse_slp("alphabet: 01\nS -> 0 1 0\n").unwrap();
    let cnf = p.to_cnf().unwrap();
    assert!(cnf.is_cnf());
    assert_eq!(word(&cnf), "010");
    assert_eq!(p.size(), 4);

    let already = p0();
    assert!(already.is_cnf());
    assert_eq!(word(&already.to_cnf().unwrap()), "0110");
    assert_eq!(already.size(), already.num_rules());

    let e = parse_slp("alphabet: 01\nS -> eps\n").unwrap();
    assert_eq!(e.size(), 0);
    assert_eq!(e.to_cnf(), Err(SlpError::EmptyWord));

    // chains and empty nonterminals disappear
    let q = parse_slp("alphabet: 01\nS -> E A E\nA -> B\nB -> 1 E 0\nE -> eps\n").unwrap();
    let cnf = q.to_cnf().unwrap();
    assert!(cnf.is_cnf());
    assert_eq!(word(&cnf), "10");
}

#[test]
fn concat_examples() {
    assert_eq!(word(&lit("01").concat(&lit("10")).unwrap()), "0110");
    let x = Slp::literal(&bin(), "1").unwrap();
    assert_eq!(word(&x.concat(&Slp::empty(&bin())).unwrap()), "1");
    assert_eq!(word(&p0().concat(&p0()).unwrap()), "01100110");
    let other = Slp::literal(&Alphabet::new(['a']), "a").unwrap();
    assert!(matches!(
        x.concat(&other),
        Err(SlpError::AlphabetMismatch(..))
    ));
}

#[test]
fn slice_examples() {
    let p = p0();
    assert_eq!(word(&p.slice(&nat(1), &nat(3)).unwrap()), "11");
    assert_eq!(word(&p.slice(&nat(2), &nat(2)).unwrap()), "");
    assert_eq!(word(&p.slice(&nat(0), &nat(4)).unwrap()), "0110");
    assert!(matches!(
        p.slice(&nat(3), &nat(2)),
        Err(SlpError::BadRange { .. })
    ));
    assert!(matches!(
        p.slice(&nat(0), &nat(5)),
        Err(SlpError::BadRange { .. })
    ));
}

#[test]
fn power_examples() {
    let x = lit("01");
    assert_eq!(word(&x.power(&nat(5), &nat(2)).unwrap()), "01010");
    assert_eq!(word(&x.power(&nat(0), &nat(1)).unwrap()), "");
    assert_eq!(word(&p0().power(&nat(3), &nat(1)).unwrap()), "011001100110");
    assert!(matches!(
        p0().power(&nat(1), &nat(3)),
        Err(SlpError::NonIntegralResult { .. })
    ));
    assert_eq!(
        Slp::empty(&bin()).power(&nat(2), &nat(1)),
        Err(SlpError::EmptyBase)
    );
    let big = x.power_int(&nat(1 << 45)).unwrap();
    assert_eq!(big.length(), &nat(1 << 46));
    assert!(big.num_rules() < 200);
}

#[test]
fn shift_examples() {
    let p = p0();
    assert_eq!(word(&p.cyclic_shift(&nat(1)).unwrap()), "1100");
    assert_eq!(word(&p.cyclic_shift(&nat(0)).unwrap()), "0110");
    let back = p
        .cyclic_shift(&nat(3))
        .unwrap()
        .cyclic_shift(&nat(1))
        .unwrap();
    assert_eq!(word(&back), "0110");
    assert!(matches!(
        p.cyclic_shift(&nat(4)),
        Err(SlpError::BadShift { .. })
    ));
}

#[test]
fn substitute_examples() {
    let mut h = BTreeMap::new();
    h.insert('0', "a".to_string());
    h.insert('1', "af".to_string());
    let p = lit("01").with_alphabet(&bin()).unwrap();
    let out = p.substitute(&h, &Alphabet::new(['a', 'f'])).unwrap();
    assert_eq!(word(&out), "aaf");

    let id: BTreeMap<char, String> = [('0', "0".into()), ('1', "1".into())].into();
    assert_eq!(word(&p0().substitute(&id, &bin()).unwrap()), "0110");

    let erase: BTreeMap<char, String> = [('0', "0".into()), ('1', String::new())].into();
    assert_eq!(word(&p0().substitute(&erase, &bin()).unwrap()), "00");

    let partial: BTreeMap<char, String> = [('0', "0".into())].into();
    assert_eq!(
        p0().substitute(&partial, &bin()),
        Err(SlpError::UnmappedSymbol('1'))
    );
}

#[test]
fn trim_examples() {
    let p = p0();
    assert_eq!(word(&p.trim(End::Back, '0').unwrap()), "011");
    assert!(matches!(
        p.trim(End::Front, '1'),
        Err(SlpError::SymbolMismatch { found: '0', .. })
    ));
    let af = Alphabet::new(['a', 'f']);
    let fafa = Slp::literal(&af, "fafa").unwrap();
    assert_eq!(word(&fafa.trim(End::Front, 'f').unwrap()), "afa");
    assert_eq!(
        Slp::empty(&af).trim(End::Front, 'f'),
        Err(SlpError::EmptyWord)
    );
    assert_eq!(p.first_symbol(), Some('0'));
    assert_eq!(p.last_symbol(), Some('0'));
}

#[test]
fn equal_examples() {
    let opts = EqualityOptions::default();
    let other = parse_slp("alphabet: 01\nS -> 0 T\nT -> 1 1 0\n").unwrap();
    assert!(p0().equal(&other, &opts).unwrap());
    assert!(!p0()
        .equal(&lit("0101").with_alphabet(&bin()).unwrap(), &opts)
        .unwrap());
    let x = lit("01");
    let eight = x.power_int(&nat(8)).unwrap();
    let three = Slp::concat_all(&bin(), &[&x, &x, &x]).unwrap();
    assert_eq!(eight.length(), &nat(16));
    assert!(!eight.equal(&three, &opts).unwrap());

    // fingerprint branch on long words
    let a = lit("01").power_int(&nat(1 << 40)).unwrap();
    let b = lit("0101").power_int(&nat(1 << 39)).unwrap();
    assert!(a.equal(&b, &opts).unwrap());
    let c = lit("10").power_int(&nat(1 << 40)).unwrap();
    assert!(!a.equal(&c, &opts).unwrap());
}

#[test]
fn text_round_trip() {
    let p = p0().concat(&p0()).unwrap().cyclic_shift(&nat(3)).unwrap();
    let again = parse_slp(&p.to_string()).unwrap();
    assert_eq!(word(&again), word(&p));
    let with_comments = "# header\nalphabet: ab?\nS -> a ? X # tail\nX -> b\n";
    assert_eq!(word(&parse_slp(with_comments).unwrap()), "a?b");
}

#[test]
fn miller_rabin() {
    let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
    assert_eq!(
        small,
        vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    );
    assert!(is_prime_u64(2305843009213693951)); // 2^61 - 1
    assert!(!is_prime_u64(2305843009213693953));
}

fn random_case(seed: u64) -> (Slp, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::new("ab?".chars().take(rng.gen_range(1..=3)));
    let rules = rng.gen_range(1..12);
    let p = random_slp(&mut rng, &alphabet, rules, 400);
    let w = word(&p);
    (p, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn slice_query_shift_agree_with_expansion(seed in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 6)) {
        let (p, w) = random_case(seed);
        let chars: Vec<char> = w.chars().collect();
        let n = chars.len() as u64;
        let a = if n == 0 { 0 } else { picks[0] % (n + 1) };
        let b = a + if n == a { 0 } else { picks[1] % (n - a + 1) };
        let s = p.slice(&nat(a), &nat(b)).unwrap();
        prop_assert_eq!(word(&s), chars[a as usize..b as usize].iter().collect::<String>());
        prop_assert_eq!(s.length().to_u64().unwrap(), b - a);
        if n > 0 {
            let i = picks[2] % n;
            prop_assert_eq!(p.query(&nat(i)).unwrap(), chars[i as usize]);
            let sh = picks[3] % n;
            let rotated: String = chars[sh as usize..].iter().chain(&chars[..sh as usize]).collect();
            prop_assert_eq!(word(&p.cyclic_shift(&nat(sh)).unwrap()), rotated);
            let k = picks[4] % 5;
            prop_assert_eq!(word(&p.power_int(&nat(k)).unwrap()), w.repeat(k as usize));
            let cnf = p.to_cnf().unwrap();
            prop_assert!(cnf.is_cnf());
            prop_assert_eq!(word(&cnf), w.clone());
        }
    }

    #[test]
    fn concat_size_and_equality(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, w) = random_case(s1);
        let (q, v) = random_case(s2);
        let alpha = p.alphabet().union(q.alphabet());
        let p = p.with_alphabet(&alpha).unwrap();
        let q = q.with_alphabet(&alpha).unwrap();
        let pq = p.concat(&q).unwrap();
        prop_assert_eq!(word(&pq), format!("{w}{v}"));
        prop_assert!(pq.size() <= p.size() + q.size() + 4);
        let opts = EqualityOptions { exact_threshold: 0, ..Default::default() };
        prop_assert_eq!(p.equal(&q, &opts).unwrap(), w == v);
        prop_assert!(p.equal(&p.to_cnf().unwrap_or_else(|_| p.clone()), &opts).unwrap());
    }
}
