//! Every emitted file re-parses to an equal value.

use pda_press::corpus;
use pda_press::intexpr::{expr_to_cfg, parse_cfg, parse_expr};
use pda_press::slp::{parse_slp, Alphabet};
use pda_press::translate::{
    indicator_to_udpda, parse_pair, slp_to_udpda, udpda_to_indicator, udpda_to_transcript, AnyPair,
    GadgetOptions,
};
use pda_press::udpda::{parse_unpda, run_prefix, write_unpda};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn slp_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ab = Alphabet::new(['a', 'b', 'c']);
    for _ in 0..200 {
        let p = corpus::random_slp(&mut rng, &ab, 12, 500);
        let q = parse_slp(&p.to_string()).unwrap();
        assert_eq!(q.expand(1 << 16).unwrap(), p.expand(1 << 16).unwrap());
        assert_eq!(q.to_string(), p.to_string());
    }
}

#[test]
fn machine_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let m = corpus::random_raw(&mut rng, 10, 4);
        let back = parse_unpda(&write_unpda(&m)).unwrap();
        assert_eq!(write_unpda(&back), write_unpda(&m));
        let (a, b) = (m.normalize().unwrap(), back.normalize().unwrap());
        assert_eq!(run_prefix(&a, 200, 1 << 20), run_prefix(&b, 200, 1 << 20));
    }
}

#[test]
fn normal_machine_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let m = corpus::random_normal(&mut rng, 10, 4);
        let back = parse_unpda(&write_unpda(&m.to_raw()))
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(
            run_prefix(&m, 300, 1 << 20),
            run_prefix(&back, 300, 1 << 20)
        );
    }
}

#[test]
fn pair_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let m = corpus::random_normal(&mut rng, 10, 3);
        let ip = udpda_to_indicator(&m).unwrap();
        assert_eq!(
            parse_pair(&ip.to_string()).unwrap(),
            AnyPair::Indicator(ip.clone())
        );
        let tp = udpda_to_transcript(&m).unwrap();
        assert_eq!(
            parse_pair(&tp.to_string()).unwrap(),
            AnyPair::Transcript(tp)
        );
        let g = indicator_to_udpda(&ip, GadgetOptions::default()).unwrap();
        let back = parse_unpda(&write_unpda(&g.to_raw()))
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(
            run_prefix(&g, 200, 1 << 20).bits,
            run_prefix(&back, 200, 1 << 20).bits
        );
    }
}

#[test]
fn slp_machine_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let p = corpus::random_slp(&mut rng, &Alphabet::binary(), 8, 300);
        if p.is_empty() {
            continue;
        }
        let m = slp_to_udpda(&p).unwrap();
        let back = parse_unpda(&write_unpda(&m.to_raw()))
            .unwrap()
            .normalize()
            .unwrap();
        let n = p.length().to_string().parse::<u64>().unwrap() + 5;
        assert_eq!(
            run_prefix(&m, n, 1 << 20).bits,
            run_prefix(&back, n, 1 << 20).bits
        );
    }
}

#[test]
fn expr_and_grammar_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let e = corpus::random_expr(&mut rng, 5, 20);
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        let g = expr_to_cfg(&e);
        assert_eq!(parse_cfg(&g.to_string()).unwrap(), g);
    }
}
