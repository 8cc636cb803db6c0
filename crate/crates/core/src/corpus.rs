//! Seeded random generators for programs, machines and expressions.

use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::intexpr::IntExpr;
use crate::slp::{Alphabet, Nat, Slp, SlpBuilder, Sym};
use crate::udpda::{
    parse_unpda, Move, NormalBuilder, NormalUdpda, PopTable, PushSym, RawUnpda, Top, Transition,
    BOTTOM, BOTTOM_NAME,
};

/// Random program built from `rules` productions whose word has length at
/// most `max_len`; the longest production is the axiom.
pub fn random_slp<R: Rng>(rng: &mut R, alphabet: &Alphabet, rules: usize, max_len: usize) -> Slp {
    let letters: Vec<char> = alphabet.iter().collect();
    let mut b = SlpBuilder::new(alphabet.clone());
    let mut lens: Vec<usize> = Vec::new();
    for _ in 0..rules.max(1) {
        let arity = if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(1..=4)
        };
        let mut rhs = Vec::with_capacity(arity);
        let mut total = 0usize;
        for _ in 0..arity {
            let use_rule = !lens.is_empty() && rng.gen_bool(0.75);
            if use_rule {
                // Recent rules half of the time, so that lengths can grow geometrically.
                let j = if rng.gen_bool(0.7) {
                    lens.len() - 1 - rng.gen_range(0..lens.len().min(2))
                } else {
                    rng.gen_range(0..lens.len())
                };
                if total + lens[j] <= max_len {
                    rhs.push(Sym::N(j));
                    total += lens[j];
                    continue;
                }
            }
            if total < max_len && !letters.is_empty() {
                rhs.push(Sym::T(letters[rng.gen_range(0..letters.len())]));
                total += 1;
            }
        }
        let i = b.push(rhs);
        debug_assert_eq!(b.len(Sym::N(i)).to_usize(), Some(total));
        lens.push(total);
    }
    let root = (0..lens.len())
        .rev()
        .max_by_key(|&i| lens[i])
        .expect("one rule");
    b.finish(vec![Sym::N(root)])
}

fn machine(text: &str) -> RawUnpda {
    parse_unpda(text).expect("handcrafted machine parses")
}

/// One final reading state: accepts every word.
pub fn a_loop() -> RawUnpda {
    machine("states: p\nstack: _\ninitial: p\nfinal: p\np a * -> p *\n")
}

/// Accepts the words of even length.
pub fn a_even() -> RawUnpda {
    machine("states: p q\nstack: _\ninitial: p\nfinal: p\np a * -> q *\nq a * -> p *\n")
}

/// No final states.
pub fn dead_machine() -> RawUnpda {
    machine("states: p\nstack: _\ninitial: p\nfinal:\np a * -> p *\n")
}

/// Reads one letter, then cycles forever through a final state without reading.
pub fn eps_final_loop() -> RawUnpda {
    machine(
        "states: p q r\nstack: _\ninitial: p\nfinal: r\n\
         p a * -> q *\nq - * -> r *\nr - * -> q *\n",
    )
}

/// Pushes forever without reading.
pub fn push_loop() -> RawUnpda {
    machine("states: p\nstack: _ X\ninitial: p\nfinal:\np - * -> p X *\n")
}

/// Accepting at the start, then pushes forever through a final state.
pub fn final_push_loop() -> RawUnpda {
    machine("states: p q\nstack: _ X\ninitial: p\nfinal: q\np a * -> q *\nq - * -> q X *\n")
}

/// The handcrafted machines with labels.
pub fn handcrafted() -> Vec<(&'static str, RawUnpda)> {
    vec![
        ("a_loop", a_loop()),
        ("a_even", a_even()),
        ("dead", dead_machine()),
        ("eps_final_loop", eps_final_loop()),
        ("push_loop", push_loop()),
        ("final_push_loop", final_push_loop()),
        ("mod_counter_3", mod_counter(3)),
    ]
}

/// Pushes one symbol per letter until `k` are on the stack, pops them while
/// reading, and accepts exactly when the stack is empty again.
pub fn mod_counter(k: usize) -> RawUnpda {
    let mut text = String::from("stack: _ X\ninitial: u0\nfinal: u0\n");
    let mut states = Vec::new();
    for i in 0..k {
        states.push(format!("u{i}"));
        states.push(format!("d{i}"));
    }
    text.insert_str(0, &format!("states: {}\n", states.join(" ")));
    for i in 0..k {
        let next = if i + 1 == k {
            "d0".to_string()
        } else {
            format!("u{}", i + 1)
        };
        text.push_str(&format!("u{i} a * -> {next} X *\n"));
        let after = if i + 1 == k {
            "u0".to_string()
        } else {
            format!("d{}", i + 1)
        };
        text.push_str(&format!("d{i} a X -> {after} -\n"));
    }
    machine(&text)
}

/// Random normal-form machine with `2..=max_states` states and
/// `1..=max_stack` stack symbols including the bottom.
pub fn random_normal<R: Rng>(rng: &mut R, max_states: usize, max_stack: usize) -> NormalUdpda {
    let n = rng.gen_range(2..=max_states.max(2));
    let g = rng.gen_range(1..=max_stack.max(1));
    let mut stack = vec![BOTTOM_NAME.to_string()];
    stack.extend((1..g).map(|i| format!("G{i}")));
    let mut b = NormalBuilder::new(stack);
    for q in 0..n {
        let mv = match rng.gen_range(0..10) {
            0..=3 => Move::Internal(rng.gen_range(0..n)),
            4..=6 if g > 1 => Move::Push(rng.gen_range(0..n), rng.gen_range(1..g)),
            _ => {
                let table = (0..g).map(|s| (s, rng.gen_range(0..n))).collect();
                Move::Pop(PopTable::new(table, rng.gen_range(0..n)))
            }
        };
        let reads = rng.gen_bool(0.45);
        let fin = rng.gen_bool(0.35);
        b.add(format!("q{q}"), fin, reads, mv);
    }
    b.finish(0)
}

/// Random deterministic raw automaton, possibly partial.
pub fn random_raw<R: Rng>(rng: &mut R, max_states: usize, max_stack: usize) -> RawUnpda {
    let n = rng.gen_range(1..=max_states.max(1));
    let g = rng.gen_range(1..=max_stack.max(1));
    let states: Vec<String> = (0..n).map(|q| format!("q{q}")).collect();
    let mut stack = vec![BOTTOM_NAME.to_string()];
    stack.extend((1..g).map(|i| format!("G{i}")));
    let finals = (0..n).map(|_| rng.gen_bool(0.35)).collect();
    let mut ts = Vec::new();
    let proper = |rng: &mut R| PushSym::Sym(rng.gen_range(1..g));
    for q in 0..n {
        let wildcard = rng.gen_bool(0.3);
        let tops: Vec<Top> = if wildcard {
            let mut v: Vec<Top> = (0..g).filter(|_| rng.gen_bool(0.3)).map(Top::Sym).collect();
            v.push(Top::Any);
            v
        } else {
            (0..g).filter(|_| rng.gen_bool(0.9)).map(Top::Sym).collect()
        };
        for top in tops {
            let len = rng.gen_range(0..=2usize);
            let mut push = Vec::new();
            match top {
                Top::Sym(BOTTOM) => {
                    if len > 0 {
                        if len == 2 && g > 1 {
                            push.push(proper(rng));
                        }
                        push.push(PushSym::Sym(BOTTOM));
                    }
                }
                Top::Sym(_) => {
                    for _ in 0..len {
                        if g > 1 {
                            push.push(proper(rng));
                        }
                    }
                }
                Top::Any => {
                    if len > 0 {
                        if len == 2 && g > 1 {
                            push.push(proper(rng));
                        }
                        push.push(PushSym::Matched);
                    }
                }
            }
            ts.push(Transition {
                from: q,
                reads: rng.gen_bool(0.5),
                top,
                to: rng.gen_range(0..n),
                push,
            });
        }
    }
    RawUnpda::new(states, stack, 0, finals, ts).expect("generated machine is well formed")
}

/// Two programs generating words of the same length: unrelated words cut
/// to a common length, point mutations, or a letter-wise relabelling.
pub fn random_equal_length_pair<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
) -> (Slp, Slp) {
    let letters: Vec<char> = alphabet.iter().collect();
    let rules = rng.gen_range(4..28);
    let p1 = random_slp(rng, alphabet, rules, max_len);
    let n = p1.length().clone();
    let mode = if n.is_zero() { 0 } else { rng.gen_range(0..3) };
    let p2 = match mode {
        0 => {
            let q = random_slp(rng, alphabet, rules, max_len);
            let m = n.clone().min(q.length().clone());
            let p1 = p1.slice(&Nat::zero(), &m).expect("in range");
            let q = q.slice(&Nat::zero(), &m).expect("in range");
            return (p1, q);
        }
        1 => {
            let mut p = p1.clone();
            for _ in 0..rng.gen_range(1..4) {
                let i = Nat::from(rng.gen_range(0..n.to_u64().expect("small")));
                let c = letters[rng.gen_range(0..letters.len())];
                let j = &i + 1u32;
                let head = p.slice(&Nat::zero(), &i).expect("in range");
                let tail = p.slice(&j, &n).expect("in range");
                let mid = Slp::literal(alphabet, &c.to_string()).expect("letter");
                p = Slp::concat_all(alphabet, &[&head, &mid, &tail]).expect("same alphabet");
            }
            p
        }
        _ => {
            let h = letters
                .iter()
                .map(|&c| (c, letters[rng.gen_range(0..letters.len())].to_string()))
                .collect();
            p1.substitute(&h, alphabet).expect("total map")
        }
    };
    (p1, p2)
}

/// Random expression of depth at most `depth` with constants at most `max_const`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize, max_const: u32) -> IntExpr {
    if depth == 0 || rng.gen_bool(0.25) {
        return IntExpr::constant(rng.gen_range(0..=max_const));
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => IntExpr::sum(
            random_expr(rng, d, max_const),
            random_expr(rng, d, max_const),
        ),
        1 => IntExpr::union(
            random_expr(rng, d, max_const),
            random_expr(rng, d, max_const),
        ),
        2 => IntExpr::double(random_expr(rng, d, max_const)),
        _ => IntExpr::star(random_expr(rng, d, max_const)),
    }
}
