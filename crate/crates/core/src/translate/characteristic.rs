//! From a transcript over `{a, f}` to the characteristic sequence.
//!
//! Bit `0` is set iff the transcript starts with `f`. For `i ≥ 1`, bit `i`
//! is set iff the `i`-th `a` is directly followed by `f`. So every `af` is
//! rewritten to `1`, then `a ↦ 0` and `f ↦ ε`.

use std::collections::BTreeMap;

use super::{bits_alphabet, IndicatorPair, TranscriptPair, TranslateError};
use crate::slp::{Alphabet, End, Slp, SlpBuilder, Sym};

fn marked_alphabet() -> Alphabet {
    Alphabet::new(['a', 'f', '1'])
}

// Imports `p` with every `af` replaced by `1`.
fn fuse(b: &mut SlpBuilder, p: &Slp) -> Result<Option<Sym>, TranslateError> {
    if p.is_empty() {
        return Ok(None);
    }
    let cnf = p.to_cnf()?;
    let n = cnf.num_rules();
    let mut img: Vec<Sym> = Vec::with_capacity(n);
    let mut first = Vec::with_capacity(n);
    let mut last = Vec::with_capacity(n);
    for i in 0..n {
        match *cnf.rule(i) {
            [Sym::T(c)] => {
                img.push(Sym::T(c));
                first.push(c);
                last.push(c);
            }
            [Sym::N(x), Sym::N(y)] => {
                let frag = if last[x] == 'a' && first[y] == 'f' {
                    let mut f: Vec<Sym> = b.trim(img[x], End::Back).into_iter().collect();
                    f.push(Sym::T('1'));
                    f.extend(b.trim(img[y], End::Front));
                    f
                } else {
                    vec![img[x], img[y]]
                };
                let s = b.seq(frag).expect("nonempty");
                img.push(s);
                first.push(first[x]);
                last.push(last[y]);
            }
            _ => unreachable!("normal form"),
        }
    }
    Ok(Some(img[cnf.axiom()]))
}

/// Indicator pair of the language whose transcript is `tp`.
pub fn transcript_to_characteristic(tp: &TranscriptPair) -> Result<IndicatorPair, TranslateError> {
    let events = super::events_alphabet();
    let mut prefix = tp.prefix().clone();
    let mut looped = tp.looped().clone();
    if !looped.contains_symbol('a') {
        // Only finals from here on: they all mark the current position.
        if looped.contains_symbol('f') {
            prefix = prefix.concat(&Slp::literal(&events, "f")?)?;
        }
        looped = Slp::literal(&events, "a")?;
    }
    let c0 = match prefix.first_symbol().or(looped.first_symbol()) {
        Some('f') => "1",
        _ => "0",
    };

    let mut b = SlpBuilder::new(marked_alphabet());
    let mut p = fuse(&mut b, &prefix)?;
    let mut l = fuse(&mut b, &looped)?.expect("nonempty loop");
    let l_first = looped.first_symbol().expect("nonempty loop");
    let l_last = looped.last_symbol().expect("nonempty loop");
    let p_last = prefix.last_symbol();
    if l_first == 'f' {
        if l_last == 'a' {
            // prefix·(f X a)^ω = prefix·f·(X a f)^ω
            let x = b.trim(l, End::Front).and_then(|s| b.trim(s, End::Back));
            let mut frag: Vec<Sym> = x.into_iter().collect();
            frag.push(Sym::T('1'));
            l = b.seq(frag).expect("nonempty");
            p = match p_last {
                Some('a') => {
                    let mut frag: Vec<Sym> = b
                        .trim(p.expect("nonempty"), End::Back)
                        .into_iter()
                        .collect();
                    frag.push(Sym::T('1'));
                    b.seq(frag)
                }
                _ => {
                    let mut frag: Vec<Sym> = p.into_iter().collect();
                    frag.push(Sym::T('f'));
                    b.seq(frag)
                }
            };
        } else if p_last == Some('a') {
            // prefix·loop·loop^ω with the first junction fused.
            let mut frag: Vec<Sym> = b
                .trim(p.expect("nonempty"), End::Back)
                .into_iter()
                .collect();
            frag.push(Sym::T('1'));
            frag.extend(b.trim(l, End::Front));
            p = b.seq(frag);
        }
    }

    let b2 = b.clone();
    let p = b.finish(p.into_iter().collect());
    let l = b2.finish(vec![l]);
    let h: BTreeMap<char, String> = [('a', "0"), ('f', ""), ('1', "1")]
        .into_iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect();
    let bits = bits_alphabet();
    let p = Slp::literal(&bits, c0)?.concat(&p.substitute(&h, &bits)?)?;
    let l = l.substitute(&h, &bits)?;
    IndicatorPair::new(p, l)
}
