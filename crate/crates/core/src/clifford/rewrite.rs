//! Normal forms of words in `x`, `y` modulo `x³ = a`, `y³ = b` and the two cubic
//! syzygies, computed by naive leftmost rewriting without structure constants.

use std::collections::BTreeMap;

use super::algebra::AlgebraElement;
use crate::field::Field;

pub const X: u8 = 0;
pub const Y: u8 = 1;

/// Linear combination of words.
pub type WordPoly<F> = BTreeMap<Vec<u8>, F>;

/// Rules `lhs → Σ coef·rhs`, each strictly decreasing in degree-lexicographic order with `x < y`.
fn rules<F: Field>(a: &F, b: &F) -> Vec<(Vec<u8>, Vec<(F, Vec<u8>)>)> {
    let one = a.one_like();
    let m1 = one.negate();
    vec![
        (vec![X, X, X], vec![(a.clone(), vec![])]),
        (vec![Y, Y, Y], vec![(b.clone(), vec![])]),
        (vec![Y, X, X], vec![(m1.clone(), vec![X, Y, X]), (m1.clone(), vec![X, X, Y])]),
        (vec![Y, Y, X], vec![(m1.clone(), vec![Y, X, Y]), (m1, vec![X, Y, Y])]),
    ]
}

fn add_term<F: Field>(p: &mut WordPoly<F>, w: Vec<u8>, c: F) {
    let entry = p.entry(w.clone()).or_insert_with(|| c.zero_like());
    *entry = entry.plus(&c);
    if entry.eq_zero() {
        p.remove(&w);
    }
}

/// Reduces `word` to a combination of words containing no rule left-hand side.
pub fn normal_form<F: Field>(word: &[u8], a: &F, b: &F) -> WordPoly<F> {
    let rules = rules(a, b);
    let mut pending: Vec<(Vec<u8>, F)> = vec![(word.to_vec(), a.one_like())];
    let mut out = WordPoly::new();
    while let Some((w, coef)) = pending.pop() {
        let hit = (0..w.len()).find_map(|i| {
            rules.iter().find(|(lhs, _)| w[i..].starts_with(lhs)).map(|r| (i, r))
        });
        match hit {
            None => add_term(&mut out, w, coef),
            Some((i, (lhs, rhs))) => {
                for (k, r) in rhs {
                    let mut nw = w[..i].to_vec();
                    nw.extend_from_slice(r);
                    nw.extend_from_slice(&w[i + lhs.len()..]);
                    pending.push((nw, coef.times(k)));
                }
            }
        }
    }
    out
}

pub fn evaluate_word<F: Field>(w: &[u8], x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
    w.iter()
        .fold(AlgebraElement::one(&x.params), |acc, &l| acc.mul(if l == X { x } else { y }))
}

pub fn evaluate<F: Field>(p: &WordPoly<F>, x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
    p.iter().fold(AlgebraElement::zero(&x.params), |acc, (w, c)| acc.add(&evaluate_word(w, x, y).scale(c)))
}
