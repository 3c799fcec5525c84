//! Seeded samplers for elements, words and scalars.

use rand::Rng;

use crate::qfield::{qpow, QScalar};
use crate::rewrite::{Element, Letter, Monomial, Presentation, Word};

/// Nonzero scalar `c * q^k` with small `c` and `k`.
pub fn scalar<R: Rng>(rng: &mut R) -> QScalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    qpow(rng.gen_range(-2..=2)) * QScalar::from_int(c)
}

/// Random normal monomial of degree at most `max_degree`.
pub fn monomial<R: Rng>(p: &Presentation, rng: &mut R, max_degree: u32) -> Monomial {
    let mut m = Monomial::ONE;
    let mut budget = rng.gen_range(0..=max_degree);
    let positive: Vec<usize> = (0..p.ngens()).filter(|&g| p.degree_of(g) > 0).collect();
    while budget > 0 && !positive.is_empty() {
        let g = positive[rng.gen_range(0..positive.len())];
        let d = p.degree_of(g);
        if d > budget {
            break;
        }
        m.set(g, m.exponent(g) + 1);
        budget -= d;
    }
    for g in 0..p.ngens() {
        if p.degree_of(g) == 0 {
            let e = if p.is_invertible(g) { rng.gen_range(-2..=2) } else { rng.gen_range(0..=2) };
            m.set(g, e);
        }
    }
    m
}

pub fn element<R: Rng>(p: &Presentation, rng: &mut R, max_degree: u32, max_terms: usize) -> Element {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut x = Element::zero();
    for _ in 0..terms {
        x.add_term(monomial(p, rng, max_degree), scalar(rng));
    }
    x
}

/// Word of up to `max_len` letters in arbitrary order.
pub fn word<R: Rng>(p: &Presentation, rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..p.ngens());
            let e = if p.is_invertible(g) {
                *[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap()
            } else {
                rng.gen_range(1..=2)
            };
            Letter::new(g, e)
        })
        .collect()
}
