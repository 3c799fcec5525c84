//! Seeded inputs shared by the benchmarks.

use qheis_core::presets::make_dq;
use qheis_core::random;
use qheis_core::rewrite::Word;
use qheis_core::{AlgebraParams, Element, Presentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn params(m: i64, n: i64) -> AlgebraParams {
    AlgebraParams::new(m, n).expect("valid parameters")
}

pub fn dq(m: i64, n: i64) -> Presentation {
    make_dq(params(m, n)).expect("D_q preset")
}

/// `count` random words of length at most `len`, fixed seed.
pub fn words(p: &Presentation, count: usize, len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count).map(|_| random::word(p, &mut rng, len)).collect()
}

pub fn elements(p: &Presentation, count: usize, degree: u32) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..count).map(|_| random::element(p, &mut rng, degree, 3)).collect()
}
