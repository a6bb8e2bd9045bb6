#![allow(dead_code)]

use rand::Rng;
use thompson::{Letter, Word};

/// A word of length at most `max_len` with indices at most `max_index`;
/// each letter is a `c` with probability `c_share`.
pub fn random_word(rng: &mut impl Rng, max_len: usize, max_index: u32, c_share: f64) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let index = rng.gen_range(0..=max_index);
            if rng.gen_bool(c_share) {
                Letter::c(index, rng.gen_range(1..=i64::from(index) + 1))
            } else {
                Letter::x(index, if rng.gen_bool(0.5) { 1 } else { -1 })
            }
        })
        .collect();
    Word::new(letters)
}

/// A positive normal form: strictly increasing indices, positive exponents.
pub fn random_positive(rng: &mut impl Rng, max_index: u32, max_exp: u32) -> Vec<(u32, u32)> {
    let mut part = Vec::new();
    for i in 0..=max_index {
        if rng.gen_bool(0.4) {
            part.push((i, rng.gen_range(1..=max_exp)));
        }
    }
    part
}
