//! Seeded workloads shared by the benchmarks.

use bgkit_core::automorphisms::std_aut;
use bgkit_core::{AutImages, Dyadic, Generator, Syllable, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(r: &mut ChaCha8Rng, gens: &[Generator], len: usize, max_exp: i64) -> Word {
    (0..len)
        .map(|_| {
            let e = r.gen_range(1..=max_exp);
            Syllable::new(
                gens[r.gen_range(0..gens.len())],
                if r.gen_bool(0.5) { e } else { -e },
            )
        })
        .collect()
}

/// Product of `factors` random conjugates of the two relators; equal to 1 in `G`.
pub fn relator_product(r: &mut ChaCha8Rng, factors: usize, conj_len: usize) -> Word {
    let rels: [Word; 2] = [
        "y^-1 x y x^-2".parse().unwrap(),
        "t^-1 x t y^-1".parse().unwrap(),
    ];
    let mut w = Word::identity();
    for _ in 0..factors {
        let rel = &rels[r.gen_range(0..2)];
        let rel = if r.gen_bool(0.5) {
            rel.inverse()
        } else {
            rel.clone()
        };
        let c = random_word(r, &[Generator::X, Generator::Y, Generator::T], conj_len, 3);
        w.append(&rel.conjugate_by(&c));
    }
    w
}

/// `std_aut(d)` conjugated by a random word of `conj_len` syllables.
pub fn twisted_aut(r: &mut ChaCha8Rng, conj_len: usize) -> (Dyadic, AutImages) {
    let d = Dyadic::new(r.gen_range(-(1i64 << 16)..=1 << 16), r.gen_range(0..=16));
    let c = random_word(r, &[Generator::X, Generator::Y, Generator::T], conj_len, 4);
    (d.clone(), std_aut(&d).conjugated_by(&c))
}

/// `y^-k x y^k`: evaluates to `x^(2^k)`.
pub fn exponent_tower(k: i64) -> Word {
    Word::x(1).conjugate_by(&Word::y(k))
}
