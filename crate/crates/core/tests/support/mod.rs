//! Independent reference implementations used to cross-check the library.
//!
//! None of these use the affine representation or the Britton reducer: the
//! `H` oracle is plain string rewriting with the defining relation, the `G`
//! oracle pinches one innermost `t`-pair at a time, and the conjugacy oracle
//! explores conjugation orbits by brute force.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use bgkit_core::{Generator, Syllable, Word};
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A letter of the oracle alphabet: generator and small exponent.
pub type Syl = (Generator, i128);

pub fn to_syls(w: &Word) -> Option<Vec<Syl>> {
    w.syllables()
        .iter()
        .map(|s| Some((s.gen, s.exp.to_i128()?)))
        .collect()
}

pub fn from_syls(s: &[Syl]) -> Word {
    s.iter().map(|&(g, e)| Syllable::new(g, e)).collect()
}

/// Merges equal neighbours and drops zero exponents, in place.
pub fn free_reduce_syls(s: &mut Vec<Syl>) {
    let mut out: Vec<Syl> = Vec::with_capacity(s.len());
    for &(g, e) in s.iter() {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    *s = out;
}

/// One rewrite with `y^-1 x^k y -> x^2k` or `y x^2k y^-1 -> x^k` applied at
/// the first place it fits. Returns `false` when nothing applies.
fn h_rewrite_once(s: &mut Vec<Syl>) -> Option<bool> {
    for i in 1..s.len().saturating_sub(1) {
        let (a, k, b) = (s[i - 1], s[i], s[i + 1]);
        if a.0 != Generator::Y || k.0 != Generator::X || b.0 != Generator::Y {
            continue;
        }
        let (sa, sb) = (a.1.signum(), b.1.signum());
        let new_k = if sa < 0 && sb > 0 {
            k.1.checked_mul(2)?
        } else if sa > 0 && sb < 0 && k.1 % 2 == 0 {
            k.1 / 2
        } else {
            continue;
        };
        s[i - 1].1 -= sa;
        s[i].1 = new_k;
        s[i + 1].1 -= sb;
        free_reduce_syls(s);
        return Some(true);
    }
    Some(false)
}

/// Rewrites a `t`-free word to a form with no applicable relation.
/// `None` if an exponent leaves the `i128` range.
pub fn h_rewrite(s: &[Syl]) -> Option<Vec<Syl>> {
    let mut s = s.to_vec();
    free_reduce_syls(&mut s);
    while h_rewrite_once(&mut s)? {}
    Some(s)
}

/// Word problem in `H` by rewriting: the identity exactly when the word
/// rewrites to nothing.
pub fn h_identity_oracle(s: &[Syl]) -> Option<bool> {
    Some(h_rewrite(s)?.is_empty())
}

/// `Some(k)` when the `t`-free word equals `x^k` in `H`.
pub fn h_as_x_power(s: &[Syl]) -> Option<Option<i128>> {
    let r = h_rewrite(s)?;
    Some(match r.as_slice() {
        [] => Some(0),
        [(Generator::X, k)] => Some(*k),
        _ => None,
    })
}

/// `Some(k)` when the `t`-free word equals `y^k` in `H`.
pub fn h_as_y_power(s: &[Syl]) -> Option<Option<i128>> {
    let k: i128 = s
        .iter()
        .filter(|(g, _)| *g == Generator::Y)
        .map(|(_, e)| e)
        .sum();
    let mut probe = s.to_vec();
    probe.push((Generator::Y, -k));
    Some(h_identity_oracle(&probe)?.then_some(k))
}

/// One innermost pinch `t^-1 x^k t -> y^k` or `t y^k t^-1 -> x^k`.
fn g_pinch_once(s: &mut Vec<Syl>) -> Option<bool> {
    let t_positions: Vec<usize> = (0..s.len()).filter(|&i| s[i].0 == Generator::T).collect();
    for pair in t_positions.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let (ei, ej) = (s[i].1.signum(), s[j].1.signum());
        if ei == ej {
            continue;
        }
        let inner = &s[i + 1..j];
        let replacement = if ei < 0 {
            h_as_x_power(inner)?.map(|k| (Generator::Y, k))
        } else {
            h_as_y_power(inner)?.map(|k| (Generator::X, k))
        };
        if let Some(r) = replacement {
            let mut out = s[..i].to_vec();
            out.push((Generator::T, s[i].1 - ei));
            out.push(r);
            out.push((Generator::T, s[j].1 - ej));
            out.extend_from_slice(&s[j + 1..]);
            free_reduce_syls(&mut out);
            *s = out;
            return Some(true);
        }
    }
    Some(false)
}

/// Word problem in `G` by repeated pinching, then rewriting in `H`.
pub fn g_identity_oracle(w: &Word) -> Option<bool> {
    let mut s = to_syls(w)?;
    free_reduce_syls(&mut s);
    while g_pinch_once(&mut s)? {}
    if s.iter().any(|(g, _)| *g == Generator::T) {
        return Some(false);
    }
    h_identity_oracle(&s)
}

/// Number of `t` letters left once no pinch applies.
pub fn g_t_length_oracle(w: &Word) -> Option<usize> {
    let mut s = to_syls(w)?;
    free_reduce_syls(&mut s);
    while g_pinch_once(&mut s)? {}
    Some(
        s.iter()
            .filter(|(g, _)| *g == Generator::T)
            .map(|(_, e)| e.unsigned_abs() as usize)
            .sum(),
    )
}

/// Exact rational `num / 2^SCALE` on a fixed grid.
const SCALE: u32 = 12;

/// Brute-force `H`-conjugacy of `(q1, n)` and `(q2, n)` with the `q`s given
/// as `num / 2^den`. Explores conjugation by `x^±1`, `y^±1` inside
/// `|q| <= bound` on the grid `2^-SCALE Z`.
///
/// Conjugating `(q, n)` by `x` gives `(q + 2^-n - 1, n)`, by `y` gives `(2q, n)`.
pub fn h_conjugate_oracle(q1: (i64, u32), q2: (i64, u32), n: i32, bound: i64) -> bool {
    let to_grid = |(num, den): (i64, u32)| num << (SCALE - den);
    let start = to_grid(q1);
    let goal = to_grid(q2);
    let unit = 1i64 << SCALE;
    let step = if n >= 0 {
        (unit >> n) - unit
    } else {
        (unit << (-n)) - unit
    };
    let limit = bound << SCALE;
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        if q == goal {
            return true;
        }
        let mut next = vec![q + step, q - step, q * 2];
        if q % 2 == 0 {
            next.push(q / 2);
        }
        for r in next {
            if r.abs() <= limit && seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    false
}

pub fn random_syllables(r: &mut ChaCha8Rng, gens: &[Generator], len: usize, max_exp: i64) -> Word {
    let mut raw = Vec::with_capacity(len);
    let mut prev = None;
    while raw.len() < len {
        let g = gens[r.gen_range(0..gens.len())];
        if Some(g) == prev && gens.len() > 1 {
            continue;
        }
        let mut e = r.gen_range(1..=max_exp);
        if r.gen_bool(0.5) {
            e = -e;
        }
        raw.push(Syllable::new(g, e));
        prev = Some(g);
    }
    raw.into_iter().collect()
}

/// Random freely reduced word with at most `max_len` syllables.
pub fn random_word(r: &mut ChaCha8Rng, gens: &[Generator], max_len: usize, max_exp: i64) -> Word {
    let len = r.gen_range(0..=max_len);
    random_syllables(r, gens, len, max_exp)
}

pub const XYT: [Generator; 3] = [Generator::X, Generator::Y, Generator::T];
pub const XY: [Generator; 2] = [Generator::X, Generator::Y];

pub fn relators() -> [Word; 2] {
    [
        "y^-1 x y x^-2".parse().unwrap(),
        "t^-1 x t y^-1".parse().unwrap(),
    ]
}

/// Product of up to `max_factors` conjugates `c^-1 r^±1 c` of the relators.
pub fn relator_product(r: &mut ChaCha8Rng, max_factors: usize, conj_len: usize) -> Word {
    let rels = relators();
    let mut w = Word::identity();
    for _ in 0..r.gen_range(1..=max_factors) {
        let mut rel = rels[r.gen_range(0..2)].clone();
        if r.gen_bool(0.5) {
            rel = rel.inverse();
        }
        let c = random_word(r, &XYT, conj_len, 3);
        w.append(&rel.conjugate_by(&c));
    }
    w
}

/// Random word that Britton-reduces to an element of `H`, built from
/// `H` syllables and pinching blocks `t^-1 x^a t`, `t y^a t^-1`.
pub fn random_t_zero_word(r: &mut ChaCha8Rng, max_blocks: usize, max_exp: i64) -> Word {
    let mut w = Word::identity();
    for _ in 0..r.gen_range(1..=max_blocks) {
        let mut e = r.gen_range(1..=max_exp);
        if r.gen_bool(0.5) {
            e = -e;
        }
        let block = match r.gen_range(0..4) {
            0 => Word::x(e),
            1 => Word::y(e),
            2 => Word::x(e).conjugate_by(&Word::t(1)),
            _ => Word::y(e).conjugate_by(&Word::t(-1)),
        };
        w.append(&block);
    }
    w
}
