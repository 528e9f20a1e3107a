//! The Baumslag-Gersten group `G = <x, y, t | y^-1 x y = x^2, t^-1 x t = y>`
//! as an HNN extension of `H` with stable letter `t` and associated
//! subgroups `<x>` and `<y>`.
//!
//! Words are reduced by one left-to-right stack pass. Whenever a `t` letter
//! is pushed the top of the stack is tested for a pinch:
//!
//! ```text
//! t^-1 x^k t -> y^k        t y^k t^-1 -> x^k
//! ```
//!
//! The stack is Britton-reduced after every push, so by Britton's lemma a
//! result with a `t` letter is never the identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::Result;
use crate::h_arith::{h_normal_form, AffineElem};
use crate::words::{Generator, Syllable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `Some(k)` iff `h = x^k` with `k` an integer.
pub fn is_x_power(h: &AffineElem) -> Option<BigInt> {
    if h.n().is_zero() {
        h.q().to_integer()
    } else {
        None
    }
}

/// `Some(k)` iff `h = y^k`.
pub fn is_y_power(h: &AffineElem) -> Option<BigInt> {
    h.q().is_zero().then(|| h.n().clone())
}

/// A Britton-reduced element `h0 t^e1 h1 ... t^em hm` of `G`.
///
/// Reduced forms are not unique across `t` letters; compare elements with
/// [`g_equal`], not `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GWord {
    head: AffineElem,
    tail: Vec<(Sign, AffineElem)>,
}

impl GWord {
    pub fn identity() -> Self {
        GWord::default()
    }

    pub fn from_h(h: AffineElem) -> Self {
        GWord {
            head: h,
            tail: Vec::new(),
        }
    }

    pub fn t(sign: Sign) -> Self {
        GWord {
            head: AffineElem::identity(),
            tail: vec![(sign, AffineElem::identity())],
        }
    }

    /// Assembles a sequence that is already Britton-reduced. Returns `None`
    /// if a pinch is present.
    pub fn from_parts(head: AffineElem, tail: Vec<(Sign, AffineElem)>) -> Option<Self> {
        let g = GWord { head, tail };
        g.is_reduced().then_some(g)
    }

    pub fn head(&self) -> &AffineElem {
        &self.head
    }

    pub fn tail(&self) -> &[(Sign, AffineElem)] {
        &self.tail
    }

    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    pub fn is_identity(&self) -> bool {
        self.tail.is_empty() && self.head.is_identity()
    }

    /// The `H` element when the t-length is zero.
    pub fn as_h(&self) -> Option<&AffineElem> {
        self.tail.is_empty().then_some(&self.head)
    }

    fn is_reduced(&self) -> bool {
        self.tail
            .windows(2)
            .all(|pair| !pinches(pair[0].0, &pair[0].1, pair[1].0))
    }

    /// Expands to a word, writing each `H` factor in normal form.
    pub fn to_word(&self) -> Word {
        let mut w = h_normal_form(&self.head);
        for (sign, h) in &self.tail {
            w.append(&Word::t(sign.exponent()));
            w.append(&h_normal_form(h));
        }
        w
    }

    pub fn inverse(&self) -> GWord {
        // (h0 t^e1 h1 ... t^em hm)^-1 = hm^-1 t^-em ... h1^-1 t^-e1 h0^-1
        let mut hs: Vec<&AffineElem> = Vec::with_capacity(self.tail.len() + 1);
        hs.push(&self.head);
        hs.extend(self.tail.iter().map(|(_, h)| h));
        let head = hs.last().expect("nonempty").inv();
        let tail = self
            .tail
            .iter()
            .rev()
            .zip(hs.iter().rev().skip(1))
            .map(|((sign, _), h)| (sign.flip(), h.inv()))
            .collect();
        GWord { head, tail }
    }

    pub fn mul(&self, rhs: &GWord, budget: &Budget) -> Result<GWord> {
        let mut r = Reducer::resume(self.clone(), budget);
        r.push_gword(rhs)?;
        Ok(r.finish())
    }

    pub fn pow(&self, k: &BigInt, budget: &Budget) -> Result<GWord> {
        let mut base = if k.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = k.magnitude().clone();
        let mut acc = GWord::identity();
        while !e.is_zero() {
            if e.bit(0) {
                acc = acc.mul(&base, budget)?;
            }
            e >>= 1u32;
            if !e.is_zero() {
                base = base.mul(&base, budget)?;
            }
        }
        Ok(acc)
    }

    /// `c^-1 self c`.
    pub fn conjugate_by(&self, c: &GWord, budget: &Budget) -> Result<GWord> {
        c.inverse().mul(self, budget)?.mul(c, budget)
    }
}

impl fmt::Display for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Would `t^prev h t^next` pinch?
fn pinches(prev: Sign, h: &AffineElem, next: Sign) -> bool {
    pinch_value(prev, h, next).is_some()
}

fn pinch_value(prev: Sign, h: &AffineElem, next: Sign) -> Option<AffineElem> {
    match (prev, next) {
        (Sign::Minus, Sign::Plus) => is_x_power(h).map(AffineElem::y_pow),
        (Sign::Plus, Sign::Minus) => is_y_power(h).map(AffineElem::x_pow),
        _ => None,
    }
}

/// Incremental Britton reduction.
pub struct Reducer<'b> {
    acc: GWord,
    budget: &'b Budget,
}

impl<'b> Reducer<'b> {
    pub fn new(budget: &'b Budget) -> Self {
        Reducer {
            acc: GWord::identity(),
            budget,
        }
    }

    pub fn resume(acc: GWord, budget: &'b Budget) -> Self {
        Reducer { acc, budget }
    }

    fn top(&mut self) -> &mut AffineElem {
        match self.acc.tail.last_mut() {
            Some((_, h)) => h,
            None => &mut self.acc.head,
        }
    }

    pub fn push_h(&mut self, h: &AffineElem) -> Result<()> {
        if h.is_identity() {
            return Ok(());
        }
        let budget = self.budget;
        let top = self.top();
        *top = top.checked_mul(h, budget)?;
        Ok(())
    }

    pub fn push_t(&mut self, sign: Sign) -> Result<()> {
        let pinched = match self.acc.tail.last() {
            Some((prev, h)) => pinch_value(*prev, h, sign),
            None => None,
        };
        match pinched {
            Some(value) => {
                self.acc.tail.pop();
                self.push_h(&value)
            }
            None => {
                self.acc.tail.push((sign, AffineElem::identity()));
                Ok(())
            }
        }
    }

    pub fn push_syllable(&mut self, s: &Syllable) -> Result<()> {
        let budget = self.budget;
        match s.gen {
            Generator::X => self.top().mul_x_pow(&s.exp, budget),
            Generator::Y => self.top().mul_y_pow(&s.exp, budget),
            Generator::T => {
                let count = s.exp.magnitude().to_u64().unwrap_or(u64::MAX);
                budget.check(count)?;
                let sign = if s.exp.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                for _ in 0..count {
                    self.push_t(sign)?;
                }
                Ok(())
            }
        }
    }

    pub fn push_word(&mut self, w: &Word) -> Result<()> {
        w.syllables().iter().try_for_each(|s| self.push_syllable(s))
    }

    pub fn push_gword(&mut self, g: &GWord) -> Result<()> {
        self.push_h(&g.head)?;
        for (sign, h) in &g.tail {
            self.push_t(*sign)?;
            self.push_h(h)?;
        }
        Ok(())
    }

    pub fn finish(self) -> GWord {
        self.acc
    }
}

pub fn britton_reduce(w: &Word, budget: &Budget) -> Result<GWord> {
    let mut r = Reducer::new(budget);
    r.push_word(w)?;
    Ok(r.finish())
}

pub fn t_length(g: &GWord) -> usize {
    g.t_length()
}

/// Word problem in `G`.
pub fn g_is_identity(w: &Word, budget: &Budget) -> Result<bool> {
    Ok(britton_reduce(w, budget)?.is_identity())
}

/// Equality in `G`, decided by reducing `a b^-1`.
pub fn g_equal(a: &Word, b: &Word, budget: &Budget) -> Result<bool> {
    g_is_identity(&a.concat(&b.inverse()), budget)
}

pub fn g_mul(a: &Word, b: &Word, budget: &Budget) -> Result<GWord> {
    let mut r = Reducer::new(budget);
    r.push_word(a)?;
    r.push_word(b)?;
    Ok(r.finish())
}

/// `c^-1 w c`.
pub fn g_conjugate(w: &Word, c: &Word, budget: &Budget) -> Result<GWord> {
    let mut r = Reducer::new(budget);
    r.push_word(&c.inverse())?;
    r.push_word(w)?;
    r.push_word(c)?;
    Ok(r.finish())
}

/// Splits `w` as `conjugator * core * conjugator^-1` in `G` with `core`
/// cyclically reduced: every cyclic permutation of its `t`/`H` sequence is
/// Britton-reduced.
///
/// The word is fully reduced first. Then the head is rotated to the end and,
/// while the wrap-around `t^em hm t^e1` pinches, the last `t` block is
/// conjugated to the front, which removes two `t` letters each round.
pub fn cyclic_reduce_g(w: &Word, budget: &Budget) -> Result<(Word, GWord)> {
    let mut core = britton_reduce(w, budget)?;
    let mut conj = GWord::identity();
    loop {
        if core.tail.is_empty() {
            break;
        }
        if !core.head.is_identity() {
            let h = GWord::from_h(core.head.clone());
            core = core.conjugate_by(&h, budget)?;
            conj = conj.mul(&h, budget)?;
        }
        let (last_sign, last_h) = core.tail.last().expect("nonempty tail");
        let first_sign = core.tail[0].0;
        if core.tail.len() < 2 || !pinches(*last_sign, last_h, first_sign) {
            break;
        }
        // s core s^-1 with s = t^em hm
        let s = GWord {
            head: AffineElem::identity(),
            tail: vec![(*last_sign, last_h.clone())],
        };
        let s_inv = s.inverse();
        core = core.conjugate_by(&s_inv, budget)?;
        conj = conj.mul(&s_inv, budget)?;
    }
    Ok((conj.to_word(), core))
}
