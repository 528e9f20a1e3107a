//! Words over the generators `x`, `y`, `t`.
//!
//! A [`Word`] is a freely reduced sequence of syllables `g^k` with `k != 0`
//! and no two adjacent syllables on the same generator. Nothing here knows
//! about the group relations; those live in [`crate::h_arith`] and
//! [`crate::britton`].
//!
//! Text syntax is whitespace-separated tokens such as `x^2 y^-1 t`. An
//! uppercase letter is the inverse generator, so `X` is `x^-1` and `T^3` is
//! `t^-3`. The identity prints as `1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    T,
}

impl Generator {
    pub fn letter(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::Y => 'y',
            Generator::T => 't',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Generator,
    pub exp: BigInt,
}

impl Syllable {
    pub fn new(gen: Generator, exp: impl Into<BigInt>) -> Self {
        Syllable {
            gen,
            exp: exp.into(),
        }
    }

    pub fn inverse(&self) -> Self {
        Syllable {
            gen: self.gen,
            exp: -&self.exp,
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp.is_one() {
            write!(f, "{}", self.gen.letter())
        } else {
            write!(f, "{}^{}", self.gen.letter(), self.exp)
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: Generator, exp: impl Into<BigInt>) -> Self {
        free_reduce([Syllable::new(gen, exp)])
    }

    pub fn x(exp: impl Into<BigInt>) -> Self {
        Word::gen(Generator::X, exp)
    }

    pub fn y(exp: impl Into<BigInt>) -> Self {
        Word::gen(Generator::Y, exp)
    }

    pub fn t(exp: impl Into<BigInt>) -> Self {
        Word::gen(Generator::T, exp)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn into_syllables(self) -> Vec<Syllable> {
        self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn contains(&self, gen: Generator) -> bool {
        self.syllables.iter().any(|s| s.gen == gen)
    }

    /// Sum of the exponents of `gen`.
    pub fn exponent_sum(&self, gen: Generator) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| &s.exp)
            .sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.append(other);
        out
    }

    /// Multiplies `other` onto the right end, reducing at the seam.
    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            push_reduced(&mut self.syllables, s.gen, s.exp.clone());
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(Syllable::inverse).collect(),
        }
    }

    /// `c^-1 w c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().concat(self).concat(c)
    }

    /// Free-group power by repeated concatenation.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out.append(&base);
        }
        out
    }
}

fn push_reduced(stack: &mut Vec<Syllable>, gen: Generator, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.gen == gen => {
            top.exp += exp;
            if top.exp.is_zero() {
                stack.pop();
            }
        }
        _ => stack.push(Syllable { gen, exp }),
    }
}

/// Freely reduces an arbitrary syllable sequence: drops zero exponents and
/// merges adjacent syllables on the same generator until none remain.
pub fn free_reduce<I>(raw: I) -> Word
where
    I: IntoIterator<Item = Syllable>,
{
    let mut syllables = Vec::new();
    for s in raw {
        push_reduced(&mut syllables, s.gen, s.exp);
    }
    Word { syllables }
}

impl FromIterator<Syllable> for Word {
    fn from_iter<I: IntoIterator<Item = Syllable>>(iter: I) -> Self {
        free_reduce(iter)
    }
}

/// Splits `w` as `conjugator * core * conjugator^-1` in the free group so that
/// the first and last syllables of `core` are on different generators.
pub fn cyclic_reduce_free(w: &Word) -> (Word, Word) {
    let mut core: std::collections::VecDeque<Syllable> = w.syllables.iter().cloned().collect();
    let mut conjugator = Vec::new();
    while core.len() >= 2 && core.front().map(|s| s.gen) == core.back().map(|s| s.gen) {
        let first = core.pop_front().expect("len >= 2");
        let last = core.pop_back().expect("len >= 2");
        // x^a M x^b = x^a (M x^(a+b)) x^-a
        let merged = &first.exp + &last.exp;
        if !merged.is_zero() {
            core.push_back(Syllable {
                gen: first.gen,
                exp: merged,
            });
        }
        conjugator.push(first);
    }
    (free_reduce(conjugator), free_reduce(core))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

/// Parses the token grammar
///
/// ```text
/// word    := "1" | token { ws token } ;
/// token   := base [ "^" integer ] ;
/// base    := "x" | "y" | "t" | "X" | "Y" | "T" ;
/// integer := [ "-" ] digit { digit } ;
/// ```
///
/// and freely reduces the result.
pub fn parse_word(text: &str) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(syntax(pos, "empty word (write 1 for the identity)"));
    }
    if bytes[pos] == b'1' {
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(syntax(pos, "the identity 1 must stand alone"));
        }
        return Ok(Word::identity());
    }

    let mut syllables = Vec::new();
    while pos < bytes.len() {
        let (gen, inverted) = match bytes[pos] {
            b'x' => (Generator::X, false),
            b'y' => (Generator::Y, false),
            b't' => (Generator::T, false),
            b'X' => (Generator::X, true),
            b'Y' => (Generator::Y, true),
            b'T' => (Generator::T, true),
            _ => {
                return Err(syntax(
                    pos,
                    format!(
                        "expected one of x y t X Y T, found {:?}",
                        char_at(text, pos)
                    ),
                ))
            }
        };
        pos += 1;
        let mut exp = BigInt::one();
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let start = pos;
            if pos < bytes.len() && bytes[pos] == b'-' {
                pos += 1;
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == digits_start {
                return Err(syntax(pos, "expected an integer exponent after ^"));
            }
            exp = text[start..pos].parse().expect("validated integer literal");
        }
        if inverted {
            exp = -exp;
        }
        syllables.push(Syllable { gen, exp });

        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(syntax(
                pos,
                format!(
                    "expected whitespace between tokens, found {:?}",
                    char_at(text, pos)
                ),
            ));
        }
        skip_ws(&mut pos);
    }
    Ok(free_reduce(syllables))
}

fn char_at(text: &str, pos: usize) -> char {
    text[pos..].chars().next().unwrap_or('?')
}

/// Parses a word that must not contain `t`.
pub fn parse_h_word(text: &str) -> Result<Word> {
    let w = parse_word(text)?;
    if w.contains(Generator::T) {
        return Err(Error::HasStableLetter);
    }
    Ok(w)
}

/// Largest absolute exponent in the word; useful for sizing workloads.
pub fn max_abs_exponent(w: &Word) -> BigInt {
    w.syllables
        .iter()
        .map(|s| s.exp.abs())
        .max()
        .unwrap_or_default()
}
