//! The Baumslag-Solitar group `H = <x, y | y^-1 x y = x^2>`.
//!
//! Elements are stored as affine maps `s -> 2^-n s + q` of the dyadic line,
//! with `x = (1, 0)` and `y = (0, 1)`. Composition gives
//!
//! ```text
//! (q1, n1) * (q2, n2) = (q1 + 2^-n1 q2, n1 + n2)
//! ```
//!
//! The representation is faithful and canonical, so the word problem in `H`
//! is a field comparison. The `n` component is the total `y`-exponent of any
//! word for the element.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::words::{Generator, Syllable, Word};

/// An element of `H` as the affine map `s -> 2^-n s + q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineElem {
    q: Dyadic,
    n: BigInt,
}

impl AffineElem {
    pub fn new(q: Dyadic, n: impl Into<BigInt>) -> Self {
        AffineElem { q, n: n.into() }
    }

    pub fn identity() -> Self {
        AffineElem::default()
    }

    /// `x^k` for a dyadic `k`: translation by `k`.
    pub fn translation(q: Dyadic) -> Self {
        AffineElem {
            q,
            n: BigInt::zero(),
        }
    }

    pub fn x_pow(k: impl Into<BigInt>) -> Self {
        AffineElem::translation(Dyadic::from_integer(k))
    }

    pub fn y_pow(k: impl Into<BigInt>) -> Self {
        AffineElem {
            q: Dyadic::zero(),
            n: k.into(),
        }
    }

    pub fn q(&self) -> &Dyadic {
        &self.q
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn is_identity(&self) -> bool {
        self.q.is_zero() && self.n.is_zero()
    }

    fn check(&self, budget: &Budget) -> Result<()> {
        budget.check(self.q.bits())?;
        budget.check(self.n.bits())
    }

    pub fn checked_mul(&self, rhs: &AffineElem, budget: &Budget) -> Result<AffineElem> {
        let shifted = rhs.q.checked_mul_pow2(&-&self.n, budget)?;
        let out = AffineElem {
            q: self.q.checked_add(&shifted, budget)?,
            n: &self.n + &rhs.n,
        };
        out.check(budget)?;
        Ok(out)
    }

    /// `(q, n)^-1 = (-2^n q, -n)`.
    pub fn checked_inv(&self, budget: &Budget) -> Result<AffineElem> {
        let q = -self.q.checked_mul_pow2(&self.n, budget)?;
        Ok(AffineElem { q, n: -&self.n })
    }

    pub fn inv(&self) -> AffineElem {
        self.checked_inv(&Budget::unlimited())
            .expect("inverse exceeds addressable memory")
    }

    /// `c^-1 self c`.
    pub fn checked_conjugate(&self, c: &AffineElem, budget: &Budget) -> Result<AffineElem> {
        c.checked_inv(budget)?
            .checked_mul(self, budget)?
            .checked_mul(c, budget)
    }

    /// Right-multiplies by `x^k` in place.
    pub fn mul_x_pow(&mut self, k: &BigInt, budget: &Budget) -> Result<()> {
        let step = Dyadic::from_integer(k.clone()).checked_mul_pow2(&-&self.n, budget)?;
        self.q = self.q.checked_add(&step, budget)?;
        Ok(())
    }

    /// Right-multiplies by `y^k` in place.
    pub fn mul_y_pow(&mut self, k: &BigInt, budget: &Budget) -> Result<()> {
        self.n += k;
        budget.check(self.n.bits())
    }

    pub fn in_centralizer_of_x(&self) -> bool {
        self.n.is_zero()
    }
}

impl Mul for &AffineElem {
    type Output = AffineElem;

    /// Unbudgeted product; panics only if a shift cannot be addressed.
    fn mul(self, rhs: &AffineElem) -> AffineElem {
        self.checked_mul(rhs, &Budget::unlimited())
            .expect("product exceeds addressable memory")
    }
}

impl Mul for AffineElem {
    type Output = AffineElem;
    fn mul(self, rhs: AffineElem) -> AffineElem {
        &self * &rhs
    }
}

impl fmt::Display for AffineElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.n)
    }
}

pub fn h_mul(a: &AffineElem, b: &AffineElem) -> AffineElem {
    a * b
}

pub fn h_inv(a: &AffineElem) -> AffineElem {
    a.inv()
}

/// `c^-1 a c`.
pub fn h_conjugate(a: &AffineElem, c: &AffineElem) -> AffineElem {
    &(&c.inv() * a) * c
}

/// Evaluates a word over `{x, y}` under the default budget.
pub fn eval_h(w: &Word) -> Result<AffineElem> {
    eval_h_with(w, &Budget::default())
}

pub fn eval_h_with(w: &Word, budget: &Budget) -> Result<AffineElem> {
    eval_syllables(w.syllables(), budget)
}

pub(crate) fn eval_syllables(syllables: &[Syllable], budget: &Budget) -> Result<AffineElem> {
    let mut acc = AffineElem::identity();
    for s in syllables {
        match s.gen {
            Generator::X => acc.mul_x_pow(&s.exp, budget)?,
            Generator::Y => acc.mul_y_pow(&s.exp, budget)?,
            Generator::T => return Err(Error::HasStableLetter),
        }
    }
    Ok(acc)
}

/// Word problem in `H`.
pub fn h_is_identity(w: &Word) -> Result<bool> {
    Ok(eval_h(w)?.is_identity())
}

/// The word `y^m x^j y^(n-m)` where `q = j / 2^m` canonically.
pub fn h_normal_form(a: &AffineElem) -> Word {
    let m = BigInt::from(a.q.den_exp());
    let tail = &a.n - &m;
    Word::from_iter([
        Syllable::new(Generator::Y, m),
        Syllable::new(Generator::X, a.q.numerator().clone()),
        Syllable::new(Generator::Y, tail),
    ])
}

pub fn in_centralizer_of_x(a: &AffineElem) -> bool {
    a.in_centralizer_of_x()
}

/// The embedding of the centralizer of `x` into the dyadic rationals:
/// `y^n x^j y^-n -> j / 2^n`.
pub fn psi(a: &AffineElem) -> Result<Dyadic> {
    if !a.in_centralizer_of_x() {
        return Err(Error::NotInCentralizer {
            y_exponent: a.n.to_string(),
        });
    }
    Ok(a.q.clone())
}

/// Residue of the dyadic `q` in `Z[1/2] / (2^k - 1) = Z / (2^k - 1)`.
fn residue_mod_mersenne(q: &Dyadic, k: u64, modulus: &BigInt) -> BigInt {
    // 2 has order k modulo 2^k - 1, so 2^-e = 2^(k - e mod k).
    let e = q.den_exp() % k;
    let up = (k - e) % k;
    (q.numerator() << (up as usize)).mod_floor(modulus)
}

/// Finds `c` with `c^-1 a c = b` in `H`, if one exists.
///
/// Conjugating `(q, n)` by `(p, m)` gives `(2^m (q + p (2^-n - 1)), n)`. For
/// `n = 0` this is scaling by powers of two. For `n != 0` the class of `q` is
/// its residue modulo `2^|n| - 1` up to doubling.
pub fn h_conjugator(a: &AffineElem, b: &AffineElem, budget: &Budget) -> Result<Option<AffineElem>> {
    if a.n != b.n {
        return Ok(None);
    }
    if a.n.is_zero() {
        return Ok(match (a.q.odd_part(), b.q.odd_part()) {
            (None, None) => Some(AffineElem::identity()),
            (Some((oa, sa)), Some((ob, sb))) if oa == ob => Some(AffineElem::y_pow(sb - sa)),
            _ => None,
        });
    }

    let k =
        a.n.magnitude()
            .to_u64()
            .ok_or_else(|| budget.exceeded(a.n.bits()))?;
    let k_bits = budget.shift_amount(k)?;
    let modulus = (BigInt::one() << k_bits) - 1u32;
    let ra = residue_mod_mersenne(&a.q, k, &modulus);
    let rb = residue_mod_mersenne(&b.q, k, &modulus);
    let mut cur = ra;
    let mut found = None;
    for m in 0..k {
        if cur == rb {
            found = Some(m);
            break;
        }
        cur = (cur << 1usize).mod_floor(&modulus);
    }
    let Some(m) = found else {
        return Ok(None);
    };

    // p = (2^-m q_b - q_a) / (2^-n - 1)
    let m_big = BigInt::from(m);
    let diff =
        b.q.checked_mul_pow2(&-&m_big, budget)?
            .checked_add(&-&a.q, budget)?;
    // 2^-n - 1 = -(2^k - 1) / 2^k for n > 0, and 2^k - 1 for n < 0
    let (scaled, sign) = if a.n.is_positive() {
        (diff.checked_mul_pow2(&BigInt::from(k), budget)?, -1)
    } else {
        (diff, 1)
    };
    let (quot, rem) = scaled.numerator().div_rem(&modulus);
    if !rem.is_zero() {
        return Err(Error::InternalContradiction(format!(
            "residues matched but {scaled} is not divisible by 2^{k} - 1"
        )));
    }
    let p = Dyadic::new(quot * sign, scaled.den_exp());
    Ok(Some(AffineElem::new(p, m_big)))
}

/// Conjugacy decision in `H`.
pub fn h_conjugacy(a: &AffineElem, b: &AffineElem, budget: &Budget) -> Result<bool> {
    Ok(h_conjugator(a, b, budget)?.is_some())
}
