//! Exact dyadic rationals `num / 2^den_exp`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Denominators up to `2^DECIMAL_DEN_LIMIT` print as a decimal integer; larger
/// ones print as `2^n`.
const DECIMAL_DEN_LIMIT: u64 = 64;

/// A dyadic rational in canonical form: the numerator is odd, or the value
/// is zero and stored as `0 / 2^0`. Equality is therefore field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    den_exp: u64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, den_exp: u64) -> Self {
        let mut num = num.into();
        let mut den_exp = den_exp;
        if num.is_zero() {
            den_exp = 0;
        } else {
            let tz = num.trailing_zeros().expect("nonzero").min(den_exp);
            if tz > 0 {
                num >>= tz;
                den_exp -= tz;
            }
        }
        Dyadic { num, den_exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            den_exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_integer(1)
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Dyadic {
            num: k.into(),
            den_exp: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn den_exp(&self) -> u64 {
        self.den_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den_exp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Writes a nonzero value as `odd * 2^shift` with `odd` odd (sign kept).
    pub fn odd_part(&self) -> Option<(BigInt, i128)> {
        if self.is_zero() {
            return None;
        }
        if self.den_exp > 0 {
            return Some((self.num.clone(), -(self.den_exp as i128)));
        }
        let tz = self.num.trailing_zeros().expect("nonzero");
        Some((&self.num >> tz, tz as i128))
    }

    pub fn bits(&self) -> u64 {
        self.num.bits()
    }

    pub fn checked_add(&self, other: &Dyadic, budget: &Budget) -> Result<Dyadic> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let (hi, lo) = if self.den_exp >= other.den_exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = hi.den_exp - lo.den_exp;
        let needed = lo.num.bits().saturating_add(shift);
        let shift = budget.shift_amount(needed).map(|_| shift as usize)?;
        let sum = &hi.num + (&lo.num << shift);
        let out = Dyadic::new(sum, hi.den_exp);
        budget.check(out.bits())?;
        Ok(out)
    }

    /// `self * 2^k`.
    pub fn checked_mul_pow2(&self, k: &BigInt, budget: &Budget) -> Result<Dyadic> {
        if self.is_zero() || k.is_zero() {
            return Ok(self.clone());
        }
        let mag = k.magnitude();
        let Some(mag) = mag.to_u64() else {
            return Err(budget.exceeded(u64::MAX));
        };
        if k.is_negative() {
            let den_exp = self
                .den_exp
                .checked_add(mag)
                .ok_or_else(|| budget.exceeded(u64::MAX))?;
            return Ok(Dyadic::new(self.num.clone(), den_exp));
        }
        if mag <= self.den_exp {
            return Ok(Dyadic::new(self.num.clone(), self.den_exp - mag));
        }
        let shift = mag - self.den_exp;
        let needed = self.num.bits().saturating_add(shift);
        let shift = budget.shift_amount(needed).map(|_| shift as usize)?;
        Ok(Dyadic {
            num: &self.num << shift,
            den_exp: 0,
        })
    }

    pub fn mul_pow2(&self, k: &BigInt) -> Dyadic {
        self.checked_mul_pow2(k, &Budget::unlimited())
            .expect("dyadic shift exceeds addressable memory")
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(k: i64) -> Self {
        Dyadic::from_integer(k)
    }
}

impl From<BigInt> for Dyadic {
    fn from(k: BigInt) -> Self {
        Dyadic::from_integer(k)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            den_exp: self.den_exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            den_exp: self.den_exp,
        }
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        self.checked_add(rhs, &Budget::unlimited())
            .expect("dyadic sum exceeds addressable memory")
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare a/2^p with b/2^q via a*2^q vs b*2^p
        let (p, q) = (self.den_exp, other.den_exp);
        let lhs = &self.num << (q.saturating_sub(p) as usize);
        let rhs = &other.num << (p.saturating_sub(q) as usize);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_exp {
            0 => write!(f, "{}", self.num),
            e if e <= DECIMAL_DEN_LIMIT => write!(f, "{}/{}", self.num, BigInt::one() << e),
            e => write!(f, "{}/2^{}", self.num, e),
        }
    }
}

fn dyadic_syntax(offset: usize, message: &str) -> Error {
    Error::Syntax {
        offset,
        message: message.to_string(),
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `j`, `j/d` with `d` a power of two, and `j/2^n`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let lead = s.len() - s.trim_start().len();
        let is_int = |t: &str| {
            let digits = t.strip_prefix('-').unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        let (num_text, den_text) = match text.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        if !is_int(num_text) {
            return Err(dyadic_syntax(lead, "expected an integer numerator"));
        }
        let num: BigInt = num_text.parse().expect("validated integer");
        let Some(den_text) = den_text else {
            return Ok(Dyadic::from_integer(num));
        };
        let den_at = lead + num_text.len() + 1;
        if let Some(exp_text) = den_text.strip_prefix("2^") {
            if exp_text.is_empty() || !exp_text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(dyadic_syntax(
                    den_at + 2,
                    "expected a nonnegative exponent after 2^",
                ));
            }
            let e: u64 = exp_text
                .parse()
                .map_err(|_| dyadic_syntax(den_at + 2, "denominator exponent too large"))?;
            return Ok(Dyadic::new(num, e));
        }
        if den_text.is_empty() || !den_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(dyadic_syntax(den_at, "expected a power-of-two denominator"));
        }
        let den: BigInt = den_text.parse().expect("validated integer");
        if den.is_zero() || den.magnitude().count_ones() != 1 {
            return Err(dyadic_syntax(den_at, "denominator is not a power of two"));
        }
        let e = den.trailing_zeros().expect("nonzero");
        Ok(Dyadic::new(num, e))
    }
}
