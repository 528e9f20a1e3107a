use crate::error::{Error, Result};

/// Upper bound on the bit length of any integer produced while reducing.
///
/// Words in the Baumslag-Gersten group can denote elements whose exponents
/// form towers of powers of two, so every growth point checks its size
/// against the budget before allocating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    max_bits: u64,
}

impl Budget {
    pub const DEFAULT_BITS: u64 = 1 << 20;
    pub const MIN_BITS: u64 = 64;

    pub fn new(max_bits: u64) -> Result<Self> {
        if max_bits < Self::MIN_BITS {
            return Err(Error::InvalidBudget {
                min: Self::MIN_BITS,
                got: max_bits,
            });
        }
        Ok(Budget { max_bits })
    }

    /// No bound beyond what fits in memory addressing.
    pub const fn unlimited() -> Self {
        Budget { max_bits: u64::MAX }
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    pub fn check(&self, bits: u64) -> Result<()> {
        if bits > self.max_bits {
            Err(self.exceeded(bits))
        } else {
            Ok(())
        }
    }

    pub(crate) fn exceeded(&self, needed: u64) -> Error {
        Error::BudgetExceeded {
            max_bits: self.max_bits,
            needed,
        }
    }

    /// Shift amounts must also fit in `usize` to be performed at all.
    pub(crate) fn shift_amount(&self, bits: u64) -> Result<usize> {
        self.check(bits)?;
        usize::try_from(bits).map_err(|_| self.exceeded(bits))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_bits: Self::DEFAULT_BITS,
        }
    }
}
