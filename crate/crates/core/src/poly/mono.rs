//! Packed exponent vectors.
//!
//! A monomial is stored as sixteen 8-bit exponent fields inside a `u128`,
//! variable 0 in the most significant byte. Integer order on the packed
//! word is therefore lexicographic order on exponent vectors, which is a
//! valid monomial order for division.

pub const MAX_VARS: usize = 16;
pub const MAX_EXP: u32 = 255;

const FIELD_BITS: u32 = 8;
const FIELD_MASK: u128 = 0xff;
// Lowest bit of every field except field 15 (the most significant); a carry
// out of field k lands here.
const CARRY_BITS: u128 = {
    let mut m = 0u128;
    let mut k = 1;
    while k < MAX_VARS {
        m |= 1u128 << (k as u32 * FIELD_BITS);
        k += 1;
    }
    m
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(pub(crate) u128);

#[inline]
fn shift(var: usize) -> u32 {
    (MAX_VARS - 1 - var) as u32 * FIELD_BITS
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Option<Mono> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut w = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXP {
                return None;
            }
            w |= (e as u128) << shift(i);
        }
        Some(Mono(w))
    }

    pub fn var(var: usize, exp: u32) -> Mono {
        debug_assert!(var < MAX_VARS && exp <= MAX_EXP);
        Mono((exp as u128) << shift(var))
    }

    #[inline]
    pub fn exp(self, var: usize) -> u32 {
        ((self.0 >> shift(var)) & FIELD_MASK) as u32
    }

    #[inline]
    pub fn with_exp(self, var: usize, exp: u32) -> Mono {
        debug_assert!(exp <= MAX_EXP);
        let s = shift(var);
        Mono((self.0 & !(FIELD_MASK << s)) | ((exp as u128) << s))
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product of monomials; `None` when some exponent exceeds [`MAX_EXP`].
    #[inline]
    pub fn mul(self, other: Mono) -> Option<Mono> {
        let (s, overflow) = self.0.overflowing_add(other.0);
        if overflow || (self.0 ^ other.0 ^ s) & CARRY_BITS != 0 {
            None
        } else {
            Some(Mono(s))
        }
    }

    /// Quotient `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(self, other: Mono) -> Option<Mono> {
        let (s, underflow) = self.0.overflowing_sub(other.0);
        if underflow || (self.0 ^ other.0 ^ s) & CARRY_BITS != 0 {
            None
        } else {
            Some(Mono(s))
        }
    }

    pub fn pow(self, k: u32) -> Option<Mono> {
        let mut acc = Mono::ONE;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }

    pub fn total_degree(self, nvars: usize) -> u32 {
        (0..nvars).map(|i| self.exp(i)).sum()
    }

    pub fn weighted_degree(self, weights: &[u32]) -> u64 {
        weights
            .iter()
            .enumerate()
            .map(|(i, &w)| self.exp(i) as u64 * w as u64)
            .sum()
    }

    /// Square root of a monomial whose exponents are all even.
    pub fn sqrt(self, nvars: usize) -> Option<Mono> {
        let mut out = Mono::ONE;
        for i in 0..nvars {
            let e = self.exp(i);
            if e % 2 != 0 {
                return None;
            }
            out = out.with_exp(i, e / 2);
        }
        Some(out)
    }
}
