//! Packed exponent vectors.
//!
//! Up to eight variables, sixteen bits each, packed into a `u128` with
//! variable 0 in the most significant lane, so integer comparison of the
//! packed words is lexicographic order.

use std::hash::{BuildHasherDefault, Hasher};

pub(crate) const MAX_VARS: usize = 8;
const LANE: u32 = 16;
const LANE_MASK: u128 = 0xffff;
/// Top bit of every lane. Exponents are kept below 2^15 so a lane-wise sum
/// never carries; a set high bit after addition means overflow.
const HIGH_BITS: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;
pub(crate) const MAX_EXP: u32 = (1 << 15) - 1;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub(crate) struct Mono(pub(crate) u128);

#[inline]
fn shift(i: usize) -> u32 {
    (MAX_VARS - 1 - i) as u32 * LANE
}

impl Mono {
    pub(crate) const ONE: Mono = Mono(0);

    pub(crate) fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables supported");
        let mut w = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} exceeds {MAX_EXP}");
            w |= (e as u128) << shift(i);
        }
        Mono(w)
    }

    #[inline]
    pub(crate) fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & LANE_MASK) as u32
    }

    pub(crate) fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub(crate) fn with_exp(self, i: usize, e: u32) -> Mono {
        assert!(e <= MAX_EXP);
        let s = shift(i);
        Mono((self.0 & !(LANE_MASK << s)) | ((e as u128) << s))
    }

    #[inline]
    pub(crate) fn mul(self, o: Mono) -> Mono {
        let w = self.0 + o.0;
        assert!(w & HIGH_BITS == 0, "monomial exponent overflow");
        Mono(w)
    }

    /// `self / o` when every exponent of `o` is at most that of `self`.
    #[inline]
    pub(crate) fn div(self, o: Mono) -> Option<Mono> {
        // Lanes stay below 2^15, so borrowing out of a lane sets its high bit.
        let w = (self.0 | HIGH_BITS).wrapping_sub(o.0);
        if w & HIGH_BITS != HIGH_BITS {
            return None;
        }
        Some(Mono(w & !HIGH_BITS))
    }

    pub(crate) fn total(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }
}

/// Multiplicative hash for packed monomials; the default SipHash is a
/// noticeable share of multiplication time.
#[derive(Default)]
pub(crate) struct MonoHasher(u64);

impl Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u128(&mut self, x: u128) {
        let folded = (x as u64) ^ ((x >> 64) as u64).rotate_left(29);
        self.0 = (self.0 ^ folded).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 ^= self.0 >> 32;
    }
}

pub(crate) type MonoMap<V> = std::collections::HashMap<Mono, V, BuildHasherDefault<MonoHasher>>;
