//! Word-size prime fields and Chinese remaindering.
//!
//! Elements are kept in Montgomery form (`x * 2^64 mod p`). Primes sit just
//! below 2^62 so that sums never overflow a `u64`.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub(crate) p: u64,
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
    one: u64,
}

impl Field {
    pub(crate) fn new(p: u64) -> Field {
        assert!(p % 2 == 1 && p < (1 << 62));
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let pinv = inv.wrapping_neg();
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, pinv, r2, one: r }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn one(&self) -> u64 {
        self.one
    }

    /// Montgomery form of a small integer.
    #[inline]
    pub(crate) fn from_u64(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    #[cfg(test)]
    pub(crate) fn from_i64(&self, x: i64) -> u64 {
        let m = self.from_u64(x.unsigned_abs());
        if x < 0 {
            self.neg(m)
        } else {
            m
        }
    }

    /// Canonical residue in `[0, p)`.
    #[inline]
    pub(crate) fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub(crate) fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Montgomery form of a non-negative integer given by little-endian
    /// 64-bit digits.
    pub(crate) fn reduce_digits(&self, digits: impl DoubleEndedIterator<Item = u64>) -> u64 {
        let mut acc = 0u64;
        for d in digits.rev() {
            // acc * 2^64 + d, all in Montgomery form.
            acc = self.add(self.mul(acc, self.r2), self.from_u64(d));
        }
        acc
    }

    pub(crate) fn reduce_biguint(&self, x: &BigUint) -> u64 {
        self.reduce_digits(x.iter_u64_digits())
    }

    pub(crate) fn reduce(&self, x: &BigInt) -> u64 {
        let m = self.reduce_digits(x.magnitude().iter_u64_digits());
        if x.sign() == Sign::Minus {
            self.neg(m)
        } else {
            m
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `i`-th prime below 2^62 counting downwards. The table is a pure
/// function of `i`; it is only cached.
pub(crate) fn prime(i: usize) -> u64 {
    let mut table = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= i {
        let mut c = table.last().copied().unwrap_or(1 << 62) - 1;
        if c % 2 == 0 {
            c -= 1;
        }
        while !is_prime_u64(c) {
            c -= 2;
        }
        table.push(c);
    }
    table[i]
}

/// Number of primes from the table whose product exceeds `2^bits`.
pub(crate) fn primes_for_bits(bits: u64) -> usize {
    // Every table prime exceeds 2^61.
    (bits / 61 + 1) as usize
}

/// Incremental Chinese remaindering of a vector of residues.
pub(crate) struct Crt {
    values: Vec<BigUint>,
    modulus: BigUint,
}

impl Crt {
    pub(crate) fn new(len: usize) -> Crt {
        Crt { values: vec![BigUint::zero(); len], modulus: BigUint::from(1u32) }
    }

    /// Adds residues (canonical, not Montgomery) modulo a new prime `p`.
    pub(crate) fn push(&mut self, f: &Field, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let m_mod = f.reduce_biguint(&self.modulus);
        let m_inv = f.inv(m_mod);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let vm = f.reduce_biguint(v);
            let rm = f.from_u64(r);
            let t = f.to_u64(f.mul(f.sub(rm, vm), m_inv));
            if t != 0 {
                *v += &self.modulus * t;
            }
        }
        self.modulus *= f.p;
    }

    pub(crate) fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    /// Values lifted to the symmetric range `(-M/2, M/2]`.
    pub(crate) fn finish(self) -> Vec<BigInt> {
        self.symmetric()
    }

    pub(crate) fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        let m = BigInt::from(self.modulus.clone());
        self.values
            .iter()
            .map(|v| {
                if *v > half {
                    BigInt::from(v.clone()) - &m
                } else {
                    BigInt::from(v.clone())
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn montgomery_roundtrip() {
        let f = Field::new(prime(0));
        for x in [0u64, 1, 2, 12345678901234, f.p - 1] {
            assert_eq!(f.to_u64(f.from_u64(x)), x);
        }
        let a = f.from_u64(123456789);
        let b = f.from_u64(987654321);
        assert_eq!(f.to_u64(f.mul(a, b)), mulmod(123456789, 987654321, f.p));
        assert_eq!(f.mul(a, f.inv(a)), f.one());
    }

    #[test]
    fn reduction_of_big_integers() {
        let f = Field::new(prime(3));
        let x: BigInt = BigInt::parse_bytes(b"-98765432109876543210987654321098765432109876543210", 10).unwrap();
        let expect = {
            let r = &x % BigInt::from(f.p);
            let r = if r < BigInt::zero() { r + BigInt::from(f.p) } else { r };
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        };
        assert_eq!(f.to_u64(f.reduce(&x)), expect);
    }

    #[test]
    fn primes_are_prime_and_descending() {
        let ps: Vec<u64> = (0..20).map(prime).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62 && p > 1 << 61));
        assert!(!is_prime_u64(3215031751));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn crt_recovers_signed_values() {
        let vals: Vec<BigInt> = vec![
            BigInt::parse_bytes(b"123456789012345678901234567890123456789", 10).unwrap(),
            BigInt::parse_bytes(b"-99999999999999999999999999999999999999", 10).unwrap(),
            BigInt::zero(),
        ];
        let mut crt = Crt::new(3);
        for i in 0..3 {
            let f = Field::new(prime(i));
            let rs: Vec<u64> = vals.iter().map(|v| f.to_u64(f.reduce(v))).collect();
            crt.push(&f, &rs);
        }
        assert_eq!(crt.finish(), vals);
    }
}
