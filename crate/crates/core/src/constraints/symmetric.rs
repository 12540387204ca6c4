//! Reduction of polynomials that are symmetric under `u -> -1/u` to
//! polynomials in `ut = u - 1/u`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MPoly, Rat};

fn binom(n: i64, k: i64) -> BigInt {
    if n == -1 && k == -1 {
        return BigInt::one();
    }
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficient of `ut^(k2)` in `u^(i2) + (-1)^(i2) u^(-i2)`; arguments are
/// doubled indices, so both must have the same parity.
pub fn kappa(i2: i64, k2: i64) -> Result<BigInt> {
    if k2 < 0 || i2 < k2 || (i2 - k2) % 2 != 0 {
        return Err(Error::BadIndex(i2, k2));
    }
    let (a, b) = ((i2 + k2) / 2, (i2 - k2) / 2);
    Ok(binom(a, b) + binom(a - 1, b - 1))
}

/// `u^m + (-1)^m u^-m` as a polynomial in `ut`.
pub fn chebyshev_like(m: u32, ut: &str) -> MPoly {
    let x = MPoly::var(ut);
    let mut acc = MPoly::zero();
    for k in (m % 2..=m).step_by(2) {
        let c = kappa(m as i64, k as i64).expect("valid index");
        acc = &acc + &x.pow(k).scale(&Rat::from_integer(c));
    }
    acc
}

/// Given `h` of degree at most `2 half` in `u` with coefficients
/// `c_{half+m} (-1)^m = c_{half-m}`, returns `ht` with
/// `h = u^half ht(u - 1/u)`.
pub fn symmetric_reduce(h: &MPoly, u: &str, ut: &str, half: u32) -> Result<MPoly> {
    let cs = h.coeffs_in(u);
    if cs.len() > 2 * half as usize + 1 {
        return Err(Error::NotSymmetric);
    }
    let coeff = |k: usize| cs.get(k).cloned().unwrap_or_else(MPoly::zero);
    let mut out = MPoly::zero();
    for m in 0..=half {
        let hi = coeff((half + m) as usize);
        let lo = coeff((half - m) as usize);
        let paired = if m % 2 == 0 { hi.clone() } else { -&hi };
        if paired != lo {
            return Err(Error::NotSymmetric);
        }
        let p = if m == 0 { hi.scale(&Rat::new(BigInt::one(), BigInt::from(2))) } else { hi };
        if !p.is_zero() {
            out = &out + &(&p * &chebyshev_like(m, ut));
        }
    }
    Ok(out)
}
