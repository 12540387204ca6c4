//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Exact conversion of a finite binary float. Returns `None` for NaN and
/// infinities.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(rs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for r in rs {
        if !r.denom().is_one() {
            l = l.lcm(r.denom());
        }
    }
    l
}

/// `a / b` rounded to f64 without first converting each side (both may be
/// far outside the f64 range).
pub fn ratio_to_f64(a: &BigInt, b: &BigInt) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let sa = a.bits() as i64;
    let sb = b.bits() as i64;
    // Keep about 64 significant bits on each side.
    let ka = (sa - 64).max(0);
    let kb = (sb - 64).max(0);
    let ta = (a.abs() >> ka as usize).to_f64().unwrap();
    let tb = (b.abs() >> kb as usize).to_f64().unwrap();
    let mag = ta / tb * 2f64.powi((ka - kb) as i32);
    if a.is_negative() != b.is_negative() {
        -mag
    } else {
        mag
    }
}
