//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{gcd_all, gcd_step};
use super::rat::{lcm_denominators, ratio_to_f64, Rat};
use crate::error::{Error, Result};

/// Integer coefficients (index = degree, no trailing zeros) over a shared
/// positive denominator coprime to their content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl UniPoly {
    pub fn new(var: &str, coeffs: &[Rat]) -> UniPoly {
        let den = lcm_denominators(coeffs.iter());
        let c = coeffs.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        UniPoly::from_int_coeffs(var, c, den)
    }

    pub fn from_ints(var: &str, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(var, coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    pub fn from_int_coeffs(var: &str, coeffs: Vec<BigInt>, den: BigInt) -> UniPoly {
        assert!(!den.is_zero(), "zero denominator");
        UniPoly { var: var.to_string(), coeffs, den }.normalized()
    }

    pub fn zero(var: &str) -> UniPoly {
        UniPoly { var: var.to_string(), coeffs: Vec::new(), den: BigInt::one() }
    }

    pub fn one(var: &str) -> UniPoly {
        UniPoly::from_ints(var, &[1])
    }

    pub fn x(var: &str) -> UniPoly {
        UniPoly::from_ints(var, &[0, 1])
    }

    fn normalized(mut self) -> UniPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.coeffs {
                if g.is_one() {
                    break;
                }
                g = gcd_step(&g, c);
            }
            if !g.is_one() {
                self.den = &self.den / &g;
                for c in self.coeffs.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> UniPoly {
        self.var = var.to_string();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn int_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> Rat {
        match self.coeffs.get(i) {
            Some(c) => Rat::new(c.clone(), self.den.clone()),
            None => Rat::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn lc(&self) -> Rat {
        self.coeff(self.degree())
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(&self.var);
        }
        let coeffs = self.coeffs.iter().map(|x| x * c.numer()).collect();
        UniPoly { var: self.var.clone(), coeffs, den: &self.den * c.denom() }.normalized()
    }

    /// `(c, q)` with `self = c * q`, `q` integer-primitive with positive
    /// leading coefficient.
    pub fn primitive(&self) -> (Rat, UniPoly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut g = gcd_all(self.coeffs.iter());
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        let coeffs = self.coeffs.iter().map(|c| c / &g).collect();
        (Rat::new(g, self.den.clone()), UniPoly { var: self.var.clone(), coeffs, den: BigInt::one() })
    }

    pub fn primitive_part(&self) -> UniPoly {
        self.primitive().1
    }

    pub fn is_primitive(&self) -> bool {
        self.den.is_one()
            && self.coeffs.last().is_some_and(|c| c.is_positive())
            && gcd_all(self.coeffs.iter()).is_one()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let n = self.degree() as u32;
        let q = x.denom();
        Rat::new(self.eval_homogeneous(x), &self.den * num_traits::pow(q.clone(), n as usize))
    }

    /// `q^n * (den * p)(x)` for `x = p/q` as an integer: one reduction at the
    /// end instead of one per Horner step.
    fn eval_homogeneous(&self, x: &Rat) -> BigInt {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc
    }

    /// Float evaluation with the coefficients pre-scaled so that very large
    /// integers do not overflow; returns `p(x)` up to the positive factor
    /// `2^-k / den` and `k` (so the sign and zero set are those of `p`).
    pub fn eval_scaled_f64(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let top = self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
        let k = (top - 60).max(0) as usize;
        let one = BigInt::one();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ratio_to_f64(c, &(&one << k));
        }
        acc
    }

    /// `|p(x)| / sum |c_i| |x|^i` computed exactly at the binary value of `x`.
    pub fn relative_residual(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let xr = Rat::from_float(x).expect("finite evaluation point");
        let ax = xr.abs();
        let mut v = Rat::zero();
        let mut m = Rat::zero();
        for c in self.coeffs.iter().rev() {
            let cr = Rat::from_integer(c.clone());
            v = v * &xr + &cr;
            m = m * &ax + cr.abs();
        }
        if m.is_zero() {
            return 0.0;
        }
        let r = v.abs() / m;
        ratio_to_f64(r.numer(), r.denom())
    }

    /// `|p(x) / p'(x)|` computed exactly at the binary value of `x`: the
    /// Newton step, an estimate of the distance to the nearest simple root.
    pub fn newton_step(&self, x: f64) -> f64 {
        let xr = Rat::from_float(x).expect("finite evaluation point");
        let v = self.eval(&xr);
        if v.is_zero() {
            return 0.0;
        }
        let d = self.derivative().eval(&xr);
        if d.is_zero() {
            return f64::INFINITY;
        }
        let r = (v / d).abs();
        ratio_to_f64(r.numer(), r.denom())
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        UniPoly::from_int_coeffs(&self.var, coeffs, self.den.clone())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut r = UniPoly::one(&self.var);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    fn same_var(&self, o: &UniPoly) -> String {
        if self.var == o.var || o.degree() == 0 {
            self.var.clone()
        } else if self.degree() == 0 {
            o.var.clone()
        } else {
            panic!("variable mismatch: {} vs {}", self.var, o.var)
        }
    }

    fn combine(&self, o: &UniPoly, sign: i8) -> UniPoly {
        let var = self.same_var(o);
        let l = self.den.lcm(&o.den);
        let fa = &l / &self.den;
        let fb = &l / &o.den;
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero) * &fa;
                let b = o.coeffs.get(i).unwrap_or(&zero) * &fb;
                if sign > 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        UniPoly { var, coeffs, den: l }.normalized()
    }

    fn product(&self, o: &UniPoly) -> UniPoly {
        let var = self.same_var(o);
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&var);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly { var, coeffs, den: &self.den * &o.den }.normalized()
    }

    /// Exact quotient, or `NotDivisible`.
    pub fn exact_div(&self, q: &UniPoly) -> Result<UniPoly> {
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_zero() {
            return Ok(UniPoly::zero(&self.var));
        }
        let (qc, qp) = q.primitive();
        let n = self.coeffs.len();
        let m = qp.coeffs.len();
        if n < m {
            return Err(Error::NotDivisible);
        }
        let lc = qp.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let (t, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, c) in qp.coeffs.iter().enumerate() {
                rem[k + j] -= c * &t;
            }
            quot[k] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        let out = UniPoly { var: self.var.clone(), coeffs: quot, den: BigInt::one() };
        Ok(out.scale(&(Rat::one() / (Rat::from_integer(self.den.clone()) * qc))))
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, q: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        let a = self.coeffs();
        let b = q.coeffs();
        if a.len() < b.len() {
            return Ok((UniPoly::zero(&self.var), self.clone()));
        }
        let mut rem = a;
        let lc = b.last().unwrap().clone();
        let mut quot = vec![Rat::zero(); rem.len() - b.len() + 1];
        for k in (0..quot.len()).rev() {
            let t = &rem[k + b.len() - 1] / &lc;
            if t.is_zero() {
                continue;
            }
            for (j, c) in b.iter().enumerate() {
                rem[k + j] -= c * &t;
            }
            quot[k] = t;
        }
        Ok((UniPoly::new(&self.var, &quot), UniPoly::new(&self.var, &rem)))
    }

    /// Largest coefficient size in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = super::mpoly::MPoly::from_unipoly(self);
        write!(f, "{m}")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        self.combine(o, 1)
    }
}
impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        self.combine(o, -1)
    }
}
impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        self.product(o)
    }
}
impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::rat;

    #[test]
    fn construction_trims_and_normalizes() {
        let p = UniPoly::new("s", &[rat(1, 2), rat(0, 1), rat(3, 4), rat(0, 1)]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.den(), &BigInt::from(4));
        assert_eq!(p.coeff(0), rat(1, 2));
        assert_eq!(p.lc(), rat(3, 4));
    }

    #[test]
    fn arithmetic() {
        let a = UniPoly::from_ints("s", &[1, 1]);
        let b = UniPoly::from_ints("s", &[-1, 1]);
        assert_eq!(&a * &b, UniPoly::from_ints("s", &[-1, 0, 1]));
        assert_eq!(&a + &b, UniPoly::from_ints("s", &[0, 2]));
        assert_eq!(&a - &a, UniPoly::zero("s"));
        assert_eq!(a.pow(3), UniPoly::from_ints("s", &[1, 3, 3, 1]));
    }

    #[test]
    fn exact_division() {
        let p = UniPoly::from_ints("s", &[-1, 0, 0, 0, 1]);
        let q = UniPoly::from_ints("s", &[1, 0, 1]);
        assert_eq!(p.exact_div(&q).unwrap(), UniPoly::from_ints("s", &[-1, 0, 1]));
        let r = UniPoly::from_ints("s", &[1, 1]);
        assert!(q.exact_div(&r).is_err());
        let half = q.scale(&rat(1, 2));
        assert_eq!(p.exact_div(&half).unwrap(), UniPoly::from_ints("s", &[-2, 0, 2]));
    }

    #[test]
    fn euclidean_division() {
        let p = UniPoly::from_ints("s", &[1, 0, 1]);
        let q = UniPoly::from_ints("s", &[1, 2]);
        let (d, r) = p.div_rem(&q).unwrap();
        assert_eq!(&(&d * &q) + &r, p);
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn evaluation() {
        let p = UniPoly::from_ints("s", &[-4, 0, 1]);
        assert!(p.eval(&rat(2, 1)).is_zero());
        assert_eq!(p.eval(&rat(1, 2)), rat(-15, 4));
        assert_eq!(p.relative_residual(2.0), 0.0);
        assert!(p.eval_scaled_f64(3.0) > 0.0);
        assert_eq!(p.derivative(), UniPoly::from_ints("s", &[0, 2]));
    }

    #[test]
    fn primitive_form() {
        let p = UniPoly::new("s", &[rat(-2, 3), rat(0, 1), rat(-4, 9)]);
        let (c, q) = p.primitive();
        assert_eq!(q, UniPoly::from_ints("s", &[3, 0, 2]));
        assert_eq!(c, rat(-2, 9));
        assert!(q.is_primitive());
    }
}
