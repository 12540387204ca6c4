//! Real roots of univariate polynomials.
//!
//! Roots are isolated exactly with Descartes' rule of signs on dyadic
//! subintervals of a power-of-two root bound, then refined by exact
//! bisection at dyadic points and polished with two Newton steps whose
//! corrections are computed in exact arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gcd::squarefree_decomposition;
use super::rat::{ratio_to_f64, Rat};
use super::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u32,
    /// Isolating interval after refinement.
    pub lo: f64,
    pub hi: f64,
}

/// Dyadic number `num / 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &(BigInt::one() << self.exp as usize))
    }

    fn rescale(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp) as usize
    }
}

fn sign(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sign of `f(num / 2^exp)` for integer coefficients.
fn sign_at(f: &[BigInt], x: &Dyadic) -> i8 {
    sign(&eval_scaled(f, x))
}

/// `2^(exp * deg) * f(num / 2^exp)` as an integer.
fn eval_scaled(f: &[BigInt], x: &Dyadic) -> BigInt {
    let n = f.len() - 1;
    let mut acc = f[n].clone();
    for i in (0..n).rev() {
        acc = &acc * &x.num + (&f[i] << (x.exp as usize * (n - i)));
    }
    acc
}

/// Reverses and shifts by one: coefficients of `(x+1)^n q(1/(x+1))`.
fn descartes_variations(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    let mut count = 0;
    let mut last = 0i8;
    for c in &r {
        let s = sign(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// In-place `q(x) -> q(x + 1)`.
fn taylor_shift_one(q: &mut [BigInt]) {
    let n = q.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = q[j + 1].clone();
            q[j] += t;
        }
    }
}

/// `log2` of a Fujiwara-type bound on the absolute values of the roots.
fn root_bound_log2(f: &[BigInt]) -> u32 {
    let n = f.len() - 1;
    let lb = f[n].bits() as i64;
    let mut best = 0i64;
    for i in 1..=n {
        let c = &f[n - i];
        if c.is_zero() {
            continue;
        }
        let t = c.bits() as i64 - lb + 1;
        let term = if t <= 0 { 0 } else { (t + i as i64 - 1) / i as i64 };
        best = best.max(term);
    }
    (best + 2) as u32
}

/// Isolating intervals `(lo, hi)` of the positive roots of a square-free
/// integer polynomial with `f(0) != 0`, plus exact dyadic roots.
fn isolate_positive(f: &[BigInt]) -> (Vec<(Dyadic, Dyadic)>, Vec<Dyadic>) {
    let bk = root_bound_log2(f);
    // q(x) = f(2^bk x), roots in (0, 1).
    let q0: Vec<BigInt> = f.iter().enumerate().map(|(i, c)| c << (bk as usize * i)).collect();
    let mut intervals = Vec::new();
    let mut exact = Vec::new();
    // (polynomial, level k, index c): interval (c/2^k, (c+1)/2^k) in x.
    let mut stack = vec![(q0, 0u32, BigInt::zero())];
    while let Some((mut q, k, c)) = stack.pop() {
        if q[0].is_zero() {
            // Root at the left endpoint.
            exact.push(Dyadic { num: c.clone(), exp: k }.scaled_by_bound(bk));
            q.remove(0);
        }
        if q.len() <= 1 {
            continue;
        }
        match descartes_variations(&q) {
            0 => {}
            1 => {
                let lo = Dyadic { num: c.clone(), exp: k }.scaled_by_bound(bk);
                let hi = Dyadic { num: &c + 1, exp: k }.scaled_by_bound(bk);
                intervals.push((lo, hi));
            }
            _ => {
                let m = q.len() - 1;
                let mut left: Vec<BigInt> = q.iter().enumerate().map(|(i, a)| a << (m - i)).collect();
                strip_twos(&mut left);
                let mut right = left.clone();
                taylor_shift_one(&mut right);
                let c2 = &c * 2;
                stack.push((right, k + 1, &c2 + 1));
                stack.push((left, k + 1, c2));
            }
        }
    }
    (intervals, exact)
}

fn strip_twos(q: &mut [BigInt]) {
    let tz = q.iter().filter(|c| !c.is_zero()).filter_map(|c| c.trailing_zeros()).min().unwrap_or(0);
    if tz > 0 {
        for c in q.iter_mut() {
            *c = &*c >> tz as usize;
        }
    }
}

impl Dyadic {
    /// Multiplies by `2^bk`.
    fn scaled_by_bound(self, bk: u32) -> Dyadic {
        if self.exp >= bk {
            Dyadic { num: self.num, exp: self.exp - bk }
        } else {
            Dyadic { num: self.num << (bk - self.exp) as usize, exp: 0 }
        }
    }

    fn neg(&self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

/// Exact dyadic value of a finite double.
fn dyadic_from_f64(x: f64) -> Option<Dyadic> {
    let r = Rat::from_float(x)?;
    let exp = r.denom().trailing_zeros().unwrap_or(0) as u32;
    Some(Dyadic { num: r.numer().clone(), exp })
}

/// Refines an isolating interval of a simple root by exact bisection.
fn refine(f: &[BigInt], lo: Dyadic, hi: Dyadic, tol: f64) -> (f64, f64, f64) {
    let deriv: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut e = lo.exp.max(hi.exp);
    let mut a = lo.rescale(e);
    let mut b = hi.rescale(e);
    // Sign of f just to the right of a.
    let mut sa = sign_at(f, &Dyadic { num: a.clone(), exp: e });
    if sa == 0 {
        sa = sign_at(&deriv, &Dyadic { num: a.clone(), exp: e });
    }
    loop {
        let width = ratio_to_f64(&(&b - &a), &(BigInt::one() << e as usize));
        let mid_f = ratio_to_f64(&(&a + &b), &(BigInt::one() << (e as usize + 1)));
        if width <= tol * mid_f.abs().max(1.0) || e > 4000 {
            break;
        }
        e += 1;
        a <<= 1;
        b <<= 1;
        let m: BigInt = (&a + &b) >> 1;
        let sm = sign_at(f, &Dyadic { num: m.clone(), exp: e });
        match sm.cmp(&0) {
            Ordering::Equal => {
                let v = Dyadic { num: m, exp: e }.to_f64();
                return (v, v, v);
            }
            _ if sm == sa => a = m,
            _ => b = m,
        }
    }
    let lo_f = Dyadic { num: a, exp: e }.to_f64();
    let hi_f = Dyadic { num: b, exp: e }.to_f64();
    let mut x = 0.5 * (lo_f + hi_f);
    for _ in 0..2 {
        let Some(d) = dyadic_from_f64(x) else { break };
        // f(x) / f'(x) = 2^-e * eval_scaled(f) / eval_scaled(f')
        let fx = eval_scaled(f, &d);
        let dx = eval_scaled(&deriv, &d);
        if fx.is_zero() || dx.is_zero() {
            break;
        }
        let step = ratio_to_f64(&fx, &(dx << d.exp as usize));
        let next = x - step;
        if next >= lo_f && next <= hi_f {
            x = next;
        } else {
            break;
        }
    }
    (x, lo_f, hi_f)
}

/// Real roots of a square-free integer polynomial, ascending.
fn squarefree_real_roots(f: &[BigInt], tol: f64) -> Vec<(f64, f64, f64)> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push((0.0, 0.0, 0.0));
        f.remove(0);
    }
    if f.len() <= 1 {
        return out;
    }
    let (pos_iv, pos_ex) = isolate_positive(&f);
    let neg_f: Vec<BigInt> = f.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let (neg_iv, neg_ex) = isolate_positive(&neg_f);
    for d in pos_ex {
        let v = d.to_f64();
        out.push((v, v, v));
    }
    for d in neg_ex {
        let v = d.neg().to_f64();
        out.push((v, v, v));
    }
    for (lo, hi) in pos_iv {
        out.push(refine(&f, lo, hi, tol));
    }
    for (lo, hi) in neg_iv {
        // Roots of f(-x) in (lo, hi) are roots of f in (-hi, -lo).
        out.push(refine(&f, hi.neg(), lo.neg(), tol));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// All real roots of `p` with multiplicities, ascending. Each simple root of
/// the square-free part is bisected until its interval is narrower than
/// `tol * max(1, |x|)` and then polished.
pub fn real_roots(p: &UniPoly, tol: f64) -> Vec<RealRoot> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(p) {
        for (value, lo, hi) in squarefree_real_roots(factor.int_coeffs(), tol) {
            out.push(RealRoot { value, multiplicity: mult, lo, hi });
        }
    }
    out.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    out
}

/// Root values only.
pub fn real_root_values(p: &UniPoly, tol: f64) -> Vec<f64> {
    real_roots(p, tol).into_iter().map(|r| r.value).collect()
}

/// Number of distinct real roots (no refinement).
pub fn count_real_roots(p: &UniPoly) -> usize {
    real_roots(p, 1e-3).len()
}
