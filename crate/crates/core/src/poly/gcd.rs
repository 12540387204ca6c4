//! Univariate GCD, content, square roots and square-free decomposition.
//!
//! GCDs are computed modulo word-size primes, lifted by Chinese
//! remaindering and accepted only after exact trial division, so the
//! results are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::modular::{prime, Crt, Field};
use super::mpoly::MPoly;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

fn reduce_poly(f: &Field, c: &[BigInt]) -> Vec<u64> {
    let mut v: Vec<u64> = c.iter().map(|x| f.reduce(x)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic GCD over `F_p` by the Euclidean algorithm.
pub(crate) fn gcd_mod(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        // a mod b
        let inv = f.inv(*b.last().unwrap());
        let n = b.len() - 1;
        while a.len() > n {
            let top = *a.last().unwrap();
            if top != 0 {
                let t = f.mul(top, inv);
                let off = a.len() - 1 - n;
                for j in 0..=n {
                    a[off + j] = f.sub(a[off + j], f.mul(t, b[j]));
                }
            }
            a.pop();
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = f.inv(lc);
        for x in a.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    a
}

fn primitive_ints(c: &[BigInt]) -> Vec<BigInt> {
    let p = UniPoly::from_int_coeffs("_", c.to_vec(), BigInt::one()).primitive_part();
    p.int_coeffs().to_vec()
}

/// GCD of two integer polynomials, primitive with positive leading
/// coefficient. Both inputs must be nonzero.
fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let pa = primitive_ints(a);
    let pb = primitive_ints(b);
    if pa.len() == 1 || pb.len() == 1 {
        return vec![BigInt::one()];
    }
    let lc_gcd = num_integer::Integer::gcd(pa.last().unwrap(), pb.last().unwrap());
    let ua = UniPoly::from_int_coeffs("_", pa.clone(), BigInt::one());
    let ub = UniPoly::from_int_coeffs("_", pb.clone(), BigInt::one());
    let mut best: Option<(usize, Crt)> = None;
    let mut last: Option<Vec<BigInt>> = None;
    for i in 0.. {
        let f = Field::new(prime(i));
        let ra = reduce_poly(&f, &pa);
        let rb = reduce_poly(&f, &pb);
        if ra.len() != pa.len() || rb.len() != pb.len() {
            continue; // prime divides a leading coefficient
        }
        let g = gcd_mod(&f, &ra, &rb);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        // Scale so the leading coefficient is gcd(lc(a), lc(b)).
        let s = f.reduce(&lc_gcd);
        let scaled: Vec<u64> = g.iter().map(|&x| f.to_u64(f.mul(x, s))).collect();
        match &mut best {
            Some((d, _)) if deg > *d => continue,
            Some((d, crt)) if deg == *d => crt.push(&f, &scaled),
            _ => {
                let mut crt = Crt::new(deg + 1);
                crt.push(&f, &scaled);
                best = Some((deg, crt));
                last = None;
                continue;
            }
        }
        let cand = best.as_ref().unwrap().1.symmetric();
        if last.as_ref() == Some(&cand) {
            let h = UniPoly::from_int_coeffs("_", cand.clone(), BigInt::one()).primitive_part();
            if ua.exact_div(&h).is_ok() && ub.exact_div(&h).is_ok() {
                return h.int_coeffs().to_vec();
            }
        }
        last = Some(cand);
    }
    unreachable!()
}

/// GCD of univariate polynomials, returned integer-primitive with positive
/// leading coefficient (the zero polynomial if both inputs are zero).
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let var = if a.is_zero() { b.var() } else { a.var() };
    match (a.is_zero(), b.is_zero()) {
        (true, true) => UniPoly::zero(var),
        (true, false) => b.primitive_part(),
        (false, true) => a.primitive_part(),
        _ => UniPoly::from_int_coeffs(var, gcd_int(a.int_coeffs(), b.int_coeffs()), BigInt::one()),
    }
}

/// True when `gcd(p, p') = 1`, decided by one prime that keeps the degree
/// of `p` and the discriminant nonzero; `false` means "unknown or not
/// square-free" only if every prime tried says so.
pub fn is_squarefree(p: &UniPoly) -> bool {
    if p.degree() <= 1 {
        return true;
    }
    let c = p.primitive_part();
    let d = c.derivative().primitive_part();
    for i in 0..4 {
        let f = Field::new(prime(i));
        let ra = reduce_poly(&f, c.int_coeffs());
        if ra.len() != c.int_coeffs().len() {
            continue;
        }
        let rb = reduce_poly(&f, d.int_coeffs());
        if gcd_mod(&f, &ra, &rb).len() == 1 {
            return true;
        }
    }
    uni_gcd(&c, &d).degree() == 0
}

/// GCD of all coefficients of `p` with respect to `var`. The coefficients
/// must be univariate in one common remaining variable.
pub fn content(p: &MPoly, var: &str) -> Result<UniPoly> {
    let coeffs = p.coeffs_in(var);
    let mut others: Vec<String> = coeffs.iter().flat_map(|c| c.support_vars()).collect();
    others.sort();
    others.dedup();
    if others.len() > 1 {
        return Err(Error::Precondition(format!(
            "content needs univariate coefficients, found variables {others:?}"
        )));
    }
    let y = others.pop().unwrap_or_else(|| {
        p.vars().iter().find(|v| *v != var).cloned().unwrap_or_else(|| var.to_string())
    });
    let mut g = UniPoly::zero(&y);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let u = c.to_unipoly(&y).expect("univariate coefficient");
        g = uni_gcd(&g, &u);
        if g.degree() == 0 {
            return Ok(UniPoly::one(&y));
        }
    }
    Ok(g)
}

/// Square root up to a positive scalar: `q` integer-primitive with positive
/// leading coefficient and `q^2 = c p` for some rational `c > 0`.
pub fn poly_sqrt(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.degree() % 2 == 1 {
        return Err(Error::NotASquare);
    }
    let (c, pp) = p.primitive();
    if c.is_negative() {
        return Err(Error::NotASquare);
    }
    let a = pp.int_coeffs();
    let n = p.degree() / 2;
    let lc = &a[2 * n];
    let r = lc.sqrt();
    if &(&r * &r) != lc {
        return Err(Error::NotASquare);
    }
    let mut q = vec![BigInt::zero(); n + 1];
    q[n] = r;
    let two_lead = &q[n] * 2;
    for k in (0..n).rev() {
        // Coefficient of x^(n+k) in q^2.
        let mut acc = a[n + k].clone();
        for i in k + 1..n {
            let j = n + k - i;
            if j > k && j <= n {
                acc -= &q[i] * &q[j];
            }
        }
        let (t, rem) = num_integer::Integer::div_rem(&acc, &two_lead);
        if !rem.is_zero() {
            return Err(Error::NotASquare);
        }
        q[k] = t;
    }
    let out = UniPoly::from_int_coeffs(p.var(), q, BigInt::one());
    if (&out * &out) != pp {
        return Err(Error::NotASquare);
    }
    Ok(out)
}

/// Square-free decomposition `p = c * prod f_i^i` (Yun); returns the
/// nonconstant `(f_i, i)`, each integer-primitive.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let p = p.primitive_part();
    if is_squarefree(&p) {
        return vec![(p, 1)];
    }
    let d = p.derivative();
    let g = uni_gcd(&p, &d);
    let mut b = p.exact_div(&g).expect("gcd divides").primitive_part();
    let mut c = d.exact_div(&g).expect("gcd divides");
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let a = uni_gcd(&b, &dd);
        b = b.exact_div(&a).expect("gcd divides").primitive_part();
        c = dd.exact_div(&a).expect("gcd divides");
        dd = &c - &b.derivative();
        if a.degree() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}
