//! Sylvester resultants.
//!
//! Three interchangeable routes compute the same determinant:
//! fraction-free Bareiss elimination on the symbolic matrix, evaluation and
//! interpolation over the rationals, and a multi-modular variant of the
//! latter that is much faster for the large eliminations of the solver.
//! The row order is the standard one (the rows of the first polynomial on
//! top), so `Res(x - 1, x + 1) = 2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::modular::{prime, primes_for_bits, Crt, Field};
use super::mono::Mono;
use super::mpoly::MPoly;
use super::rat::Rat;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultantMethod {
    Bareiss,
    Interpolation,
    MultiModular,
}

/// The `(m + n)`-square Sylvester matrix of `p` (degree `m`) and `q`
/// (degree `n`) with respect to `var`.
pub fn sylvester_matrix(p: &MPoly, q: &MPoly, var: &str) -> Vec<Vec<MPoly>> {
    let a = p.coeffs_in(var);
    let b = q.coeffs_in(var);
    let m = p.degree(var) as usize;
    let n = q.degree(var) as usize;
    let size = m + n;
    let mut rows = vec![vec![MPoly::zero(); size]; size];
    for j in 0..n {
        for i in 0..=m {
            rows[j][j + i] = a[m - i].clone();
        }
    }
    for j in 0..m {
        for i in 0..=n {
            rows[n + j][j + i] = b[n - i].clone();
        }
    }
    rows
}

fn check_inputs(p: &MPoly, q: &MPoly) -> Result<()> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

/// Determinant of a matrix of polynomials by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::one());
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(MPoly::zero());
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = if k == 0 { num } else { num.exact_div(&prev)? };
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Resultant by Bareiss elimination of the Sylvester matrix.
pub fn sylvester_resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    check_inputs(p, q)?;
    Ok(bareiss_det(sylvester_matrix(p, q, var))?.trimmed())
}

pub fn resultant(p: &MPoly, q: &MPoly, var: &str, method: ResultantMethod) -> Result<MPoly> {
    match method {
        ResultantMethod::Bareiss => sylvester_resultant(p, q, var),
        ResultantMethod::Interpolation => resultant_interpolated(p, q, var),
        ResultantMethod::MultiModular => resultant_multimodular(p, q, var),
    }
}

/// Variables other than `var` occurring in either input, sorted.
fn parameter_vars(p: &MPoly, q: &MPoly, var: &str) -> Vec<String> {
    let mut ys: Vec<String> = p.support_vars().into_iter().chain(q.support_vars()).filter(|v| v != var).collect();
    ys.sort();
    ys.dedup();
    ys
}

/// Integer Bareiss determinant.
fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn rat_det(m: &[Vec<Rat>]) -> Rat {
    let mut scale = Rat::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = super::rat::lcm_denominators(row.iter());
            scale *= Rat::from_integer(l.clone());
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    Rat::from_integer(int_det(rows)) / scale
}

/// Determinant of a polynomial matrix by evaluation at integer nodes and
/// Newton interpolation, one parameter variable at a time.
fn det_interpolated(m: &[Vec<MPoly>], ys: &[String]) -> MPoly {
    let Some((y, rest)) = ys.split_last() else {
        let vals: Vec<Vec<Rat>> =
            m.iter().map(|r| r.iter().map(|e| e.constant_value().expect("fully evaluated")).collect()).collect();
        return MPoly::constant(&rat_det(&vals));
    };
    let bound: u32 = m.iter().map(|r| r.iter().map(|e| e.degree(y)).max().unwrap_or(0)).sum();
    let nodes: Vec<Rat> = (0..=bound as i64).map(|a| Rat::from_integer(a.into())).collect();
    let mut table: Vec<MPoly> = nodes
        .iter()
        .map(|a| {
            let ev: Vec<Vec<MPoly>> = m.iter().map(|r| r.iter().map(|e| e.eval_var(y, a)).collect()).collect();
            det_interpolated(&ev, rest)
        })
        .collect();
    // Divided differences in place.
    let k = table.len();
    for level in 1..k {
        for i in (level..k).rev() {
            let diff = &table[i] - &table[i - 1];
            let h = &nodes[i] - &nodes[i - level];
            table[i] = diff.scale(&(Rat::one() / h));
        }
    }
    let yv = MPoly::var(y);
    let mut acc = table[k - 1].clone();
    for i in (0..k - 1).rev() {
        acc = &acc * &(&yv - &MPoly::constant(&nodes[i])) + &table[i];
    }
    acc
}

/// Resultant by evaluation/interpolation over the rationals.
pub fn resultant_interpolated(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    check_inputs(p, q)?;
    let ys = parameter_vars(p, q, var);
    Ok(det_interpolated(&sylvester_matrix(p, q, var), &ys).trimmed())
}

/// Resultant of two dense polynomials over `F_p` given by coefficient
/// vectors of formal degrees `a.len() - 1` and `b.len() - 1`; leading
/// coefficients may vanish. Equal to the Sylvester determinant mod p.
pub(crate) fn res_mod(f: &Field, a: &[u64], b: &[u64]) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut m = a.len() - 1;
    let mut n = b.len() - 1;
    // The resultant is acc / den; pseudo-remainders avoid an inversion per
    // Euclidean step.
    let mut acc = f.one();
    let mut den = f.one();
    let finish = |acc: u64, den: u64| f.mul(acc, f.inv(den));
    loop {
        if n == 0 {
            return finish(f.mul(acc, f.pow(b[0], m as u64)), den);
        }
        if m == 0 {
            return finish(f.mul(acc, f.pow(a[0], n as u64)), den);
        }
        if a[m] == 0 {
            if b[n] == 0 {
                return 0;
            }
            // Expand along the first column: only b_n survives.
            let t = if n % 2 == 1 { f.neg(b[n]) } else { b[n] };
            acc = f.mul(acc, t);
            a.pop();
            m -= 1;
            continue;
        }
        if b[n] == 0 {
            acc = f.mul(acc, a[m]);
            b.pop();
            n -= 1;
            continue;
        }
        if m < n {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut m, &mut n);
            if m % 2 == 1 && n % 2 == 1 {
                acc = f.neg(acc);
            }
            continue;
        }
        // b_n^(m - n + 1) A = Q B + R, and
        // Res(A, B) = (-1)^{mn} b_n^{m - r} Res(B, A mod B), r = deg R.
        let lc = b[n];
        for k in (n..=m).rev() {
            let c = a[k];
            for x in a[..k].iter_mut() {
                *x = f.mul(*x, lc);
            }
            if c == 0 {
                continue;
            }
            for j in 0..n {
                a[k - n + j] = f.sub(a[k - n + j], f.mul(c, b[j]));
            }
        }
        a.truncate(n);
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.is_empty() {
            return 0;
        }
        let r = a.len() - 1;
        acc = f.mul(acc, f.pow(lc, (m - r) as u64));
        den = f.mul(den, f.pow(lc, ((m - n + 1) * n) as u64));
        if m % 2 == 1 && n % 2 == 1 {
            acc = f.neg(acc);
        }
        std::mem::swap(&mut a, &mut b);
        m = n;
        n = r;
    }
}

/// Coefficients of `x^0..x^D` of the Lagrange basis over nodes `0..=D`,
/// row `i` belonging to node `i`.
fn lagrange_basis(f: &Field, d: usize) -> Vec<Vec<u64>> {
    // master(x) = prod_{j=0..=d} (x - j)
    let mut master = vec![f.one()];
    for j in 0..=d {
        let nj = f.neg(f.from_u64(j as u64));
        let mut next = vec![0u64; master.len() + 1];
        for (k, &c) in master.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.add(next[k], f.mul(c, nj));
        }
        master = next;
    }
    let mut fact = vec![f.one(); d + 1];
    for k in 1..=d {
        fact[k] = f.mul(fact[k - 1], f.from_u64(k as u64));
    }
    let mut inv_fact = vec![f.one(); d + 1];
    inv_fact[d] = f.inv(fact[d]);
    for k in (1..=d).rev() {
        inv_fact[k - 1] = f.mul(inv_fact[k], f.from_u64(k as u64));
    }
    (0..=d)
        .map(|i| {
            // master / (x - i) by synthetic division.
            let xi = f.from_u64(i as u64);
            let mut quot = vec![0u64; d + 1];
            let mut carry = 0u64;
            for k in (1..=d + 1).rev() {
                carry = f.add(master[k], f.mul(carry, xi));
                quot[k - 1] = carry;
            }
            // 1 / ((-1)^(d-i) i! (d-i)!)
            let mut winv = f.mul(inv_fact[i], inv_fact[d - i]);
            if (d - i) % 2 == 1 {
                winv = f.neg(winv);
            }
            quot.iter().map(|&c| f.mul(c, winv)).collect()
        })
        .collect()
}

/// Sparse polynomial in the parameter variables reduced modulo a prime.
struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    fn new(f: &Field, p: &MPoly, ys: &[String]) -> ModPoly {
        let n = p.vars().len();
        let pos: Vec<usize> = p.vars().iter().map(|v| ys.iter().position(|y| y == v).expect("parameter var")).collect();
        let terms = p
            .raw_terms()
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; ys.len()];
                for i in 0..n {
                    e[pos[i]] = m.exp(i);
                }
                (e, f.reduce(c))
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        ModPoly { terms }
    }

    fn eval(&self, f: &Field, pows: &[Vec<u64>]) -> u64 {
        let mut s = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t = f.mul(t, pows[k][ek as usize]);
                }
            }
            s = f.add(s, t);
        }
        s
    }
}

fn l1_bits(p: &MPoly) -> u64 {
    let s: BigInt = p.raw_terms().iter().map(|(_, c)| c.abs()).sum();
    s.bits()
}

/// Resultant by multi-modular evaluation/interpolation with Chinese
/// remaindering. The number of primes follows from a Hadamard-type bound
/// on the coefficients, so the result is exact.
pub fn resultant_multimodular(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    check_inputs(p, q)?;
    let ys = parameter_vars(p, q, var);
    let (cp, pp) = p.primitive();
    let (cq, qq) = q.primitive();
    let m = p.degree(var) as usize;
    let n = q.degree(var) as usize;
    let scale = num_traits::pow(cp, n) * num_traits::pow(cq, m);
    if m == 0 && n == 0 {
        return Ok(MPoly::constant(&scale));
    }
    let pc: Vec<MPoly> = pp.coeffs_in(var).iter().map(MPoly::trimmed).collect();
    let qc: Vec<MPoly> = qq.coeffs_in(var).iter().map(MPoly::trimmed).collect();
    let maxdeg = |cs: &[MPoly], y: &str| cs.iter().map(|c| c.degree(y)).max().unwrap_or(0) as usize;
    let bounds: Vec<usize> = ys.iter().map(|y| n * maxdeg(&pc, y) + m * maxdeg(&qc, y)).collect();
    let grid: usize = bounds.iter().map(|d| d + 1).product();
    // |coefficient| <= prod over rows of the row's l1-norm.
    let bits = n as u64 * l1_bits(&pp) + m as u64 * l1_bits(&qq) + 2;
    let nprimes = primes_for_bits(bits);

    let mut crt = Crt::new(grid);
    let mut a = vec![0u64; m + 1];
    let mut b = vec![0u64; n + 1];
    let mut vals = vec![0u64; grid];
    for pi in 0..nprimes {
        let f = Field::new(prime(pi));
        let pm: Vec<ModPoly> = pc.iter().map(|c| ModPoly::new(&f, c, &ys)).collect();
        let qm: Vec<ModPoly> = qc.iter().map(|c| ModPoly::new(&f, c, &ys)).collect();
        let mut idx = vec![0usize; ys.len()];
        for v in vals.iter_mut() {
            let pows: Vec<Vec<u64>> = idx
                .iter()
                .zip(&bounds)
                .map(|(&i, &d)| {
                    let x = f.from_u64(i as u64);
                    let mut pw = Vec::with_capacity(d + 1);
                    let mut cur = f.one();
                    for _ in 0..=d {
                        pw.push(cur);
                        cur = f.mul(cur, x);
                    }
                    pw
                })
                .collect();
            for (k, c) in pm.iter().enumerate() {
                a[k] = c.eval(&f, &pows);
            }
            for (k, c) in qm.iter().enumerate() {
                b[k] = c.eval(&f, &pows);
            }
            *v = res_mod(&f, &a, &b);
            // Row-major increment, last parameter fastest.
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] <= bounds[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        interpolate_grid(&f, &mut vals, &bounds);
        let canon: Vec<u64> = vals.iter().map(|&x| f.to_u64(x)).collect();
        crt.push(&f, &canon);
    }
    debug_assert!(crt.modulus_bits() > bits);
    let coeffs = crt.finish();
    let mut idx = vec![0u32; ys.len()];
    let mut terms: Vec<(Mono, BigInt)> = Vec::new();
    for c in coeffs {
        if !c.is_zero() {
            terms.push((Mono::from_exps(&idx), c));
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] as usize <= bounds[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    let r = MPoly::from_raw(ys, terms, BigInt::one());
    Ok(r.scale(&scale).trimmed())
}

/// Newton interpolation through the values at the consecutive nodes
/// `a, a + 1, ..., a + d`; returns monomial coefficients (canonical form).
fn newton_consecutive(f: &Field, a: u64, vals: &[u64]) -> Vec<u64> {
    let d = vals.len() - 1;
    let mut v = vals.to_vec();
    for k in 1..=d {
        for i in (k..=d).rev() {
            v[i] = f.sub(v[i], v[i - 1]);
        }
    }
    // c_k = Delta^k / k!
    let mut fact = f.one();
    for k in 1..=d {
        fact = f.mul(fact, f.from_u64(k as u64));
    }
    let mut inv = f.inv(fact);
    for k in (1..=d).rev() {
        v[k] = f.mul(v[k], inv);
        inv = f.mul(inv, f.from_u64(k as u64));
    }
    let mut poly = vec![v[d]];
    for k in (0..d).rev() {
        // poly * (x - (a + k)) + c_k
        let node = f.from_u64(a + k as u64);
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(c, node));
        }
        next[0] = f.add(next[0], v[k]);
        poly = next;
    }
    poly
}

fn eval_mod(f: &Field, coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `Res_var(p, q) / divisor` for inputs in `var` and a single parameter,
/// when the quotient is known to have degree `degree`. Resultant values are
/// divided by the divisor pointwise modulo each prime, so a prime costs
/// `degree + 2` evaluations; the extra one confirms the degree. Errors with
/// `NotDivisible` when that confirmation fails.
pub fn resultant_quotient(p: &MPoly, q: &MPoly, var: &str, divisor: &UniPoly, degree: usize) -> Result<UniPoly> {
    check_inputs(p, q)?;
    let ys = parameter_vars(p, q, var);
    if ys.len() != 1 || ys[0] != divisor.var() {
        return Err(Error::Precondition(format!("expected the single parameter {}, found {ys:?}", divisor.var())));
    }
    let (cp, pp) = p.primitive();
    let (cq, qq) = q.primitive();
    let (dc, dp) = divisor.primitive();
    let m = p.degree(var) as usize;
    let n = q.degree(var) as usize;
    let scale = num_traits::pow(cp, n) * num_traits::pow(cq, m) / dc;
    let pc: Vec<MPoly> = pp.coeffs_in(var).iter().map(MPoly::trimmed).collect();
    let qc: Vec<MPoly> = qq.coeffs_in(var).iter().map(MPoly::trimmed).collect();
    let maxdeg = |cs: &[MPoly]| cs.iter().map(|c| c.degree(&ys[0])).max().unwrap_or(0) as usize;
    let full_degree = n * maxdeg(&pc) + m * maxdeg(&qc);
    // Coefficients of a degree-k factor are at most 2^k times the 2-norm of
    // the product.
    let bits = n as u64 * l1_bits(&pp) + m as u64 * l1_bits(&qq) + degree as u64 + (full_degree as u64 + 1).ilog2() as u64 + 4;
    let nprimes = primes_for_bits(bits);
    let npts = degree + 2;
    let mut crt = Crt::new(degree + 1);
    let mut a = vec![0u64; m + 1];
    let mut b = vec![0u64; n + 1];
    let mut pi = 0;
    let mut used = 0;
    while used < nprimes {
        let f = Field::new(prime(pi));
        pi += 1;
        let pm: Vec<ModPoly> = pc.iter().map(|c| ModPoly::new(&f, c, &ys)).collect();
        let qm: Vec<ModPoly> = qc.iter().map(|c| ModPoly::new(&f, c, &ys)).collect();
        let dm: Vec<u64> = dp.int_coeffs().iter().map(|c| f.reduce(c)).collect();
        // Consecutive nodes avoiding the roots of the divisor.
        let mut start = 1u64;
        let inv_d = loop {
            let dv: Vec<u64> = (0..npts as u64).map(|i| eval_mod(&f, &dm, f.from_u64(start + i))).collect();
            if dv.iter().all(|&x| x != 0) {
                break dv.iter().map(|&x| f.inv(x)).collect::<Vec<u64>>();
            }
            start += npts as u64;
        };
        let maxd = full_degree.max(1);
        let mut vals = Vec::with_capacity(npts);
        for (i, inv) in inv_d.iter().enumerate() {
            let x = f.from_u64(start + i as u64);
            let mut pw = Vec::with_capacity(maxd + 1);
            let mut cur = f.one();
            for _ in 0..=maxd {
                pw.push(cur);
                cur = f.mul(cur, x);
            }
            let pows = [pw];
            for (k, c) in pm.iter().enumerate() {
                a[k] = c.eval(&f, &pows);
            }
            for (k, c) in qm.iter().enumerate() {
                b[k] = c.eval(&f, &pows);
            }
            vals.push(f.mul(res_mod(&f, &a, &b), *inv));
        }
        let coeffs = newton_consecutive(&f, start, &vals[..degree + 1]);
        if eval_mod(&f, &coeffs, f.from_u64(start + degree as u64 + 1)) != vals[degree + 1] {
            return Err(Error::NotDivisible);
        }
        let canon: Vec<u64> = coeffs.iter().map(|&x| f.to_u64(x)).collect();
        crt.push(&f, &canon);
        used += 1;
    }
    let out = UniPoly::from_int_coeffs(divisor.var(), crt.finish(), BigInt::one());
    Ok(out.scale(&scale))
}

/// Converts grid values at nodes `0..=bounds[k]` into monomial coefficients,
/// one dimension at a time.
fn interpolate_grid(f: &Field, vals: &mut [u64], bounds: &[usize]) {
    let dims: Vec<usize> = bounds.iter().map(|d| d + 1).collect();
    for (k, &dk) in dims.iter().enumerate() {
        let basis = lagrange_basis(f, dk - 1);
        let stride: usize = dims[k + 1..].iter().product();
        let outer: usize = dims[..k].iter().product();
        let mut line = vec![0u64; dk];
        let mut out = vec![0u64; dk];
        for o in 0..outer {
            for s in 0..stride {
                let base = o * dk * stride + s;
                for i in 0..dk {
                    line[i] = vals[base + i * stride];
                }
                out.iter_mut().for_each(|x| *x = 0);
                for (i, &v) in line.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    for (c, &l) in out.iter_mut().zip(&basis[i]) {
                        *c = f.add(*c, f.mul(v, l));
                    }
                }
                for i in 0..dk {
                    vals[base + i * stride] = out[i];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::{rat, rat_int};

    fn x() -> MPoly {
        MPoly::var("x")
    }
    fn c(n: i64) -> MPoly {
        MPoly::from_int(n)
    }

    const METHODS: [ResultantMethod; 3] =
        [ResultantMethod::Bareiss, ResultantMethod::Interpolation, ResultantMethod::MultiModular];

    #[test]
    fn hand_computed_examples() {
        for m in METHODS {
            assert_eq!(resultant(&(x() - c(1)), &(x() + c(1)), "x", m).unwrap(), c(2), "{m:?}");
            assert_eq!(resultant(&(x().pow(2) + c(1)), &(x() + c(2)), "x", m).unwrap(), c(5), "{m:?}");
            assert!(resultant(&(x().pow(2) - c(1)), &(x() - c(1)), "x", m).unwrap().is_zero(), "{m:?}");
        }
    }

    #[test]
    fn zero_input_rejected() {
        for m in METHODS {
            assert!(matches!(resultant(&MPoly::zero(), &x(), "x", m), Err(Error::ZeroInput)));
        }
    }

    #[test]
    fn parametric_resultant_eliminates_var() {
        // Res_x(x^2 - y, x - z) = z^2 - y
        let (y, z) = (MPoly::var("y"), MPoly::var("z"));
        let p = x().pow(2) - &y;
        let q = x() - &z;
        for m in METHODS {
            let r = resultant(&p, &q, "x", m).unwrap();
            assert_eq!(r, z.pow(2) - &y, "{m:?}");
            assert!(!r.vars().contains(&"x".to_string()));
        }
    }

    #[test]
    fn rational_coefficients_all_routes_agree() {
        let (y, s) = (MPoly::var("y"), MPoly::var("s"));
        let p = x().pow(3).scale(&rat(3, 4)) + &x() * &y.scale(&rat(-2, 5)) + &s * &s - c(1);
        let q = x().pow(2) * (&s + &c(2)) + x().scale(&rat(7, 3)) + &y;
        let a = resultant(&p, &q, "x", ResultantMethod::Bareiss).unwrap();
        let b = resultant(&p, &q, "x", ResultantMethod::Interpolation).unwrap();
        let d = resultant(&p, &q, "x", ResultantMethod::MultiModular).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, d);
    }

    #[test]
    fn vanishing_formal_leading_coefficient() {
        // Leading coefficient s vanishes at s = 0; the formal resultant is
        // still a polynomial identity.
        let s = MPoly::var("s");
        let p = &s * &x().pow(2) + x() + c(3);
        let q = x().scale(&rat_int(2)) - &s;
        let a = resultant(&p, &q, "x", ResultantMethod::Bareiss).unwrap();
        let d = resultant(&p, &q, "x", ResultantMethod::MultiModular).unwrap();
        assert_eq!(a, d);
    }

    #[test]
    fn modular_leaf_matches_determinant() {
        let f = Field::new(prime(0));
        let cases: Vec<(Vec<i64>, Vec<i64>)> = vec![
            (vec![1, 2, 3], vec![4, 0, 1, 0]),
            (vec![0, 0, 0], vec![1, 1]),
            (vec![5, 0], vec![1, 2, 0, 0]),
            (vec![2, -3, 0, 7], vec![1, 1, 1]),
            (vec![1, 0, 1], vec![0, 0]),
        ];
        for (a, b) in cases {
            // Formal Sylvester matrix with the declared (possibly padded) degrees.
            let (m, n) = (a.len() - 1, b.len() - 1);
            let mut rows = vec![vec![BigInt::zero(); m + n]; m + n];
            for j in 0..n {
                for i in 0..=m {
                    rows[j][j + i] = BigInt::from(a[m - i]);
                }
            }
            for j in 0..m {
                for i in 0..=n {
                    rows[n + j][j + i] = BigInt::from(b[n - i]);
                }
            }
            let want = f.to_u64(f.reduce(&int_det(rows)));
            let am: Vec<u64> = a.iter().map(|&v| f.from_i64(v)).collect();
            let bm: Vec<u64> = b.iter().map(|&v| f.from_i64(v)).collect();
            assert_eq!(f.to_u64(res_mod(&f, &am, &bm)), want, "{a:?} {b:?}");
        }
    }

    #[test]
    fn lagrange_basis_interpolates() {
        let f = Field::new(prime(1));
        let basis = lagrange_basis(&f, 4);
        // p(x) = 3 - x + 2x^3
        let pv = |t: u64| {
            let x = f.from_u64(t);
            let x3 = f.mul(x, f.mul(x, x));
            f.add(f.sub(f.from_u64(3), x), f.mul(f.from_u64(2), x3))
        };
        let mut coeffs = [0u64; 5];
        for i in 0..5 {
            for k in 0..5 {
                coeffs[k] = f.add(coeffs[k], f.mul(pv(i as u64), basis[i][k]));
            }
        }
        let want = [3i64, -1, 0, 2, 0];
        for k in 0..5 {
            assert_eq!(coeffs[k], f.from_i64(want[k]));
        }
    }
}
