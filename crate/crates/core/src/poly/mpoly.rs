//! Sparse multivariate polynomials over the rationals.
//!
//! Stored as integer numerators over one shared positive denominator, which
//! keeps the inner loops in integer arithmetic. Variables are identified by
//! name; binary operations align the two variable lists automatically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mono::{Mono, MonoMap, MAX_VARS};
use super::rat::{lcm_denominators, ratio_to_f64, Rat};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Vec<String>,
    /// Strictly decreasing monomials, no zero coefficients.
    terms: Vec<(Mono, BigInt)>,
    den: BigInt,
}

/// `gcd(g, x)` with one Euclidean step first, so that a small `g` against
/// a huge `x` costs a single remainder.
pub(crate) fn gcd_step(g: &BigInt, x: &BigInt) -> BigInt {
    if g.is_zero() {
        return x.abs();
    }
    if x.bits() > g.bits() {
        g.gcd(&(x % g))
    } else {
        g.gcd(x)
    }
}

pub(crate) fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let xs: Vec<&BigInt> = xs.into_iter().collect();
    // Start from the smallest nonzero entry.
    let mut g = xs.iter().filter(|x| !x.is_zero()).min_by_key(|x| x.bits()).map(|x| x.abs()).unwrap_or_default();
    for x in xs {
        if g.is_one() {
            break;
        }
        g = gcd_step(&g, x);
    }
    g
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { vars: Vec::new(), terms: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> MPoly {
        MPoly::from_int(1)
    }

    pub fn from_int(c: i64) -> MPoly {
        MPoly::constant(&Rat::from_integer(c.into()))
    }

    pub fn constant(c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { vars: Vec::new(), terms: vec![(Mono::ONE, c.numer().clone())], den: c.denom().clone() }
    }

    pub fn var(name: &str) -> MPoly {
        MPoly { vars: vec![name.to_string()], terms: vec![(Mono::from_exps(&[1]), BigInt::one())], den: BigInt::one() }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, exponents
    /// listed in the order of `vars`. Repeated exponent vectors are summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(vars[b]));
        for w in order.windows(2) {
            assert!(vars[w[0]] != vars[w[1]], "duplicate variable {}", vars[w[0]]);
        }
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        let terms: Vec<(Vec<u32>, Rat)> = terms.into_iter().collect();
        let den = lcm_denominators(terms.iter().map(|(_, c)| c));
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            let se: Vec<u32> = order.iter().map(|&i| e[i]).collect();
            let n = c.numer() * (&den / c.denom());
            *acc.entry(Mono::from_exps(&se)).or_insert_with(BigInt::zero) += n;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars: sorted, terms, den }.normalized()
    }

    pub(crate) fn from_raw(vars: Vec<String>, terms: Vec<(Mono, BigInt)>, den: BigInt) -> MPoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        MPoly { vars, terms, den }.normalized()
    }

    fn normalized(mut self) -> MPoly {
        self.terms.retain(|(_, c)| !c.is_zero());
        if self.terms.is_empty() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for (_, c) in self.terms.iter_mut() {
                *c = -&*c;
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for (_, c) in &self.terms {
                if g.is_one() {
                    break;
                }
                g = gcd_step(&g, c);
            }
            if !g.is_one() {
                self.den = &self.den / &g;
                for (_, c) in self.terms.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn raw_terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    #[cfg(test)]
    pub(crate) fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Mono::ONE)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(Rat::new(self.terms[0].1.clone(), self.den.clone()));
        }
        None
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Iterates `(exponents, coefficient)` with exponents in `vars()` order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, Rat)> + '_ {
        let n = self.vars.len();
        self.terms.iter().map(move |(m, c)| (m.exps(n), Rat::new(c.clone(), self.den.clone())))
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff(&self, mono: &[(&str, u32)]) -> Rat {
        let mut exps = vec![0u32; self.vars.len()];
        for &(v, e) in mono {
            match self.var_index(v) {
                Some(i) => exps[i] = e,
                None if e == 0 => {}
                None => return Rat::zero(),
            }
        }
        let key = Mono::from_exps(&exps);
        match self.terms.binary_search_by(|(m, _)| key.cmp(m)) {
            Ok(i) => Rat::new(self.terms[i].1.clone(), self.den.clone()),
            Err(_) => Rat::zero(),
        }
    }

    /// Degree in `var`; 0 for the zero polynomial and for absent variables.
    pub fn degree(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total()).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exp(i) > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Re-expresses the polynomial over `new_vars` (sorted). Variables being
    /// dropped must not occur.
    fn remap(&self, new_vars: &[String]) -> MPoly {
        if new_vars == self.vars.as_slice() {
            return self.clone();
        }
        let pos: Vec<Option<usize>> =
            self.vars.iter().map(|v| new_vars.iter().position(|w| w == v)).collect();
        let n = self.vars.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; new_vars.len()];
                for i in 0..n {
                    let x = m.exp(i);
                    match pos[i] {
                        Some(p) => e[p] = x,
                        None => assert!(x == 0, "dropping variable {} that occurs", self.vars[i]),
                    }
                }
                (Mono::from_exps(&e), c.clone())
            })
            .collect();
        MPoly { vars: new_vars.to_vec(), terms, den: self.den.clone() }
    }

    /// Drops variables that do not occur.
    pub fn trimmed(&self) -> MPoly {
        let keep = self.support_vars();
        self.remap(&keep)
    }

    fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut v: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        v.sort();
        v.dedup();
        assert!(v.len() <= MAX_VARS, "too many variables");
        v
    }

    fn aligned(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let u = MPoly::union_vars(&a.vars, &b.vars);
        (a.remap(&u), b.remap(&u))
    }

    /// Adds the variable to the variable list without changing the value.
    pub fn with_var(&self, var: &str) -> MPoly {
        if self.var_index(var).is_some() {
            return self.clone();
        }
        let u = MPoly::union_vars(&self.vars, &[var.to_string()]);
        self.remap(&u)
    }

    pub fn rename(&self, pairs: &[(&str, &str)]) -> MPoly {
        let names: Vec<String> = self
            .vars
            .iter()
            .map(|v| pairs.iter().find(|(a, _)| a == v).map(|(_, b)| b.to_string()).unwrap_or_else(|| v.clone()))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let n = self.vars.len();
        MPoly::from_terms(&refs, self.terms.iter().map(|(m, c)| (m.exps(n), Rat::new(c.clone(), self.den.clone()))))
    }

    fn combine(&self, other: &MPoly, sign: i8) -> MPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { other.clone() } else { -other };
        }
        let (a, b) = MPoly::aligned(self, other);
        let (den, fa, fb) = if a.den == b.den {
            (a.den.clone(), None, None)
        } else {
            let l = a.den.lcm(&b.den);
            let fa = &l / &a.den;
            let fb = &l / &b.den;
            (l, Some(fa), Some(fb))
        };
        let scale = |c: &BigInt, f: &Option<BigInt>| match f {
            Some(f) => c * f,
            None => c.clone(),
        };
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ord = if i == a.terms.len() {
                Ordering::Less
            } else if j == b.terms.len() {
                Ordering::Greater
            } else {
                a.terms[i].0.cmp(&b.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push((a.terms[i].0, scale(&a.terms[i].1, &fa)));
                    i += 1;
                }
                Ordering::Less => {
                    let c = scale(&b.terms[j].1, &fb);
                    out.push((b.terms[j].0, if sign > 0 { c } else { -c }));
                    j += 1;
                }
                Ordering::Equal => {
                    let x = scale(&a.terms[i].1, &fa);
                    let y = scale(&b.terms[j].1, &fb);
                    let c = if sign > 0 { x + y } else { x - y };
                    if !c.is_zero() {
                        out.push((a.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { vars: a.vars, terms: out, den }.normalized()
    }

    fn product(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (a, b) = MPoly::aligned(self, other);
        let den = &a.den * &b.den;
        let (small, big) = if a.terms.len() <= b.terms.len() { (&a, &b) } else { (&b, &a) };
        if small.terms.len() == 1 {
            // Monomial times polynomial keeps the order.
            let (m, c) = &small.terms[0];
            let terms = big.terms.iter().map(|(n, d)| (n.mul(*m), d * c)).collect();
            return MPoly { vars: a.vars, terms, den }.normalized();
        }
        let mut acc: MonoMap<BigInt> = MonoMap::default();
        acc.reserve(a.terms.len() * b.terms.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let p = ca * cb;
                match acc.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += p,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        MPoly { vars: a.vars, terms, den }.normalized()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() || self.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c.numer())).collect();
        MPoly { vars: self.vars.clone(), terms, den: &self.den * c.denom() }.normalized()
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients with respect to `var`, index = power. The coefficients no
    /// longer mention `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<MPoly> {
        let Some(vi) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree(var) as usize;
        let mut parts: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(vi) as usize;
            parts[e].push((m.with_exp(vi, 0), c.clone()));
        }
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        parts
            .into_iter()
            .map(|t| MPoly { vars: self.vars.clone(), terms: t, den: self.den.clone() }.normalized().remap(&rest))
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(var: &str, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(var);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn leading_coeff_in(&self, var: &str) -> MPoly {
        self.coeffs_in(var).pop().unwrap_or_else(MPoly::zero)
    }

    /// Substitutes a rational value for `var`.
    pub fn eval_var(&self, var: &str, value: &Rat) -> MPoly {
        let Some(vi) = self.var_index(var) else {
            return self.clone();
        };
        let deg = self.degree(var);
        let mut pows: Vec<(BigInt, BigInt)> = Vec::with_capacity(deg as usize + 1);
        pows.push((BigInt::one(), BigInt::one()));
        for k in 1..=deg as usize {
            let (n, d) = &pows[k - 1];
            pows.push((n * value.numer(), d * value.denom()));
        }
        // Common denominator value.denom()^deg.
        let dd = pows[deg as usize].1.clone();
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(vi) as usize;
            let f = &pows[e].0 * (&dd / &pows[e].1);
            *acc.entry(m.with_exp(vi, 0)).or_insert_with(BigInt::zero) += c * f;
        }
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars: self.vars.clone(), terms, den: &self.den * dd }.normalized().remap(&rest)
    }

    pub fn eval(&self, values: &[(&str, Rat)]) -> MPoly {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.eval_var(v, x);
        }
        p
    }

    /// Floating-point evaluation; every variable of the polynomial must be
    /// given a value.
    pub fn eval_f64(&self, values: &[(&str, f64)]) -> f64 {
        let idx: Vec<f64> = self
            .vars
            .iter()
            .map(|v| {
                values
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| *x)
                    .unwrap_or_else(|| panic!("no value for variable {v}"))
            })
            .collect();
        let n = self.vars.len();
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = ratio_to_f64(c, &self.den);
            for (i, x) in idx.iter().enumerate().take(n) {
                let e = m.exp(i);
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    /// Replaces `var` by the polynomial `value`.
    /// Float evaluation with the integer coefficients scaled by a power of
    /// two so that the largest lies in `[1/2, 1)`. Sign and zero set agree
    /// with `p`; the scale is the same at every point.
    pub fn eval_scaled_f64(&self, values: &[(&str, f64)]) -> f64 {
        let k = self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0) as usize;
        let unit = BigInt::one() << k;
        let idx: Vec<f64> = self
            .vars
            .iter()
            .map(|v| {
                values
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| *x)
                    .unwrap_or_else(|| panic!("no value for variable {v}"))
            })
            .collect();
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = ratio_to_f64(c, &unit);
            for (i, x) in idx.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            s += t;
        }
        s
    }

    pub fn substitute(&self, var: &str, value: &MPoly) -> MPoly {
        if self.var_index(var).is_none() {
            return self.clone();
        }
        let cs = self.coeffs_in(var);
        let mut acc = MPoly::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// `(c, q)` with `self = c * q`, `q` having coprime integer coefficients
    /// and a positive leading coefficient (lex order).
    pub fn primitive(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), MPoly::zero());
        }
        let mut g = gcd_all(self.terms.iter().map(|(_, c)| c));
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c / &g)).collect();
        (Rat::new(g, self.den.clone()), MPoly { vars: self.vars.clone(), terms, den: BigInt::one() })
    }

    /// Exact quotient `self / q`, or `NotDivisible`.
    pub fn exact_div(&self, q: &MPoly) -> Result<MPoly> {
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        let (a, b) = MPoly::aligned(self, q);
        let (qc, qp) = b.primitive();
        // a/b = (A / qp) / (a.den * qc) where A is the integer numerator of a.
        let (lm, lc) = (qp.terms[0].0, qp.terms[0].1.clone());
        let mut rem: BTreeMap<Mono, BigInt> = a.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let Some(qm) = m.div(lm) else {
                return Err(Error::NotDivisible);
            };
            let (qcoef, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (tm, tc) in qp.terms.iter().skip(1) {
                let key = tm.mul(qm);
                let delta = tc * &qcoef;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qcoef));
        }
        let out = MPoly { vars: a.vars.clone(), terms: quot, den: BigInt::one() };
        let inv = Rat::one() / (Rat::from_integer(a.den.clone()) * qc);
        Ok(out.scale(&inv))
    }

    /// Univariate view; `None` unless at most one variable occurs.
    pub fn to_unipoly(&self, var: &str) -> Option<UniPoly> {
        let sv = self.support_vars();
        if sv.len() > 1 || (sv.len() == 1 && sv[0] != var) {
            return None;
        }
        let vi = self.var_index(var);
        let deg = self.degree(var) as usize;
        let mut c = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, x) in &self.terms {
            let e = vi.map(|i| m.exp(i)).unwrap_or(0) as usize;
            c[e] = x.clone();
        }
        Some(UniPoly::from_int_coeffs(var, c, self.den.clone()))
    }

    pub fn from_unipoly(p: &UniPoly) -> MPoly {
        let var = p.var().to_string();
        let terms: Vec<(Mono, BigInt)> = p
            .int_coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Mono::from_exps(&[i as u32]), c.clone()))
            .collect();
        MPoly { vars: vec![var], terms, den: p.den().clone() }.normalized()
    }

    /// Largest coefficient numerator size in bits (with the denominator).
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0).max(self.den.bits())
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &MPoly) -> bool {
        let (a, b) = MPoly::aligned(&self.trimmed(), &other.trimmed());
        a.den == b.den && a.terms == b.terms
    }
}
impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.vars.len();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let r = Rat::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *m == Mono::ONE {
                factors.push(a.to_string());
            }
            for i in 0..n {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    e => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                $body(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &MPoly, b: &MPoly| a.combine(b, 1));
forward_binop!(Sub, sub, |a: &MPoly, b: &MPoly| a.combine(b, -1));
forward_binop!(Mul, mul, |a: &MPoly, b: &MPoly| a.product(b));

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        MPoly { vars: self.vars.clone(), terms, den: self.den.clone() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Exact multiplication (the variable lists are aligned by name).
pub fn mpoly_mul(p: &MPoly, q: &MPoly) -> MPoly {
    p * q
}

/// Exact division of `p` by `q`; `var` names the main variable and is kept
/// for symmetry with the other elimination routines.
pub fn exact_div(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    let _ = var;
    p.exact_div(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::{rat, rat_int};

    fn v(n: &str) -> MPoly {
        MPoly::var(n)
    }
    fn c(n: i64) -> MPoly {
        MPoly::from_int(n)
    }

    #[test]
    fn difference_of_squares() {
        let u = v("u");
        let p = (&u + &c(1)) * (&u - &c(1));
        assert_eq!(p, &u * &u - c(1));
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn product_with_zero() {
        let p = v("u") * v("v") + c(3);
        assert!((&p * &MPoly::zero()).is_zero());
    }

    #[test]
    fn binomial_square() {
        let (u, w) = (v("u"), v("v"));
        let s = &u + &w;
        let expect = &u * &u + c(2) * &u * &w + &w * &w;
        assert_eq!(&s * &s, expect);
    }

    #[test]
    fn variables_align_by_name() {
        let a = v("z") + v("a");
        let b = v("m") - v("a");
        let s = &a + &b;
        assert_eq!(s.vars(), &["a".to_string(), "m".into(), "z".into()]);
        assert_eq!(s, v("z") + v("m"));
        assert_eq!(s.trimmed().vars(), &["m".to_string(), "z".into()]);
    }

    #[test]
    fn rational_coefficients_normalize() {
        let p = v("x").scale(&rat(2, 6)) + MPoly::constant(&rat(1, 3));
        assert_eq!(p.coeff(&[("x", 1)]), rat(1, 3));
        assert_eq!(p.den(), &BigInt::from(3));
        let q = p.scale(&rat_int(3));
        assert_eq!(q, v("x") + c(1));
        assert_eq!(q.den(), &BigInt::one());
    }

    #[test]
    fn exact_division_examples() {
        let s = v("s");
        let num = s.pow(4) - c(1);
        let den = s.pow(2) + c(1);
        assert_eq!(exact_div(&num, &den, "s").unwrap(), s.pow(2) - c(1));
        let bad = exact_div(&(s.pow(2) + c(1)), &(&s + &c(1)), "s");
        assert!(matches!(bad, Err(Error::NotDivisible)));
    }

    #[test]
    fn exact_division_rational_multivariate() {
        let (x, y) = (v("x"), v("y"));
        let p = (&x.scale(&rat(3, 7)) + &y * &y + c(2)) * (&x * &y - y.scale(&rat(5, 2)));
        let q = &x * &y - y.scale(&rat(5, 2));
        assert_eq!(p.exact_div(&q).unwrap(), x.scale(&rat(3, 7)) + &y * &y + c(2));
        assert!(p.exact_div(&(&x + &c(1))).is_err());
    }

    #[test]
    fn coefficients_in_a_variable() {
        let (u, s) = (v("u"), v("s"));
        let p = (&s + &c(1)) * &u * &u + (&s + &c(1)).pow(2) * &u;
        let cs = p.coeffs_in("u");
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], (&s + &c(1)).pow(2));
        assert_eq!(cs[2].vars(), &["s".to_string()]);
        assert_eq!(MPoly::from_coeffs_in("u", &cs), p);
    }

    #[test]
    fn evaluation_and_substitution() {
        let (x, y) = (v("x"), v("y"));
        let p = &x * &x * &y + x.scale(&rat(1, 2)) - c(3);
        let e = p.eval_var("x", &rat(2, 3));
        assert_eq!(e, y.scale(&rat(4, 9)) + MPoly::constant(&rat(-8, 3)));
        let f = p.eval_f64(&[("x", 2.0 / 3.0), ("y", 1.5)]);
        assert!((f - (4.0 / 9.0 * 1.5 - 8.0 / 3.0)).abs() < 1e-14);
        let sub = p.substitute("y", &(&x + &c(1)));
        assert_eq!(sub, &x * &x * (&x + &c(1)) + x.scale(&rat(1, 2)) - c(3));
    }

    #[test]
    fn primitive_part() {
        let p = v("x").scale(&rat(-4, 3)) + MPoly::constant(&rat(2, 9));
        let (k, q) = p.primitive();
        assert_eq!(k, rat(-2, 9));
        assert_eq!(q, v("x").scale(&rat_int(6)) - c(1));
    }

    #[test]
    fn rename_reorders() {
        let p = v("a") * v("b").pow(2);
        let q = p.rename(&[("a", "z")]);
        assert_eq!(q, v("z") * v("b").pow(2));
        assert_eq!(q.vars(), &["b".to_string(), "z".into()]);
    }

    #[test]
    fn display_is_readable() {
        let p = v("u").pow(2).scale(&rat(3, 2)) - v("u") * v("v") + c(-1);
        assert_eq!(p.to_string(), "3/2*u^2 - u*v - 1");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = MPoly> {
            prop::collection::vec(((0u32..4, 0u32..3, 0u32..3), -20i64..20, 1i64..6), 1..7).prop_map(|ts| {
                MPoly::from_terms(
                    &["x", "y", "z"],
                    ts.into_iter().map(|((a, b, c), n, d)| (vec![a, b, c], rat(n, d))),
                )
            })
        }

        proptest! {
            #[test]
            fn exact_div_inverts_mul(p in arb_poly(), q in arb_poly()) {
                prop_assume!(!q.is_zero());
                let prod = mpoly_mul(&p, &q);
                prop_assert_eq!(exact_div(&prod, &q, "x").unwrap(), p);
            }

            #[test]
            fn mul_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(&p * &(&q + &r), &p * &q + &p * &r);
            }
        }
    }
}
