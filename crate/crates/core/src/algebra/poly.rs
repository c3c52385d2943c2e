//! Sparse multivariate polynomials over Q in graded-lexicographic order.
//!
//! A polynomial stores exactly the variables that occur in it, sorted in
//! natural order (`a1 < a2 < a10 < c < x`); the first variable is the most
//! significant one for the lex tie-break. Terms are kept in descending order
//! with no zero coefficients, so structural equality is value equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

pub type Exps = SmallVec<[u32; 6]>;

/// Natural ordering of variable names: alphabetic prefix, then numeric suffix.
pub fn var_order(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (p, d) = s.split_at(cut);
        (p, d.parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then(a.cmp(b))
}

/// Graded-lex comparison of exponent vectors over the same variable list.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    pub(crate) vars: Arc<[String]>,
    pub(crate) terms: Vec<(Exps, Rational)>,
}

fn empty_vars() -> Arc<[String]> {
    Arc::from(Vec::<String>::new())
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: empty_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: empty_vars(),
            terms: vec![(Exps::new(), c)],
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1, Rational::one())
    }

    /// `coeff * name^exp`
    pub fn monomial(name: &str, exp: u32, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        if exp == 0 {
            return Self::constant(coeff);
        }
        MultiPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms: vec![(smallvec::smallvec![exp], coeff)],
        }
    }

    /// Builds from arbitrary (possibly unsorted, repeated, zero) terms.
    pub fn from_terms(vars: Vec<String>, terms: Vec<(Exps, Rational)>) -> Result<Self> {
        for w in vars.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("repeated variable {}", w[0])));
            }
        }
        if terms.iter().any(|(e, _)| e.len() != vars.len()) {
            return Err(Error::invalid("exponent vector length mismatch"));
        }
        // sort variables naturally, permuting exponents accordingly
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by(|&i, &j| var_order(&vars[i], &vars[j]));
        let sorted_vars: Vec<String> = idx.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| (idx.iter().map(|&i| e[i]).collect::<Exps>(), c))
            .collect();
        Ok(Self::collect(Arc::from(sorted_vars), terms))
    }

    /// Sorts and combines like terms, then drops unused variables.
    pub(crate) fn collect(vars: Arc<[String]>, terms: Vec<(Exps, Rational)>) -> Self {
        let mut map: HashMap<Exps, Rational> = HashMap::with_capacity(terms.len());
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&e) {
                Some(acc) => *acc += c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut terms: Vec<(Exps, Rational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        MultiPoly { vars, terms }.trim_vars()
    }

    /// Drops variables whose exponent is zero in every term.
    pub(crate) fn trim_vars(mut self) -> Self {
        let n = self.vars.len();
        if n == 0 {
            return self;
        }
        let mut used = vec![false; n];
        for (e, _) in &self.terms {
            for (u, &x) in used.iter_mut().zip(e.iter()) {
                *u |= x > 0;
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        self.vars = Arc::from(keep.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>());
        for (e, _) in self.terms.iter_mut() {
            *e = keep.iter().map(|&i| e[i]).collect();
        }
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    pub(crate) fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(e, _)| e.iter().sum()).unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.iter().map(|(e, _)| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading coefficient in graded-lex order (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Scales so the leading coefficient is one; returns the removed factor.
    pub fn monic(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let lc = self.lc();
        let inv = lc.recip();
        (lc, self.scale(&inv))
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::one();
        }
        Rational::new(g, l)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Re-expresses the exponent vectors over a superset of variables.
    fn widen(&self, vars: &Arc<[String]>) -> Vec<(Exps, Rational)> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut f: Exps = smallvec::smallvec![0; vars.len()];
                for (k, &i) in map.iter().enumerate() {
                    f[i] = e[k];
                }
                (f, c.clone())
            })
            .collect()
    }

    pub(crate) fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
        if Arc::ptr_eq(a, b) || **a == **b {
            return a.clone();
        }
        if b.is_empty() {
            return a.clone();
        }
        if a.is_empty() {
            return b.clone();
        }
        let mut v: Vec<String> = a.iter().cloned().collect();
        for x in b.iter() {
            if !v.contains(x) {
                v.push(x.clone());
            }
        }
        v.sort_by(|x, y| var_order(x, y));
        Arc::from(v)
    }

    fn add_impl(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.widen(&vars);
        let b = other.widen(&vars);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                grlex(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { vars, terms: out }.trim_vars()
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_constant() {
            return self.scale(&other.terms[0].1);
        }
        if self.is_constant() {
            return other.scale(&self.terms[0].1);
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.widen(&vars);
        let b = other.widen(&vars);
        // fraction-free accumulation: scale both operands to integers first
        let (ia, da) = integerize(&a);
        let (ib, db) = integerize(&b);
        let mut acc: HashMap<Exps, BigInt> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ea, ca) in a.iter().map(|t| &t.0).zip(ia.iter()) {
            for (eb, cb) in b.iter().map(|t| &t.0).zip(ib.iter()) {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        let d = da * db;
        let mut terms: Vec<(Exps, Rational)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, Rational::new(c, d.clone())))
            .collect();
        terms.sort_unstable_by(|x, y| grlex(&y.0, &x.0));
        MultiPoly { vars, terms }.trim_vars()
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        if k == 0 {
            return Self::one();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return MultiPoly {
                vars: self.vars.clone(),
                terms: vec![(e.iter().map(|x| x * k).collect(), num_traits::pow(c.clone(), k as usize))],
            };
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
        let items: Vec<&MultiPoly> = items.into_iter().collect();
        let mut vars = empty_vars();
        for p in &items {
            vars = Self::union_vars(&vars, &p.vars);
        }
        let mut terms = Vec::new();
        for p in &items {
            terms.extend(p.widen(&vars));
        }
        Self::collect(vars, terms)
    }

    pub fn partial(&self, name: &str) -> MultiPoly {
        let Some(i) = self.var_index(name) else {
            return Self::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut f = e.clone();
                f[i] -= 1;
                (f, c * Rational::from_integer(BigInt::from(e[i])))
            })
            .collect();
        // lowering one exponent by one keeps grlex order among surviving terms
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .trim_vars()
    }

    /// Splits into coefficients of powers of `name`; entry k multiplies `name^k`.
    pub fn coefficients_in(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(name) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(name) as usize;
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            buckets[k].push((f, c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| {
                let mut terms = terms;
                terms.sort_unstable_by(|x, y| grlex(&y.0, &x.0));
                MultiPoly {
                    vars: self.vars.clone(),
                    terms,
                }
                .trim_vars()
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(name: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = Self::var(name);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Substitutes `value` for `name` (Horner scheme over the powers of `name`).
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> MultiPoly {
        if !self.contains_var(name) {
            return self.clone();
        }
        if let Some(c) = value.constant_value() {
            return self.eval_partial(name, &c);
        }
        let coeffs = self.coefficients_in(name);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitutes a rational constant for one variable.
    pub fn eval_partial(&self, name: &str, value: &Rational) -> MultiPoly {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                while powers.len() <= e[i] as usize {
                    let next = powers.last().unwrap() * value;
                    powers.push(next);
                }
                let mut f = e.clone();
                f[i] = 0;
                (f, c * &powers[e[i] as usize])
            })
            .collect();
        Self::collect(self.vars.clone(), terms)
    }

    /// Renames variables; names missing from `map` are kept.
    pub fn rename(&self, map: &dyn Fn(&str) -> Option<String>) -> Result<MultiPoly> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map(v).unwrap_or_else(|| v.clone()))
            .collect();
        Self::from_terms(vars, self.terms.clone())
    }

    pub fn eval_rational(&self, value: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational> {
        let vals: Vec<Rational> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| Error::invalid(format!("no value for variable {v}"))))
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in vals.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, value: &dyn Fn(&str) -> Option<Complex64>) -> Result<Complex64> {
        let vals: Vec<Complex64> = self
            .vars
            .iter()
            .map(|v| value(v).ok_or_else(|| Error::invalid(format!("no value for variable {v}"))))
            .collect::<Result<_>>()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(to_f64(c), 0.0);
            for (x, &k) in vals.iter().zip(e.iter()) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Dense rational coefficients of a univariate polynomial, lowest first.
    pub fn to_univariate(&self, name: &str) -> Result<Vec<Rational>> {
        if self.vars.iter().any(|v| v != name) {
            return Err(Error::invalid(format!(
                "polynomial in {:?} is not univariate in {name}",
                self.vars
            )));
        }
        let deg = self.degree_in(name) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.first().copied().unwrap_or(0) as usize;
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(name: &str, coeffs: &[Rational]) -> MultiPoly {
        let terms: Vec<(Exps, Rational)> = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (smallvec::smallvec![k as u32], c.clone()))
            .collect();
        Self::collect(Arc::from(vec![name.to_string()]), terms)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exps {
        let mut m: Exps = smallvec::smallvec![u32::MAX; self.vars.len()];
        for (e, _) in &self.terms {
            for (x, &y) in m.iter_mut().zip(e.iter()) {
                *x = (*x).min(y);
            }
        }
        if self.terms.is_empty() {
            m.iter_mut().for_each(|x| *x = 0);
        }
        m
    }

    /// Divides by a monomial given over this polynomial's variables.
    pub(crate) fn div_monomial(&self, m: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m.iter()).map(|(x, y)| x - y).collect(), c.clone()))
                .collect(),
        }
        .trim_vars()
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        // quick rejections on supports and degrees
        for v in divisor.vars.iter() {
            if self.degree_in(v) < divisor.degree_in(v) {
                return None;
            }
        }
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        let vars = self.vars.clone();
        let d = divisor.widen(&vars);
        if d.len() == 1 {
            let (de, dc) = &d[0];
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if e.iter().zip(de.iter()).any(|(x, y)| x < y) {
                    return None;
                }
                terms.push((e.iter().zip(de.iter()).map(|(x, y)| x - y).collect(), c * &inv));
            }
            return Some(MultiPoly { vars, terms }.trim_vars());
        }
        let (lead_e, lead_c) = d[0].clone();
        let inv = lead_c.recip();
        let mut rem: std::collections::BTreeMap<GrlexKey, Rational> =
            self.terms.iter().map(|(e, c)| (GrlexKey(e.clone()), c.clone())).collect();
        let mut quotient: Vec<(Exps, Rational)> = Vec::new();
        while let Some((GrlexKey(e), c)) = rem.pop_last() {
            if e.iter().zip(lead_e.iter()).any(|(x, y)| x < y) {
                return None;
            }
            let qe: Exps = e.iter().zip(lead_e.iter()).map(|(x, y)| x - y).collect();
            let qc = &c * &inv;
            for (de, dc) in d.iter().skip(1) {
                let te: Exps = qe.iter().zip(de.iter()).map(|(x, y)| x + y).collect();
                let tc = &qc * dc;
                let key = GrlexKey(te);
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= tc;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -tc);
                    }
                }
            }
            quotient.push((qe, qc));
        }
        // quotient terms were produced in descending order
        Some(MultiPoly { vars, terms: quotient }.trim_vars())
    }

    /// Evaluation modulo the Mersenne prime 2^61-1; `None` if a coefficient
    /// denominator vanishes there. `point` supplies a residue per variable.
    pub(crate) fn eval_mod_p(&self, point: &dyn Fn(&str) -> u64) -> Option<u64> {
        let vals: Vec<u64> = self.vars.iter().map(|v| point(v)).collect();
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut t = rational_mod_p(c)?;
            for (&x, &k) in vals.iter().zip(e.iter()) {
                if k > 0 {
                    t = mulmod(t, powmod(x, k as u64));
                }
            }
            acc = addmod(acc, t);
        }
        Some(acc)
    }
}

pub(crate) const MOD_P: u64 = (1u64 << 61) - 1;

pub(crate) fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD_P {
        s - MOD_P
    } else {
        s
    }
}

pub(crate) fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= MOD_P;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn rational_mod_p(c: &Rational) -> Option<u64> {
    let p = BigInt::from(MOD_P);
    let n = c.numer().mod_floor(&p).to_u64()?;
    let d = c.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, MOD_P - 2)))
}

/// Scales rational coefficients to integers with a common denominator.
fn integerize(terms: &[(Exps, Rational)]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for (_, c) in terms {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let ints = terms
        .iter()
        .map(|(_, c)| {
            if c.denom().is_one() {
                c.numer() * &l
            } else {
                c.numer() * (&l / c.denom())
            }
        })
        .collect();
    (ints, l)
}

#[derive(Clone, PartialEq, Eq)]
struct GrlexKey(Exps);

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::from_i64(c)
    }
}
