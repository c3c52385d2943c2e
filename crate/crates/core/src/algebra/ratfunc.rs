//! Reduced rational functions over Q.
//!
//! The denominator is held as a product of powers of pairwise coprime monic
//! polynomials (a gcd-free basis). Factors that are linear in some variable
//! and primitive with respect to it are flagged irreducible, which lets
//! reduction use trial division instead of a gcd. The numerator carries the
//! overall scalar, so the expanded denominator always has leading
//! coefficient one.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gcd::{certified_irreducible, content_in, gcd, split_monomial};
use super::poly::{mulmod, powmod, MultiPoly, MOD_P};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone)]
struct Factor {
    base: Arc<MultiPoly>,
    exp: u32,
    irreducible: bool,
}

#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: Vec<Factor>,
}

fn factor_key(p: &MultiPoly) -> (u32, usize, String) {
    (p.total_degree(), p.nterms(), p.to_string())
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    /// `num / den`, reduced.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (scalar, factors) = factor_denominator(&den);
        Ok(reduce(num.scale(&scalar.recip()), factors))
    }

    /// `num / prod base_k^exp_k` for bases that the caller knows to be
    /// pairwise coprime; each base is normalised and certified here.
    pub fn from_factored(num: MultiPoly, factors: &[(MultiPoly, u32)]) -> Result<Self> {
        let mut scalar = Rational::one();
        let mut list = Vec::new();
        for (b, e) in factors {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if *e == 0 {
                continue;
            }
            let (s, fs) = factor_denominator(b);
            scalar *= num_traits::pow(s, *e as usize);
            for mut f in fs {
                f.exp *= e;
                list.push(f);
            }
        }
        let list = refine(list);
        Ok(reduce(num.scale(&scalar.recip()), list))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    /// Expanded monic denominator.
    pub fn den(&self) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for f in &self.den {
            acc = &acc * &f.base.pow(f.exp);
        }
        acc
    }

    /// Denominator as (monic base, exponent) pairs from a coprime basis.
    pub fn den_factors(&self) -> Vec<(MultiPoly, u32)> {
        self.den.iter().map(|f| ((*f.base).clone(), f.exp)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().to_vec();
        for f in &self.den {
            for x in f.base.vars() {
                if !v.contains(x) {
                    v.push(x.clone());
                }
            }
        }
        v.sort_by(|a, b| super::poly::var_order(a, b));
        v
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (scalar, factors) = factor_denominator(&self.num);
        let mut top = MultiPoly::constant(scalar.recip());
        for f in &self.den {
            top = &top * &f.base.pow(f.exp);
        }
        // the old numerator was coprime to the old denominator, so no reduction is needed
        let mut den = factors;
        den.sort_by_key(|f| factor_key(&f.base));
        Ok(RatFunc { num: top, den })
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        if k == 0 {
            return Ok(Self::one());
        }
        Ok(RatFunc {
            num: self.num.pow(k),
            den: self
                .den
                .iter()
                .map(|f| Factor {
                    exp: f.exp * k,
                    ..f.clone()
                })
                .collect(),
        })
    }

    pub fn partial(&self, var: &str) -> RatFunc {
        let dnum = self.num.partial(var);
        let (with, without): (Vec<&Factor>, Vec<&Factor>) = self.den.iter().partition(|f| f.base.contains_var(var));
        if with.is_empty() {
            let den = self.den.clone();
            return reduce(dnum, den);
        }
        let mut radical = MultiPoly::one();
        for f in &with {
            radical = &radical * &*f.base;
        }
        let mut correction = MultiPoly::zero();
        for (k, f) in with.iter().enumerate() {
            let mut t = f.base.partial(var).scale(&Rational::from_integer(f.exp.into()));
            for (l, g) in with.iter().enumerate() {
                if l != k {
                    t = &t * &*g.base;
                }
            }
            correction = &correction + &t;
        }
        let num = &(&dnum * &radical) - &(&self.num * &correction);
        let mut den: Vec<Factor> = without.into_iter().cloned().collect();
        den.extend(with.into_iter().map(|f| Factor {
            exp: f.exp + 1,
            ..f.clone()
        }));
        den.sort_by_key(|f| factor_key(&f.base));
        reduce(num, den)
    }

    /// Substitutes a rational function for one variable.
    pub fn substitute(&self, var: &str, value: &RatFunc) -> Result<RatFunc> {
        if !self.vars().iter().any(|v| v == var) {
            return Ok(self.clone());
        }
        let num = compose(&self.num, var, value)?;
        let mut den = RatFunc::one();
        for f in &self.den {
            let b = compose(&f.base, var, value)?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den = &den * &b.pow(f.exp as i32)?;
        }
        num.checked_div(&den)
    }

    pub fn substitute_poly(&self, var: &str, value: &MultiPoly) -> Result<RatFunc> {
        if !self.vars().iter().any(|v| v == var) {
            return Ok(self.clone());
        }
        let num = self.num.substitute(var, value);
        let mut pieces = Vec::new();
        for f in &self.den {
            pieces.push((f.base.substitute(var, value), f.exp));
        }
        RatFunc::from_factored_loose(num, pieces)
    }

    /// Like [`from_factored`](Self::from_factored) but with no coprimality promise.
    fn from_factored_loose(num: MultiPoly, pieces: Vec<(MultiPoly, u32)>) -> Result<RatFunc> {
        let mut scalar = Rational::one();
        let mut list = Vec::new();
        for (b, e) in pieces {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let (s, fs) = factor_denominator(&b);
            scalar *= num_traits::pow(s, e as usize);
            for mut f in fs {
                f.exp *= e;
                list.push(f);
            }
        }
        Ok(reduce(num.scale(&scalar.recip()), refine(list)))
    }

    pub fn eval_partial(&self, var: &str, value: &Rational) -> Result<RatFunc> {
        self.substitute_poly(var, &MultiPoly::constant(value.clone()))
    }

    pub fn eval_rational(&self, value: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational> {
        let mut d = Rational::one();
        for f in &self.den {
            d *= num_traits::pow(f.base.eval_rational(value)?, f.exp as usize);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(value)? / d)
    }

    pub fn eval_complex(&self, value: &dyn Fn(&str) -> Option<Complex64>) -> Result<Complex64> {
        let mut d = Complex64::new(1.0, 0.0);
        for f in &self.den {
            d *= f.base.eval_complex(value)?.powu(f.exp);
        }
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_complex(value)? / d)
    }

    pub fn eval_f64(&self, value: &dyn Fn(&str) -> Option<f64>) -> Result<f64> {
        let z = self.eval_complex(&|v| value(v).map(|x| Complex64::new(x, 0.0)))?;
        Ok(z.re)
    }

    /// Renames variables throughout.
    pub fn rename(&self, map: &dyn Fn(&str) -> Option<String>) -> Result<RatFunc> {
        let num = self.num.rename(map)?;
        let pieces = self
            .den
            .iter()
            .map(|f| Ok((f.base.rename(map)?, f.exp)))
            .collect::<Result<Vec<_>>>()?;
        RatFunc::from_factored_loose(num, pieces)
    }

    fn add_impl(&self, other: &RatFunc, negate: bool) -> RatFunc {
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc {
                num: rhs_num,
                den: other.den.clone(),
            };
        }
        if self.den.is_empty() && other.den.is_empty() {
            return RatFunc::from_poly(&self.num + &rhs_num);
        }
        let (basis, ea, eb) = common_basis(&self.den, &other.den);
        let mut fa = MultiPoly::one();
        let mut fb = MultiPoly::one();
        let mut den = Vec::with_capacity(basis.len());
        let mut suspects = Vec::new();
        for (k, b) in basis.into_iter().enumerate() {
            let l = ea[k].max(eb[k]);
            if l > ea[k] {
                fa = &fa * &b.base.pow(l - ea[k]);
            }
            if l > eb[k] {
                fb = &fb * &b.base.pow(l - eb[k]);
            }
            // cancellation is only possible where both sides had the same exponent
            if ea[k] == eb[k] {
                suspects.push(den.len());
            }
            den.push(Factor { exp: l, ..b });
        }
        let num = &(&self.num * &fa) + &(&rhs_num * &fb);
        reduce_selected(num, den, &suspects)
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_empty() && other.den.is_empty() {
            return RatFunc::from_poly(&self.num * &other.num);
        }
        if other.den.is_empty() && other.num.is_constant() {
            return self.scale(&other.num.lc());
        }
        if self.den.is_empty() && self.num.is_constant() {
            return other.scale(&self.num.lc());
        }
        let (basis, ea, eb) = common_basis(&self.den, &other.den);
        let den: Vec<Factor> = basis
            .into_iter()
            .enumerate()
            .map(|(k, b)| Factor { exp: ea[k] + eb[k], ..b })
            .collect();
        reduce(&self.num * &other.num, den)
    }
}

/// Splits a polynomial into scalar times a coprime basis of monic factors.
fn factor_denominator(p: &MultiPoly) -> (Rational, Vec<Factor>) {
    let (lc, monic) = p.monic();
    let (mono, rest) = split_monomial(&monic);
    let mut pieces: Vec<MultiPoly> = Vec::new();
    for v in mono.vars() {
        let e = mono.degree_in(v);
        for _ in 0..e {
            pieces.push(MultiPoly::var(v));
        }
    }
    if !rest.is_constant() {
        split_contents(rest.monic().1, &mut pieces);
    }
    let list = pieces
        .into_iter()
        .map(|b| {
            let irreducible = certified_irreducible(&b);
            Factor {
                base: Arc::new(b),
                exp: 1,
                irreducible,
            }
        })
        .collect();
    (lc, refine(list))
}

/// Recursively peels contents with respect to each variable.
fn split_contents(p: MultiPoly, out: &mut Vec<MultiPoly>) {
    if p.is_constant() {
        return;
    }
    if p.vars().len() > 1 {
        for v in p.vars().to_vec() {
            let c = content_in(&p, &v);
            if !c.is_constant() {
                let rest = p.div_exact(&c).expect("content divides");
                split_contents(c, out);
                split_contents(rest.monic().1, out);
                return;
            }
        }
    }
    out.push(p);
}

/// Turns a list of monic factors with exponents into a coprime basis.
fn refine(list: Vec<Factor>) -> Vec<Factor> {
    let mut work = list;
    let mut done: Vec<Factor> = Vec::new();
    'outer: while let Some(f) = work.pop() {
        if f.base.is_constant() || f.exp == 0 {
            continue;
        }
        for k in 0..done.len() {
            if *done[k].base == *f.base {
                done[k].exp += f.exp;
                continue 'outer;
            }
            if done[k].irreducible && f.irreducible {
                continue;
            }
            let g = gcd(&done[k].base, &f.base);
            if g.is_constant() {
                continue;
            }
            let r = done.swap_remove(k);
            let gi = certified_irreducible(&g);
            work.push(Factor {
                base: Arc::new(g.clone()),
                exp: f.exp + r.exp,
                irreducible: gi,
            });
            for (b, e) in [(&*f.base, f.exp), (&*r.base, r.exp)] {
                let q = b.div_exact(&g).expect("gcd divides").monic().1;
                if !q.is_constant() {
                    let irreducible = certified_irreducible(&q);
                    work.push(Factor {
                        base: Arc::new(q),
                        exp: e,
                        irreducible,
                    });
                }
            }
            continue 'outer;
        }
        done.push(f);
    }
    done.sort_by_key(|f| factor_key(&f.base));
    done
}

/// Common coprime basis for two denominators, with each side's exponents.
fn common_basis(a: &[Factor], b: &[Factor]) -> (Vec<Factor>, Vec<u32>, Vec<u32>) {
    let same = a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| *x.base == *y.base);
    if same {
        return (
            a.iter().map(|f| Factor { exp: 0, ..f.clone() }).collect(),
            a.iter().map(|f| f.exp).collect(),
            b.iter().map(|f| f.exp).collect(),
        );
    }
    // fast path: every factor certified irreducible, so the union is coprime
    let all_irreducible = a.iter().chain(b.iter()).all(|f| f.irreducible);
    let mut basis: Vec<Factor> = Vec::new();
    if all_irreducible {
        for f in a.iter().chain(b.iter()) {
            if !basis.iter().any(|g| *g.base == *f.base) {
                basis.push(Factor { exp: 0, ..f.clone() });
            }
        }
    } else {
        let list: Vec<Factor> = a.iter().chain(b.iter()).map(|f| Factor { exp: 1, ..f.clone() }).collect();
        basis = refine(list).into_iter().map(|f| Factor { exp: 0, ..f }).collect();
    }
    basis.sort_by_key(|f| factor_key(&f.base));
    let ea = exponents_in(&basis, a);
    let eb = exponents_in(&basis, b);
    (basis, ea, eb)
}

fn exponents_in(basis: &[Factor], fs: &[Factor]) -> Vec<u32> {
    let mut out = vec![0u32; basis.len()];
    for f in fs {
        if let Some(k) = basis.iter().position(|g| *g.base == *f.base) {
            out[k] += f.exp;
            continue;
        }
        let mut rest = (*f.base).clone();
        for (k, g) in basis.iter().enumerate() {
            while let Some(q) = rest.div_exact(&g.base) {
                out[k] += f.exp;
                rest = q;
                if rest.is_constant() {
                    break;
                }
            }
            if rest.is_constant() {
                break;
            }
        }
        debug_assert!(rest.is_constant(), "basis must cover every factor");
    }
    out
}

fn reduce(num: MultiPoly, den: Vec<Factor>) -> RatFunc {
    let all: Vec<usize> = (0..den.len()).collect();
    reduce_selected(num, den, &all)
}

/// Cancels common factors between `num` and the listed denominator factors.
fn reduce_selected(mut num: MultiPoly, den: Vec<Factor>, check: &[usize]) -> RatFunc {
    if num.is_zero() {
        return RatFunc::zero();
    }
    let mut out: Vec<Factor> = Vec::with_capacity(den.len());
    let mut resplit: Vec<Factor> = Vec::new();
    for (k, mut f) in den.into_iter().enumerate() {
        if f.exp == 0 {
            continue;
        }
        if check.binary_search(&k).is_err() {
            out.push(f);
            continue;
        }
        if f.irreducible {
            while f.exp > 0 && may_divide(&num, &f.base) {
                match num.div_exact(&f.base) {
                    Some(q) => {
                        num = q;
                        f.exp -= 1;
                    }
                    None => break,
                }
            }
            if f.exp > 0 {
                out.push(f);
            }
            continue;
        }
        let g = gcd(&num, &f.base);
        if g.is_constant() {
            out.push(f);
            continue;
        }
        if g == *f.base {
            while f.exp > 0 {
                match num.div_exact(&f.base) {
                    Some(q) => {
                        num = q;
                        f.exp -= 1;
                    }
                    None => break,
                }
            }
            if f.exp > 0 {
                out.push(f);
            }
            continue;
        }
        // partial overlap: split this base and reduce the pieces again
        let q = f.base.div_exact(&g).expect("gcd divides").monic().1;
        for b in [g, q] {
            let irreducible = certified_irreducible(&b);
            resplit.push(Factor {
                base: Arc::new(b),
                exp: f.exp,
                irreducible,
            });
        }
    }
    if !resplit.is_empty() {
        let mut list = out;
        list.extend(refine(resplit));
        let list = refine(list);
        return reduce(num, list);
    }
    out.sort_by_key(|f| factor_key(&f.base));
    RatFunc { num, den: out }
}

fn hash_point(name: &str, salt: u64) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    salt.hash(&mut h);
    h.finish() % MOD_P
}

/// Cheap necessary condition for `base | num`: for a base linear in some
/// variable, `num` must vanish modulo p on a random point of `base = 0`.
fn may_divide(num: &MultiPoly, base: &MultiPoly) -> bool {
    let Some(v) = base.vars().iter().find(|v| base.degree_in(v) == 1).cloned() else {
        return true;
    };
    if !num.contains_var(&v) {
        return false;
    }
    for salt in 0..2u64 {
        let cs = base.coefficients_in(&v);
        let point = |x: &str| hash_point(x, salt);
        let (Some(c0), Some(c1)) = (cs[0].eval_mod_p(&point), cs[1].eval_mod_p(&point)) else {
            return true;
        };
        if c1 == 0 {
            continue;
        }
        // v = -c0 / c1 mod p
        let root = mulmod((MOD_P - c0) % MOD_P, powmod(c1, MOD_P - 2));
        let at = |x: &str| if x == v { root } else { hash_point(x, salt) };
        match num.eval_mod_p(&at) {
            Some(0) => return true,
            Some(_) => return false,
            None => return true,
        }
    }
    true
}

/// Evaluates a polynomial at `var = value` with the other variables symbolic.
fn compose(p: &MultiPoly, var: &str, value: &RatFunc) -> Result<RatFunc> {
    if let Some(q) = value.as_poly() {
        return Ok(RatFunc::from_poly(p.substitute(var, q)));
    }
    let coeffs = p.coefficients_in(var);
    let mut acc = RatFunc::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RatFunc::from_poly(c.clone());
    }
    Ok(acc)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num
            && self.den.len() == other.den.len()
            && self
                .den
                .iter()
                .zip(other.den.iter())
                .all(|(a, b)| a.exp == b.exp && *a.base == *b.base)
        {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_i64(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_ratfunc(self))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn v(n: &str) -> RatFunc {
        RatFunc::var(n)
    }

    #[test]
    fn reduces_common_factors() {
        let x = MultiPoly::var("x");
        let one = MultiPoly::one();
        let r = RatFunc::new(&x.pow(2) - &one, (&x - &one).scale(&int(2))).unwrap();
        assert_eq!(r.num(), &(&x + &one).scale(&rat(1, 2)));
        assert!(r.is_polynomial());
    }

    #[test]
    fn sums_cancel_to_zero() {
        let x = v("x");
        let a = RatFunc::one().checked_div(&(&x - &RatFunc::one())).unwrap();
        let b = RatFunc::one().checked_div(&x).unwrap();
        let s = &a - &b;
        let expect = RatFunc::one().checked_div(&(&x * &(&x - &RatFunc::one()))).unwrap();
        assert_eq!(s, expect);
        assert!((&s - &expect).is_zero());
    }

    #[test]
    fn denominator_is_monic() {
        let x = v("x");
        let c = v("c");
        let r = RatFunc::one()
            .checked_div(&(&(&x * &c).scale(&int(-3)) + &RatFunc::from_i64(6)))
            .unwrap();
        assert_eq!(r.den().lc(), Rational::one());
        assert_eq!(&r * &(&(&x * &c).scale(&int(-3)) + &RatFunc::from_i64(6)), RatFunc::one());
    }

    #[test]
    fn derivative_of_quotient() {
        let x = v("x");
        let f = (&x * &x).checked_div(&(&x + &RatFunc::one())).unwrap();
        // d/dx x^2/(x+1) = (x^2 + 2x)/(x+1)^2
        let expect = (&(&x * &x) + &x.scale(&int(2)))
            .checked_div(&(&x + &RatFunc::one()).pow(2).unwrap())
            .unwrap();
        assert_eq!(f.partial("x"), expect);
    }

    #[test]
    fn non_linear_factors_split_against_numerators() {
        let x = v("x");
        let one = RatFunc::one();
        let q = &(&x * &x) - &one;
        let f = one.checked_div(&q).unwrap();
        let g = &f * &(&x - &one);
        assert_eq!(g, one.checked_div(&(&x + &one)).unwrap());
        assert_eq!(g.den(), (&x + &one).as_poly().unwrap().clone());
    }

    #[test]
    fn substitution_into_denominator() {
        let (a, b) = (v("a"), v("b"));
        let f = RatFunc::one().checked_div(&(&a - &b)).unwrap();
        let g = f.substitute_poly("b", &MultiPoly::from_i64(1)).unwrap();
        assert_eq!(g, RatFunc::one().checked_div(&(&a - &RatFunc::one())).unwrap());
        assert!(f.substitute_poly("b", &MultiPoly::var("a")).is_err());
    }
}
