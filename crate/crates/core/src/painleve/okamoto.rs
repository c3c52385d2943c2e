//! Okamoto's birational canonical transformations of the Hamiltonian
//! system, for the generators `w_0..w_4` and words in them.
//!
//! `w_4` is `(b_1, b_2, b_3, b_4) ↦ (-b_2, -b_1, b_3, b_4)` and the second
//! component of `g[b]` carries the factor 1/2; the older printed forms of
//! both differ.

use std::fmt;
use std::str::FromStr;

use super::{x, OkamotoCoords, X};
use crate::algebra::{int, rat, RatFunc, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    W0,
    W1,
    W2,
    W3,
    W4,
}

impl Generator {
    pub fn act(self, b: &OkamotoCoords) -> OkamotoCoords {
        let [b1, b2, b3, b4] = b.as_array();
        let one = int(1);
        let out = match self {
            Generator::W0 => [b1, b2, -&b4 - &one, -&b3 - &one],
            Generator::W1 => [b2, b1, b3, b4],
            Generator::W2 => [b1, b3, b2, b4],
            Generator::W3 => [b1, b2, b4, b3],
            Generator::W4 => [-b2, -b1, b3, b4],
        };
        OkamotoCoords::from_array(out)
    }

    /// Parses a word such as `"w1w2w1"`.
    pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
        let s = s.trim();
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            if ch != 'w' {
                return Err(Error::invalid(format!("bad Okamoto word {s:?}")));
            }
            let d = chars.next().ok_or_else(|| Error::invalid(format!("bad Okamoto word {s:?}")))?;
            out.push(d.to_string().parse::<Generator>().map_err(|_| Error::invalid(format!("bad Okamoto word {s:?}")))?);
        }
        if out.is_empty() {
            return Err(Error::invalid("empty Okamoto word"));
        }
        Ok(out)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches('w') {
            "0" => Ok(Generator::W0),
            "1" => Ok(Generator::W1),
            "2" => Ok(Generator::W2),
            "3" => Ok(Generator::W3),
            "4" => Ok(Generator::W4),
            _ => Err(Error::invalid(format!("unknown generator {s:?}"))),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            Generator::W0 => 0,
            Generator::W1 => 1,
            Generator::W2 => 2,
            Generator::W3 => 3,
            Generator::W4 => 4,
        };
        write!(f, "w{k}")
    }
}

/// Image of `b` under a word; the rightmost letter acts first.
pub fn act_word(word: &[Generator], b: &OkamotoCoords) -> OkamotoCoords {
    word.iter().rev().fold(b.clone(), |acc, g| g.act(&acc))
}

fn elementary(vals: &[Rational]) -> [Rational; 4] {
    let mut e = [int(1), int(0), int(0), int(0)];
    for v in vals {
        for k in (1..=vals.len().min(3)).rev() {
            e[k] = &e[k] + &(&e[k - 1] * v);
        }
    }
    e
}

fn sigma4(b: &OkamotoCoords) -> (Rational, Rational, Rational) {
    let arr = b.as_array();
    let mut e = [int(1), int(0), int(0), int(0), int(0)];
    for v in &arr {
        for k in (1..=4).rev() {
            e[k] = &e[k] + &(&e[k - 1] * v);
        }
    }
    (e[1].clone(), e[2].clone(), e[3].clone())
}

/// `h = -y(y-1)p^2 + (2b_1 y - (b_1 + b_2))p - b_1^2`.
pub fn okamoto_h(y: &RatFunc, p: &RatFunc, b: &OkamotoCoords) -> RatFunc {
    let one = RatFunc::one();
    let t1 = -&(&(&(y * &(y - &one)) * p) * p);
    let lin = &y.scale(&(int(2) * &b.b1)) - &RatFunc::constant(&b.b1 + &b.b2);
    &(&t1 + &(&lin * p)) - &RatFunc::constant(&b.b1 * &b.b1)
}

/// `F[b]` as `[[f11, f12], [f21, f22]]` and `g[b]`, for a given value of `h`.
fn f_and_g(b: &OkamotoCoords, h: &RatFunc) -> ([[RatFunc; 2]; 2], [RatFunc; 2]) {
    let e = elementary(&[b.b1.clone(), b.b3.clone(), b.b4.clone()]);
    let (s1, s2, s3) = sigma4(b);
    let k = |r: Rational| RatFunc::constant(r);
    let f = [
        [&k(e[2].clone()) - h, k(-(&b.b3 + &b.b4))],
        [&h.scale(&e[1]) - &k(e[3].clone()), &k(&b.b3 * &b.b4) - h],
    ];
    let half = rat(1, 2);
    let g = [k(-&s2 * &half), &h.scale(&(-&s1 * &half)) + &k(&s3 * &half)];
    (f, g)
}

/// `(y_w, p_w)` and the transformed parameters.
#[derive(Clone, Debug)]
pub struct OkamotoImage {
    pub y: RatFunc,
    pub p: RatFunc,
    pub b: OkamotoCoords,
}

/// Solves `F[b](y, y(y-1)p) + g[b] = F[w(b)](y_w, y_w(y_w-1)p_w) + g[w(b)]`
/// for `(y_w, p_w)`, with `h` evaluated at `(y, p, b)` on both sides.
pub fn okamoto_apply(word: &[Generator], y: &RatFunc, p: &RatFunc, b: &OkamotoCoords) -> Result<OkamotoImage> {
    if word.is_empty() {
        return Err(Error::invalid("empty Okamoto word"));
    }
    let wb = act_word(word, b);
    let h = okamoto_h(y, p, b);
    let z = &(y * &(y - &RatFunc::one())) * p;
    let (f, g) = f_and_g(b, &h);
    let (fw, gw) = f_and_g(&wb, &h);
    let rhs = [
        &(&(&(&f[0][0] * y) + &(&f[0][1] * &z)) + &g[0]) - &gw[0],
        &(&(&(&f[1][0] * y) + &(&f[1][1] * &z)) + &g[1]) - &gw[1],
    ];
    let det = &(&fw[0][0] * &fw[1][1]) - &(&fw[0][1] * &fw[1][0]);
    if det.is_zero() {
        return Err(Error::precondition(
            "F[w(b)] is singular on this (y, p); the degenerate prolongation applies instead",
        ));
    }
    let yw = (&(&rhs[0] * &fw[1][1]) - &(&fw[0][1] * &rhs[1])).checked_div(&det)?;
    let zw = (&(&fw[0][0] * &rhs[1]) - &(&fw[1][0] * &rhs[0])).checked_div(&det)?;
    let yy = &yw * &(&yw - &RatFunc::one());
    if yy.is_zero() {
        return Err(Error::precondition("image y_w is 0 or 1; its momentum is not determined"));
    }
    let pw = zw.checked_div(&yy)?;
    Ok(OkamotoImage { y: yw, p: pw, b: wb })
}

/// Image of the degenerate solution `y ≡ 0` (with `b_1 = -b_2`) under
/// `w_1 w_2 w_1`: `y_w = (b_1 - b_3)/(p + 2b_1)`,
/// `p_w = -(b_1 + b_3)(p + 2b_1)/(p + b_1 + b_3)`.
pub fn degenerate_prolongation(p: &RatFunc, b1: &Rational, b3: &Rational) -> Result<(RatFunc, RatFunc)> {
    let shifted = p + &RatFunc::constant(int(2) * b1);
    if shifted.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let yw = RatFunc::constant(b1 - b3).checked_div(&shifted)?;
    let tail = p + &RatFunc::constant(b1 + b3);
    let pw = shifted.scale(&-(b1 + b3)).checked_div(&tail)?;
    Ok((yw, pw))
}

/// `-x(x-1)p' - [x p^2 + (2b_1 x + b_3 + b_4) p + (b_1 + b_3)(b_1 + b_4)]`.
pub fn riccati_residual(p: &RatFunc, b: &OkamotoCoords) -> RatFunc {
    let x = x();
    let xx1 = &x * &(&x - &RatFunc::one());
    let lhs = -&(&xx1 * &p.partial(X));
    let lin = &x.scale(&(int(2) * &b.b1)) + &RatFunc::constant(&b.b3 + &b.b4);
    let rhs = [
        &(&x * p) * p,
        &lin * p,
        RatFunc::constant((&b.b1 + &b.b3) * (&b.b1 + &b.b4)),
    ]
    .into_iter()
    .fold(RatFunc::zero(), |a, t| &a + &t);
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfunc;
    use crate::painleve::{conjugate_momentum, hamiltonian_residual, pvi_params, pvi_residual, thm5_solution};

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn example_b() -> OkamotoCoords {
        OkamotoCoords::new(int(-1), int(1), int(0), int(1))
    }

    #[test]
    fn word_actions() {
        let b = OkamotoCoords::new(int(1), int(2), int(3), int(4));
        let w = Generator::parse_word("w1w2w1").unwrap();
        assert_eq!(act_word(&w, &b), OkamotoCoords::new(int(3), int(2), int(1), int(4)));
        assert_eq!(act_word(&w, &example_b()), OkamotoCoords::new(int(0), int(1), int(-1), int(1)));
        assert!(Generator::parse_word("w5").is_err());
        assert!(Generator::parse_word("").is_err());
    }

    #[test]
    fn generator_actions_on_a_solution() {
        let fam = thm5_solution(2).unwrap();
        let p = conjugate_momentum(&fam.y, &fam.theta).unwrap();
        let b = OkamotoCoords::from_theta(&fam.theta);
        let id = okamoto_apply(&[Generator::W3], &fam.y, &p, &b).unwrap();
        assert_eq!(id.y, fam.y);
        assert_eq!(id.p, p);
        for g in [Generator::W1, Generator::W4] {
            let im = okamoto_apply(&[g], &fam.y, &p, &b).unwrap();
            assert_eq!(im.y, fam.y, "{g} changed y");
            assert_ne!(im.p, p, "{g} fixed p");
            let (r1, r2) = hamiltonian_residual(&im.y, &im.p, &im.b.to_theta()).unwrap();
            assert!(r1.is_zero() && r2.is_zero(), "{g}");
        }
        let im = okamoto_apply(&[Generator::W2], &fam.y, &p, &b).unwrap();
        assert!(pvi_residual(&im.y, &pvi_params(&im.b.to_theta())).unwrap().is_zero());
    }

    #[test]
    fn w0_fixes_y() {
        let fam = thm5_solution(2).unwrap();
        let p = conjugate_momentum(&fam.y, &fam.theta).unwrap();
        let b = OkamotoCoords::from_theta(&fam.theta);
        let im = okamoto_apply(&[Generator::W0], &fam.y, &p, &b).unwrap();
        assert_eq!(im.y, fam.y, "w0 changed y");
        let (r1, r2) = hamiltonian_residual(&im.y, &im.p, &im.b.to_theta()).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn w1w2w1_closed_form_and_its_prolongation() {
        // y and p as free symbols, b1 = -b2
        let b = OkamotoCoords::new(rat(2, 3), rat(-2, 3), rat(1, 5), rat(3, 7));
        let (y, p) = (RatFunc::var("y"), RatFunc::var("p"));
        let w = Generator::parse_word("w1w2w1").unwrap();
        let im = okamoto_apply(&w, &y, &p, &b).unwrap();
        let one = RatFunc::one();
        let den = &(-&(&(&y - &one) * &p)) + &RatFunc::constant(int(2) * &b.b1);
        let closed = &y + &(&y - &one).scale(&(&b.b3 - &b.b1)).checked_div(&den).unwrap();
        assert_eq!(im.y, closed);
        let at_zero = closed.eval_partial("y", &int(0)).unwrap();
        let (yw, _) = degenerate_prolongation(&p, &b.b1, &b.b3).unwrap();
        assert_eq!(at_zero, yw);
        assert!(okamoto_apply(&w, &RatFunc::zero(), &p, &b).is_err());
    }

    #[test]
    fn degenerate_family_example() {
        let p = r("2*x*(x - 1)/(x^2 + c)");
        let b = example_b();
        assert!(riccati_residual(&p, &b).is_zero());
        assert!(riccati_residual(&p.eval_partial("c", &int(1)).unwrap(), &b).is_zero());
        let (yw, pw) = degenerate_prolongation(&p, &b.b1, &b.b3).unwrap();
        assert_eq!(yw, r("(x^2 + c)/(2*(x + c))"));
        let two = RatFunc::from_i64(2);
        assert_eq!(pw, (&p - &two).checked_div(&(&p - &RatFunc::one())).unwrap());
        let wb = act_word(&Generator::parse_word("w1w2w1").unwrap(), &b);
        let params = pvi_params(&wb.to_theta());
        assert_eq!(params.as_strings(), ["2", "-1/2", "1/2", "0"]);
        assert!(pvi_residual(&yw, &params).unwrap().is_zero());
        assert_eq!(conjugate_momentum(&yw, &wb.to_theta()).unwrap(), pw);
    }

    #[test]
    fn riccati_trivial_cases() {
        let b = OkamotoCoords::new(int(1), int(0), int(-1), int(2));
        assert!(riccati_residual(&RatFunc::zero(), &b).is_zero());
        assert!(!riccati_residual(&RatFunc::one(), &OkamotoCoords::new(rat(1, 3), int(2), rat(1, 5), int(1))).is_zero());
        let b = OkamotoCoords::new(int(1), int(-1), int(1), int(0));
        let p = RatFunc::constant(int(-2) + int(5));
        let (yw, _) = degenerate_prolongation(&p, &b.b1, &b.b3).unwrap();
        assert!(yw.is_zero());
    }
}
