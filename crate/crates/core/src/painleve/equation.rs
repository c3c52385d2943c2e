//! Exact residuals: PVI itself, its Hamiltonian form, and the linear
//! system and hypergeometric equations satisfied by the entries `b_1, b_2`.

use super::{x, x_poly, PVIParams, ThetaTuple, X};
use crate::algebra::{int, rat, MultiPoly, RatFunc, Rational};
use crate::error::{Error, Result};

/// The four degenerate solutions `y ≡ ∞, 0, 1, x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degenerate {
    Infinity,
    Zero,
    One,
    X,
}

/// Which of `y ≡ 0, 1, x` this is, if any.
pub fn degenerate_kind(y: &RatFunc) -> Option<Degenerate> {
    if y.is_zero() {
        Some(Degenerate::Zero)
    } else if *y == RatFunc::one() {
        Some(Degenerate::One)
    } else if *y == x() {
        Some(Degenerate::X)
    } else {
        None
    }
}

/// Whether the degenerate solution solves PVI with these parameters:
/// `∞` needs `α = 0`, `0` needs `β = 0`, `1` needs `γ = 0`, `x` needs `δ = 1/2`.
pub fn degenerate_solves(kind: Degenerate, params: &PVIParams) -> bool {
    match kind {
        Degenerate::Infinity => params.alpha == int(0),
        Degenerate::Zero => params.beta == int(0),
        Degenerate::One => params.gamma == int(0),
        Degenerate::X => params.delta == rat(1, 2),
    }
}

fn dx(p: &MultiPoly) -> MultiPoly {
    p.partial(X)
}

fn c(r: &Rational) -> MultiPoly {
    MultiPoly::constant(r.clone())
}

/// `y'' - RHS(y, y')` of PVI for `y` depending on `x` and possibly a
/// family parameter.
///
/// With `y = P/Q`, `A = P`, `B = P - Q`, `C = P - xQ`, the equation is
/// multiplied through by `2 x^2 (x-1)^2 Q^3 A^2 B^2 C^2`, so the zero test
/// happens on a polynomial; the quotient is formed only for a nonzero
/// residual. Degenerate `y` are answered by [`degenerate_solves`].
pub fn pvi_residual(y: &RatFunc, params: &PVIParams) -> Result<RatFunc> {
    if let Some(kind) = degenerate_kind(y) {
        return if degenerate_solves(kind, params) {
            Ok(RatFunc::zero())
        } else {
            Err(Error::precondition(format!(
                "degenerate y ({kind:?}) does not solve PVI with these parameters"
            )))
        };
    }
    let xp = x_poly();
    let one = MultiPoly::one();
    let p = y.num().clone();
    let q = y.den();
    let a = p.clone();
    let b = &p - &q;
    let cc = &p - &(&xp * &q);
    let (dp, dq) = (dx(&p), dx(&q));
    let d = &(&dp * &q) - &(&p * &dq);
    let e = &(&dx(&d) * &q) - &(&(&d * &dq) * &MultiPoly::from_i64(2));
    let xm1 = &xp - &one;
    let x2 = (&xp * &xm1).pow(2);
    let (a2, b2, c2) = (a.pow(2), b.pow(2), cc.pow(2));
    let abc = &(&a * &b) * &cc;
    let a2b2 = &a2 * &b2;
    let a2b2c2 = &a2b2 * &c2;
    let two = MultiPoly::from_i64(2);
    let q2 = q.pow(2);

    let t_e = &(&(&two * &x2) * &e) * &a2b2c2;
    let sym = &(&(&a * &b) + &(&b * &cc)) + &(&cc * &a);
    let t_1 = &(&(&x2 * &d.pow(2)) * &abc) * &sym;
    let lin = &(&(&(&two * &xp) - &one) * &(&(&xp * &xm1) * &cc)) + &(&q * &x2);
    let t_2 = &(&(&(&two * &d) * &q) * &(&a2b2 * &cc)) * &lin;
    let bracket = MultiPoly::sum(
        [
            &c(&params.alpha) * &a2b2c2,
            &(&c(&params.beta) * &xp) * &(&(&q2 * &b2) * &c2),
            &(&c(&params.gamma) * &xm1) * &(&(&q2 * &a2) * &c2),
            &(&c(&params.delta) * &(&xp * &xm1)) * &(&q2 * &a2b2),
        ]
        .iter(),
    );
    let t_3 = &(&two * &abc) * &bracket;
    let num = &(&(&t_e - &t_1) + &t_2) - &t_3;
    if num.is_zero() {
        return Ok(RatFunc::zero());
    }
    let m = &(&(&two * &x2) * &q.pow(3)) * &a2b2c2;
    RatFunc::new(num, m)
}

/// `(b_1' - (2/x)((β_1+β_3) b_1 + β_1 b_2), b_2' - (2/(x-1))(β_2 b_1 + (β_2+β_3) b_2))`.
pub fn linear_system_residual(b1: &RatFunc, b2: &RatFunc, theta: &ThetaTuple) -> Result<(RatFunc, RatFunc)> {
    let x = x();
    let two = int(2);
    let r1 = {
        let rhs = &b1.scale(&(&theta.beta1 + &theta.beta3)) + &b2.scale(&theta.beta1);
        &b1.partial(X) - &rhs.scale(&two).checked_div(&x)?
    };
    let r2 = {
        let rhs = &b1.scale(&theta.beta2) + &b2.scale(&(&theta.beta2 + &theta.beta3));
        &b2.partial(X) - &rhs.scale(&two).checked_div(&(&x - &RatFunc::one()))?
    };
    Ok((r1, r2))
}

/// Which of the two second-order equations for `b_1` and `b_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypergeom {
    /// Equation for `b_1`, with `b'` coefficient constant `2β_1 + 2β_3 - 1`.
    First,
    /// Equation for `b_2`, with `b'` coefficient constant `2β_1 + 2β_3`.
    Second,
}

/// `b'' + ((k + (1 - 2β_1 - 2β_2 - 4β_3) x)/(x(x-1))) b' + 4β_3(β_1+β_2+β_3)/(x(x-1)) b`.
pub fn hypergeom_residual(b: &RatFunc, which: Hypergeom, theta: &ThetaTuple) -> Result<RatFunc> {
    let (b1, b2, b3) = (&theta.beta1, &theta.beta2, &theta.beta3);
    let two = int(2);
    let mut k = &two * b1 + &two * b3;
    if which == Hypergeom::First {
        k -= int(1);
    }
    let slope = int(1) - &two * b1 - &two * b2 - int(4) * b3;
    let free = int(4) * b3 * (b1 + b2 + b3);
    let xp = x_poly();
    let xx1 = RatFunc::from_poly(&xp * &(&xp - &MultiPoly::one()));
    let db = b.partial(X);
    let coeff1 = RatFunc::from_poly(&c(&k) + &(&c(&slope) * &xp));
    let tail = &(&coeff1 * &db) + &b.scale(&free);
    Ok(&b.partial(X).partial(X) + &tail.checked_div(&xx1)?)
}

/// Solves the first Hamiltonian equation for `p`:
/// `p = (x(x-1) y'/(y(y-1)(y-x)) + (2β_3-1)/(y-x) + 2β_1/y + 2β_2/(y-1))/2`.
pub fn conjugate_momentum(y: &RatFunc, theta: &ThetaTuple) -> Result<RatFunc> {
    if let Some(kind) = degenerate_kind(y) {
        return Err(Error::precondition(format!(
            "momentum of the degenerate solution {kind:?} is not determined by y"
        )));
    }
    let x = x();
    let one = RatFunc::one();
    let ym1 = y - &one;
    let ymx = y - &x;
    let xx1 = &x * &(&x - &one);
    let two = int(2);
    let mut acc = (&xx1 * &y.partial(X)).checked_div(&(&(y * &ym1) * &ymx))?;
    acc = &acc + &RatFunc::constant(&two * &theta.beta3 - int(1)).checked_div(&ymx)?;
    acc = &acc + &RatFunc::constant(&two * &theta.beta1).checked_div(y)?;
    acc = &acc + &RatFunc::constant(&two * &theta.beta2).checked_div(&ym1)?;
    Ok(acc.scale(&rat(1, 2)))
}

/// Residuals of both Hamiltonian equations, written so that degenerate `y`
/// need no division by `y`, `y - 1` or `y - x`.
pub fn hamiltonian_residual(y: &RatFunc, p: &RatFunc, theta: &ThetaTuple) -> Result<(RatFunc, RatFunc)> {
    let x = x();
    let one = RatFunc::one();
    let two = int(2);
    let (b1, b2, b3, binf) = (&theta.beta1, &theta.beta2, &theta.beta3, &theta.beta_inf);
    let ym1 = y - &one;
    let ymx = y - &x;
    let xx1 = &x * &(&x - &one);
    let flow = [
        (&(&(y * &ym1) * &ymx) * p).scale(&two),
        (y * &ym1).scale(&-(&two * b3 - int(1))),
        (&ym1 * &ymx).scale(&-(&two * b1)),
        (y * &ymx).scale(&-(&two * b2)),
    ]
    .into_iter()
    .fold(RatFunc::zero(), |a, t| &a + &t);
    let r1 = &y.partial(X) - &flow.checked_div(&xx1)?;

    let sigma = b1 + b2 + b3;
    let kappa = (&sigma - binf) * (&sigma + binf - int(1));
    let quad = &(&(&(y * y).scale(&int(3)) - &(&(&x + &one) * y).scale(&two)) + &x) * &(p * p);
    let lin_coeff = [
        y.scale(&(int(2) - int(4) * &sigma)),
        RatFunc::constant(&two * b1 + &two * b3 - int(1)),
        x.scale(&(&two * b1 + &two * b2)),
    ]
    .into_iter()
    .fold(RatFunc::zero(), |a, t| &a + &t);
    let total = &(&quad + &(&lin_coeff * p)) + &RatFunc::constant(kappa);
    let r2 = &p.partial(X) + &total.checked_div(&xx1)?;
    Ok((r1, r2))
}
