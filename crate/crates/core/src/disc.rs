//! Exact resultants and discriminants over Z[X].
//!
//! `resultant` follows the Sylvester-matrix convention with the rows of the
//! first argument on top, so Res(f, g) = lc(f)^deg(g) * prod g(alpha) over
//! the roots of f, and Res(c, g) = c^deg(g) for constants. The production
//! path is the subresultant pseudo-remainder sequence, which keeps every
//! intermediate value at determinant scale; a naive cofactor-expansion
//! determinant survives only as a test oracle.
//!
//! The discriminant of a nonconstant f of degree n and leading coefficient
//! a_n is (-1)^(n(n-1)/2) Res(f, f') / a_n; a nonzero constant a_0 gets the
//! degenerate value a_0^(-2) and degree 1 gets 1, which is what makes
//! Disc(fg) = Disc(f) Disc(g) Res(f, g)^2 hold without degree restrictions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_perfect_square, is_square_rational};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Exact discriminant together with its squareness classification.
/// Zero counts as a square throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantValue {
    pub value: BigRational,
    pub is_square: bool,
    pub is_zero: bool,
}

impl DiscriminantValue {
    fn classify(value: BigRational) -> Self {
        let is_square = is_square_rational(&value);
        let is_zero = value.is_zero();
        DiscriminantValue { value, is_square, is_zero }
    }
}

fn big_pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division in subresultant sequence");
    q
}

fn exact_div_poly(p: &IntPolynomial, den: &BigInt) -> IntPolynomial {
    IntPolynomial::new(p.coeffs().iter().map(|c| exact_div(c.clone(), den)).collect())
}

/// Pseudo-remainder R with lc(b)^(deg a - deg b + 1) * a = Q*b + R.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let da = a.degree().expect("pseudo_rem: zero dividend");
    let db = b.degree().expect("pseudo_rem: zero divisor");
    debug_assert!(da >= db);
    let lb = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    let mut pad = da - db + 1;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let t = r.leading_coeff().unwrap().clone();
        r = &r.scale(&lb) - &b.shift(dr - db).scale(&t);
        pad -= 1;
    }
    for _ in 0..pad {
        r = r.scale(&lb);
    }
    r
}

/// Exact resultant of two nonzero integer polynomials.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Ok(big_pow(f.leading_coeff().unwrap(), n));
    }
    if n == 0 {
        return Ok(big_pow(g.leading_coeff().unwrap(), m));
    }

    let (mut a, mut b, mut sign) = if m >= n {
        (f.clone(), g.clone(), false)
    } else {
        (g.clone(), f.clone(), m * n % 2 == 1)
    };

    // Subresultant PRS: divisor bookkeeping keeps coefficients at the size
    // of minors of the Sylvester matrix instead of growing exponentially.
    let mut gc = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &gc * big_pow(&h, delta);
        b = exact_div_poly(&r, &divisor);
        gc = a.leading_coeff().unwrap().clone();
        if delta > 0 {
            h = exact_div(big_pow(&gc, delta), &big_pow(&h, delta - 1));
        }
        match b.degree() {
            None => return Ok(BigInt::zero()), // common factor of positive degree
            Some(0) => break,
            Some(_) => {}
        }
    }

    let da = a.degree().unwrap();
    let res = exact_div(big_pow(b.leading_coeff().unwrap(), da), &big_pow(&h, da - 1));
    Ok(if sign { -res } else { res })
}

/// Exact discriminant with squareness flags.
pub fn discriminant(f: &IntPolynomial) -> Result<DiscriminantValue> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        let a0 = f.leading_coeff().unwrap();
        let value = BigRational::new(BigInt::one(), a0 * a0);
        return Ok(DiscriminantValue::classify(value));
    }
    let res = resultant(f, &f.derivative())?;
    let signed = if n * (n - 1) / 2 % 2 == 1 { -res } else { res };
    let value = BigRational::new(signed, f.leading_coeff().unwrap().clone());
    Ok(DiscriminantValue::classify(value))
}

/// Squareness test for reciprocal polynomials without computing the full
/// discriminant: a reciprocal f of even degree n satisfies
/// Disc(f) = (-1)^(n/2) f(1) f(-1) * c^2 for some rational c, so for
/// separable f squareness is decided by s = (-1)^(n/2) f(1) f(-1) alone.
/// When s is not a square the only way the discriminant can still be one
/// is the degenerate c = 0, i.e. a repeated root.
pub fn reciprocal_square_criterion(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(true); // constants: a_0^(-2)
    }
    let one = BigInt::one();
    let mut v = f.eval_bigint(&one) * f.eval_bigint(&(-&one));
    if n / 2 % 2 == 1 {
        v = -v;
    }
    if is_perfect_square(&v) {
        return Ok(true);
    }
    Ok(resultant(f, &f.derivative())?.is_zero())
}
