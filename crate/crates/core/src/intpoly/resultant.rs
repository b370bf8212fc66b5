//! Resultants, discriminants and gcds by subresultant remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::Error;

/// `Res(p, q) = lc(p)^deg q * lc(q)^deg p * prod (alpha_i - beta_j)`, computed
/// with the subresultant PRS so every intermediate value is an integer.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = false;
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = true;
        }
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        let r = num_traits::pow(b.lc(), da);
        return Ok(if sign { -r } else { r });
    }

    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&divisor);
        g = a.lc();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            // h^1 * g^0
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        let degb = b.degree().unwrap();
        if degb == 0 {
            let dega = a.degree().unwrap();
            // h <- lc(b)^deg a / h^(deg a - 1)
            let hn = num_traits::pow(b.lc(), dega) / num_traits::pow(h, dega - 1);
            let res = t * hn;
            return Ok(if sign { -res } else { res });
        }
    }
}

/// `disc p = (-1)^(d(d-1)/2) Res(p, p') / lc(p)`; degree-1 polynomials have
/// discriminant 1.
pub fn discriminant(p: &IntPoly) -> Result<BigInt, Error> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeTooLow),
        Some(d) => d,
    };
    let c = p.coeffs();
    match d {
        1 => Ok(BigInt::one()),
        2 => Ok(&c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2]),
        _ => {
            let r = resultant(p, &p.derivative())?;
            let (q, rem) = r.div_rem(&p.lc());
            debug_assert!(rem.is_zero());
            Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
        }
    }
}

/// Greatest common divisor in `Z[x]`, primitive part times gcd of contents,
/// normalized to a positive leading coefficient.
pub fn gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return normalize_sign(q.clone());
    }
    if q.is_zero() {
        return normalize_sign(p.clone());
    }
    let c = p.content().gcd(&q.content());
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part().scale(&c)
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        -p
    } else {
        p
    }
}
