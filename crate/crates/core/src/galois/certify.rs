//! One-sided certification that an irreducible polynomial has Galois group `S_n`.
//!
//! Accepted certificates, for irreducible `g` of degree `n` with non-square
//! discriminant:
//!
//! | n      | required Frobenius cycle types (primes not dividing `lc * disc`)        |
//! |--------|-------------------------------------------------------------------------|
//! | 1      | none                                                                    |
//! | 2, 3   | none                                                                    |
//! | >= 4   | a transposition maker: exactly one even part, equal to 2                |
//! |        | and a primitivity maker: a part `n - 1`, or a prime part `q > n/2`      |
//!
//! A transposition maker raised to the lcm of its odd parts is a transposition.
//! A transitive group holding an `(n-1)`-cycle is 2-transitive; one holding a
//! `q`-cycle with `q` prime and `q > n/2` is primitive. A primitive group with a
//! transposition is `S_n`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::intpoly::modp::{factor_reduced, Fp};
use crate::intpoly::{
    discriminant, is_irreducible, is_prime_u64, is_square_int, IntPoly, PrimeIter, DEFAULT_SEED,
};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseGroup {
    CertifiedSn,
    NotSn,
    /// No certificate within `budget` primes.
    ProbablyNotSn { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnCertificate {
    pub base_group: BaseGroup,
    /// Primes whose cycle types completed the certificate, with those types.
    pub witnesses: Vec<(u64, Vec<usize>)>,
}

/// `true` if the type has exactly one even part and that part is 2.
pub fn yields_transposition(parts: &[usize]) -> bool {
    let mut evens = parts.iter().filter(|&&l| l % 2 == 0);
    matches!((evens.next(), evens.next()), (Some(2), None))
}

/// `true` if the type forces primitivity of a transitive group of degree `n`.
pub fn yields_primitivity(n: usize, parts: &[usize]) -> bool {
    parts
        .iter()
        .any(|&l| (l == n - 1 && n > 2) || (2 * l > n && is_prime_u64(l as u64)))
}

/// Certifies `G_g = S_n` for irreducible `g`, sweeping at most `budget` primes.
pub fn certify_sn(g: &IntPoly, budget: usize) -> Result<SnCertificate, Error> {
    if !is_irreducible(g) {
        return Err(Error::NotIrreducible);
    }
    Ok(certify_sn_irreducible(g, budget))
}

/// [`certify_sn`] without the irreducibility check, for callers that already
/// factored `g`.
pub(crate) fn certify_sn_irreducible(g: &IntPoly, budget: usize) -> SnCertificate {
    let n = g.degree().expect("nonzero");
    let done = |base_group| SnCertificate {
        base_group,
        witnesses: Vec::new(),
    };
    if n <= 1 {
        return done(BaseGroup::CertifiedSn);
    }
    let disc = discriminant(g).expect("degree >= 2");
    if is_square_int(&disc) {
        return done(BaseGroup::NotSn);
    }
    if n <= 3 {
        return done(BaseGroup::CertifiedSn);
    }
    let bad = &disc * g.lc();
    let mut transposition: Option<(u64, Vec<usize>)> = None;
    let mut primitive: Option<(u64, Vec<usize>)> = None;
    let mut used = 0;
    for p in PrimeIter::new() {
        if used == budget {
            break;
        }
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        used += 1;
        let fp = Fp::new(p);
        let pattern = factor_reduced(&fp, &fp.reduce(g), DEFAULT_SEED).degree_pattern();
        if transposition.is_none() && yields_transposition(&pattern) {
            transposition = Some((p, pattern.clone()));
        }
        if primitive.is_none() && yields_primitivity(n, &pattern) {
            primitive = Some((p, pattern));
        }
        if let (Some(t), Some(q)) = (&transposition, &primitive) {
            let mut witnesses = vec![t.clone()];
            if q.0 != t.0 {
                witnesses.push(q.clone());
            }
            return SnCertificate {
                base_group: BaseGroup::CertifiedSn,
                witnesses,
            };
        }
    }
    done(BaseGroup::ProbablyNotSn { budget })
}

/// Certification for degree `<= 3` straight from the discriminant, skipping
/// the factor-based irreducibility check. `disc` must be nonzero.
pub(crate) fn small_degree_base_group(n: usize, disc: &BigInt) -> BaseGroup {
    debug_assert!(n <= 3);
    if n >= 2 && is_square_int(disc) {
        BaseGroup::NotSn
    } else {
        BaseGroup::CertifiedSn
    }
}
