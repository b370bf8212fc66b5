//! Machine-integer classification for `n <= 2`, where every test reduces to a
//! handful of square checks. Agrees exactly with [`classify`](super::classify).

use super::{BaseGroup, G3Membership, GaloisClassification, Verdict};
use crate::intpoly::{is_square_i128, isqrt_u128};

fn unanalysed(verdict: Verdict, g_irreducible: bool) -> GaloisClassification {
    GaloisClassification {
        separable: verdict != Verdict::Degenerate,
        f_reducible: true,
        g_irreducible,
        base_group: None,
        in_g1: false,
        in_g2: false,
        in_g3: G3Membership::NotApplicable,
        verdict,
        evidence: Vec::new(),
    }
}

/// Whether `f = x^2 g(x + b/x)` factors over `Q`, for irreducible quadratic `g`
/// with discriminant `d`.
///
/// A root `alpha` of `f` satisfies `alpha^2 - beta alpha + b = 0` over
/// `K = Q(sqrt d)`, so `f` factors iff `beta^2 - 4b` is a square in `K`. Scaled
/// by `(2 c2)^2` this is `P + Q sqrt d` with `P = c1^2 + d - 16 b c2^2`,
/// `Q = -2 c1`. For `Q != 0` it is a square iff `N = P^2 - d Q^2` is a square
/// and `(P +- sqrt N)/2` is a rational square for one choice of sign.
fn quartic_splits(b: i128, c1: i128, c2: i128, d: i128) -> Option<bool> {
    let p = c1
        .checked_mul(c1)?
        .checked_add(d)?
        .checked_sub(c2.checked_mul(c2)?.checked_mul(16 * b)?)?;
    let q = -2 * c1;
    if q == 0 {
        return Some(is_square_i128(p) || is_square_i128(p.checked_mul(d)?));
    }
    let n = p.checked_mul(p)?.checked_sub(d.checked_mul(q.checked_mul(q)?)?)?;
    if !is_square_i128(n) {
        return Some(false);
    }
    let r = isqrt_u128(n as u128) as i128;
    Some(is_square_i128(2 * (p + r)) || is_square_i128(2 * (p - r)))
}

/// Classifies `x^n g(x + b/x)` for `g` given by `coeffs` (lowest degree first,
/// `n = coeffs.len() - 1`). Returns `None` when `n > 2` or an intermediate value
/// would overflow, in which case the caller falls back to the exact path.
pub fn classify_small(b: i64, coeffs: &[i64], full_f_factorization: bool) -> Option<GaloisClassification> {
    let b = b as i128;
    match *coeffs {
        [c0, c1] => {
            let (c0, c1) = (c0 as i128, c1 as i128);
            let norm = c0.checked_mul(c0)?.checked_sub(c1.checked_mul(c1)?.checked_mul(4 * b)?)?;
            if norm == 0 {
                return Some(unanalysed(Verdict::Degenerate, true));
            }
            // For a quadratic f the norm is its discriminant.
            let in_g1 = is_square_i128(norm);
            Some(GaloisClassification {
                separable: true,
                f_reducible: in_g1,
                g_irreducible: true,
                base_group: Some(BaseGroup::CertifiedSn),
                in_g1,
                in_g2: false,
                in_g3: G3Membership::NotApplicable,
                verdict: if in_g1 { Verdict::G1 } else { Verdict::G0 },
                evidence: Vec::new(),
            })
        }
        [c0, c1, c2] => {
            let (c0, c1, c2) = (c0 as i128, c1 as i128, c2 as i128);
            let x = c0.checked_add(c2.checked_mul(4 * b)?)?;
            let y = c1;
            let norm = x.checked_mul(x)?.checked_sub(y.checked_mul(y)?.checked_mul(4 * b)?)?;
            let dg = c1.checked_mul(c1)?.checked_sub(c0.checked_mul(c2)?.checked_mul(4)?)?;
            let g_irreducible = !is_square_i128(dg);
            if norm == 0 || dg == 0 {
                return Some(unanalysed(Verdict::Degenerate, g_irreducible));
            }
            if !g_irreducible {
                return Some(unanalysed(Verdict::ReducibleBase, false));
            }
            // An irreducible quadratic has non-square discriminant, hence group S_2.
            let in_g1 = is_square_i128(norm);
            let in_g2 = is_square_i128(norm.checked_mul(dg)?);
            let f_reducible = if in_g1 || full_f_factorization {
                quartic_splits(b, c1, c2, dg)?
            } else {
                false
            };
            Some(GaloisClassification {
                separable: true,
                f_reducible,
                g_irreducible: true,
                base_group: Some(BaseGroup::CertifiedSn),
                in_g1,
                in_g2,
                in_g3: G3Membership::NotApplicable,
                verdict: if in_g1 {
                    Verdict::G1
                } else if in_g2 {
                    Verdict::G2
                } else {
                    Verdict::G0
                },
                evidence: Vec::new(),
            })
        }
        _ => None,
    }
}
