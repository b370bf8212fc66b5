//! Oracles shared by the integration tests. They avoid the library's own
//! resultant and interpolation code paths.

#![allow(dead_code)]

use brecip_core::intpoly::{discriminant, factor_over_z, is_irreducible, is_square_int};
use brecip_core::{BRecipPoly, IntPoly};
use num_bigint::BigInt;

fn shift(p: &IntPoly, c: i64) -> IntPoly {
    // Horner: p(w + c).
    let lin = IntPoly::from_i64s(&[c, 1]);
    let mut acc = IntPoly::zero();
    for a in p.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &IntPoly::constant(a.clone());
    }
    acc
}

fn kernel_i128(mut n: i128) -> i128 {
    let sign = n.signum();
    n = n.abs();
    let mut k = 1i128;
    let mut d = 2i128;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e % 2 == 1 {
            k *= d;
        }
        d += 1;
    }
    sign * k * n
}

/// A constant multiple of `prod (z^2 - k (beta_i^2 - 4b))` over the roots of
/// `g`, built from `g(u) g(-u)` by a shift and rescale.
pub fn resolvent_by_symmetric_functions(b: i64, g: &IntPoly, k: i64) -> IntPoly {
    let neg: Vec<BigInt> = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let prod = g * &IntPoly::new(neg);
    let n = g.degree().unwrap();
    let h = IntPoly::new(prod.coeffs().iter().step_by(2).cloned().collect());
    let shifted = shift(&h, 4 * b);
    let mut out = vec![BigInt::from(0); 2 * n + 1];
    for (j, c) in shifted.coeffs().iter().enumerate() {
        out[2 * j] = c * BigInt::from(k).pow((n - j) as u32);
    }
    IntPoly::new(out)
}

/// Cubic `g` (lowest degree first) in `[-r, r]^4` with group `S_3` whose
/// resolvent splits into two cubics, in lexicographic order of coefficients.
pub fn g3_search(b: i64, r: i64) -> impl Iterator<Item = BRecipPoly> {
    let range = move || -r..=r;
    range()
        .flat_map(move |c0| range().map(move |c1| (c0, c1)))
        .flat_map(move |(c0, c1)| range().map(move |c2| (c0, c1, c2)))
        .flat_map(move |(c0, c1, c2)| range().map(move |c3| [c0, c1, c2, c3]))
        .filter(|c| c[3] != 0)
        .filter_map(move |c| {
            let g = IntPoly::from_i64s(&c);
            let d = discriminant(&g).ok()?;
            if d == BigInt::from(0) || is_square_int(&d) || !is_irreducible(&g) {
                return None;
            }
            // X^2 - 4bY^2 with X = c0 + 4b c2, Y = c1 + 4b c3.
            let (c0, c1, c2, c3) = (c[0] as i128, c[1] as i128, c[2] as i128, c[3] as i128);
            let bb = b as i128;
            let x = c0 + 4 * bb * c2;
            let y = c1 + 4 * bb * c3;
            let norm = x * x - 4 * bb * y * y;
            if norm == 0 {
                return None;
            }
            let k = kernel_i128(norm) as i64;
            let m = resolvent_by_symmetric_functions(b, &g, k);
            let fl = factor_over_z(&m).ok()?;
            let cubic_split = fl.factors.iter().any(|(p, _)| p.degree() == Some(3));
            cubic_split.then(|| BRecipPoly::new(3, b, g).unwrap())
        })
}
