//! Integer points on `X^2 - 4bY^2 = Z^2` through the parametrization
//! `[s^2 + 4bt^2 : 2st : s^2 - 4bt^2]`, and their lifts to trace polynomials.

use std::collections::BTreeSet;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::intpoly::{is_square_i128, IntPoly};
use crate::Error;

/// Largest height accepted by [`brute_solutions`].
pub const BRUTE_MAX_HEIGHT: u64 = 100_000;

/// A primitive point with the coprime parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConicPoint {
    pub b: i64,
    #[serde(rename = "X")]
    pub x: i64,
    #[serde(rename = "Y")]
    pub y: i64,
    #[serde(rename = "Z")]
    pub z: i64,
    pub s: i64,
    pub t: i64,
    /// Common factor removed from the raw parametrized triple.
    pub cancelled: i64,
}

impl ConicPoint {
    pub fn height(&self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }
}

/// Sign rule for points: `(X, Y)` lexicographically at least `(-X, -Y)`.
fn normalize_xy(x: i128, y: i128) -> (i128, i128) {
    if x < 0 || (x == 0 && y < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// The primitive point for coprime `(s, t)`, not both zero.
pub fn point_from_parameters(b: i64, s: i64, t: i64) -> ConicPoint {
    let (b_, s_, t_) = (b as i128, s as i128, t as i128);
    let raw_x = s_ * s_ + 4 * b_ * t_ * t_;
    let raw_y = 2 * s_ * t_;
    let raw_z = s_ * s_ - 4 * b_ * t_ * t_;
    let g = raw_x.gcd(&raw_y).gcd(&raw_z);
    let (x, y) = normalize_xy(raw_x / g, raw_y / g);
    ConicPoint {
        b,
        x: x as i64,
        y: y as i64,
        z: (raw_z / g).abs() as i64,
        s,
        t,
        cancelled: g as i64,
    }
}

/// Parameter bounds `(S, T)` such that every primitive point of height `<= H`
/// comes from some coprime `(s, t)` with `0 <= s <= S`, `|t| <= T`.
///
/// With `g = gcd` of the raw triple we have `g | 8b`, `s^2 = g(X + Z)/2` and
/// `4|b|t^2 = g|X - Z|/2` up to sign, and `|Z| <= Zmax` where `Zmax = H` for
/// `b > 0` and `H sqrt(1 + 4|b|)` for `b < 0`.
pub fn parameter_bounds(b: i64, h: u64) -> (i64, i64) {
    let ab = b.unsigned_abs() as u128;
    let h = h as u128;
    let zmax = if b > 0 {
        h
    } else {
        (h * h * (1 + 4 * ab)).sqrt() + 1
    };
    let s_max = (4 * ab * (h + zmax)).sqrt() + 1;
    let t_max = (h + zmax).sqrt() + 1;
    (s_max as i64, t_max as i64)
}

/// Every primitive point of height `<= h` with its canonical parameters.
pub fn primitive_points(b: i64, h: u64) -> Vec<ConicPoint> {
    assert!(b != 0, "b must be nonzero");
    let (s_max, t_max) = parameter_bounds(b, h);
    let mut best: std::collections::BTreeMap<(i64, i64), ConicPoint> = Default::default();
    for s in 0..=s_max {
        for t in -t_max..=t_max {
            // Canonical parameter signs: s > 0, or s = 0 and t > 0.
            if (s == 0 && t <= 0) || s.gcd(&t) != 1 {
                continue;
            }
            let pt = point_from_parameters(b, s, t);
            if pt.height() <= h {
                best.entry((pt.x, pt.y)).or_insert(pt);
            }
        }
    }
    best.into_values().collect()
}

/// Primitive `(X, Y)` of height `<= h` with `X^2 - 4bY^2` a square, up to the
/// sign rule.
pub fn primitive_solutions(b: i64, h: u64) -> BTreeSet<(i64, i64)> {
    primitive_points(b, h).into_iter().map(|p| (p.x, p.y)).collect()
}

/// The same set by exhaustive scan; `h` is capped at [`BRUTE_MAX_HEIGHT`].
pub fn brute_solutions(b: i64, h: u64) -> Result<BTreeSet<(i64, i64)>, Error> {
    if h > BRUTE_MAX_HEIGHT {
        return Err(Error::BudgetExceeded(format!(
            "brute scan limited to H <= {BRUTE_MAX_HEIGHT}"
        )));
    }
    let h = h as i64;
    let four_b = 4 * b as i128;
    let mut out = BTreeSet::new();
    // Only the half plane picked by the sign rule.
    for x in 0..=h {
        let y_start = if x == 0 { 1 } else { -h };
        for y in y_start..=h {
            if x.gcd(&y) != 1 {
                continue;
            }
            let v = (x as i128) * (x as i128) - four_b * (y as i128) * (y as i128);
            if is_square_i128(v) {
                out.insert((x, y));
            }
        }
    }
    Ok(out)
}

/// Number of (not necessarily primitive) nonzero pairs `(X, Y)` up to sign with
/// height `<= h` and `X^2 - 4bY^2` a square.
pub fn count_solutions(b: i64, h: u64) -> u64 {
    primitive_points(b, h).iter().map(|p| h / p.height()).sum()
}

/// All `g` of height `<= h` and degree `n` with
/// `sum c_(2i) (4b)^i = x` and `sum c_(2i+1) (4b)^i = y`.
pub fn lift_to_g(n: usize, b: i64, x: i64, y: i64, h: u64) -> impl Iterator<Item = IntPoly> {
    assert!(n >= 1);
    let h = h as i64;
    let free = n - 1; // c_2 .. c_n
    let radix = (2 * h + 1) as u64;
    let total = radix.checked_pow(free as u32).expect("lift box overflows u64");
    let four_b = 4 * b as i128;
    (0..total).filter_map(move |mut rank| {
        let mut c = vec![0i64; n + 1];
        for slot in c.iter_mut().skip(2) {
            *slot = (rank % radix) as i64 - h;
            rank /= radix;
        }
        if c[n] == 0 && n >= 2 {
            return None;
        }
        let (mut ex, mut oy) = (x as i128, y as i128);
        let mut pow = four_b;
        for i in 1.. {
            if 2 * i > n {
                break;
            }
            ex -= c[2 * i] as i128 * pow;
            if 2 * i < n {
                oy -= c[2 * i + 1] as i128 * pow;
            }
            pow *= four_b;
        }
        if ex.abs() > h as i128 || oy.abs() > h as i128 {
            return None;
        }
        c[0] = ex as i64;
        c[1] = oy as i64;
        if c[n] == 0 {
            return None;
        }
        Some(IntPoly::from_i64s(&c))
    })
}
