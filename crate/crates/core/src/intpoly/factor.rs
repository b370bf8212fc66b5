//! Factorization in `Z[x]`: squarefree decomposition, modular factorization,
//! Hensel lifting and exhaustive recombination of the lifted factors.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::modp::{factor_reduced, is_good_reduction, Fp, PolyP};
use super::{gcd, is_square_int, isqrt, IntPoly, PrimeIter, DEFAULT_SEED};
use crate::Error;

/// `unit * content * prod factor_i^mult_i`, factors primitive and irreducible
/// with positive leading coefficient, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList {
    pub unit: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl FactorList {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    /// Irreducible over `Q` with positive degree.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Factors `p` completely over the integers.
pub fn factor_over_z(p: &IntPoly) -> Result<FactorList, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit: i8 = if p.lc().is_negative() { -1 } else { 1 };
    let content = p.content();
    let prim = p.primitive_part();
    let mut factors = Vec::new();
    if prim.degree().unwrap() > 0 {
        for (s, mult) in squarefree_decomposition(&prim) {
            for f in factor_squarefree(&s) {
                factors.push((f, mult));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| a.canonical_cmp(b).then(ma.cmp(mb)));
    Ok(FactorList {
        unit,
        content,
        factors,
    })
}

/// Yun's algorithm on a primitive polynomial with positive leading coefficient.
fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let mut c = gcd(f, &df);
    let mut w = f.div_exact(&c).expect("gcd divides f");
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let y = gcd(&w, &c);
        let z = w.div_exact(&y).expect("gcd divides w");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.primitive_part(), i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides c");
        w = y;
    }
    if w.degree().unwrap_or(0) > 0 {
        out.push((w.primitive_part(), i));
    }
    out
}

/// Irreducible factors of a primitive squarefree polynomial of positive degree.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let deg = f.degree().unwrap();
    if deg == 1 {
        return vec![f.clone()];
    }
    if f.coeffs()[0].is_zero() {
        let rest = f.div_exact(&IntPoly::x()).unwrap();
        let mut out = vec![IntPoly::x()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    if deg == 2 {
        return factor_quadratic(f);
    }
    zassenhaus(f)
}

// Rational roots of a x^2 + b x + c come from a square discriminant.
fn factor_quadratic(f: &IntPoly) -> Vec<IntPoly> {
    let c = f.coeffs();
    let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2];
    if !is_square_int(&disc) {
        return vec![f.clone()];
    }
    let r = BigInt::from_biguint(Sign::Plus, isqrt(disc.magnitude()));
    let two_a = BigInt::from(2) * &c[2];
    let f1 = IntPoly::new(vec![&c[1] - &r, two_a.clone()]).primitive_part();
    let f2 = IntPoly::new(vec![&c[1] + &r, two_a]).primitive_part();
    let mut v = vec![f1, f2];
    v.sort_by(|a, b| a.canonical_cmp(b));
    v
}

/// Mignotte-type bound on the coefficients of any factor of `f`:
/// `2^deg * ceil(||f||_2)`.
fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let root = BigInt::from_biguint(Sign::Plus, isqrt(norm2.magnitude())) + 1;
    root << f.degree().unwrap()
}

fn choose_prime(f: &IntPoly) -> (Fp, Vec<PolyP>) {
    let lc = f.lc();
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in PrimeIter::after(2) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        if !is_good_reduction(&fp, f) {
            continue;
        }
        let fl = factor_reduced(&fp, &fp.reduce(f), DEFAULT_SEED);
        let facs: Vec<PolyP> = fl.factors.into_iter().map(|(g, _)| g).collect();
        tried += 1;
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        if best.as_ref().unwrap().1.len() <= 1 || tried >= 5 {
            break;
        }
    }
    best.unwrap()
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let (fp, modular) = choose_prime(f);
    if modular.len() <= 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();
    let bound = factor_coefficient_bound(f) * lc.abs() * 2;
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_lift(f, &fp, &modular, k);
    recombine(f, lifted, &modulus)
}

/// Lifts `f = lc * prod u_i (mod p)` with monic `u_i` to the same shape mod `p^k`.
fn hensel_lift(f: &IntPoly, fp: &Fp, factors: &[PolyP], k: u32) -> Vec<Vec<BigInt>> {
    let p = BigInt::from(fp.p);
    let modulus = num_traits::pow(p.clone(), k as usize);
    let target: Vec<BigInt> = f.coeffs().iter().map(|c| c.mod_floor(&modulus)).collect();
    lift_multi(&target, fp, factors, k, &modulus)
}

fn lift_multi(
    target: &[BigInt],
    fp: &Fp,
    factors: &[PolyP],
    k: u32,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let lc = target.last().unwrap().clone();
    if factors.len() == 1 {
        // target / lc, as a monic polynomial mod p^k.
        let inv = mod_inverse(&lc, modulus);
        return vec![target.iter().map(|c| (c * &inv).mod_floor(modulus)).collect()];
    }
    let a0 = factors[0].clone();
    let mut b0: PolyP = vec![fp.reduce_int(&lc)];
    for g in &factors[1..] {
        b0 = fp.poly_mul(&b0, g);
    }
    let (a, b) = lift_two(target, fp, &a0, &b0, k);
    let mut out = vec![a];
    out.extend(lift_multi(&b, fp, &factors[1..], k, modulus));
    out
}

/// Linear Hensel lifting of `target = a0 * b0 (mod p)` to `mod p^k`, keeping
/// the first factor monic.
fn lift_two(target: &[BigInt], fp: &Fp, a0: &[u64], b0: &[u64], k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (g, s, t) = fp.poly_ext_gcd(a0, b0);
    debug_assert_eq!(g, vec![1]);
    let p = BigInt::from(fp.p);
    let to_big = |v: &[u64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let mut a = to_big(a0);
    let mut b = to_big(b0);
    let mut q = p.clone();
    for _ in 1..k {
        // e = (target - a*b) / q mod p
        let ab = big_mul(&a, &b);
        let n = target.len().max(ab.len());
        let mut e: PolyP = (0..n)
            .map(|i| {
                let t = target.get(i).cloned().unwrap_or_default();
                let x = ab.get(i).cloned().unwrap_or_default();
                let d = t - x;
                debug_assert!((&d % &q).is_zero());
                fp.reduce_int(&(d / &q))
            })
            .collect();
        super::modp::trim(&mut e);
        if !e.is_empty() {
            // alpha = t*e mod a0, beta = s*e + (t*e div a0) * b0
            let te = fp.poly_mul(&t, &e);
            let (quo, alpha) = fp.poly_divrem(&te, a0);
            let beta = fp.poly_add(&fp.poly_mul(&s, &e), &fp.poly_mul(&quo, b0));
            add_scaled(&mut a, &alpha, &q);
            add_scaled(&mut b, &beta, &q);
        }
        q *= &p;
    }
    (a, b)
}

fn add_scaled(x: &mut Vec<BigInt>, delta: &[u64], q: &BigInt) {
    if x.len() < delta.len() {
        x.resize(delta.len(), BigInt::zero());
    }
    for (c, &d) in x.iter_mut().zip(delta) {
        if d != 0 {
            *c += q * BigInt::from(d);
        }
    }
}

fn big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Exhaustive subset recombination of the lifted factors.
fn recombine(f: &IntPoly, mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<IntPoly> {
    let half = modulus >> 1u32;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = rest.lc();
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut prod = vec![lc.clone()];
            for &i in &idx {
                prod = big_mul(&prod, &lifted[i]);
                for c in prod.iter_mut() {
                    *c = c.mod_floor(modulus);
                }
            }
            let cand = IntPoly::new(prod.iter().map(|c| symmetric(c, modulus, &half)).collect())
                .primitive_part();
            let plausible = {
                let c0 = &rest.coeffs()[0];
                let d0 = &cand.coeffs()[0];
                !d0.is_zero() && (c0 % d0).is_zero()
            };
            if plausible {
                if let Some(q) = rest.div_exact(&cand) {
                    found.push(cand);
                    rest = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        size += 1;
    }
    if rest.degree().unwrap() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether `p` (nonzero, positive degree) is irreducible over `Q`.
pub fn is_irreducible(p: &IntPoly) -> bool {
    factor_over_z(p).map(|f| f.is_irreducible()).unwrap_or(false)
}
