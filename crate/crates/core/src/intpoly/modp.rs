//! Polynomials over prime fields `F_p` and their factorization
//! (squarefree split, distinct-degree split, Cantor-Zassenhaus equal-degree split).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{is_prime_u64, IntPoly};
use crate::Error;

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_b5ec;

/// A polynomial over `F_p`, lowest degree first, no trailing zeros.
pub type PolyP = Vec<u64>;

/// Arithmetic context for one prime.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Reduces an integer polynomial coefficientwise.
    pub fn reduce(&self, f: &IntPoly) -> PolyP {
        let mut v: PolyP = f.coeffs().iter().map(|c| self.reduce_int(c)).collect();
        trim(&mut v);
        v
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // Accumulate in u128 and reduce once per output coefficient.
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let p2 = (self.p as u128) * (self.p as u128);
        // Room for at least one more product before overflow.
        let limit = u128::MAX - p2;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = &mut acc[i + j];
                *t += x as u128 * y as u128;
                if *t >= limit {
                    *t %= p2;
                }
            }
        }
        let mut v: PolyP = acc
            .into_iter()
            .map(|t| (t % self.p as u128) as u64)
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_scale(&self, a: &[u64], k: u64) -> PolyP {
        let mut v: PolyP = a.iter().map(|&x| self.mul(x, k)).collect();
        trim(&mut v);
        v
    }

    pub fn monic(&self, a: &[u64]) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let t = self.mul(r[k + db], inv);
            if t == 0 {
                continue;
            }
            q[k] = t;
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(t, bc));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> PolyP {
        self.poly_divrem(a, b).1
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn poly_ext_gcd(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&l) => {
                let inv = self.inv(l);
                (
                    self.poly_scale(&r0, inv),
                    self.poly_scale(&s0, inv),
                    self.poly_scale(&t0, inv),
                )
            }
        }
    }

    pub fn derivative(&self, a: &[u64]) -> PolyP {
        let mut v: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        trim(&mut v);
        v
    }

    /// `base^e mod modulus`.
    pub fn poly_powmod(&self, base: &[u64], e: &BigUint, modulus: &[u64]) -> PolyP {
        let mut result: PolyP = self.poly_rem(&[1], modulus);
        let base = self.poly_rem(base, modulus);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), modulus);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &base), modulus);
            }
        }
        result
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with
    /// `f = prod s_i^i`, each `s_i` monic squarefree.
    pub fn squarefree_decomposition(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        self.sqf_rec(f, 1, &mut out);
        out
    }

    fn sqf_rec(&self, f: &[u64], mult: usize, out: &mut Vec<(PolyP, usize)>) {
        if f.len() <= 1 {
            return;
        }
        let df = self.derivative(f);
        if df.is_empty() {
            // f is a p-th power: f(x) = g(x^p), and g^p = g(x^p) over F_p.
            let p = self.p as usize;
            let g: PolyP = f.iter().step_by(p).copied().collect();
            self.sqf_rec(&g, mult * p, out);
            return;
        }
        let mut c = self.poly_gcd(f, &df);
        let mut w = self.poly_divrem(f, &c).0;
        let mut i = 1;
        while w.len() > 1 {
            let y = self.poly_gcd(&w, &c);
            let z = self.poly_divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = self.poly_divrem(&c, &w).0;
        }
        if c.len() > 1 {
            // Remaining part is a p-th power.
            let p = self.p as usize;
            let g: PolyP = c.iter().step_by(p).copied().collect();
            self.sqf_rec(&g, mult * p, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: PolyP = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = self.poly_rem(&x, &f);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.poly_powmod(&h, &p, &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let q = BigUint::from(self.p).pow(d as u32);
        loop {
            let a: PolyP = {
                let mut v: PolyP = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() <= 1 {
                continue;
            }
            let probe = if self.p == 2 {
                // Trace map a + a^2 + ... + a^(2^(d-1)).
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = self.poly_rem(&self.poly_mul(&t, &t), f);
                    acc = self.poly_add(&acc, &t);
                }
                acc
            } else {
                let e = (&q - 1u32) >> 1u32;
                let b = self.poly_powmod(&a, &e, f);
                self.poly_sub(&b, &[1])
            };
            let g = self.poly_gcd(f, &probe);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }
}

pub(crate) fn trim(v: &mut PolyP) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Factorization over `F_p`: `f = lc * prod factor_i^mult_i` with monic
/// irreducible factors sorted by degree, then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorListModP {
    pub prime: u64,
    pub lc: u64,
    pub factors: Vec<(PolyP, usize)>,
}

impl FactorListModP {
    /// Degrees of the irreducible factors, with multiplicity, descending.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.len() - 1, *m))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Expands the product back out.
    pub fn expand(&self) -> PolyP {
        let fp = Fp::new(self.prime);
        let mut acc = vec![self.lc];
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = fp.poly_mul(&acc, f);
            }
        }
        acc
    }
}

/// Complete factorization of `f mod prime` into monic irreducibles.
///
/// The equal-degree step is randomized with a ChaCha stream seeded by `seed`;
/// the returned list is sorted, so it does not depend on the seed.
pub fn factor_mod_p(f: &IntPoly, prime: u64, seed: u64) -> Result<FactorListModP, Error> {
    if !is_prime_u64(prime) {
        return Err(Error::NotPrime(prime));
    }
    let fp = Fp::new(prime);
    let red = fp.reduce(f);
    if red.is_empty() {
        return Err(Error::ZeroModP(prime));
    }
    Ok(factor_reduced(&fp, &red, seed))
}

pub(crate) fn factor_reduced(fp: &Fp, red: &[u64], seed: u64) -> FactorListModP {
    let lc = *red.last().unwrap();
    let monic = fp.monic(red);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fp.p);
    let mut factors = Vec::new();
    for (s, mult) in fp.squarefree_decomposition(&monic) {
        for (g, d) in fp.distinct_degree(&s) {
            for h in fp.equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)).then(ma.cmp(mb)));
    // Merge identical factors that arrived from different squarefree layers.
    let mut merged: Vec<(PolyP, usize)> = Vec::new();
    for (h, m) in factors {
        match merged.last_mut() {
            Some((last, lm)) if *last == h => *lm += m,
            _ => merged.push((h, m)),
        }
    }
    FactorListModP {
        prime: fp.p,
        lc,
        factors: merged,
    }
}

/// Whether `f mod p` is squarefree of the same degree as `f`.
pub(crate) fn is_good_reduction(fp: &Fp, f: &IntPoly) -> bool {
    let red = fp.reduce(f);
    if red.len() != f.coeffs().len() {
        return false;
    }
    let d = fp.derivative(&red);
    !d.is_empty() && fp.poly_gcd(&red, &d).len() == 1
}
