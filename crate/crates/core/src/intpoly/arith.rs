//! Integer utilities: exact square roots, primality, squarefree kernels.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Default trial-division bound for [`squarefree_kernel`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Pollard rho iterations attempted on a composite cofactor before giving up.
const RHO_ITERATIONS: u64 = 1 << 20;

/// Floor of the square root of a `u128`, by Newton iteration from a
/// power-of-two upper bound.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor of the square root of a nonnegative big integer.
pub fn isqrt(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u128() {
        return BigUint::from(isqrt_u128(small));
    }
    let bits = n.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y: BigUint = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

// Squares modulo 64, 63, 65 and 11: cheap rejection before the square root.
fn residue_filter(low: u64, m63: u64, m65: u64, m11: u64) -> bool {
    const SQ64: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if SQ64 >> (low & 63) & 1 == 0 {
        return false;
    }
    let sq = |m: u64, r: u64| (0..m).any(|i| (i * i) % m == r);
    sq(63, m63) && sq(65, m65) && sq(11, m11)
}

/// Whether `n` is the square of an integer. Exact, no floating point.
pub fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let u = n as u128;
    if (0x0203_0213u64 >> (u & 31)) & 1 == 0 {
        // 0x02030213 has bits set at the squares mod 32: 0, 1, 4, 9, 16, 17, 25.
        return false;
    }
    if u < 1 << 52 {
        // Exact in double precision; the rounded root is off by at most one.
        let r = (u as f64).sqrt() as u128;
        return r * r == u || (r + 1) * (r + 1) == u || (r > 0 && (r - 1) * (r - 1) == u);
    }
    let r = isqrt_u128(u);
    r * r == u
}

/// Whether `n` is the square of an integer (so `n >= 0`). Exact.
pub fn is_square_int(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            if let Some(small) = n.to_i128() {
                return is_square_i128(small);
            }
            let m = n.magnitude();
            let low = m.iter_u64_digits().next().unwrap_or(0);
            let m63 = (m % 63u32).to_u64().unwrap();
            let m65 = (m % 65u32).to_u64().unwrap();
            let m11 = (m % 11u32).to_u64().unwrap();
            if !residue_filter(low, m63, m65, m11) {
                return false;
            }
            let r = isqrt(m);
            &r * &r == *m
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twelve prime bases; deterministic below
/// 3.3e24 and a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'base: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Increasing sequence of primes starting at 2.
#[derive(Debug, Clone)]
pub struct PrimeIter {
    last: u64,
}

impl PrimeIter {
    pub fn new() -> Self {
        PrimeIter { last: 1 }
    }

    /// Primes strictly greater than `n`.
    pub fn after(n: u64) -> Self {
        PrimeIter { last: n }
    }
}

impl Default for PrimeIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        self.last = next_prime(self.last);
        Some(self.last)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelStatus {
    Exact,
    Incomplete,
}

/// Result of [`squarefree_kernel`]. `k` is meaningful only when `status` is `Exact`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeKernel {
    pub k: BigInt,
    pub status: KernelStatus,
}

/// Squarefree kernel with the default trial-division bound.
pub fn squarefree_kernel(n: &BigInt) -> SquarefreeKernel {
    squarefree_kernel_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// The squarefree integer `k` with `n / k` a positive square.
///
/// Trial division runs up to `trial_bound`; a leftover cofactor is settled by
/// a primality test, a perfect-square test, or a bounded Pollard rho split.
/// When none of those finishes the job the status is `Incomplete`.
///
/// Panics if `n` is zero.
pub fn squarefree_kernel_with_bound(n: &BigInt, trial_bound: u64) -> SquarefreeKernel {
    assert!(!n.is_zero(), "squarefree kernel of zero");
    let mut k = BigInt::from(if n.is_negative() { -1 } else { 1 });
    let mut m = n.magnitude().clone();

    let mut p = 2u64;
    while p <= trial_bound {
        if let Some(small) = m.to_u64() {
            // Same loop in machine words once the cofactor fits.
            let mut s = small;
            while p <= trial_bound && (p as u128) * (p as u128) <= s as u128 {
                let mut odd = false;
                while s % p == 0 {
                    s /= p;
                    odd = !odd;
                }
                if odd {
                    k *= p;
                }
                p = if p == 2 { 3 } else { p + 2 };
            }
            m = BigUint::from(s);
            break;
        }
        let bp = BigUint::from(p);
        let mut odd = false;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            odd = !odd;
        }
        if odd {
            k *= p;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }

    // Every prime below p has been removed, so anything below p^2 is 1 or prime.
    let mut pending = vec![m];
    let mut odd_primes: Vec<BigUint> = Vec::new();
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if BigUint::from(p) * BigUint::from(p) > c || is_probable_prime(&c) {
            odd_primes.push(c);
            continue;
        }
        let r = isqrt(&c);
        if &r * &r == c {
            // Whatever its factorization, a square contributes nothing.
            continue;
        }
        match pollard_rho(&c) {
            Some(d) => {
                let e = &c / &d;
                pending.push(d);
                pending.push(e);
            }
            None => {
                return SquarefreeKernel {
                    k: BigInt::zero(),
                    status: KernelStatus::Incomplete,
                }
            }
        }
    }
    // Cofactor primes may repeat across rho splits; keep those of odd multiplicity.
    odd_primes.sort();
    let mut i = 0;
    while i < odd_primes.len() {
        let mut j = i;
        while j < odd_primes.len() && odd_primes[j] == odd_primes[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            k *= BigInt::from(odd_primes[i].clone());
        }
        i = j;
    }
    SquarefreeKernel {
        k,
        status: KernelStatus::Exact,
    }
}

// Brent's variant; returns a nontrivial factor of an odd composite.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..8 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut q = one.clone();
        let mut iters = 0u64;
        let mut r = 1u64;
        let mut g = one.clone();
        let mut ys = y.clone();
        while g == one && iters < RHO_ITERATIONS {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let batch = (r - k).min(128);
                for _ in 0..batch {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += batch;
                iters += batch;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}
