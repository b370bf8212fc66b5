//! The b-reciprocal structure.
//!
//! A degree-`2n` polynomial `f` with `f(x) = x^(2n) / b^n * f(b/x)` is
//! determined by its trace polynomial `g` of degree `n` through
//! `f(x) = x^n g(x + b/x)`. Coefficients then satisfy `a_(n-i) = b^i a_(n+i)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::intpoly::{discriminant, IntPoly};
use crate::Error;

/// `(n, b, g)` with `deg g = n`, standing for `f(x) = x^n g(x + b/x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BRecipPoly {
    n: usize,
    b: i64,
    g: IntPoly,
}

impl BRecipPoly {
    pub fn new(n: usize, b: i64, g: IntPoly) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if b == 0 {
            return Err(Error::InvalidInput("b must be nonzero".into()));
        }
        match g.degree() {
            Some(d) if d == n => Ok(BRecipPoly { n, b, g }),
            other => Err(Error::DegreeMismatch {
                expected: n,
                got: other.unwrap_or(0),
            }),
        }
    }

    /// Convenience constructor from small coefficients, lowest degree first.
    pub fn from_i64s(b: i64, g: &[i64]) -> Result<Self, Error> {
        let g = IntPoly::from_i64s(g);
        let n = g.degree().unwrap_or(0);
        Self::new(n, b, g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn f(&self) -> IntPoly {
        f_from_g(self)
    }
}

/// `X + 2Y sqrt(b) = g(2 sqrt(b))`, with `norm = X^2 - 4bY^2 = g(2 sqrt b) g(-2 sqrt b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtBEval {
    #[serde(rename = "X")]
    pub x: BigInt,
    #[serde(rename = "Y")]
    pub y: BigInt,
    pub norm: BigInt,
}

fn binomial_row(i: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..i {
        let next = &row[k] * BigInt::from(i - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `f(x) = x^n g(x + b/x) = sum_i c_i x^(n-i) (x^2 + b)^i`.
pub fn f_from_g(w: &BRecipPoly) -> IntPoly {
    let n = w.n;
    let b = BigInt::from(w.b);
    let mut f = vec![BigInt::zero(); 2 * n + 1];
    let mut b_pows = vec![BigInt::one()];
    for k in 1..=n {
        let next = &b_pows[k - 1] * &b;
        b_pows.push(next);
    }
    for (i, c) in w.g.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (x^2 + b)^i = sum_j C(i, j) b^(i-j) x^(2j)
        for (j, binom) in binomial_row(i).into_iter().enumerate() {
            f[n - i + 2 * j] += c * binom * &b_pows[i - j];
        }
    }
    IntPoly::new(f)
}

/// Inverts [`f_from_g`] by peeling `c_n, c_(n-1), ...` off the top of `f`.
pub fn g_from_f(n: usize, b: i64, f: &IntPoly) -> Result<IntPoly, Error> {
    if b == 0 || n == 0 {
        return Err(Error::InvalidInput("need n >= 1 and b != 0".into()));
    }
    if f.degree() != Some(2 * n) {
        return Err(Error::DegreeMismatch {
            expected: 2 * n,
            got: f.degree().unwrap_or(0),
        });
    }
    let bb = BigInt::from(b);
    let mut rem: Vec<BigInt> = f.coeffs().to_vec();
    let mut g = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        // Only the i-th term reaches degree n + i among those not yet removed.
        let c = rem[n + i].clone();
        if !c.is_zero() {
            for (j, binom) in binomial_row(i).into_iter().enumerate() {
                rem[n - i + 2 * j] -= &c * binom * num_traits::pow(bb.clone(), i - j);
            }
        }
        g[i] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NotBReciprocal);
    }
    Ok(IntPoly::new(g))
}

/// Checks `a_(n-i) = b^i a_(n+i)` for all `0 <= i <= n`.
pub fn satisfies_identity(n: usize, b: i64, f: &IntPoly) -> bool {
    if f.degree() != Some(2 * n) {
        return false;
    }
    let bb = BigInt::from(b);
    let mut bi = BigInt::one();
    for i in 0..=n {
        if f.coeff(n - i) != &bi * f.coeff(n + i) {
            return false;
        }
        bi *= &bb;
    }
    true
}

/// Integer and radical parts of `g(+-2 sqrt b)`.
pub fn eval_sqrtb(w: &BRecipPoly) -> SqrtBEval {
    let four_b = BigInt::from(4 * w.b);
    let mut x = BigInt::zero();
    let mut y = BigInt::zero();
    let mut pow = BigInt::one();
    let c = w.g.coeffs();
    let mut i = 0;
    while 2 * i < c.len() {
        x += &c[2 * i] * &pow;
        if let Some(odd) = c.get(2 * i + 1) {
            y += odd * &pow;
        }
        pow *= &four_b;
        i += 1;
    }
    let norm = &x * &x - &four_b * &y * &y;
    SqrtBEval { x, y, norm }
}

/// `disc f = b^(n(n-1)) * g(2 sqrt b) g(-2 sqrt b) * (disc g)^2`.
pub fn disc_f_via_formula(w: &BRecipPoly) -> BigInt {
    let norm = eval_sqrtb(w).norm;
    let dg = discriminant(&w.g).expect("deg g = n >= 1");
    num_traits::pow(BigInt::from(w.b), w.n * (w.n - 1)) * norm * &dg * &dg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `g` with all coefficients in `[-H, H]`, `c_n != 0`.
    BReciprocal,
    /// `g` monic, other coefficients in `[-H, H]`.
    BReciprocalMonic,
    /// Monic degree-`n` `f` with `a_0 = b` and `a_1..a_(n-1)` in `[-H, H]`.
    FixedConstantTerm,
}

impl FamilyKind {
    pub fn is_b_reciprocal(self) -> bool {
        !matches!(self, FamilyKind::FixedConstantTerm)
    }
}

/// A coefficient box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub b: i64,
    #[serde(rename = "H")]
    pub h: u64,
}

/// Either a b-reciprocal polynomial or a plain polynomial, depending on the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Member {
    BRecip(BRecipPoly),
    Plain(IntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    /// Mixed-radix rank of the free coefficients inside the box.
    pub rank: u64,
    /// Largest absolute value among the free coefficients.
    pub box_height: u64,
    pub member: Member,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize, b: i64, h: u64) -> Result<Self, Error> {
        if n == 0 || b == 0 || h == 0 {
            return Err(Error::InvalidInput("need n >= 1, b != 0, H >= 1".into()));
        }
        if kind == FamilyKind::FixedConstantTerm && n < 2 {
            return Err(Error::InvalidInput("fixed-constant-term family needs n >= 2".into()));
        }
        Ok(FamilySpec { kind, n, b, h })
    }

    /// The same family at another height.
    pub fn with_height(&self, h: u64) -> FamilySpec {
        FamilySpec { h, ..self.clone() }
    }

    /// Number of free coefficients (mixed-radix digits).
    pub fn free_count(&self) -> usize {
        match self.kind {
            FamilyKind::BReciprocal => self.n + 1,
            FamilyKind::BReciprocalMonic => self.n,
            FamilyKind::FixedConstantTerm => self.n - 1,
        }
    }

    pub fn radix(&self) -> u64 {
        2 * self.h + 1
    }

    /// Number of ranks in the box, degenerate entries included.
    pub fn rank_count(&self) -> Option<u64> {
        self.radix().checked_pow(self.free_count() as u32)
    }

    /// Number of members (ranks minus the skipped `c_n = 0` entries).
    pub fn family_size(&self) -> Option<u64> {
        let total = self.rank_count()?;
        Some(match self.kind {
            FamilyKind::BReciprocal => total - total / self.radix(),
            _ => total,
        })
    }

    /// Free coefficients for `rank`, lowest degree first; `None` for skipped ranks.
    pub fn decode(&self, rank: u64) -> Option<Vec<i64>> {
        let r = self.radix();
        let h = self.h as i64;
        let mut rest = rank;
        let digits: Vec<i64> = (0..self.free_count())
            .map(|_| {
                let d = (rest % r) as i64 - h;
                rest /= r;
                d
            })
            .collect();
        if self.kind == FamilyKind::BReciprocal && digits[self.n] == 0 {
            return None;
        }
        Some(digits)
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, digits: &[i64]) -> u64 {
        let r = self.radix();
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * r + (d + self.h as i64) as u64)
    }

    /// Builds the member polynomial from decoded digits.
    pub fn member_from_digits(&self, digits: &[i64]) -> Member {
        match self.kind {
            FamilyKind::BReciprocal => Member::BRecip(BRecipPoly {
                n: self.n,
                b: self.b,
                g: IntPoly::from_i64s(digits),
            }),
            FamilyKind::BReciprocalMonic => {
                let mut c = digits.to_vec();
                c.push(1);
                Member::BRecip(BRecipPoly {
                    n: self.n,
                    b: self.b,
                    g: IntPoly::from_i64s(&c),
                })
            }
            FamilyKind::FixedConstantTerm => {
                let mut c = Vec::with_capacity(self.n + 1);
                c.push(self.b);
                c.extend_from_slice(digits);
                c.push(1);
                Member::Plain(IntPoly::from_i64s(&c))
            }
        }
    }
}

/// Members whose rank is congruent to `index` modulo `total`, in rank order.
pub fn iterate_family(
    spec: &FamilySpec,
    index: u64,
    total: u64,
) -> Result<impl Iterator<Item = FamilyMember> + '_, Error> {
    if total == 0 || index >= total {
        return Err(Error::InvalidInput(format!("bad shard {index}/{total}")));
    }
    let ranks = spec
        .rank_count()
        .ok_or_else(|| Error::BudgetExceeded("family box overflows u64".into()))?;
    Ok((index..ranks).step_by(total as usize).filter_map(move |rank| {
        let digits = spec.decode(rank)?;
        let box_height = digits.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
        Some(FamilyMember {
            rank,
            box_height,
            member: spec.member_from_digits(&digits),
        })
    }))
}

/// `Ht(f) / Ht(g)` envelope constant `(n + 1) * max(1, |b|)^n * 2^n`.
pub fn height_ratio_bound(n: usize, b: i64) -> BigInt {
    BigInt::from(n + 1) * num_traits::pow(BigInt::from(b.abs().max(1)), n) * (BigInt::one() << n)
}

/// Height of a member polynomial as an `f64`, for reports.
pub fn height_f64(p: &IntPoly) -> f64 {
    p.height().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::discriminant;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn w(b: i64, g: &[i64]) -> BRecipPoly {
        BRecipPoly::from_i64s(b, g).unwrap()
    }

    // Independent expansion oracle: substitute u = (x^2 + b)/x symbolically by
    // repeated multiplication in Z[x], tracking the power of x separately.
    fn f_oracle(n: usize, b: i64, g: &[i64]) -> IntPoly {
        let u_num = p(&[b, 0, 1]); // x^2 + b, over x
        let mut acc = IntPoly::zero();
        for (i, &c) in g.iter().enumerate() {
            // c * (x^2+b)^i * x^(n-i)
            let term = u_num.pow(i as u32).scale(&BigInt::from(c));
            let shifted = &term * &IntPoly::monomial(BigInt::one(), n - i);
            acc = &acc + &shifted;
        }
        acc
    }

    // g(2 sqrt b) g(-2 sqrt b) in Z[sqrt b], elements stored as (p, q) = p + q sqrt b.
    fn norm_oracle(b: i64, g: &IntPoly) -> BigInt {
        let bb = BigInt::from(b);
        let eval = |sign: i64| {
            let (mut pp, mut qq) = (BigInt::zero(), BigInt::zero());
            for c in g.coeffs().iter().rev() {
                // (pp + qq sqrt b) * (sign * 2 sqrt b) + c
                let np = BigInt::from(2 * sign) * &bb * &qq + c;
                let nq = BigInt::from(2 * sign) * &pp;
                pp = np;
                qq = nq;
            }
            (pp, qq)
        };
        let (p1, q1) = eval(1);
        let (p2, q2) = eval(-1);
        // (p1 + q1 s)(p2 + q2 s) with s^2 = b; the sqrt b part must cancel.
        let rational = &p1 * &p2 + &q1 * &q2 * &bb;
        let radical = &p1 * &q2 + &q1 * &p2;
        assert!(radical.is_zero());
        rational
    }

    #[test]
    fn f_from_g_examples() {
        assert_eq!(f_from_g(&w(3, &[0, 1])), p(&[3, 0, 1]));
        assert_eq!(f_from_g(&w(2, &[1, 0, 1])), p(&[4, 0, 5, 0, 1]));
        assert_eq!(f_from_g(&w(-1, &[3, 2])), p(&[-2, 3, 2]));
        assert_eq!(f_from_g(&w(2, &[1, 0, 1])), f_oracle(2, 2, &[1, 0, 1]));
    }

    #[test]
    fn g_from_f_examples() {
        assert_eq!(g_from_f(2, 2, &p(&[4, 0, 5, 0, 1])).unwrap(), p(&[1, 0, 1]));
        assert!(matches!(g_from_f(1, 2, &p(&[-2, 0, 1])), Err(Error::NotBReciprocal)));
        assert!(matches!(
            g_from_f(2, 2, &p(&[-2, 0, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let e = eval_sqrtb(&w(2, &[1, 0, 1]));
        assert_eq!((e.x, e.y, e.norm), (9.into(), 0.into(), 81.into()));
        for b in [-3i64, 1, 5] {
            let e = eval_sqrtb(&w(b, &[0, 1]));
            assert_eq!((e.x, e.y, e.norm), (0.into(), 1.into(), (-4 * b).into()));
        }
        let e = eval_sqrtb(&w(-1, &[3, 2]));
        assert_eq!((e.x, e.y, e.norm), (3.into(), 2.into(), 25.into()));
    }

    #[test]
    fn disc_formula_examples() {
        // n = 1 reduces to the quadratic discriminant c0^2 - 4 b c1^2.
        for (b, c0, c1) in [(1i64, 3i64, 1i64), (-2, 5, -3), (7, 0, 2)] {
            assert_eq!(
                disc_f_via_formula(&w(b, &[c0, c1])),
                BigInt::from(c0 * c0 - 4 * b * c1 * c1)
            );
        }
        let x = w(2, &[1, 0, 1]);
        assert_eq!(disc_f_via_formula(&x), BigInt::from(5184));
        assert_eq!(discriminant(&x.f()).unwrap(), BigInt::from(5184));
        // Phi_5 = x^2 g(x + 1/x) with g = u^2 + u - 1: both sides equal disc(Phi_5) = 125.
        let y = w(1, &[-1, 1, 1]);
        assert_eq!(y.f(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(disc_f_via_formula(&y), discriminant(&y.f()).unwrap());
        assert_eq!(disc_f_via_formula(&y), BigInt::from(125));
    }

    #[test]
    fn family_counts() {
        let spec = FamilySpec::new(FamilyKind::BReciprocal, 1, 1, 1).unwrap();
        let all: Vec<_> = iterate_family(&spec, 0, 1).unwrap().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(spec.family_size(), Some(6));
        let spec = FamilySpec::new(FamilyKind::BReciprocalMonic, 2, 1, 1).unwrap();
        assert_eq!(iterate_family(&spec, 0, 1).unwrap().count(), 9);
        let spec = FamilySpec::new(FamilyKind::FixedConstantTerm, 3, 2, 2).unwrap();
        let all: Vec<_> = iterate_family(&spec, 0, 1).unwrap().collect();
        assert_eq!(all.len(), 25);
        match &all[0].member {
            Member::Plain(f) => assert_eq!(f, &p(&[2, -2, -2, 1])),
            _ => panic!(),
        }
    }

    #[test]
    fn sharding_partitions_the_family() {
        let spec = FamilySpec::new(FamilyKind::BReciprocal, 2, -1, 2).unwrap();
        let full: Vec<u64> = iterate_family(&spec, 0, 1).unwrap().map(|m| m.rank).collect();
        let mut union: Vec<u64> = (0..4)
            .flat_map(|i| iterate_family(&spec, i, 4).unwrap().map(|m| m.rank).collect::<Vec<_>>())
            .collect();
        union.sort_unstable();
        assert_eq!(union, full);
        assert!(iterate_family(&spec, 4, 4).is_err());
    }

    #[test]
    fn encode_decode() {
        let spec = FamilySpec::new(FamilyKind::BReciprocal, 3, 2, 4).unwrap();
        for rank in [0u64, 17, 4000, spec.rank_count().unwrap() - 1] {
            if let Some(d) = spec.decode(rank) {
                assert_eq!(spec.encode(&d), rank);
            }
        }
    }

    #[test]
    fn identity_holds_exhaustively_small() {
        for b in [-3i64, -1, 1, 2, 4] {
            for n in 1..=3 {
                let spec = FamilySpec::new(FamilyKind::BReciprocal, n, b, 2).unwrap();
                for m in iterate_family(&spec, 0, 1).unwrap() {
                    let Member::BRecip(x) = m.member else { panic!() };
                    let f = x.f();
                    assert!(satisfies_identity(n, b, &f), "{f}");
                    assert_eq!(f.lc(), x.g().lc());
                    assert_eq!(eval_sqrtb(&x).norm, norm_oracle(b, x.g()));
                }
            }
        }
    }

    fn arb_w() -> impl Strategy<Value = BRecipPoly> {
        (1usize..=4, prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 3, 4, 7]))
            .prop_flat_map(|(n, b)| {
                prop::collection::vec(-1_000_000i64..=1_000_000, n + 1).prop_map(move |mut c| {
                    if c[n] == 0 {
                        c[n] = 1;
                    }
                    BRecipPoly::from_i64s(b, &c).unwrap()
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn round_trip(x in arb_w()) {
            let f = f_from_g(&x);
            prop_assert!(satisfies_identity(x.n(), x.b(), &f));
            prop_assert_eq!(g_from_f(x.n(), x.b(), &f).unwrap(), x.g().clone());
            let coeffs: Vec<i64> = x.g().coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
            prop_assert_eq!(f, f_oracle(x.n(), x.b(), &coeffs));
        }

        #[test]
        fn norm_matches_pair_arithmetic(x in arb_w()) {
            prop_assert_eq!(eval_sqrtb(&x).norm, norm_oracle(x.b(), x.g()));
        }

        #[test]
        fn height_envelope(x in arb_w()) {
            let hf = x.f().height();
            let hg = x.g().height();
            let c = height_ratio_bound(x.n(), x.b());
            prop_assert!(&hf <= &(&c * &hg));
            prop_assert!(&hg <= &(&c * &hf));
        }
    }
}
