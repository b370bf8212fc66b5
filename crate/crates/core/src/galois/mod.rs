//! Where `G_f` sits among the hyperoctahedral group `G0 = S_2 wr S_n` and its
//! maximal subgroups `G1`, `G2`, `G3` that surject onto `S_n`.

mod certify;
mod frobenius;
mod hyperoct;
mod small;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use certify::{certify_sn, yields_primitivity, yields_transposition, BaseGroup, SnCertificate};
pub use frobenius::{
    frobenius_audit, signed_cycle_type, verdict_group, AuditOutcome, AuditReport, FrobeniusContext,
};
pub use hyperoct::{
    escapes_proper_subgroups, group_cycle_types, proper_subgroups, group_table, type_in_group, Sign,
    SignedCycleType, Subgroup, TypeTable, MAX_TABLE_N,
};
pub use small::classify_small;

use crate::breciprocal::{eval_sqrtb, BRecipPoly};
use crate::intpoly::{
    discriminant, factor_over_z, is_irreducible, is_square_int, resultant, squarefree_kernel_with_bound,
    IntPoly, KernelStatus, DEFAULT_TRIAL_BOUND,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    G0,
    G1,
    G2,
    G3,
    SmallBaseGroup,
    ReducibleBase,
    Degenerate,
    Undetermined,
}

impl Verdict {
    pub const ALL: [Verdict; 8] = [
        Verdict::G0,
        Verdict::G1,
        Verdict::G2,
        Verdict::G3,
        Verdict::SmallBaseGroup,
        Verdict::ReducibleBase,
        Verdict::Degenerate,
        Verdict::Undetermined,
    ];
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Outcome of the `G3` test, which only applies in odd degree `n >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum G3Membership {
    Yes,
    No,
    NotApplicable,
    Undetermined,
}

impl G3Membership {
    pub fn holds(self) -> bool {
        self == G3Membership::Yes
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum G3Repr {
    Bool(bool),
    Status(G3Status),
}

#[derive(Serialize, Deserialize)]
enum G3Status {
    NotApplicable,
    Undetermined,
}

impl Serialize for G3Membership {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            G3Membership::Yes => G3Repr::Bool(true),
            G3Membership::No => G3Repr::Bool(false),
            G3Membership::NotApplicable => G3Repr::Status(G3Status::NotApplicable),
            G3Membership::Undetermined => G3Repr::Status(G3Status::Undetermined),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for G3Membership {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match G3Repr::deserialize(d)? {
            G3Repr::Bool(true) => G3Membership::Yes,
            G3Repr::Bool(false) => G3Membership::No,
            G3Repr::Status(G3Status::NotApplicable) => G3Membership::NotApplicable,
            G3Repr::Status(G3Status::Undetermined) => G3Membership::Undetermined,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub prime: u64,
    #[serde(rename = "type")]
    pub cycle_type: SignedCycleType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisClassification {
    pub separable: bool,
    pub f_reducible: bool,
    pub g_irreducible: bool,
    /// `None` when `f` is inseparable or `g` is reducible.
    pub base_group: Option<BaseGroup>,
    #[serde(rename = "in_G1")]
    pub in_g1: bool,
    #[serde(rename = "in_G2")]
    pub in_g2: bool,
    #[serde(rename = "in_G3")]
    pub in_g3: G3Membership,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
}

impl GaloisClassification {
    fn unanalysed(verdict: Verdict, g_irreducible: bool, n: usize) -> Self {
        GaloisClassification {
            separable: verdict != Verdict::Degenerate,
            f_reducible: true,
            g_irreducible,
            base_group: None,
            in_g1: false,
            in_g2: false,
            in_g3: if n % 2 == 1 && n >= 3 {
                G3Membership::Undetermined
            } else {
                G3Membership::NotApplicable
            },
            verdict,
            evidence: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Primes tried by the `S_n` certifier.
    pub sn_budget: usize,
    /// Report `Undetermined` rather than `SmallBaseGroup` when certification runs out of primes.
    pub strict: bool,
    /// Factor `f` even when the norm test already rules out reducibility.
    pub full_f_factorization: bool,
    /// Trial-division bound for the squarefree kernel used by the `G3` test.
    pub trial_bound: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            sn_budget: 200,
            strict: true,
            full_f_factorization: false,
            trial_bound: DEFAULT_TRIAL_BOUND,
        }
    }
}

/// `g(2 sqrt b) g(-2 sqrt b)` is a square.
pub fn test_g1(w: &BRecipPoly) -> bool {
    is_square_int(&eval_sqrtb(w).norm)
}

/// `g(2 sqrt b) g(-2 sqrt b) disc g` is a square.
pub fn test_g2(w: &BRecipPoly) -> bool {
    is_square_int(&(eval_sqrtb(w).norm * disc_g(w)))
}

fn disc_g(w: &BRecipPoly) -> BigInt {
    discriminant(w.g()).expect("deg g >= 1")
}

/// `G_f` inside the constant-sign subgroup, for odd `n >= 3`.
pub fn test_g3(w: &BRecipPoly, trial_bound: u64) -> G3Membership {
    let n = w.n();
    if n < 3 || n % 2 == 0 {
        return G3Membership::NotApplicable;
    }
    let norm = eval_sqrtb(w).norm;
    if norm.is_zero() {
        return G3Membership::Undetermined;
    }
    let kernel = squarefree_kernel_with_bound(&norm, trial_bound);
    if kernel.status == KernelStatus::Incomplete {
        return G3Membership::Undetermined;
    }
    let m = g3_resolvent(w, &kernel.k);
    if is_irreducible(&m) {
        G3Membership::No
    } else {
        G3Membership::Yes
    }
}

/// `M(z) = Res_u(g(u), z^2 - k(u^2 - 4b))`, built as `h(z^2)` where `h(y)`
/// is interpolated from `n + 1` integer resultants.
pub fn g3_resolvent(w: &BRecipPoly, k: &BigInt) -> IntPoly {
    let n = w.n();
    let four_bk = BigInt::from(4 * w.b()) * k;
    let values: Vec<BigInt> = (0..=n)
        .map(|y| {
            let q = IntPoly::new(vec![BigInt::from(y) + &four_bk, BigInt::zero(), -k.clone()]);
            resultant(w.g(), &q).expect("nonzero inputs")
        })
        .collect();
    interpolate_at_naturals(&values).compose_square()
}

/// The polynomial of degree `< values.len()` taking `values[i]` at `i`; its
/// coefficients must be integers.
fn interpolate_at_naturals(values: &[BigInt]) -> IntPoly {
    // Newton divided differences on the nodes 0, 1, ..., m.
    let m = values.len();
    let mut dd: Vec<BigRational> = values.iter().map(|v| BigRational::from(v.clone())).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from(BigInt::from(level));
        }
    }
    // Horner on the Newton basis: p = dd0 + (y - 0)(dd1 + (y - 1)(dd2 + ...)).
    let mut acc: Vec<BigRational> = vec![dd[m - 1].clone()];
    for i in (0..m - 1).rev() {
        let node = BigRational::from(BigInt::from(i));
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &node;
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral interpolant");
                c.to_integer()
            })
            .collect(),
    )
}

/// Full classification of a b-reciprocal polynomial.
pub fn classify(w: &BRecipPoly, opts: &ClassifyOptions) -> GaloisClassification {
    let n = w.n();
    let norm = eval_sqrtb(w).norm;
    let dg = disc_g(w);
    let g_irreducible = n == 1 || factor_over_z(w.g()).expect("nonzero").is_irreducible();
    if norm.is_zero() || dg.is_zero() {
        return GaloisClassification::unanalysed(Verdict::Degenerate, g_irreducible, n);
    }
    if !g_irreducible {
        return GaloisClassification::unanalysed(Verdict::ReducibleBase, false, n);
    }

    let (base_group, witnesses) = if n <= 3 {
        (certify::small_degree_base_group(n, &dg), Vec::new())
    } else {
        let cert = certify::certify_sn_irreducible(w.g(), opts.sn_budget);
        (cert.base_group, cert.witnesses)
    };

    let in_g1 = is_square_int(&norm);
    // Reducible f with irreducible g forces f = c h(x) x^n h(b/x), whence the norm is a square.
    let f_reducible = if in_g1 || opts.full_f_factorization {
        !is_irreducible(&w.f())
    } else {
        false
    };

    let mut cls = GaloisClassification {
        separable: true,
        f_reducible,
        g_irreducible: true,
        base_group: Some(base_group),
        in_g1: false,
        in_g2: false,
        in_g3: if n % 2 == 1 && n >= 3 {
            G3Membership::Undetermined
        } else {
            G3Membership::NotApplicable
        },
        verdict: Verdict::Undetermined,
        evidence: Vec::new(),
    };

    match base_group {
        BaseGroup::NotSn => {
            cls.verdict = Verdict::SmallBaseGroup;
            return cls;
        }
        BaseGroup::ProbablyNotSn { .. } => {
            cls.verdict = if opts.strict {
                Verdict::Undetermined
            } else {
                Verdict::SmallBaseGroup
            };
            return cls;
        }
        BaseGroup::CertifiedSn => {}
    }

    if !witnesses.is_empty() {
        let ctx = FrobeniusContext::new(w);
        cls.evidence = witnesses
            .iter()
            .filter_map(|&(p, _)| {
                let t = ctx.signed_type(p).ok()??;
                Some(Evidence {
                    prime: p,
                    cycle_type: t,
                })
            })
            .collect();
    }

    cls.in_g1 = in_g1;
    // In degree 1 the sign of the permutation is trivial and G2 coincides with G1.
    cls.in_g2 = n >= 2 && is_square_int(&(&norm * &dg));
    cls.in_g3 = test_g3(w, opts.trial_bound);
    cls.verdict = if cls.in_g1 {
        Verdict::G1
    } else if cls.in_g2 {
        Verdict::G2
    } else {
        match cls.in_g3 {
            G3Membership::Yes => Verdict::G3,
            G3Membership::Undetermined => Verdict::Undetermined,
            _ => Verdict::G0,
        }
    };
    cls
}

/// Classification of a plain (not b-reciprocal) polynomial: separability,
/// reducibility and whether its group is certified to be `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlainClassification {
    pub separable: bool,
    pub reducible: bool,
    /// `None` unless the polynomial is separable and irreducible.
    pub base_group: Option<BaseGroup>,
}

impl PlainClassification {
    /// Separable with a group other than `S_n` (reducible members included).
    pub fn is_non_sn(&self) -> bool {
        self.separable && !matches!(self.base_group, Some(BaseGroup::CertifiedSn))
    }
}

pub fn classify_plain(f: &IntPoly, opts: &ClassifyOptions) -> PlainClassification {
    let n = f.degree().unwrap_or(0);
    let disc = if n >= 1 {
        discriminant(f).expect("degree >= 1")
    } else {
        BigInt::one()
    };
    let reducible = !is_irreducible(f);
    let separable = !disc.is_zero();
    let base_group = if !separable || reducible {
        None
    } else if n <= 3 {
        Some(certify::small_degree_base_group(n, &disc))
    } else {
        Some(certify::certify_sn_irreducible(f, opts.sn_budget).base_group)
    };
    PlainClassification {
        separable,
        reducible,
        base_group,
    }
}
