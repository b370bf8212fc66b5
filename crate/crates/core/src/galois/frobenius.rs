//! Frobenius signed cycle types and the auditor that checks them against a
//! claimed group.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hyperoct::{escapes_proper_subgroups, type_in_group, Sign, SignedCycleType, Subgroup};
use super::Verdict;
use crate::breciprocal::{disc_f_via_formula, BRecipPoly};
use crate::intpoly::modp::{factor_reduced, Fp};
use crate::intpoly::{is_prime_u64, PrimeIter, DEFAULT_SEED};
use crate::Error;

/// Caches `2 b c_n disc f` so that many primes can be tested cheaply.
#[derive(Debug, Clone)]
pub struct FrobeniusContext<'a> {
    w: &'a BRecipPoly,
    bad: BigInt,
}

impl<'a> FrobeniusContext<'a> {
    pub fn new(w: &'a BRecipPoly) -> Self {
        let bad = disc_f_via_formula(w) * BigInt::from(2 * w.b()) * w.g().lc();
        FrobeniusContext { w, bad }
    }

    /// Whether the polynomial is inseparable, so that every prime is ramified.
    pub fn is_degenerate(&self) -> bool {
        self.bad.is_zero()
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        (&self.bad % BigInt::from(p)).is_zero()
    }

    /// Signed type of Frobenius at `p`, or `None` when `p` is ramified.
    pub fn signed_type(&self, p: u64) -> Result<Option<SignedCycleType>, Error> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if self.is_ramified(p) {
            return Ok(None);
        }
        Ok(Some(self.unramified_type(p)))
    }

    fn unramified_type(&self, p: u64) -> SignedCycleType {
        let fp = Fp::new(p);
        let g = fp.reduce(self.w.g());
        let disc_poly = vec![fp.reduce_int(&BigInt::from(-4 * self.w.b())), 0, 1];
        let factors = factor_reduced(&fp, &g, DEFAULT_SEED);
        SignedCycleType::new(factors.factors.iter().map(|(gj, mult)| {
            debug_assert_eq!(*mult, 1);
            let d = gj.len() - 1;
            // Euler's criterion in F_p[u]/(g_j), a field with p^d elements.
            let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) >> 1u32;
            let r = fp.poly_powmod(&fp.poly_rem(&disc_poly, gj), &e, gj);
            (d, if r == [1] { Sign::Plus } else { Sign::Minus })
        }))
    }

    /// Types at the first `count` unramified primes, in increasing order.
    pub fn first_types(&self, count: usize) -> Vec<(u64, SignedCycleType)> {
        if self.is_degenerate() {
            return Vec::new();
        }
        PrimeIter::new()
            .filter(|&p| !self.is_ramified(p))
            .take(count)
            .map(|p| (p, self.unramified_type(p)))
            .collect()
    }
}

/// Signed cycle type of Frobenius at `p`; `None` means `p` divides `2 b c_n disc f`.
pub fn signed_cycle_type(w: &BRecipPoly, p: u64) -> Result<Option<SignedCycleType>, Error> {
    FrobeniusContext::new(w).signed_type(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum AuditOutcome {
    Pass,
    Fail { prime: u64, observed: SignedCycleType },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub group: Subgroup,
    pub outcome: AuditOutcome,
    pub primes_checked: usize,
    /// Distinct types seen before the audit stopped.
    pub observed: BTreeSet<SignedCycleType>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.outcome == AuditOutcome::Pass
    }

    /// Whether some observed type lies outside every proper subgroup.
    pub fn escapes_proper_subgroups(&self, n: usize) -> bool {
        self.observed.iter().any(|t| escapes_proper_subgroups(n, t))
    }
}

/// The subgroup a verdict claims, if it claims one.
pub fn verdict_group(v: Verdict) -> Option<Subgroup> {
    match v {
        Verdict::G0 => Some(Subgroup::G0),
        Verdict::G1 => Some(Subgroup::G1),
        Verdict::G2 => Some(Subgroup::G2),
        Verdict::G3 => Some(Subgroup::G3),
        _ => None,
    }
}

/// Checks that Frobenius types at the first `primes` unramified primes all lie
/// in the group named by `verdict`.
pub fn frobenius_audit(w: &BRecipPoly, verdict: Verdict, primes: usize) -> Result<AuditReport, Error> {
    let group = verdict_group(verdict)
        .ok_or_else(|| Error::InvalidInput(format!("cannot audit verdict {verdict:?}")))?;
    let ctx = FrobeniusContext::new(w);
    if ctx.is_degenerate() {
        return Err(Error::InvalidInput("inseparable polynomial".into()));
    }
    let mut observed = BTreeSet::new();
    let mut checked = 0;
    for (p, t) in ctx.first_types(primes) {
        checked += 1;
        if !type_in_group(w.n(), group, &t) {
            observed.insert(t.clone());
            return Ok(AuditReport {
                group,
                outcome: AuditOutcome::Fail { prime: p, observed: t },
                primes_checked: checked,
                observed,
            });
        }
        observed.insert(t);
    }
    Ok(AuditReport {
        group,
        outcome: AuditOutcome::Pass,
        primes_checked: checked,
        observed,
    })
}
