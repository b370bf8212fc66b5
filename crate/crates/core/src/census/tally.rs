//! Per-bin counters, merged by addition.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::galois::{BaseGroup, GaloisClassification, PlainClassification, Verdict};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    #[serde(rename = "G0")]
    pub g0: u64,
    #[serde(rename = "G1")]
    pub g1: u64,
    #[serde(rename = "G2")]
    pub g2: u64,
    #[serde(rename = "G3")]
    pub g3: u64,
    #[serde(rename = "SmallBaseGroup")]
    pub small_base_group: u64,
    #[serde(rename = "ReducibleBase")]
    pub reducible_base: u64,
    #[serde(rename = "Degenerate")]
    pub degenerate: u64,
    #[serde(rename = "Undetermined")]
    pub undetermined: u64,
}

impl VerdictCounts {
    fn slot(&mut self, v: Verdict) -> &mut u64 {
        match v {
            Verdict::G0 => &mut self.g0,
            Verdict::G1 => &mut self.g1,
            Verdict::G2 => &mut self.g2,
            Verdict::G3 => &mut self.g3,
            Verdict::SmallBaseGroup => &mut self.small_base_group,
            Verdict::ReducibleBase => &mut self.reducible_base,
            Verdict::Degenerate => &mut self.degenerate,
            Verdict::Undetermined => &mut self.undetermined,
        }
    }

    pub fn get(&self, v: Verdict) -> u64 {
        let mut copy = *self;
        *copy.slot(v)
    }

    pub fn total(&self) -> u64 {
        Verdict::ALL.iter().map(|&v| self.get(v)).sum()
    }
}

/// Counters for one height bin. For the fixed-constant-term family the verdict
/// buckets read: `G0` = group `S_n`, `SmallBaseGroup` = irreducible with a
/// smaller group, `ReducibleBase` = reducible and separable, `Degenerate` =
/// inseparable, `Undetermined` = no certificate within budget.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub members: u64,
    pub verdicts: VerdictCounts,
    #[serde(rename = "in_G1")]
    pub in_g1: u64,
    #[serde(rename = "in_G2")]
    pub in_g2: u64,
    #[serde(rename = "in_G3")]
    pub in_g3: u64,
    /// Members whose `f` factors over the rationals.
    pub f_reducible: u64,
    pub probably_not_sn: u64,
    /// Classifications breaking `not (in_G1 and in_G2)` or `f_reducible => in_G1`
    /// under a certified `S_n` base. Always zero unless something is wrong.
    pub coherence_violations: u64,
}

impl Tally {
    pub fn record(&mut self, c: &GaloisClassification) {
        self.members += 1;
        *self.verdicts.slot(c.verdict) += 1;
        self.in_g1 += c.in_g1 as u64;
        self.in_g2 += c.in_g2 as u64;
        self.in_g3 += c.in_g3.holds() as u64;
        self.f_reducible += c.f_reducible as u64;
        match c.base_group {
            Some(BaseGroup::ProbablyNotSn { .. }) => self.probably_not_sn += 1,
            Some(BaseGroup::CertifiedSn) => {
                let exclusive = !(c.in_g1 && c.in_g2);
                let coherent = !c.f_reducible || c.in_g1;
                if !(exclusive && coherent) {
                    self.coherence_violations += 1;
                }
            }
            _ => {}
        }
    }

    pub fn record_plain(&mut self, c: &PlainClassification) {
        self.members += 1;
        self.f_reducible += c.reducible as u64;
        let v = if !c.separable {
            Verdict::Degenerate
        } else if c.reducible {
            Verdict::ReducibleBase
        } else {
            match c.base_group {
                Some(BaseGroup::CertifiedSn) => Verdict::G0,
                Some(BaseGroup::NotSn) => Verdict::SmallBaseGroup,
                _ => {
                    self.probably_not_sn += 1;
                    Verdict::Undetermined
                }
            }
        };
        *self.verdicts.slot(v) += 1;
    }
}

impl AddAssign<&Tally> for Tally {
    fn add_assign(&mut self, o: &Tally) {
        self.members += o.members;
        for v in Verdict::ALL {
            *self.verdicts.slot(v) += o.verdicts.get(v);
        }
        self.in_g1 += o.in_g1;
        self.in_g2 += o.in_g2;
        self.in_g3 += o.in_g3;
        self.f_reducible += o.f_reducible;
        self.probably_not_sn += o.probably_not_sn;
        self.coherence_violations += o.coherence_violations;
    }
}
