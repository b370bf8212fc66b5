//! Signed permutations and the cycle-type tables of the hyperoctahedral group
//! `S_2 wr S_n` and its three index-2 subgroups that surject onto `S_n`.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest `n` for which group tables are enumerated element by element.
pub const MAX_TABLE_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Cycle lengths of the underlying permutation, each tagged with the parity of
/// the sign flips along that cycle. Stored sorted by length descending, `+`
/// before `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCycleType(Vec<(usize, Sign)>);

impl SignedCycleType {
    pub fn new(parts: impl IntoIterator<Item = (usize, Sign)>) -> Self {
        let mut v: Vec<(usize, Sign)> = parts.into_iter().collect();
        v.sort_by_key(|&(len, s)| (Reverse(len), s));
        SignedCycleType(v)
    }

    pub fn parts(&self) -> &[(usize, Sign)] {
        &self.0
    }

    /// Sum of cycle lengths.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(l, _)| l).sum()
    }

    /// Number of negative cycles; its parity is the total sign sum.
    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&(_, s)| s == Sign::Minus).count()
    }

    /// Whether the underlying permutation is odd.
    pub fn perm_is_odd(&self) -> bool {
        self.0.iter().map(|&(l, _)| l - 1).sum::<usize>() % 2 == 1
    }

    /// Cycle lengths without signs, descending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.0.iter().map(|&(l, _)| l).collect()
    }

    /// Degrees of the factors of `f mod p` this type predicts: `(d, +)` gives
    /// two factors of degree `d`, `(d, -)` one of degree `2d`.
    pub fn predicted_f_pattern(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(l, s) in &self.0 {
            match s {
                Sign::Plus => out.extend([l, l]),
                Sign::Minus => out.push(2 * l),
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, s)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({l},{})", s.symbol())?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SignedCycleType {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for &(l, s) in &self.0 {
            seq.serialize_element(&(l, s.symbol()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SignedCycleType {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = SignedCycleType;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of [length, sign] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut parts = Vec::new();
                while let Some((l, s)) = seq.next_element::<(usize, String)>()? {
                    let sign = match s.as_str() {
                        "+" => Sign::Plus,
                        "-" | "\u{2212}" => Sign::Minus,
                        other => return Err(de::Error::custom(format!("bad sign {other:?}"))),
                    };
                    parts.push((l, sign));
                }
                Ok(SignedCycleType::new(parts))
            }
        }
        de.deserialize_seq(V)
    }
}

/// The full hyperoctahedral group and its three maximal subgroups that still
/// map onto `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    G0,
    /// Sign vectors with even sum.
    G1,
    /// Sign sum equal to the sign of the permutation.
    G2,
    /// Constant sign vectors.
    G3,
}

impl Subgroup {
    pub const ALL: [Subgroup; 4] = [Subgroup::G0, Subgroup::G1, Subgroup::G2, Subgroup::G3];

    /// Membership of an element `(v, sigma)`; `v` is a bitmask over `n` points.
    fn contains(self, n: usize, v: u32, perm_odd: bool) -> bool {
        let weight_odd = v.count_ones() % 2 == 1;
        match self {
            Subgroup::G0 => true,
            Subgroup::G1 => !weight_odd,
            Subgroup::G2 => weight_odd == perm_odd,
            Subgroup::G3 => v == 0 || v == (1u32 << n) - 1,
        }
    }

    /// Closed-form test of whether some element of the subgroup has this type.
    pub fn admits_type(self, t: &SignedCycleType) -> bool {
        let odd = t.minus_count() % 2 == 1;
        match self {
            Subgroup::G0 => true,
            Subgroup::G1 => !odd,
            Subgroup::G2 => odd == t.perm_is_odd(),
            Subgroup::G3 => {
                t.parts().iter().all(|&(_, s)| s == Sign::Plus)
                    || t.parts().iter().all(|&(l, s)| (s == Sign::Minus) == (l % 2 == 1))
            }
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Distinct signed cycle types of a subgroup together with its order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeTable {
    pub n: usize,
    pub group: Subgroup,
    pub order: u64,
    pub types: BTreeSet<SignedCycleType>,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_masks(perm: &[usize]) -> Vec<(usize, u32)> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let (mut len, mut mask, mut i) = (0, 0u32, start);
        while !seen[i] {
            seen[i] = true;
            mask |= 1 << i;
            len += 1;
            i = perm[i];
        }
        out.push((len, mask));
    }
    out
}

fn enumerate(n: usize, group: Subgroup) -> TypeTable {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut types = BTreeSet::new();
    let mut order = 0u64;
    loop {
        let cycles = cycle_masks(&perm);
        let perm_odd = (n - cycles.len()) % 2 == 1;
        for v in 0..(1u32 << n) {
            if !group.contains(n, v, perm_odd) {
                continue;
            }
            order += 1;
            types.insert(SignedCycleType::new(
                cycles
                    .iter()
                    .map(|&(len, mask)| (len, Sign::from_parity((v & mask).count_ones() % 2 == 1))),
            ));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    TypeTable {
        n,
        group,
        order,
        types,
    }
}

/// Cached table for `(n, group)`, enumerating all `2^n n!` elements on first use.
pub fn group_table(n: usize, group: Subgroup) -> Result<&'static TypeTable, Error> {
    static TABLES: [[OnceLock<TypeTable>; 4]; MAX_TABLE_N + 1] =
        [const { [const { OnceLock::new() }; 4] }; MAX_TABLE_N + 1];
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n > MAX_TABLE_N {
        return Err(Error::NTooLarge {
            n,
            max: MAX_TABLE_N,
        });
    }
    Ok(TABLES[n][group as usize].get_or_init(|| enumerate(n, group)))
}

/// The set of signed cycle types met by elements of `group` in degree `n`.
pub fn group_cycle_types(n: usize, group: Subgroup) -> Result<BTreeSet<SignedCycleType>, Error> {
    Ok(group_table(n, group)?.types.clone())
}

/// Whether `t` is realized by an element of `group`, via the cached table when
/// `n` is small and the closed form otherwise.
pub fn type_in_group(n: usize, group: Subgroup, t: &SignedCycleType) -> bool {
    match group_table(n, group) {
        Ok(table) => table.types.contains(t),
        Err(_) => group.admits_type(t),
    }
}

/// The maximal subgroups surjecting onto `S_n`: `G1` and `G2`, plus `G3` for
/// odd `n >= 3` (for `n = 1` it is the whole group).
pub fn proper_subgroups(n: usize) -> &'static [Subgroup] {
    if n >= 3 && n % 2 == 1 {
        &[Subgroup::G1, Subgroup::G2, Subgroup::G3]
    } else {
        &[Subgroup::G1, Subgroup::G2]
    }
}

/// Whether `t` lies outside every proper subgroup.
pub fn escapes_proper_subgroups(n: usize, t: &SignedCycleType) -> bool {
    proper_subgroups(n).iter().all(|&g| !type_in_group(n, g, t))
}
