//! Functions defined by the residue of the input weight modulo 4.
//!
//! `f_{i1,i2}(x) = 1` iff `wt(x) mod 4` is `i1` or `i2`. Because input
//! indices enumerate the columns of the matrix of all binary vectors of
//! length `m` in order, the truth table of `f_{i1,i2}` is also the vector
//! `v_{i1,i2}` whose coset in the Hadamard code is studied below.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::gf2::parity;
use crate::walsh::{wht, DualityClass};

/// Largest `m` for which binomial sums and closed forms fit in `u128`.
pub const MAX_SUM_VARS: u32 = 126;

/// Unordered pair `{i1, i2}` of distinct residues modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClassPair {
    lo: u8,
    hi: u8,
}

impl ResidueClassPair {
    pub fn new(i1: u8, i2: u8) -> Result<Self> {
        if i1 > 3 || i2 > 3 || i1 == i2 {
            return Err(Error::Domain(format!(
                "pair ({i1},{i2}) needs distinct residues in 0..=3"
            )));
        }
        Ok(Self {
            lo: i1.min(i2),
            hi: i1.max(i2),
        })
    }

    /// All six pairs in lexicographic order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..4u8).flat_map(|a| ((a + 1)..4).map(move |b| Self { lo: a, hi: b }))
    }

    /// The four pairs with odd difference: (0,1), (0,3), (1,2), (2,3).
    pub fn odd() -> impl Iterator<Item = Self> {
        Self::all().filter(|p| p.is_odd())
    }

    pub fn lo(self) -> u8 {
        self.lo
    }

    pub fn hi(self) -> u8 {
        self.hi
    }

    /// `(i1 - i2) mod 2 == 1`.
    pub fn is_odd(self) -> bool {
        (self.hi - self.lo) % 2 == 1
    }

    pub fn contains(self, r: u32) -> bool {
        r == u32::from(self.lo) || r == u32::from(self.hi)
    }

    /// The pair whose function is the complement of this one's.
    pub fn complement(self) -> Self {
        let rest: Vec<u8> = (0..4).filter(|&r| r != self.lo && r != self.hi).collect();
        Self {
            lo: rest[0],
            hi: rest[1],
        }
    }
}

impl fmt::Display for ResidueClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

impl FromStr for ResidueClassPair {
    type Err = Error;

    /// Accepts `"i1,i2"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected i1,i2, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u8>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

fn check_sum_domain(j: u32, m: u32) -> Result<()> {
    if j > 3 {
        return Err(Error::Domain(format!("residue j={j} not in 0..=3")));
    }
    if !(2..=MAX_SUM_VARS).contains(&m) {
        return Err(Error::Domain(format!("m={m} not in 2..={MAX_SUM_VARS}")));
    }
    Ok(())
}

/// Binomial row `C(m, 0..=m)` by Pascal's rule.
pub fn binomial_row(m: u32) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        next.extend(row.windows(2).map(|w| w[0] + w[1]));
        next.push(1);
        row = next;
    }
    row
}

/// `S(j)_m`: sum of `C(m, k)` over `k = j (mod 4)`.
pub fn s_sum(j: u32, m: u32) -> Result<u128> {
    check_sum_domain(j, m)?;
    Ok(binomial_row(m)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k as u32 % 4 == j)
        .map(|(_, c)| c)
        .sum())
}

/// Closed-form shape of `S(j)_m` in terms of `B = 2^(floor(m/2) - 1)`:
/// `b2*B^2 + b1*B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub b2: u8,
    pub b1: i8,
}

impl ClosedForm {
    pub fn eval(self, b: u128) -> u128 {
        let quad = u128::from(self.b2) * b * b;
        let lin = u128::from(self.b1.unsigned_abs()) * b;
        if self.b1 < 0 {
            quad - lin
        } else {
            quad + lin
        }
    }

    pub fn add(self, other: Self) -> Self {
        Self {
            b2: self.b2 + other.b2,
            b1: self.b1 + other.b1,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ClosedForm { b2, b1 } = *self;
        let lead = if b2 == 1 {
            "B^2".to_string()
        } else {
            format!("{b2}B^2")
        };
        let sign = if b1 < 0 { '-' } else { '+' };
        match b1.unsigned_abs() {
            0 => f.write_str(&lead),
            1 => write!(f, "{lead}{sign}B"),
            k => write!(f, "{lead}{sign}{k}B"),
        }
    }
}

/// Table of closed forms, indexed `[j][m mod 8]`.
const CLOSED_FORMS: [[(u8, i8); 8]; 4] = [
    [
        (1, 1),
        (2, 1),
        (1, 0),
        (2, -1),
        (1, -1),
        (2, -1),
        (1, 0),
        (2, 1),
    ],
    [
        (1, 0),
        (2, 1),
        (1, 1),
        (2, 1),
        (1, 0),
        (2, -1),
        (1, -1),
        (2, -1),
    ],
    [
        (1, -1),
        (2, -1),
        (1, 0),
        (2, 1),
        (1, 1),
        (2, 1),
        (1, 0),
        (2, -1),
    ],
    [
        (1, 0),
        (2, -1),
        (1, -1),
        (2, -1),
        (1, 0),
        (2, 1),
        (1, 1),
        (2, 1),
    ],
];

pub fn closed_form(j: u32, m: u32) -> Result<ClosedForm> {
    check_sum_domain(j, m)?;
    let (b2, b1) = CLOSED_FORMS[j as usize][(m % 8) as usize];
    Ok(ClosedForm { b2, b1 })
}

/// `B_m = 2^(floor(m/2) - 1)`.
pub fn b_m(m: u32) -> u128 {
    1u128 << (m / 2 - 1)
}

/// `S(j)_m` from the closed-form table.
pub fn s_closed(j: u32, m: u32) -> Result<u128> {
    Ok(closed_form(j, m)?.eval(b_m(m)))
}

fn check_family_m(m: u32) -> Result<()> {
    if m % 2 != 0 {
        return Err(Error::OddVarCount(m));
    }
    if m < 2 {
        return Err(Error::Domain(format!("m={m} below 2")));
    }
    Ok(())
}

/// Truth table of `f_{i1,i2}` on `m` variables (`m` even).
pub fn construct_f(p: ResidueClassPair, m: u32) -> Result<TruthTable> {
    check_family_m(m)?;
    TruthTable::from_fn(m, |i| p.contains(i.count_ones() % 4))
}

/// Closed form of `wt(f_{i1,i2}) = S(i1)_m + S(i2)_m`.
pub fn weight_form(p: ResidueClassPair, m: u32) -> Result<ClosedForm> {
    Ok(closed_form(p.lo.into(), m)?.add(closed_form(p.hi.into(), m)?))
}

/// Weight of `f_{i1,i2}` from the closed forms, `S(i1)_m + S(i2)_m`.
pub fn predicted_weight(p: ResidueClassPair, m: u32) -> Result<u128> {
    Ok(s_closed(p.lo.into(), m)? + s_closed(p.hi.into(), m)?)
}

/// Multiset of weights `wt(v + c)` over all codewords `c` of the Hadamard code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetWeightDistribution {
    m: u32,
    counts: BTreeMap<u64, u64>,
}

impl CosetWeightDistribution {
    pub fn vars(&self) -> u32 {
        self.m
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn support(&self) -> Vec<u64> {
        self.counts.keys().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Minimum weight of the coset.
    pub fn min_weight(&self) -> u64 {
        *self
            .counts
            .keys()
            .next()
            .expect("distribution is never empty")
    }
}

fn check_coset_m(m: u32) -> Result<()> {
    check_family_m(m)?;
    if m < 4 {
        return Err(Error::Domain(format!(
            "coset analysis needs m >= 4, got {m}"
        )));
    }
    Ok(())
}

/// Coset distribution of an arbitrary vector from its Walsh spectrum:
/// `wt(v + a.x + eps) = 2^(m-1) - (-1)^eps F(a) / 2`.
pub fn coset_distribution_of(t: &TruthTable) -> CosetWeightDistribution {
    let m = t.vars();
    let half = 1i64 << (m - 1);
    let mut counts = BTreeMap::new();
    for &f in wht(t).values() {
        for w in [half - i64::from(f) / 2, half + i64::from(f) / 2] {
            *counts.entry(w as u64).or_insert(0) += 1;
        }
    }
    CosetWeightDistribution { m, counts }
}

/// Coset distribution by enumerating all `2^(m+1)` codewords.
pub fn coset_distribution_direct(t: &TruthTable) -> CosetWeightDistribution {
    let m = t.vars();
    let n = t.len();
    let mut counts = BTreeMap::new();
    for a in 0..n {
        let w0 = (0..n)
            .filter(|&x| t.get(x) ^ parity((a & x) as u64))
            .count() as u64;
        *counts.entry(w0).or_insert(0) += 1;
        *counts.entry(n as u64 - w0).or_insert(0) += 1;
    }
    CosetWeightDistribution { m, counts }
}

/// Weight distribution of the coset `H_m + v_{i1,i2}`.
pub fn coset_weight_distribution(p: ResidueClassPair, m: u32) -> Result<CosetWeightDistribution> {
    check_coset_m(m)?;
    Ok(coset_distribution_of(&construct_f(p, m)?))
}

/// Duality class of `f_{i1,i2}` as predicted from `m mod 8`.
pub fn predicted_duality(p: ResidueClassPair, m: u32) -> Result<DualityClass> {
    check_coset_m(m)?;
    if !p.is_odd() {
        return Ok(DualityClass::NotBent);
    }
    let group_a = p == ResidueClassPair { lo: 2, hi: 3 } || p == ResidueClassPair { lo: 0, hi: 1 };
    Ok(match m % 8 {
        0 | 4 => DualityClass::Neither,
        2 if group_a => DualityClass::SelfDual,
        2 => DualityClass::AntiSelfDual,
        _ if group_a => DualityClass::AntiSelfDual,
        _ => DualityClass::SelfDual,
    })
}

/// Predicted values of `f(0)` and of the dual at 0, from the weight alone:
/// `F(0) = 2^m - 2 wt(f)`, and the dual at 0 is 1 iff `F(0) < 0`.
pub fn predicted_values_at_zero(p: ResidueClassPair, m: u32) -> Result<(bool, bool)> {
    check_coset_m(m)?;
    let f0 = p.contains(0);
    let wt = predicted_weight(p, m)?;
    let dual0 = 2 * wt > (1u128 << m);
    Ok((f0, dual0))
}
