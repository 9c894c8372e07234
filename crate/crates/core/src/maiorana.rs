//! Maiorana-McFarland functions `f(x, y) = x.phi(y) + g(y)`.
//!
//! A function is MM with respect to a [`CoordinateSplit`] when, after
//! assigning half of the variables to `x` and the rest to `y`, it has that
//! shape with `phi` a permutation of `F_2^(m/2)`. Detection here is exact
//! for a given split; it does not search over affine changes of variables.

use std::fmt;

use serde::Serialize;

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::gf2::{parity, BitMatrix};

/// Largest `m` for which [`detect_mm_any_split`] enumerates every split.
pub const MAX_SPLIT_SEARCH_VARS: u32 = 12;

/// Partition of `{1..m}` into an `x` block and a `y` block of size `m/2`.
///
/// Inside each block variables are ordered by increasing index, so the
/// lowest `x` variable is bit 0 of the `x` sub-index.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoordinateSplit {
    m: u32,
    xmask: u32,
}

impl CoordinateSplit {
    /// `xset` holds 1-based variable indices.
    pub fn new(m: u32, xset: &[u32]) -> Result<Self> {
        if m % 2 != 0 || m == 0 || m > 30 {
            return Err(Error::Domain(format!(
                "split needs even m in 2..=30, got {m}"
            )));
        }
        let mut xmask = 0u32;
        for &v in xset {
            if v == 0 || v > m {
                return Err(Error::Domain(format!("variable x_{v} outside 1..={m}")));
            }
            xmask |= 1 << (v - 1);
        }
        Self::from_mask(m, xmask)
    }

    pub fn from_mask(m: u32, xmask: u32) -> Result<Self> {
        if m % 2 != 0 || m == 0 || m > 30 {
            return Err(Error::Domain(format!(
                "split needs even m in 2..=30, got {m}"
            )));
        }
        if xmask >> m != 0 || xmask.count_ones() != m / 2 {
            return Err(Error::Domain(format!(
                "x block {xmask:#b} must hold exactly {} of {m} variables",
                m / 2
            )));
        }
        Ok(Self { m, xmask })
    }

    /// Every choice of `x` block, in increasing mask order.
    pub fn all(m: u32) -> Result<Vec<Self>> {
        if m % 2 != 0 || m == 0 || m > 30 {
            return Err(Error::Domain(format!(
                "split needs even m in 2..=30, got {m}"
            )));
        }
        Ok((0u32..(1 << m))
            .filter(|x| x.count_ones() == m / 2)
            .map(|xmask| Self { m, xmask })
            .collect())
    }

    pub fn vars(&self) -> u32 {
        self.m
    }

    pub fn xmask(&self) -> u32 {
        self.xmask
    }

    pub fn ymask(&self) -> u32 {
        !self.xmask & ((1u32 << self.m) - 1)
    }

    pub fn xset(&self) -> Vec<u32> {
        mask_vars(self.xmask)
    }

    pub fn yset(&self) -> Vec<u32> {
        mask_vars(self.ymask())
    }

    fn join(&self, x: u32, y: u32) -> usize {
        (deposit(x, self.xmask) | deposit(y, self.ymask())) as usize
    }
}

fn mask_vars(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

impl fmt::Debug for CoordinateSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CoordinateSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}/{{{}}}", show(self.xset()), show(self.yset()))
    }
}

/// Scatters the low bits of `v` onto the set bits of `mask`, lowest first.
fn deposit(v: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut bits = mask;
    let mut k = 0;
    while bits != 0 {
        let b = bits.trailing_zeros();
        if v >> k & 1 == 1 {
            out |= 1 << b;
        }
        bits &= bits - 1;
        k += 1;
    }
    out
}

/// The pair `(phi, g)` of a Maiorana-McFarland decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmWitness {
    pub phi: Vec<u32>,
    pub g: TruthTable,
}

impl MmWitness {
    pub fn phi_is_permutation(&self) -> bool {
        is_permutation(&self.phi)
    }
}

fn is_permutation(phi: &[u32]) -> bool {
    let mut seen = vec![false; phi.len()];
    phi.iter().all(|&v| {
        let v = v as usize;
        v < seen.len() && !std::mem::replace(&mut seen[v], true)
    })
}

/// `f(z) = x.phi(y) + g(y)` under the given split.
pub fn mm_construct(phi: &[u32], g: &TruthTable, split: &CoordinateSplit) -> Result<TruthTable> {
    let h = split.m / 2;
    let n = 1usize << h;
    if phi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "phi has {} entries, expected {n}",
            phi.len()
        )));
    }
    if phi.iter().any(|&v| v as usize >= n) {
        return Err(Error::DimensionMismatch(format!(
            "phi value outside 0..{n}"
        )));
    }
    if g.vars() != h {
        return Err(Error::DimensionMismatch(format!(
            "g has {} variables, expected {h}",
            g.vars()
        )));
    }
    let mut bits = vec![false; 1 << split.m];
    for y in 0..n as u32 {
        let p = phi[y as usize];
        let gy = g.get(y as usize);
        for x in 0..n as u32 {
            bits[split.join(x, y)] = parity(u64::from(x & p)) ^ gy;
        }
    }
    TruthTable::from_bits(split.m, &bits)
}

/// Affine decomposition of every `x`-restriction, without the permutation
/// requirement on `phi`.
fn decompose(t: &TruthTable, split: &CoordinateSplit) -> Option<MmWitness> {
    let h = split.m / 2;
    let n = 1u32 << h;
    let mut phi = Vec::with_capacity(n as usize);
    let mut g = Vec::with_capacity(n as usize);
    for y in 0..n {
        let g0 = t.get(split.join(0, y));
        let p = (0..h)
            .filter(|&k| t.get(split.join(1 << k, y)) ^ g0)
            .fold(0u32, |acc, k| acc | 1 << k);
        if (0..n).any(|x| t.get(split.join(x, y)) != parity(u64::from(x & p)) ^ g0) {
            return None;
        }
        phi.push(p);
        g.push(g0);
    }
    let g = TruthTable::from_bits(h, &g).ok()?;
    Some(MmWitness { phi, g })
}

/// Returns `(phi, g)` iff `t` is Maiorana-McFarland for `split`.
pub fn detect_mm(t: &TruthTable, split: &CoordinateSplit) -> Option<MmWitness> {
    if t.vars() != split.m || t.vars() % 2 != 0 {
        return None;
    }
    decompose(t, split).filter(MmWitness::phi_is_permutation)
}

/// Per-split verdict for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    pub xset: Vec<u32>,
    pub yset: Vec<u32>,
    /// Every `x`-restriction is affine.
    pub affine_restrictions: bool,
    /// Additionally `phi` is a permutation.
    pub maiorana_mcfarland: bool,
}

pub fn split_verdicts(t: &TruthTable) -> Result<Vec<(SplitVerdict, Option<MmWitness>)>> {
    check_search(t)?;
    Ok(CoordinateSplit::all(t.vars())?
        .into_iter()
        .map(|s| {
            let w = decompose(t, &s);
            let mm = w.as_ref().is_some_and(MmWitness::phi_is_permutation);
            let v = SplitVerdict {
                xset: s.xset(),
                yset: s.yset(),
                affine_restrictions: w.is_some(),
                maiorana_mcfarland: mm,
            };
            (v, w.filter(|_| mm))
        })
        .collect())
}

fn check_search(t: &TruthTable) -> Result<()> {
    let m = t.vars();
    if m % 2 != 0 {
        return Err(Error::OddVarCount(m));
    }
    if m > MAX_SPLIT_SEARCH_VARS {
        return Err(Error::ResourceLimit(format!(
            "split search over C({m},{}) splits exceeds m <= {MAX_SPLIT_SEARCH_VARS}",
            m / 2
        )));
    }
    Ok(())
}

/// First split (in increasing `x`-mask order) admitting a witness.
pub fn detect_mm_any_split(t: &TruthTable) -> Result<Option<(CoordinateSplit, MmWitness)>> {
    check_search(t)?;
    Ok(CoordinateSplit::all(t.vars())?
        .into_iter()
        .find_map(|s| detect_mm(t, &s).map(|w| (s, w))))
}

/// `y_1 y_2 + y_3 y_4 + ... + y_{m-1} y_m`.
pub fn standard_mm_form(m: u32) -> Result<TruthTable> {
    if m % 2 != 0 {
        return Err(Error::OddVarCount(m));
    }
    TruthTable::from_fn(m, |i| {
        (0..m / 2).fold(false, |acc, k| acc ^ (i >> (2 * k) & 0b11 == 0b11))
    })
}

/// Substitution turning the standard MM form into `f_{2,3}` plus a linear term.
///
/// Row `i` of `A` holds the coefficients of `y_{i+1}` in terms of `x`:
/// `y_i = x_i + x_{i+1}` for odd `i` and `y_i = x_i + ... + x_m` for even
/// `i` (1-based). With `c = x_2 + x_4 + ... + x_m`,
/// `standard(A x) + c.x = f_{2,3}(x)`.
pub fn affine_to_mm_witness(m: u32) -> Result<(BitMatrix, u64)> {
    if m % 2 != 0 {
        return Err(Error::OddVarCount(m));
    }
    if !(4..=64).contains(&m) {
        return Err(Error::Domain(format!("m={m} not in 4..=64")));
    }
    let n = m as usize;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows: Vec<u64> = (0..n)
        .map(|r| {
            if r % 2 == 0 {
                0b11 << r
            } else {
                full & !((1u64 << r) - 1)
            }
        })
        .collect();
    let a = BitMatrix::from_rows(n, rows)?;
    if !a.is_invertible()? {
        return Err(Error::Singular);
    }
    let c = (0..n)
        .filter(|r| r % 2 == 1)
        .fold(0u64, |acc, r| acc | 1 << r);
    Ok((a, c))
}
