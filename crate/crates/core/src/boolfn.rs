//! Truth tables, algebraic normal form and affine changes of variables.
//!
//! Input index `i` encodes the point `x` with `x_1` as its least significant
//! bit, so variable `x_j` is bit `j-1` of `i`. With this ordering the columns
//! of the `m x 2^m` matrix listing every binary vector of length `m` appear in
//! truth-table order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{parity, BitMatrix};

/// Default guardrail on the number of variables.
pub const DEFAULT_MAX_VARS: u32 = 24;

const WORD_BITS: usize = 64;

/// Masks selecting indices whose bit `k` is set, for `k < 6`.
const IN_WORD_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Bit-packed value vector of a boolean function on `F_2^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    m: u32,
    words: Vec<u64>,
}

fn word_count(m: u32) -> usize {
    (1usize << m).div_ceil(WORD_BITS)
}

fn tail_mask(m: u32) -> u64 {
    if m >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << m)) - 1
    }
}

fn check_vars(m: u32, max: u32) -> Result<()> {
    if m == 0 || m > max {
        Err(Error::VarCountOutOfRange { m, max })
    } else {
        Ok(())
    }
}

impl TruthTable {
    /// Tabulates `pred` over every input index.
    pub fn from_fn(m: u32, pred: impl FnMut(usize) -> bool) -> Result<Self> {
        Self::from_fn_with_limit(m, DEFAULT_MAX_VARS, pred)
    }

    /// Like [`TruthTable::from_fn`] with an explicit variable-count limit.
    pub fn from_fn_with_limit(
        m: u32,
        max_vars: u32,
        mut pred: impl FnMut(usize) -> bool,
    ) -> Result<Self> {
        check_vars(m, max_vars.min(usize::BITS - 2))?;
        let mut words = vec![0u64; word_count(m)];
        for i in 0..(1usize << m) {
            if pred(i) {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Ok(Self { m, words })
    }

    pub fn zero(m: u32) -> Result<Self> {
        Self::from_fn(m, |_| false)
    }

    pub fn one(m: u32) -> Result<Self> {
        Self::from_fn(m, |_| true)
    }

    /// Builds a table from packed words, rejecting stray bits past `2^m`.
    pub fn from_words(m: u32, words: Vec<u64>) -> Result<Self> {
        check_vars(m, DEFAULT_MAX_VARS)?;
        if words.len() != word_count(m) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} words for m={m}, got {}",
                word_count(m),
                words.len()
            )));
        }
        if words[0] & !tail_mask(m) != 0 {
            return Err(Error::DimensionMismatch(format!(
                "bits set beyond 2^{m} entries"
            )));
        }
        Ok(Self { m, words })
    }

    pub fn from_bits(m: u32, bits: &[bool]) -> Result<Self> {
        check_vars(m, DEFAULT_MAX_VARS)?;
        if bits.len() != 1 << m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} bits, got {}",
                1usize << m,
                bits.len()
            )));
        }
        Self::from_fn(m, |i| bits[i])
    }

    pub fn vars(&self) -> u32 {
        self.m
    }

    /// Number of entries, `2^m`.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len(), "input index {i} out of range");
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.m);
        Self { m: self.m, words }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "m={} vs m={}",
                self.m, other.m
            )));
        }
        Ok(Self {
            m: self.m,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Algebraic normal form via the binary Moebius transform.
    pub fn anf(&self) -> Anf {
        let coeffs = moebius(self.m, &self.words);
        let mut monomials = Vec::new();
        for (wi, &w) in coeffs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                monomials.push((wi * WORD_BITS + b) as u32);
                bits &= bits - 1;
            }
        }
        Anf {
            m: self.m,
            monomials,
        }
    }

    /// Algebraic degree; `None` for the zero function.
    pub fn degree(&self) -> Option<u32> {
        self.anf().degree()
    }

    /// `g(x) = t(Ax + b) + c.x + eps`, with `A` invertible.
    pub fn apply_affine(&self, a: &BitMatrix, b: u64, c: u64, eps: bool) -> Result<Self> {
        let m = self.m as usize;
        if a.rows() != m || a.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, function has {m} variables",
                a.rows(),
                a.cols()
            )));
        }
        let vmask = (1u64 << m) - 1;
        if b & !vmask != 0 || c & !vmask != 0 {
            return Err(Error::DimensionMismatch(
                "shift or linear term longer than m".into(),
            ));
        }
        if !a.is_invertible()? {
            return Err(Error::Singular);
        }
        Self::from_fn(self.m, |x| {
            let y = a.mul_vec(x as u64) ^ b;
            self.get(y as usize) ^ parity(c & x as u64) ^ eps
        })
    }

    /// Hex serialization: bit `i` is bit `i mod 8` of byte `i / 8`, each
    /// byte written as two lowercase hex digits.
    pub fn to_hex(&self) -> String {
        let nbytes = (self.len() / 8).max(1);
        let mut s = String::with_capacity(nbytes * 2);
        for k in 0..nbytes {
            let byte = (self.words[k / 8] >> ((k % 8) * 8)) & 0xff;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(m: u32, hex: &str) -> Result<Self> {
        check_vars(m, DEFAULT_MAX_VARS)?;
        let digits: Vec<u8> = hex.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let nbytes = ((1usize << m) / 8).max(1);
        if digits.len() != nbytes * 2 {
            return Err(Error::Parse(format!(
                "expected {} hex digits for m={m}, got {}",
                nbytes * 2,
                digits.len()
            )));
        }
        let mut words = vec![0u64; word_count(m)];
        for (k, pair) in digits.chunks(2).enumerate() {
            let text = std::str::from_utf8(pair).map_err(|e| Error::Parse(e.to_string()))?;
            let byte =
                u8::from_str_radix(text, 16).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
            words[k / 8] |= u64::from(byte) << ((k % 8) * 8);
        }
        Self::from_words(m, words).map_err(|_| Error::Parse(format!("padding bits set for m={m}")))
    }

    /// Full file contents: `m=<int>` header line followed by the hex body.
    pub fn to_file_string(&self) -> String {
        format!("m={}\n{}\n", self.m, self.to_hex())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Parses the file format written by [`TruthTable::to_file_string`].
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .trim();
        let m: u32 = header
            .strip_prefix("m=")
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad m: {e}")))?;
        let body: String = lines.collect();
        Self::from_hex(m, &body)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(m={}, {})", self.m, self.to_hex())
    }
}

/// In-place binary Moebius (zeta) transform over packed words.
fn moebius(m: u32, words: &[u64]) -> Vec<u64> {
    let mut w = words.to_vec();
    for (k, &mask) in IN_WORD_MASKS.iter().enumerate().take(m.min(6) as usize) {
        let shift = 1u32 << k;
        for x in w.iter_mut() {
            *x ^= (*x << shift) & mask;
        }
    }
    w[0] &= tail_mask(m);
    for k in 0..m.saturating_sub(6) {
        let step = 1usize << k;
        for i in 0..w.len() {
            if i & step != 0 {
                w[i] ^= w[i - step];
            }
        }
    }
    w
}

/// Algebraic normal form: XOR of monomials over `m` variables.
///
/// A monomial is stored as a bit mask where bit `j-1` stands for `x_j`; the
/// empty mask is the constant term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    m: u32,
    monomials: Vec<u32>,
}

impl Anf {
    /// Builds an ANF from monomial masks. Repeated monomials cancel in pairs.
    pub fn from_masks(m: u32, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_vars(m, DEFAULT_MAX_VARS)?;
        let mut set = BTreeSet::new();
        for mask in masks {
            if u64::from(mask) >> m != 0 {
                return Err(Error::Domain(format!(
                    "monomial mask {mask:#b} uses variables beyond x_{m}"
                )));
            }
            if !set.insert(mask) {
                set.remove(&mask);
            }
        }
        Ok(Self {
            m,
            monomials: set.into_iter().collect(),
        })
    }

    /// Builds an ANF from monomials given as lists of 1-based variable indices.
    pub fn from_monomials<I, M>(m: u32, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: IntoIterator<Item = u32>,
    {
        let mut masks = Vec::new();
        for mono in monomials {
            let mut mask = 0u32;
            for v in mono {
                if v == 0 || v > m {
                    return Err(Error::Domain(format!("variable x_{v} outside 1..={m}")));
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        Self::from_masks(m, masks)
    }

    pub fn vars(&self) -> u32 {
        self.m
    }

    /// Monomial masks in increasing numeric order.
    pub fn masks(&self) -> &[u32] {
        &self.monomials
    }

    /// Monomials as sorted lists of 1-based variable indices.
    pub fn monomials(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.monomials.iter().map(|&mask| {
            (0..32)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect()
        })
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.monomials.binary_search(&mask).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Largest monomial size, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.count_ones()).max()
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let mut coeffs = vec![0u64; word_count(self.m)];
        for &mask in &self.monomials {
            let i = mask as usize;
            coeffs[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        TruthTable::from_words(self.m, moebius(self.m, &coeffs))
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        // Order by degree, then lexicographically by variable list.
        let mut monos: Vec<Vec<u32>> = self.monomials().collect();
        monos.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let terms: Vec<String> = monos
            .iter()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|v| format!("x{v}")).collect()
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(m={}, {})", self.m, self)
    }
}
