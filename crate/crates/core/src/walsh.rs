//! Walsh-Hadamard spectra, bentness and duality.

use serde::{Deserialize, Serialize};

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};

/// Largest `m` whose spectrum fits in `i32` (`|F(a)| <= 2^m`).
pub const MAX_SPECTRUM_VARS: u32 = 30;

/// `F(a) = sum_x (-1)^(f(x) + a.x)` for every `a`, indexed like a truth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshSpectrum {
    m: u32,
    values: Vec<i32>,
}

/// Duality classification of a boolean function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DualityClass {
    SelfDual,
    AntiSelfDual,
    Neither,
    NotBent,
}

impl DualityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SelfDual => "SelfDual",
            Self::AntiSelfDual => "AntiSelfDual",
            Self::Neither => "Neither",
            Self::NotBent => "NotBent",
        }
    }
}

impl std::fmt::Display for DualityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Unnormalized in-place butterfly over a length-`2^k` vector.
pub fn fwht_in_place(data: &mut [i32]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}

/// Fast Walsh-Hadamard transform of `t` in `O(m 2^m)`.
pub fn wht(t: &TruthTable) -> WalshSpectrum {
    let m = t.vars();
    assert!(m <= MAX_SPECTRUM_VARS, "m={m} overflows i32 spectrum");
    let mut values: Vec<i32> = t.bits().map(|b| if b { -1 } else { 1 }).collect();
    fwht_in_place(&mut values);
    WalshSpectrum { m, values }
}

impl WalshSpectrum {
    /// Wraps raw values; the length must be a power of two.
    pub fn from_values(values: Vec<i32>) -> Result<Self> {
        if values.is_empty() || !values.len().is_power_of_two() || values.len() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "spectrum length {} is not 2^m with m >= 1",
                values.len()
            )));
        }
        let m = values.len().trailing_zeros();
        if m > MAX_SPECTRUM_VARS {
            return Err(Error::VarCountOutOfRange {
                m,
                max: MAX_SPECTRUM_VARS,
            });
        }
        Ok(Self { m, values })
    }

    pub fn vars(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn at(&self, a: usize) -> i32 {
        self.values[a]
    }

    /// `sum_a F(a)^2`, which equals `4^m` for any boolean function.
    pub fn energy(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| u64::from(v.unsigned_abs()).pow(2))
            .sum()
    }

    /// True iff `m` is even and every `|F(a)| = 2^(m/2)`.
    pub fn is_bent(&self) -> bool {
        if self.m % 2 != 0 {
            return false;
        }
        let r = 1u32 << (self.m / 2);
        self.values.iter().all(|v| v.unsigned_abs() == r)
    }

    /// The dual `g` with `F(y) = 2^(m/2) (-1)^g(y)`.
    pub fn dual(&self) -> Result<TruthTable> {
        if !self.is_bent() {
            return Err(Error::NotBentInput);
        }
        TruthTable::from_fn(self.m, |y| self.values[y] < 0)
    }

    /// JSON export: `{"m": .., "values": [..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: WalshSpectrum =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let checked = Self::from_values(raw.values)?;
        if checked.m != raw.m {
            return Err(Error::Parse(format!(
                "m={} does not match {} values",
                raw.m,
                checked.values.len()
            )));
        }
        Ok(checked)
    }
}

pub fn is_bent(t: &TruthTable) -> bool {
    wht(t).is_bent()
}

pub fn dual(t: &TruthTable) -> Result<TruthTable> {
    wht(t).dual()
}

/// Classifies `t` by comparing its full dual against `t` and its complement.
pub fn duality_class(t: &TruthTable) -> DualityClass {
    let Ok(d) = dual(t) else {
        return DualityClass::NotBent;
    };
    if &d == t {
        DualityClass::SelfDual
    } else if d == t.complement() {
        DualityClass::AntiSelfDual
    } else {
        DualityClass::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::parity;
    use proptest::prelude::*;

    fn defining_sum(t: &TruthTable) -> Vec<i32> {
        (0..t.len())
            .map(|a| {
                (0..t.len())
                    .map(|x| {
                        if t.get(x) ^ parity((a & x) as u64) {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    fn mod4(m: u32, set: &[u32]) -> TruthTable {
        TruthTable::from_fn(m, |i| set.contains(&(i.count_ones() % 4))).unwrap()
    }

    #[test]
    fn constant_zero_spectrum() {
        let s = wht(&TruthTable::zero(2).unwrap());
        assert_eq!(s.values(), &[4, 0, 0, 0]);
        assert!(!s.is_bent());
    }

    #[test]
    fn f23_m4_is_two_valued() {
        let t = mod4(4, &[2, 3]);
        let s = wht(&t);
        assert_eq!(s.values(), defining_sum(&t).as_slice());
        assert!(s.values().iter().all(|&v| v == 4 || v == -4));
    }

    #[test]
    fn f01_m6_zero_coefficient() {
        let t = mod4(6, &[0, 1]);
        assert_eq!(t.weight(), 28);
        assert_eq!(wht(&t).at(0), 64 - 2 * 28);
        assert_eq!(wht(&t).at(0), 8);
    }

    #[test]
    fn bentness_examples() {
        assert!(is_bent(&TruthTable::from_fn(2, |i| i == 3).unwrap()));
        assert!(!is_bent(&mod4(4, &[0, 2])));
        assert!(is_bent(&mod4(6, &[1, 2])));
        // odd m is never bent
        assert!(!is_bent(&TruthTable::from_fn(3, |i| i == 3).unwrap()));
    }

    #[test]
    fn duals() {
        let and = TruthTable::from_fn(2, |i| i == 3).unwrap();
        assert_eq!(dual(&and).unwrap(), and);
        assert_eq!(dual(&mod4(6, &[1, 2])).unwrap(), mod4(6, &[1, 2]));
        assert_eq!(dual(&mod4(6, &[2, 3])).unwrap(), mod4(6, &[0, 1]));
        assert_eq!(dual(&mod4(4, &[0, 2])), Err(Error::NotBentInput));
    }

    #[test]
    fn classes() {
        assert_eq!(duality_class(&mod4(4, &[2, 3])), DualityClass::Neither);
        assert_eq!(duality_class(&mod4(10, &[2, 3])), DualityClass::SelfDual);
        assert_eq!(
            duality_class(&mod4(10, &[0, 3])),
            DualityClass::AntiSelfDual
        );
        assert_eq!(duality_class(&mod4(6, &[0, 2])), DualityClass::NotBent);
    }

    #[test]
    fn json_round_trip() {
        let s = wht(&mod4(4, &[1, 2]));
        let text = s.to_json();
        assert!(text.starts_with("{\"m\":4,\"values\":["));
        assert_eq!(WalshSpectrum::from_json(&text).unwrap(), s);
        assert!(WalshSpectrum::from_json("{\"m\":3,\"values\":[1,2]}").is_err());
    }

    fn table(max_m: u32) -> impl Strategy<Value = TruthTable> {
        (1..=max_m).prop_flat_map(|m| {
            proptest::collection::vec(any::<bool>(), 1usize << m)
                .prop_map(move |bits| TruthTable::from_bits(m, &bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn butterfly_matches_defining_sum(t in table(6)) {
            prop_assert_eq!(wht(&t).values().to_vec(), defining_sum(&t));
        }

        #[test]
        fn parseval_and_zero_coefficient(t in table(12)) {
            let s = wht(&t);
            prop_assert_eq!(s.energy(), 1u64 << (2 * t.vars()));
            prop_assert_eq!(i64::from(s.at(0)), t.len() as i64 - 2 * t.weight() as i64);
            prop_assert!(s.values().iter().all(|v| v % 2 == 0));
        }
    }
}
