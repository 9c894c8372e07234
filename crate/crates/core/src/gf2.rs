//! Dense matrices over GF(2).
//!
//! Rows are packed into a single `u64` word each, so the column count is
//! limited to 64. Column `j` of a row is bit `j` of its word, which matches
//! the truth-table convention where variable `x_{j+1}` is bit `j` of an
//! input index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of columns a [`BitMatrix`] can hold.
pub const MAX_COLS: usize = 64;

/// Parity of the set bits of `w`.
#[inline]
pub fn parity(w: u64) -> bool {
    w.count_ones() & 1 == 1
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[inline]
fn col_mask(cols: usize) -> u64 {
    if cols == 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || cols > MAX_COLS {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix unsupported (need rows>0, 0<cols<={MAX_COLS})"
            )));
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for (i, row) in m.data.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(m)
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        let mask = col_mask(cols);
        m.data.iter_mut().for_each(|r| *r = mask);
        Ok(m)
    }

    /// Square matrix with ones strictly above the diagonal.
    pub fn upper_ones(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        let mask = col_mask(n);
        for (i, row) in m.data.iter_mut().enumerate() {
            *row = mask & !(col_mask(i + 1));
        }
        Ok(m)
    }

    /// Builds a matrix from packed rows. Bits at or above `cols` must be clear.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols)?;
        let mask = col_mask(cols);
        for (i, r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has bits beyond column {cols}"
                )));
            }
        }
        m.data = rows;
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Packed row `i`.
    pub fn row(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        (self.data[i] >> j) & 1 == 1
    }

    /// Returns a copy with entry `(i, j)` set to `v`.
    pub fn with(&self, i: usize, j: usize, v: bool) -> Self {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let mut out = self.clone();
        if v {
            out.data[i] |= 1 << j;
        } else {
            out.data[i] &= !(1 << j);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0u64; self.cols];
        for (i, &r) in self.data.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                data[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Matrix product over GF(2): each output row is the XOR of the rows of
    /// `other` selected by the set bits of the corresponding row of `self`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    acc ^= other.data[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `A x` for a packed column vector `x` (bit `j` is coordinate `j`).
    pub fn mul_vec(&self, x: u64) -> u64 {
        self.data
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (u64::from(parity(r & x)) << i))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// True iff `X^2 = I`.
    pub fn is_involution(&self) -> Result<bool> {
        self.require_square()?;
        let sq = self.matmul(self)?;
        Ok(sq.data.iter().enumerate().all(|(i, &r)| r == 1 << i))
    }

    /// True iff the matrix is symmetric with zero diagonal, which over GF(2)
    /// is the same as being of the form `A + A^T`.
    pub fn is_alternating(&self) -> Result<bool> {
        self.require_square()?;
        if self
            .data
            .iter()
            .enumerate()
            .any(|(i, &r)| (r >> i) & 1 == 1)
        {
            return Ok(false);
        }
        Ok(*self == self.transpose())
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> Result<bool> {
        self.require_square()?;
        Ok(self.rank() == self.rows)
    }

    /// Inverse by Gauss-Jordan elimination on `[X | I]`.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n).find(|&i| a[i] & bit != 0).ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            for i in 0..n {
                if i != col && a[i] & bit != 0 {
                    a[i] ^= a[col];
                    inv[i] ^= inv[col];
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: n,
            data: inv,
        })
    }
}

impl fmt::Display for BitMatrix {
    /// One row per line of `0`/`1` characters, column 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &r) in self.data.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                f.write_str(if (r >> j) & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let cols = lines
            .first()
            .map(|l| l.len())
            .ok_or_else(|| Error::Parse("empty matrix".into()))?;
        let mut rows = Vec::with_capacity(lines.len());
        for (i, line) in lines.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} columns, expected {cols}",
                    line.len()
                )));
            }
            let mut w = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => w |= 1 << j,
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
            rows.push(w);
        }
        Self::from_rows(cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(a.rows(), b.cols()).unwrap();
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = false;
                for k in 0..a.cols() {
                    s ^= a.get(i, k) & b.get(k, j);
                }
                out = out.with(i, j, s);
            }
        }
        out
    }

    fn j_plus_i(n: usize) -> BitMatrix {
        BitMatrix::ones(n, n)
            .unwrap()
            .add(&BitMatrix::identity(n).unwrap())
            .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let x: BitMatrix = "1101\n0110\n1000\n0011".parse().unwrap();
        let i = BitMatrix::identity(4).unwrap();
        assert_eq!(i.matmul(&x).unwrap(), x);
        assert_eq!(x.matmul(&i).unwrap(), x);
    }

    #[test]
    fn j_plus_i_squares_to_identity_for_even_n() {
        let b = j_plus_i(6);
        assert_eq!(b.matmul(&b).unwrap(), BitMatrix::identity(6).unwrap());
        assert!(b.is_involution().unwrap());
        assert!(b.is_alternating().unwrap());
    }

    #[test]
    fn j_squared_odd() {
        let j = BitMatrix::ones(5, 5).unwrap();
        let sq = j.matmul(&j).unwrap();
        assert_eq!(sq, naive_mul(&j, &j));
        assert_eq!(sq, j);
        assert!(!j_plus_i(5).is_involution().unwrap());
    }

    #[test]
    fn structural_predicates() {
        assert!(BitMatrix::identity(5).unwrap().is_involution().unwrap());
        assert!(BitMatrix::zeros(5, 5).unwrap().is_alternating().unwrap());
        assert!(!BitMatrix::identity(5).unwrap().is_alternating().unwrap());
        assert!(BitMatrix::identity(4).unwrap().is_invertible().unwrap());
        assert!(!BitMatrix::ones(4, 4).unwrap().is_invertible().unwrap());
        assert_eq!(BitMatrix::ones(4, 4).unwrap().rank(), 1);
    }

    #[test]
    fn non_square_rejected() {
        let x = BitMatrix::zeros(2, 3).unwrap();
        assert!(matches!(x.is_involution(), Err(Error::NotSquare { .. })));
        assert!(matches!(x.is_alternating(), Err(Error::NotSquare { .. })));
        assert!(matches!(x.is_invertible(), Err(Error::NotSquare { .. })));
        assert!(matches!(x.matmul(&x), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn text_format_round_trip() {
        let text = "1100\n0111\n0011\n0001";
        let x: BitMatrix = text.parse().unwrap();
        assert!(x.get(0, 0) && x.get(0, 1) && !x.get(0, 2));
        assert_eq!(x.to_string(), text);
        assert!("10\n1".parse::<BitMatrix>().is_err());
        assert!("12".parse::<BitMatrix>().is_err());
    }

    #[test]
    fn inverse_of_unit_upper_triangular() {
        let x: BitMatrix = "1100\n0111\n0011\n0001".parse().unwrap();
        let inv = x.inverse().unwrap();
        assert_eq!(x.matmul(&inv).unwrap(), BitMatrix::identity(4).unwrap());
        assert_eq!(
            BitMatrix::ones(3, 3).unwrap().inverse(),
            Err(Error::Singular)
        );
    }

    fn square(n: usize) -> impl Strategy<Value = BitMatrix> {
        let mask = col_mask(n);
        proptest::collection::vec(any::<u64>(), n).prop_map(move |rows| {
            BitMatrix::from_rows(n, rows.into_iter().map(|r| r & mask).collect()).unwrap()
        })
    }

    fn sized_triple() -> impl Strategy<Value = (BitMatrix, BitMatrix, BitMatrix)> {
        (1usize..=16).prop_flat_map(|n| (square(n), square(n), square(n)))
    }

    proptest! {
        #[test]
        fn matmul_matches_naive((a, b, _c) in sized_triple()) {
            prop_assert_eq!(a.matmul(&b).unwrap(), naive_mul(&a, &b));
        }

        #[test]
        fn matmul_associative((a, b, c) in sized_triple()) {
            let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
            let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn transpose_laws((a, b, _c) in sized_triple()) {
            prop_assert_eq!(a.transpose().transpose(), a.clone());
            prop_assert_eq!(
                a.matmul(&b).unwrap().transpose(),
                b.transpose().matmul(&a.transpose()).unwrap()
            );
        }

        #[test]
        fn a_plus_a_transpose_is_alternating((a, _b, _c) in sized_triple()) {
            prop_assert!(a.add(&a.transpose()).unwrap().is_alternating().unwrap());
        }

        #[test]
        fn mul_vec_matches_matmul((a, b, _c) in sized_triple(), x in any::<u64>()) {
            let x = x & col_mask(a.cols());
            prop_assert_eq!(a.mul_vec(b.mul_vec(x)), a.matmul(&b).unwrap().mul_vec(x));
        }
    }
}
