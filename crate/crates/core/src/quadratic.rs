//! Quadratic forms `f(x) = x Q x^T + L.x + eps` over GF(2) and the matrix
//! criterion for (anti-)self-duality.
//!
//! A quadratic function is self-dual or anti-self-dual iff its symplectic
//! matrix `B = Q + Q^T` satisfies `B^2 = I` and `B Q B + Q^T` is
//! alternating. This module decides that purely with matrix algebra; the
//! spectral classification lives in [`crate::walsh`].

use serde::Serialize;

use crate::boolfn::{Anf, TruthTable};
use crate::error::{Error, Result};
use crate::family::ResidueClassPair;
use crate::gf2::{parity, BitMatrix};
use crate::walsh::{self, DualityClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    m: u32,
    q: BitMatrix,
    l: u64,
    eps: bool,
}

impl QuadraticForm {
    /// Normalizes an arbitrary coefficient matrix: entries below the diagonal
    /// are folded onto their mirror above it, and diagonal entries move into
    /// the linear part since `x_i^2 = x_i`.
    pub fn new(q: &BitMatrix, l: u64, eps: bool) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::NotSquare {
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        let m = q.rows();
        let vmask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        if l & !vmask != 0 {
            return Err(Error::DimensionMismatch(format!(
                "linear part longer than m={m}"
            )));
        }
        let mut rows = vec![0u64; m];
        let mut l = l;
        for i in 0..m {
            for j in 0..m {
                if !q.get(i, j) {
                    continue;
                }
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => rows[i] ^= 1 << j,
                    std::cmp::Ordering::Greater => rows[j] ^= 1 << i,
                    std::cmp::Ordering::Equal => l ^= 1 << i,
                }
            }
        }
        Ok(Self {
            m: m as u32,
            q: BitMatrix::from_rows(m, rows)?,
            l,
            eps,
        })
    }

    /// Reads the coefficients off an ANF of degree at most 2.
    pub fn from_anf(a: &Anf) -> Result<Self> {
        if let Some(d) = a.degree().filter(|&d| d > 2) {
            return Err(Error::NotQuadratic(d));
        }
        let m = a.vars() as usize;
        let mut rows = vec![0u64; m];
        let mut l = 0u64;
        let mut eps = false;
        for &mask in a.masks() {
            match mask.count_ones() {
                0 => eps = true,
                1 => l |= u64::from(mask),
                _ => {
                    let i = mask.trailing_zeros() as usize;
                    let j = 31 - mask.leading_zeros() as usize;
                    rows[i] |= 1 << j;
                }
            }
        }
        Ok(Self {
            m: m as u32,
            q: BitMatrix::from_rows(m, rows)?,
            l,
            eps,
        })
    }

    pub fn from_truth_table(t: &TruthTable) -> Result<Self> {
        Self::from_anf(&t.anf())
    }

    pub fn vars(&self) -> u32 {
        self.m
    }

    /// Strictly upper-triangular quadratic part.
    pub fn q(&self) -> &BitMatrix {
        &self.q
    }

    /// Linear part, bit `i` for `x_{i+1}`.
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn eps(&self) -> bool {
        self.eps
    }

    /// `Q + Q^T`.
    pub fn symplectic(&self) -> BitMatrix {
        self.q
            .add(&self.q.transpose())
            .expect("square matrix plus its transpose")
    }

    /// Both conditions of the matrix criterion.
    pub fn hou_verdict(&self) -> HouVerdict {
        let b = self.symplectic();
        let involution = b.is_involution().expect("square");
        let bqb = b
            .matmul(&self.q)
            .and_then(|x| x.matmul(&b))
            .and_then(|x| x.add(&self.q.transpose()))
            .expect("square matrices of equal size");
        HouVerdict {
            involution,
            alternating: bqb.is_alternating().expect("square"),
        }
    }

    pub fn hou_criterion(&self) -> bool {
        self.hou_verdict().holds()
    }

    pub fn evaluate(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.m, |x| {
            let x = x as u64;
            let mut v = self.eps ^ parity(self.l & x);
            let mut bits = x;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                v ^= parity(self.q.row(i) & x);
                bits &= bits - 1;
            }
            v
        })
    }

    /// Back to algebraic normal form.
    pub fn to_anf(&self) -> Result<Anf> {
        let mut masks = Vec::new();
        if self.eps {
            masks.push(0);
        }
        for i in 0..self.m as usize {
            if self.l >> i & 1 == 1 {
                masks.push(1 << i);
            }
            let mut bits = self.q.row(i);
            while bits != 0 {
                masks.push((1 << i) | (1 << bits.trailing_zeros()));
                bits &= bits - 1;
            }
        }
        Anf::from_masks(self.m, masks)
    }
}

/// Outcome of the two matrix conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HouVerdict {
    /// `(Q + Q^T)^2 = I`.
    pub involution: bool,
    /// `(Q + Q^T) Q (Q + Q^T) + Q^T` is alternating.
    pub alternating: bool,
}

impl HouVerdict {
    pub fn holds(self) -> bool {
        self.involution && self.alternating
    }
}

/// Closed-form `(Q, L, eps)` of `f_{i1,i2}`: `Q` is all ones strictly above
/// the diagonal, `L` is all ones for (1,2) and (0,3), and `eps = 1` for
/// (0,1) and (0,3).
pub fn family_form(p: ResidueClassPair, m: u32) -> Result<QuadraticForm> {
    if !p.is_odd() {
        return Err(Error::NotQuadraticFamily(p.lo(), p.hi()));
    }
    if m % 2 != 0 {
        return Err(Error::OddVarCount(m));
    }
    if !(4..=64).contains(&m) {
        return Err(Error::Domain(format!("m={m} not in 4..=64")));
    }
    let n = m as usize;
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let linear = p.contains(1) && p.contains(2) || p.contains(0) && p.contains(3);
    Ok(QuadraticForm {
        m,
        q: BitMatrix::upper_ones(n)?,
        l: if linear { full } else { 0 },
        eps: p.contains(0),
    })
}

pub fn hou_criterion(q: &QuadraticForm) -> bool {
    q.hou_criterion()
}

/// Duality class using the first-coordinate shortcut when the matrix
/// criterion holds: the function is then known to be self-dual or
/// anti-self-dual, and comparing `f(0)` with the dual at 0 decides which.
/// Falls back to the full comparison otherwise.
pub fn duality_class_via_criterion(t: &TruthTable) -> DualityClass {
    let spectrum = walsh::wht(t);
    if !spectrum.is_bent() {
        return DualityClass::NotBent;
    }
    match QuadraticForm::from_truth_table(t) {
        Ok(form) if form.hou_criterion() => {
            let dual_at_zero = spectrum.at(0) < 0;
            if dual_at_zero == t.get(0) {
                DualityClass::SelfDual
            } else {
                DualityClass::AntiSelfDual
            }
        }
        _ => walsh::duality_class(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::construct_f;
    use proptest::prelude::*;

    fn pair(a: u8, b: u8) -> ResidueClassPair {
        ResidueClassPair::new(a, b).unwrap()
    }

    fn j_plus_i(n: usize) -> BitMatrix {
        BitMatrix::ones(n, n)
            .unwrap()
            .add(&BitMatrix::identity(n).unwrap())
            .unwrap()
    }

    /// x1x2 + x3x4 on four variables.
    fn two_pairs() -> QuadraticForm {
        let anf = Anf::from_monomials(4, [vec![1, 2], vec![3, 4]]).unwrap();
        QuadraticForm::from_anf(&anf).unwrap()
    }

    #[test]
    fn from_anf_of_family() {
        let f23 = QuadraticForm::from_truth_table(&construct_f(pair(2, 3), 4).unwrap()).unwrap();
        assert_eq!(f23.q(), &BitMatrix::upper_ones(4).unwrap());
        assert_eq!((f23.l(), f23.eps()), (0, false));

        let f03 = QuadraticForm::from_truth_table(&construct_f(pair(0, 3), 4).unwrap()).unwrap();
        assert_eq!(f03.q(), &BitMatrix::upper_ones(4).unwrap());
        assert_eq!((f03.l(), f03.eps()), (0b1111, true));

        let cubic = Anf::from_monomials(4, [vec![1, 2, 3]]).unwrap();
        assert_eq!(QuadraticForm::from_anf(&cubic), Err(Error::NotQuadratic(3)));
    }

    #[test]
    fn family_forms() {
        let f = family_form(pair(1, 2), 6).unwrap();
        assert_eq!((f.l(), f.eps()), (0b111111, false));
        let f = family_form(pair(0, 1), 6).unwrap();
        assert_eq!((f.l(), f.eps()), (0, true));
        let f = family_form(pair(2, 3), 10).unwrap();
        assert_eq!(f.q(), &BitMatrix::upper_ones(10).unwrap());
        assert_eq!((f.l(), f.eps()), (0, false));
        assert_eq!(
            family_form(pair(0, 2), 6),
            Err(Error::NotQuadraticFamily(0, 2))
        );
        for m in [4, 6, 8] {
            for p in ResidueClassPair::odd() {
                let form = family_form(p, m).unwrap();
                let f = construct_f(p, m).unwrap();
                assert_eq!(form.evaluate().unwrap(), f);
                assert_eq!(QuadraticForm::from_truth_table(&f).unwrap(), form);
            }
        }
    }

    #[test]
    fn symplectic_matrices() {
        assert_eq!(
            family_form(pair(2, 3), 6).unwrap().symplectic(),
            j_plus_i(6)
        );
        let swap: BitMatrix = "0100\n1000\n0001\n0010".parse().unwrap();
        assert_eq!(two_pairs().symplectic(), swap);
        let zero = QuadraticForm::new(&BitMatrix::zeros(3, 3).unwrap(), 0, false).unwrap();
        assert!(zero.symplectic().is_zero());
    }

    #[test]
    fn criterion_examples() {
        assert!(family_form(pair(2, 3), 6).unwrap().hou_criterion());
        let v = family_form(pair(2, 3), 8).unwrap().hou_verdict();
        assert!(v.involution && !v.alternating);
        assert!(two_pairs().hou_criterion());
        assert_eq!(
            walsh::duality_class(&two_pairs().evaluate().unwrap()),
            DualityClass::SelfDual
        );
    }

    #[test]
    fn evaluate_examples() {
        let zero = QuadraticForm::new(&BitMatrix::zeros(3, 3).unwrap(), 0, false).unwrap();
        assert_eq!(zero.evaluate().unwrap(), TruthTable::zero(3).unwrap());
        assert_eq!(
            family_form(pair(0, 3), 6).unwrap().evaluate().unwrap(),
            construct_f(pair(0, 3), 6).unwrap()
        );
    }

    #[test]
    fn normalization_folds_lower_and_diagonal() {
        // x1x2 written as a lower entry, plus x3*x3 = x3
        let raw: BitMatrix = "000\n100\n001".parse().unwrap();
        let f = QuadraticForm::new(&raw, 0b001, false).unwrap();
        assert_eq!(f.q().to_string(), "010\n000\n000");
        assert_eq!(f.l(), 0b101);
        // symmetric input cancels to zero
        let sym: BitMatrix = "01\n10".parse().unwrap();
        assert!(QuadraticForm::new(&sym, 0, false).unwrap().q().is_zero());
    }

    #[test]
    fn shortcut_agrees_with_full_comparison() {
        for m in (4..=10).step_by(2) {
            for p in ResidueClassPair::all() {
                let f = construct_f(p, m).unwrap();
                assert_eq!(duality_class_via_criterion(&f), walsh::duality_class(&f));
            }
        }
    }

    fn quadratic_anf(max_m: u32) -> impl Strategy<Value = Anf> {
        (2..=max_m).prop_flat_map(|m| {
            let n = 1u32 << m;
            proptest::collection::vec(0..n, 0..24).prop_map(move |masks| {
                Anf::from_masks(m, masks.into_iter().filter(|u| u.count_ones() <= 2)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn evaluate_inverts_from_anf(a in quadratic_anf(10)) {
            let t = a.to_truth_table().unwrap();
            let form = QuadraticForm::from_truth_table(&t).unwrap();
            prop_assert_eq!(form.evaluate().unwrap(), t);
            prop_assert_eq!(form.to_anf().unwrap(), a);
        }
    }
}
