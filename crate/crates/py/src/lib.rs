//! Python bindings for `bentfam`.

use bentfam::maiorana;
use bentfam::walsh;
use bentfam::{Error, ResidueClassPair};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair(i1: u8, i2: u8) -> PyResult<ResidueClassPair> {
    ResidueClassPair::new(i1, i2).map_err(err)
}

/// Truth table of a Boolean function on `m` variables. Bit `i` is `f(x)`
/// where `x_1` is the least significant bit of `i`.
#[pyclass(frozen, eq, skip_from_py_object, module = "bentfam")]
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable(bentfam::TruthTable);

#[pymethods]
impl TruthTable {
    #[new]
    fn new(m: u32, bits: Vec<bool>) -> PyResult<Self> {
        bentfam::TruthTable::from_bits(m, &bits)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_hex(m: u32, hex: &str) -> PyResult<Self> {
        bentfam::TruthTable::from_hex(m, hex).map(Self).map_err(err)
    }

    /// Parses the `m=<int>\n<hex>\n` file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.vars()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, i: usize) -> PyResult<bool> {
        if i < self.0.len() {
            Ok(self.0.get(i))
        } else {
            Err(pyo3::exceptions::PyIndexError::new_err(i))
        }
    }

    fn __repr__(&self) -> String {
        format!("TruthTable(m={}, hex={:?})", self.0.vars(), self.0.to_hex())
    }

    fn bits(&self) -> Vec<bool> {
        self.0.bits().collect()
    }

    fn weight(&self) -> u64 {
        self.0.weight()
    }

    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    /// ANF as a sorted list of monomials, each a list of 1-based variables.
    fn anf(&self) -> Vec<Vec<u32>> {
        self.0.anf().monomials().collect()
    }

    fn anf_string(&self) -> String {
        self.0.anf().to_string()
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    fn to_file_string(&self) -> String {
        self.0.to_file_string()
    }

    fn walsh(&self) -> Vec<i32> {
        walsh::wht(&self.0).values().to_vec()
    }

    fn is_bent(&self) -> bool {
        walsh::is_bent(&self.0)
    }

    fn dual(&self) -> PyResult<Self> {
        walsh::dual(&self.0).map(Self).map_err(err)
    }

    /// One of `"SelfDual"`, `"AntiSelfDual"`, `"Neither"`, `"NotBent"`.
    fn duality_class(&self) -> &'static str {
        walsh::duality_class(&self.0).as_str()
    }

    /// `f(Ax + b) + c.x + eps` with `A` given as row bitmasks.
    fn apply_affine(&self, rows: Vec<u64>, b: u64, c: u64, eps: bool) -> PyResult<Self> {
        let a = bentfam::BitMatrix::from_rows(self.0.vars() as usize, rows).map_err(err)?;
        self.0.apply_affine(&a, b, c, eps).map(Self).map_err(err)
    }

    /// Full analysis report as JSON with sorted keys.
    fn analyze(&self) -> String {
        bentfam::Report::analyze(&self.0).to_json()
    }
}

#[pyfunction]
fn construct_f(m: u32, i1: u8, i2: u8) -> PyResult<TruthTable> {
    bentfam::construct_f(pair(i1, i2)?, m)
        .map(TruthTable)
        .map_err(err)
}

/// Sum of `C(m, k)` over `k = j (mod 4)`.
#[pyfunction]
fn s_sum(j: u32, m: u32) -> PyResult<u128> {
    bentfam::s_sum(j, m).map_err(err)
}

#[pyfunction]
fn s_closed(j: u32, m: u32) -> PyResult<u128> {
    bentfam::s_closed(j, m).map_err(err)
}

#[pyfunction]
fn predicted_duality(m: u32, i1: u8, i2: u8) -> PyResult<&'static str> {
    bentfam::predicted_duality(pair(i1, i2)?, m)
        .map(|d| d.as_str())
        .map_err(err)
}

/// Map from coset weight to the number of affine functions at that distance.
#[pyfunction]
fn coset_weight_distribution(m: u32, i1: u8, i2: u8) -> PyResult<BTreeMap<u64, u64>> {
    bentfam::coset_weight_distribution(pair(i1, i2)?, m)
        .map(|d| d.counts().clone())
        .map_err(err)
}

/// `(involution, alternating)` for the quadratic form of `f_{i1,i2}`.
#[pyfunction]
fn hou_criterion(m: u32, i1: u8, i2: u8) -> PyResult<(bool, bool)> {
    let v = bentfam::family_form(pair(i1, i2)?, m)
        .map_err(err)?
        .hou_verdict();
    Ok((v.involution, v.alternating))
}

/// First split on which `t` is Maiorana-McFarland, as
/// `(xset, yset, phi, g)`, or `None`.
#[pyfunction]
fn detect_mm_any_split(
    t: &TruthTable,
) -> PyResult<Option<(Vec<u32>, Vec<u32>, Vec<u32>, TruthTable)>> {
    Ok(maiorana::detect_mm_any_split(&t.0)
        .map_err(err)?
        .map(|(s, w)| (s.xset(), s.yset(), w.phi, TruthTable(w.g))))
}

/// `(rows, c)` such that the standard MM form composed with `x -> xA`
/// plus `c.x` equals `f_{2,3}`. Rows are bitmasks with column 0 in bit 0.
#[pyfunction]
fn affine_to_mm_witness(m: u32) -> PyResult<(Vec<u64>, u64)> {
    let (a, c) = maiorana::affine_to_mm_witness(m).map_err(err)?;
    Ok((a.row_words().to_vec(), c))
}

#[pyfunction]
fn standard_mm_form(m: u32) -> PyResult<TruthTable> {
    maiorana::standard_mm_form(m).map(TruthTable).map_err(err)
}

#[pymodule(name = "bentfam")]
fn bentfam_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TruthTable>()?;
    m.add_function(wrap_pyfunction!(construct_f, m)?)?;
    m.add_function(wrap_pyfunction!(s_sum, m)?)?;
    m.add_function(wrap_pyfunction!(s_closed, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_duality, m)?)?;
    m.add_function(wrap_pyfunction!(coset_weight_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(hou_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(detect_mm_any_split, m)?)?;
    m.add_function(wrap_pyfunction!(affine_to_mm_witness, m)?)?;
    m.add_function(wrap_pyfunction!(standard_mm_form, m)?)?;
    Ok(())
}
