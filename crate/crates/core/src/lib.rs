//! Construction and analysis of the quadratic bent functions `f_{i1,i2}`,
//! defined by `f(x) = 1` iff `wt(x) mod 4` is `i1` or `i2`.
//!
//! The crate provides bit-packed truth tables with ANF conversion, a fast
//! Walsh-Hadamard transform with bentness and duality tests, dense GF(2)
//! matrices, quadratic forms with the matrix criterion for
//! (anti-)self-duality, and Maiorana-McFarland detection together with an
//! explicit affine equivalence to the standard MM form.

pub mod boolfn;
pub mod cli;
pub mod error;
pub mod family;
pub mod gf2;
pub mod maiorana;
pub mod quadratic;
pub mod report;
pub mod selftest;
pub mod walsh;

pub use boolfn::{Anf, TruthTable, DEFAULT_MAX_VARS};
pub use error::{Error, Result};
pub use family::{
    construct_f, coset_weight_distribution, predicted_duality, s_closed, s_sum,
    CosetWeightDistribution, ResidueClassPair,
};
pub use gf2::BitMatrix;
pub use maiorana::{
    affine_to_mm_witness, detect_mm, detect_mm_any_split, mm_construct, CoordinateSplit, MmWitness,
};
pub use quadratic::{family_form, hou_criterion, HouVerdict, QuadraticForm};
pub use report::Report;
pub use walsh::{duality_class, wht, DualityClass, WalshSpectrum};
