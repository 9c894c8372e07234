//! Quick consistency suite over small `m`, used by `bentfam selftest`.
//!
//! Every check compares two independent routes to the same fact (closed
//! form against enumeration, matrix criterion against spectrum, butterfly
//! against the defining sum) and reports a single pass/fail line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfn::TruthTable;
use crate::family::{
    construct_f, coset_distribution_direct, coset_weight_distribution, predicted_duality,
    predicted_weight, s_closed, s_sum, ResidueClassPair,
};
use crate::gf2::parity;
use crate::maiorana::{affine_to_mm_witness, detect_mm, standard_mm_form, CoordinateSplit};
use crate::quadratic::family_form;
use crate::walsh::{self, wht, DualityClass};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: Vec<String>) -> CheckResult {
    CheckResult {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "ok".into()
        } else {
            failures.join("; ")
        },
    }
}

fn even_range(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|m| m % 2 == 0)
}

/// Runs every check for even `m` in `4..=max_m` with the given seed.
pub fn run(max_m: u32, seed: u64) -> Vec<CheckResult> {
    let max_m = max_m.clamp(4, 14);
    let mut out = Vec::new();

    let mut fails = Vec::new();
    for m in 2..=32 {
        for j in 0..4 {
            let (a, b) = (s_closed(j, m), s_sum(j, m));
            if a != b {
                fails.push(format!("S({j})_{m}: closed {a:?} != sum {b:?}"));
            }
        }
    }
    out.push(check("closed-form binomial sums", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        for p in ResidueClassPair::all() {
            let f = construct_f(p, m).expect("valid family member");
            if walsh::is_bent(&f) != p.is_odd() {
                fails.push(format!("f_{{{p}}} m={m}"));
            }
        }
    }
    out.push(check("bent iff odd difference", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        let full = (1u32 << m) - 1;
        let pairs: Vec<u32> = (0..=full).filter(|u| u.count_ones() == 2).collect();
        let lin_quad: Vec<u32> = (0..=full)
            .filter(|u| matches!(u.count_ones(), 1 | 2))
            .collect();
        let f23 = construct_f(ResidueClassPair::new(2, 3).unwrap(), m).unwrap();
        let f12 = construct_f(ResidueClassPair::new(1, 2).unwrap(), m).unwrap();
        let f01 = construct_f(ResidueClassPair::new(0, 1).unwrap(), m).unwrap();
        let f03 = construct_f(ResidueClassPair::new(0, 3).unwrap(), m).unwrap();
        if f23.anf().masks() != pairs.as_slice() {
            fails.push(format!("anf f_{{2,3}} m={m}"));
        }
        if f12.anf().masks() != lin_quad.as_slice() {
            fails.push(format!("anf f_{{1,2}} m={m}"));
        }
        if f01 != f23.complement() || f03 != f12.complement() {
            fails.push(format!("complements m={m}"));
        }
    }
    out.push(check("quadratic ANF identities", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        for p in ResidueClassPair::all() {
            let w = u128::from(construct_f(p, m).unwrap().weight());
            if Ok(w) != predicted_weight(p, m) {
                fails.push(format!("wt f_{{{p}}} m={m}"));
            }
        }
    }
    out.push(check("weight table", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        for p in ResidueClassPair::odd() {
            let f = construct_f(p, m).unwrap();
            let got = walsh::duality_class(&f);
            let want = predicted_duality(p, m).unwrap();
            if got != want {
                fails.push(format!("f_{{{p}}} m={m}: {got} != {want}"));
            }
            let hou = family_form(p, m).unwrap().hou_criterion();
            if hou != (m % 4 != 0) || hou != (got != DualityClass::Neither) {
                fails.push(format!("criterion f_{{{p}}} m={m}"));
            }
            let d = walsh::dual(&f).unwrap();
            if walsh::dual(&d).ok().as_ref() != Some(&f) {
                fails.push(format!("dual involution f_{{{p}}} m={m}"));
            }
        }
    }
    out.push(check("duality classification and matrix criterion", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        let lo = (1u64 << (m - 1)) - (1u64 << (m / 2 - 1));
        let hi = (1u64 << (m - 1)) + (1u64 << (m / 2 - 1));
        for p in ResidueClassPair::all() {
            let d = coset_weight_distribution(p, m).unwrap();
            if (d.support() == vec![lo, hi]) != p.is_odd() {
                fails.push(format!("support f_{{{p}}} m={m}"));
            }
            if m <= 8 && d != coset_distribution_direct(&construct_f(p, m).unwrap()) {
                fails.push(format!("direct enumeration f_{{{p}}} m={m}"));
            }
        }
    }
    out.push(check("coset weight distributions", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m.min(6)) {
        let splits = CoordinateSplit::all(m).unwrap();
        for p in ResidueClassPair::odd() {
            let f = construct_f(p, m).unwrap();
            if let Some(s) = splits.iter().find(|s| detect_mm(&f, s).is_some()) {
                fails.push(format!("f_{{{p}}} m={m} is MM on {s}"));
            }
        }
    }
    out.push(check("not Maiorana-McFarland on any split", fails));

    let mut fails = Vec::new();
    for m in even_range(4, max_m) {
        match affine_to_mm_witness(m) {
            Ok((a, c)) => {
                let g = standard_mm_form(m)
                    .and_then(|s| s.apply_affine(&a, 0, c, false))
                    .ok();
                if g != construct_f(ResidueClassPair::new(2, 3).unwrap(), m).ok() {
                    fails.push(format!("identity fails m={m}"));
                }
            }
            Err(e) => fails.push(format!("m={m}: {e}")),
        }
    }
    out.push(check("affine equivalence witness", fails));

    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in even_range(4, max_m.min(8)) {
        for k in 0..20 {
            let t = TruthTable::from_fn(m, |_| rng.gen()).unwrap();
            let s = wht(&t);
            let oracle: Vec<i32> = (0..t.len())
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
                .collect();
            if s.values() != oracle.as_slice() || s.energy() != 1u64 << (2 * m) {
                fails.push(format!("random table #{k} m={m}"));
            }
        }
    }
    out.push(check("transform against defining sum", fails));

    out
}
