//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Expected values are derived here from first principles (enumeration,
//! the defining transform sum, literal tables) rather than from the library
//! paths under test.

use std::time::{Duration, Instant};

use bentfam::family::{coset_distribution_of, weight_form};
use bentfam::gf2::parity;
use bentfam::maiorana::standard_mm_form;
use bentfam::walsh::{dual, is_bent};
use bentfam::{
    affine_to_mm_witness, construct_f, coset_weight_distribution, detect_mm, duality_class,
    family_form, predicted_duality, s_closed, s_sum, wht, BitMatrix, CoordinateSplit, DualityClass,
    QuadraticForm, ResidueClassPair, TruthTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

const SEED: u64 = 0x00c0_ffee;

fn pair(a: u8, b: u8) -> ResidueClassPair {
    ResidueClassPair::new(a, b).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

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

/// 1. `s_closed = s_sum` for m in [2,32]; independent check by `C(n,k)`.
fn closed_form_sums() -> Outcome {
    for m in 2..=32 {
        for j in 0..4 {
            let direct: u128 = (0..=m).filter(|k| k % 4 == j).map(|k| binomial(m, k)).sum();
            let closed = s_closed(j, m).map_err(|e| e.to_string())?;
            let summed = s_sum(j, m).map_err(|e| e.to_string())?;
            ensure(closed == summed && summed == direct, || {
                format!("S({j})_{m}: closed {closed}, pascal {summed}, direct {direct}")
            })?;
        }
    }
    Ok(())
}

/// 2. Bent iff `i1 - i2` odd, m in {4..12}, all six pairs.
fn bent_iff_odd() -> Outcome {
    for m in [4, 6, 8, 10, 12] {
        for p in ResidueClassPair::all() {
            let bent = is_bent(&construct_f(p, m).unwrap());
            ensure(bent == p.is_odd(), || {
                format!("f_{{{p}}} m={m}: bent={bent}")
            })?;
        }
    }
    Ok(())
}

/// 3. ANF identities of the four bent members.
fn anf_identities() -> Outcome {
    for m in [4u32, 6, 8, 10] {
        let n = 1u32 << m;
        let pairs: Vec<u32> = (0..n).filter(|u| u.count_ones() == 2).collect();
        let singles_and_pairs: Vec<u32> =
            (0..n).filter(|u| matches!(u.count_ones(), 1 | 2)).collect();
        let f23 = construct_f(pair(2, 3), m).unwrap();
        let f12 = construct_f(pair(1, 2), m).unwrap();
        ensure(f23.anf().masks() == pairs.as_slice(), || {
            format!("anf f_{{2,3}} m={m}")
        })?;
        ensure(f12.anf().masks() == singles_and_pairs.as_slice(), || {
            format!("anf f_{{1,2}} m={m}")
        })?;
        let mut with_one = vec![0u32];
        with_one.extend(&pairs);
        ensure(
            construct_f(pair(0, 1), m).unwrap().anf().masks() == with_one.as_slice(),
            || format!("f_{{0,1}} != 1 + f_{{2,3}} at m={m}"),
        )?;
        let mut with_one = vec![0u32];
        with_one.extend(&singles_and_pairs);
        ensure(
            construct_f(pair(0, 3), m).unwrap().anf().masks() == with_one.as_slice(),
            || format!("f_{{0,3}} != 1 + f_{{1,2}} at m={m}"),
        )?;
    }
    Ok(())
}

/// 4. Weight table `2B^2 +- B`, `B = 2^((m-2)/2)`.
fn weight_table() -> Outcome {
    // sign of the B term for rows (0,1),(2,3),(0,3),(1,2): m = 2 and m = 6 (mod 8)
    let rows = [
        (pair(0, 1), 1i64, -1i64),
        (pair(2, 3), -1, 1),
        (pair(0, 3), -1, 1),
        (pair(1, 2), 1, -1),
    ];
    for m in [6u32, 10, 14] {
        let b = 1i64 << ((m - 2) / 2);
        for &(p, s2, s6) in &rows {
            let sign = if m % 8 == 2 { s2 } else { s6 };
            let want = 2 * b * b + sign * b;
            let got = construct_f(p, m).unwrap().weight() as i64;
            ensure(got == want, || {
                format!("wt f_{{{p}}} m={m}: {got} != {want}")
            })?;
            let form = weight_form(p, m).map_err(|e| e.to_string())?;
            ensure(form.eval(b as u128) as i64 == want, || {
                format!("closed form {form} at m={m}")
            })?;
        }
    }
    Ok(())
}

fn expected_class(p: ResidueClassPair, m: u32) -> DualityClass {
    let group_a = p == pair(2, 3) || p == pair(0, 1);
    match (m % 8, group_a) {
        (0 | 4, _) => DualityClass::Neither,
        (2, true) | (6, false) => DualityClass::SelfDual,
        _ => DualityClass::AntiSelfDual,
    }
}

/// 5. Spectral classification agrees with the theorem for m in {4..14}.
fn duality_classification() -> Outcome {
    for m in [4, 6, 8, 10, 12, 14] {
        for p in ResidueClassPair::odd() {
            let want = expected_class(p, m);
            let got = duality_class(&construct_f(p, m).unwrap());
            let predicted = predicted_duality(p, m).map_err(|e| e.to_string())?;
            ensure(got == want && predicted == want, || {
                format!("f_{{{p}}} m={m}: computed {got}, predicted {predicted}, expected {want}")
            })?;
        }
    }
    Ok(())
}

/// 6. Matrix criterion <=> m mod 4 != 0 <=> class != Neither.
fn criterion_triangulation() -> Outcome {
    for m in [4, 6, 8, 10, 12, 14] {
        for p in ResidueClassPair::odd() {
            let closed = family_form(p, m).map_err(|e| e.to_string())?;
            let f = construct_f(p, m).unwrap();
            let read = QuadraticForm::from_truth_table(&f).map_err(|e| e.to_string())?;
            ensure(closed == read, || format!("family form of f_{{{p}}} m={m}"))?;
            let hou = closed.hou_criterion();
            let class = duality_class(&f);
            ensure(hou == (m % 4 != 0), || {
                format!("criterion f_{{{p}}} m={m}: {hou}")
            })?;
            ensure(hou == (class != DualityClass::Neither), || {
                format!("criterion {hou} vs class {class} for f_{{{p}}} m={m}")
            })?;
        }
    }
    Ok(())
}

/// 7. Dual is an involution; anti-self-dual partners are the complements.
fn dual_pairing() -> Outcome {
    for m in [4, 6, 8, 10, 12, 14] {
        for p in ResidueClassPair::odd() {
            let f = construct_f(p, m).unwrap();
            let d = dual(&f).map_err(|e| format!("f_{{{p}}} m={m}: {e}"))?;
            ensure(dual(&d).ok().as_ref() == Some(&f), || {
                format!("dual(dual(f_{{{p}}})) != f at m={m}")
            })?;
        }
        let d23 = dual(&construct_f(pair(2, 3), m).unwrap()).unwrap();
        let is01 = d23 == construct_f(pair(0, 1), m).unwrap();
        ensure(is01 == (m % 8 == 6), || {
            format!("dual f_{{2,3}} = f_{{0,1}} is {is01} at m={m}")
        })?;
        let d03 = dual(&construct_f(pair(0, 3), m).unwrap()).unwrap();
        let is12 = d03 == construct_f(pair(1, 2), m).unwrap();
        ensure(is12 == (m % 8 == 2), || {
            format!("dual f_{{0,3}} = f_{{1,2}} is {is12} at m={m}")
        })?;
    }
    Ok(())
}

/// Weight distribution over all `a.x + eps` by direct enumeration.
fn enumerate_coset(t: &TruthTable) -> std::collections::BTreeMap<u64, u64> {
    let mut counts = std::collections::BTreeMap::new();
    for a in 0..t.len() {
        for eps in [false, true] {
            let w = (0..t.len())
                .filter(|&x| t.get(x) ^ parity((a & x) as u64) ^ eps)
                .count() as u64;
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// 8. Coset support is `2^(m-1) +- 2^(m/2-1)` iff odd difference.
fn coset_distributions() -> Outcome {
    for m in [4u32, 6, 8, 10] {
        let lo = (1u64 << (m - 1)) - (1u64 << (m / 2 - 1));
        let hi = (1u64 << (m - 1)) + (1u64 << (m / 2 - 1));
        for p in ResidueClassPair::all() {
            let d = coset_weight_distribution(p, m).map_err(|e| e.to_string())?;
            ensure(d.total() == 1 << (m + 1), || {
                format!("count f_{{{p}}} m={m}")
            })?;
            let two_valued = d.support() == vec![lo, hi];
            ensure(two_valued == p.is_odd(), || {
                format!("support of f_{{{p}}} m={m}: {:?}", d.support())
            })?;
            if m <= 8 {
                let f = construct_f(p, m).unwrap();
                ensure(&enumerate_coset(&f) == d.counts(), || {
                    format!("spectral vs direct distribution f_{{{p}}} m={m}")
                })?;
                ensure(coset_distribution_of(&f) == d, || {
                    "shortcut mismatch".into()
                })?;
            }
        }
    }
    Ok(())
}

/// 9. No odd-difference member is MM on any coordinate split, m in {4,6}.
fn mm_negative() -> Outcome {
    for (m, count) in [(4u32, 6usize), (6, 20)] {
        let splits = CoordinateSplit::all(m).map_err(|e| e.to_string())?;
        ensure(splits.len() == count, || {
            format!("{} splits for m={m}", splits.len())
        })?;
        for p in ResidueClassPair::odd() {
            let f = construct_f(p, m).unwrap();
            for s in &splits {
                ensure(detect_mm(&f, s).is_none(), || {
                    format!("f_{{{p}}} is MM on {s}")
                })?;
            }
        }
    }
    Ok(())
}

/// 10. The substitution matrix is invertible and maps the standard MM form
/// to `f_{2,3}` up to the linear term `x_2 + x_4 + .. + x_m`.
fn affine_witness() -> Outcome {
    for m in [4u32, 6, 8, 10] {
        let (a, c) = affine_to_mm_witness(m).map_err(|e| e.to_string())?;
        // transcribe the rule independently: y_i = x_i + x_{i+1} (odd i),
        // y_i = x_i + ... + x_m (even i), 1-based
        let mut rule = BitMatrix::zeros(m as usize, m as usize).unwrap();
        for i in 1..=m as usize {
            let last = if i % 2 == 1 { i + 1 } else { m as usize };
            for j in i..=last {
                rule = rule.with(i - 1, j - 1, true);
            }
        }
        ensure(a == rule, || format!("substitution matrix m={m}:\n{a}"))?;
        ensure(a.is_invertible().unwrap(), || format!("singular at m={m}"))?;
        let evens = (2..=m).step_by(2).fold(0u64, |acc, j| acc | 1 << (j - 1));
        ensure(c == evens, || format!("linear term {c:#b} at m={m}"))?;
        let mm = standard_mm_form(m).unwrap();
        let lhs = TruthTable::from_fn(m, |x| {
            mm.get(a.mul_vec(x as u64) as usize) ^ parity(c & x as u64)
        })
        .unwrap();
        ensure(lhs == construct_f(pair(2, 3), m).unwrap(), || {
            format!("identity fails at m={m}")
        })?;
        let via_lib = mm
            .apply_affine(&a, 0, c, false)
            .map_err(|e| e.to_string())?;
        ensure(via_lib == lhs, || {
            format!("apply_affine disagrees at m={m}")
        })?;
    }
    Ok(())
}

/// 11. Butterfly against the defining sum, with Parseval on every spectrum.
fn transform_correctness() -> Outcome {
    let check = |t: &TruthTable, what: &str| -> Outcome {
        let s = wht(t);
        ensure(s.values() == defining_sum(t).as_slice(), || {
            format!("{what}: values")
        })?;
        ensure(s.energy() == 1u64 << (2 * t.vars()), || {
            format!("{what}: Parseval")
        })
    };
    for m in [4, 6] {
        for p in ResidueClassPair::all() {
            check(&construct_f(p, m).unwrap(), &format!("f_{{{p}}} m={m}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for m in [4, 6, 8] {
        for k in 0..100 {
            let t = TruthTable::from_fn(m, |_| rng.gen()).unwrap();
            check(&t, &format!("random #{k} m={m}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        (
            "AC1 closed-form binomial sums",
            closed_form_sums,
            Duration::from_secs(1),
        ),
        (
            "AC2 bent iff odd difference",
            bent_iff_odd,
            Duration::from_secs(10),
        ),
        (
            "AC3 quadratic ANF identities",
            anf_identities,
            Duration::from_secs(60),
        ),
        ("AC4 weight table", weight_table, Duration::from_secs(60)),
        (
            "AC5 duality classification",
            duality_classification,
            Duration::from_secs(30),
        ),
        (
            "AC6 matrix criterion triangulation",
            criterion_triangulation,
            Duration::from_secs(60),
        ),
        (
            "AC7 dual involution and pairing",
            dual_pairing,
            Duration::from_secs(60),
        ),
        (
            "AC8 coset weight distributions",
            coset_distributions,
            Duration::from_secs(60),
        ),
        (
            "AC9 not Maiorana-McFarland",
            mm_negative,
            Duration::from_secs(60),
        ),
        (
            "AC10 affine equivalence witness",
            affine_witness,
            Duration::from_secs(60),
        ),
        (
            "AC11 transform correctness",
            transform_correctness,
            Duration::from_secs(60),
        ),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match outcome {
            Ok(()) => println!("PASS  {name} ({:.3}s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name} ({:.3}s): {msg}", elapsed.as_secs_f64());
            }
        }
    }
    let total = start.elapsed();
    let within = total <= Duration::from_secs(60);
    if !within {
        failed += 1;
    }
    println!(
        "{}  full suite in {:.3}s (limit 60s)",
        if within { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
