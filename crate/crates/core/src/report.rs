//! Structured analysis record emitted by `bentfam analyze`.

use serde::Serialize;

use crate::boolfn::TruthTable;
use crate::family::{construct_f, predicted_duality, ResidueClassPair};
use crate::maiorana::{split_verdicts, MAX_SPLIT_SEARCH_VARS};
use crate::quadratic::QuadraticForm;
use crate::walsh::{self, DualityClass};

/// Version of the JSON layout produced by [`Report::to_json`].
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSummary {
    /// Rows of the strictly upper-triangular `Q`, `0`/`1` per column.
    pub q: Vec<String>,
    /// Coefficients of `x_1..x_m`.
    pub linear: String,
    pub eps: bool,
    pub involution: bool,
    pub alternating: bool,
    pub criterion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MmSummary {
    pub splits_checked: usize,
    /// Splits (as `{x}/{y}`) on which the function is Maiorana-McFarland.
    pub mm_splits: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: u32,
    pub m: u32,
    /// `"i1,i2"` when the table is a family member.
    pub pair: Option<String>,
    pub weight: u64,
    pub degree: Option<u32>,
    pub f_at_zero: bool,
    pub walsh_at_zero: i32,
    pub bent: bool,
    pub duality: DualityClass,
    pub predicted_duality: Option<DualityClass>,
    pub quadratic: Option<QuadraticSummary>,
    pub maiorana: Option<MmSummary>,
    pub violations: Vec<String>,
}

fn join(vars: &[u32]) -> String {
    vars.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Finds the pair whose family function equals `t`, if any.
pub fn identify_pair(t: &TruthTable) -> Option<ResidueClassPair> {
    if t.vars() % 2 != 0 {
        return None;
    }
    ResidueClassPair::all().find(|&p| construct_f(p, t.vars()).ok().as_ref() == Some(t))
}

impl Report {
    /// Analyzes `t`. Family membership is detected from the table itself, so
    /// a table read from disk and the same table built in memory produce
    /// identical reports.
    pub fn analyze(t: &TruthTable) -> Self {
        let m = t.vars();
        let pair = identify_pair(t);
        let spectrum = walsh::wht(t);
        let bent = spectrum.is_bent();
        let duality = walsh::duality_class(t);
        let predicted = pair.and_then(|p| predicted_duality(p, m).ok());

        let quadratic = QuadraticForm::from_truth_table(t).ok().map(|form| {
            let v = form.hou_verdict();
            QuadraticSummary {
                q: form.q().to_string().lines().map(str::to_owned).collect(),
                linear: (0..m)
                    .map(|i| if form.l() >> i & 1 == 1 { '1' } else { '0' })
                    .collect(),
                eps: form.eps(),
                involution: v.involution,
                alternating: v.alternating,
                criterion: v.holds(),
            }
        });

        let maiorana = (m % 2 == 0 && m <= MAX_SPLIT_SEARCH_VARS)
            .then(|| split_verdicts(t).ok())
            .flatten()
            .map(|verdicts| MmSummary {
                splits_checked: verdicts.len(),
                mm_splits: verdicts
                    .iter()
                    .filter(|(v, _)| v.maiorana_mcfarland)
                    .map(|(v, _)| format!("{{{}}}/{{{}}}", join(&v.xset), join(&v.yset)))
                    .collect(),
            });

        let mut violations = Vec::new();
        if let (Some(p), Some(want)) = (pair, predicted) {
            if want != duality {
                violations.push(format!(
                    "f_{{{p}}} at m={m}: predicted {want}, computed {duality}"
                ));
            }
            if bent != p.is_odd() {
                violations.push(format!("f_{{{p}}} at m={m}: bent={bent}"));
            }
        }
        if let (true, Some(q)) = (bent, &quadratic) {
            let dual_type = matches!(duality, DualityClass::SelfDual | DualityClass::AntiSelfDual);
            if q.criterion != dual_type {
                violations.push(format!(
                    "matrix criterion {} disagrees with spectral class {duality}",
                    q.criterion
                ));
            }
        }

        Report {
            version: REPORT_VERSION,
            m,
            pair: pair.map(|p| p.to_string()),
            weight: t.weight(),
            degree: t.degree(),
            f_at_zero: t.get(0),
            walsh_at_zero: spectrum.at(0),
            bent,
            duality,
            predicted_duality: predicted,
            quadratic,
            maiorana,
            violations,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<18} {v}\n"));
        line("m", self.m.to_string());
        line("pair", self.pair.clone().unwrap_or_else(|| "-".into()));
        line("weight", self.weight.to_string());
        line(
            "degree",
            self.degree.map_or_else(|| "none".into(), |d| d.to_string()),
        );
        line("f(0)", u8::from(self.f_at_zero).to_string());
        line("F(0)", self.walsh_at_zero.to_string());
        line("bent", self.bent.to_string());
        line("duality", self.duality.to_string());
        if let Some(p) = self.predicted_duality {
            line("predicted", p.to_string());
        }
        if let Some(q) = &self.quadratic {
            line("L", q.linear.clone());
            line("eps", u8::from(q.eps).to_string());
            line("B^2 = I", q.involution.to_string());
            line("BQB+Q^T alt.", q.alternating.to_string());
            line("criterion", q.criterion.to_string());
        }
        if let Some(mm) = &self.maiorana {
            line(
                "MM splits",
                format!("{} of {}", mm.mm_splits.len(), mm.splits_checked),
            );
        }
        for v in &self.violations {
            line("VIOLATION", v.clone());
        }
        s
    }
}
