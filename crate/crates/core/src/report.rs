//! Serializable reports, named checks and the JSON encodings of exact scalars.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::fock::{Family, ModelParams};
use crate::operator::SparseOperator;
use crate::scalar::{fmt_q, Amplitude};
use crate::young::{Duality, FramePair, Label, PinClass};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// name → pass, sorted by name.
pub fn check_map(checks: &[Check]) -> BTreeMap<String, bool> {
    checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDto {
    pub d: usize,
    pub k: usize,
    pub family: Family,
}

impl From<&ModelParams> for ParamsDto {
    fn from(p: &ModelParams) -> Self {
        ParamsDto {
            d: p.d(),
            k: p.k(),
            family: p.family(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDto {
    /// Algebra or group name, e.g. "o(4)" or "Pin(4)".
    pub family: String,
    /// Row lengths as "a/b" strings.
    pub rows: Vec<String>,
}

impl From<&Label> for LabelDto {
    fn from(l: &Label) -> Self {
        let family = match l {
            Label::Weight(w) => w.family().algebra_name(w.rank()),
            Label::Diagram(g) => g.name(),
        };
        LabelDto {
            family,
            rows: l.rows().iter().map(fmt_q).collect(),
        }
    }
}

fn pin_class_name(c: PinClass) -> &'static str {
    match c {
        PinClass::BelowK => "below-k",
        PinClass::ExactlyK => "exactly-k",
        PinClass::AboveK => "above-k",
        PinClass::HalfIntegral => "half-integral",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairReport {
    pub d_label: LabelDto,
    pub k_label: LabelDto,
    pub dim_d: u64,
    pub dim_k: u64,
    pub d_reducible: bool,
    pub k_reducible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pin_class: Option<String>,
    pub oracle_multiplicity: usize,
    pub checks: BTreeMap<String, bool>,
}

impl PairReport {
    pub fn new(p: &FramePair, oracle_multiplicity: usize, checks: BTreeMap<String, bool>) -> Self {
        PairReport {
            d_label: (&p.d_label).into(),
            k_label: (&p.k_label).into(),
            dim_d: p.dim_d.to_u64().unwrap_or(u64::MAX),
            dim_k: p.dim_k.to_u64().unwrap_or(u64::MAX),
            d_reducible: p.d_reducible,
            k_reducible: p.k_reducible,
            pin_class: p.pin_class.map(|c| pin_class_name(c).to_string()),
            oracle_multiplicity,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub version: u32,
    pub params: ParamsDto,
    pub duality: String,
    pub pairs: Vec<PairReport>,
    pub dimension_sum: u64,
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    pub all_pass: bool,
    pub elapsed_ms: Option<u64>,
}

impl DualityReport {
    pub fn new(params: &ModelParams, duality: Duality, pairs: Vec<PairReport>, dimension_sum: u64, checks: Vec<Check>) -> Self {
        let all = all_pass(&checks) && pairs.iter().all(PairReport::all_pass);
        DualityReport {
            version: REPORT_VERSION,
            params: params.into(),
            duality: duality.name().to_string(),
            pairs,
            dimension_sum,
            details: checks
                .iter()
                .filter_map(|c| c.detail.clone().map(|d| (c.name.clone(), d)))
                .collect(),
            checks: check_map(&checks),
            all_pass: all,
            elapsed_ms: None,
        }
    }

    /// Names of failing checks, pair checks prefixed by the pair index.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.checks.iter().filter(|(_, &v)| !v).map(|(k, _)| k.clone()).collect();
        for (i, p) in self.pairs.iter().enumerate() {
            out.extend(p.checks.iter().filter(|(_, &v)| !v).map(|(k, _)| format!("pair{i}.{k}")));
        }
        out
    }
}

/// {re, im, sqrt2pow} when the value is a Gaussian rational times √2^n, otherwise one entry per radicand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmplitudeDto {
    Simple { re: String, im: String, sqrt2pow: u32 },
    Radicals(Vec<RadicalTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalTerm {
    pub radicand: u64,
    pub re: String,
    pub im: String,
}

impl From<&Amplitude> for AmplitudeDto {
    fn from(a: &Amplitude) -> Self {
        let terms = a.terms();
        match terms {
            [] => AmplitudeDto::Simple {
                re: "0".into(),
                im: "0".into(),
                sqrt2pow: 0,
            },
            [(r, c)] if *r == 1 || *r == 2 => AmplitudeDto::Simple {
                re: fmt_q(&c.re),
                im: fmt_q(&c.im),
                sqrt2pow: if *r == 2 { 1 } else { 0 },
            },
            _ => AmplitudeDto::Radicals(
                terms
                    .iter()
                    .map(|(r, c)| RadicalTerm {
                        radicand: *r,
                        re: fmt_q(&c.re),
                        im: fmt_q(&c.im),
                    })
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorDto {
    pub dimension: usize,
    pub nonzero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triplets: Option<Vec<(usize, usize, AmplitudeDto)>>,
}

impl OperatorDto {
    pub fn new(op: &SparseOperator<Amplitude>, dump: bool) -> Self {
        OperatorDto {
            dimension: op.dim(),
            nonzero: op.nnz(),
            triplets: dump.then(|| op.triplets().map(|(r, c, v)| (r, c, v.into())).collect()),
        }
    }
}
