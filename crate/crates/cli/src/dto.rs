//! JSON shapes for reports. Exact values travel as `p/q` strings.

use serde::{Deserialize, Serialize};

use pingpong_core::arith::{GaussianRational, Interval, Rational};
use pingpong_core::hyperbolic::RealBoundReport;
use pingpong_core::pingpong::{CertReport, CheckResult, Flavor};
use pingpong_core::relator::{FormCheck, RelatorCertificate, RelatorMode};
use pingpong_core::word::{Decomposition, PieceTag, PowerKind, Word};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl From<&CheckResult> for CheckDto {
    fn from(c: &CheckResult) -> Self {
        CheckDto { name: c.name.clone(), pass: c.pass, detail: c.detail.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReportDto {
    pub lambda: String,
    pub mu: String,
    pub flavor: String,
    pub certified_syllables: usize,
    pub guaranteed_subword_exponent: usize,
    pub failure_witness: Option<String>,
    pub prerequisites: Vec<CheckDto>,
    pub cap: usize,
    pub margin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implication: Option<String>,
}

impl CertReportDto {
    pub fn new(r: &CertReport, implication: Option<String>) -> Self {
        CertReportDto {
            lambda: r.lambda.to_string(),
            mu: r.mu.to_string(),
            flavor: r.flavor.to_string(),
            certified_syllables: r.certified_syllables,
            guaranteed_subword_exponent: r.guaranteed_subword_exponent,
            failure_witness: r.failure_witness.as_ref().map(Word::to_string),
            prerequisites: r.prerequisites.iter().map(CheckDto::from).collect(),
            cap: r.cap,
            margin: r.margin.to_string(),
            implication,
        }
    }

    pub fn to_report(&self) -> Result<CertReport, CliError> {
        Ok(CertReport {
            lambda: self.lambda.parse()?,
            mu: self.mu.parse()?,
            flavor: self.flavor.parse::<Flavor>()?,
            certified_syllables: self.certified_syllables,
            failure_witness: self.failure_witness.as_deref().map(str::parse).transpose()?,
            guaranteed_subword_exponent: self.guaranteed_subword_exponent,
            prerequisites: self
                .prerequisites
                .iter()
                .map(|c| CheckResult::new(c.name.clone(), c.pass, c.detail.clone()))
                .collect(),
            cap: self.cap,
            margin: self.margin.parse()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDto {
    pub lo: String,
    pub hi: String,
    pub approx: String,
}

impl From<&Interval> for IntervalDto {
    fn from(x: &Interval) -> Self {
        IntervalDto { lo: x.lo().to_string(), hi: x.hi().to_string(), approx: format!("{:.6}", x.to_f64()) }
    }
}

impl IntervalDto {
    pub fn to_interval(&self) -> Result<Interval, CliError> {
        Ok(Interval::new(self.lo.parse()?, self.hi.parse()?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReportDto {
    pub method: String,
    pub lambda: String,
    pub theta: IntervalDto,
    pub lemma_k: u64,
    pub syllable_bound: u64,
    pub rate: IntervalDto,
    pub f_value: IntervalDto,
    pub f_below_five_quarters: bool,
}

impl From<&RealBoundReport> for BoundReportDto {
    fn from(r: &RealBoundReport) -> Self {
        BoundReportDto {
            method: "lemma32".into(),
            lambda: r.lambda.to_string(),
            theta: (&r.theta).into(),
            lemma_k: r.lemma_k,
            syllable_bound: r.syllable_bound,
            rate: (&r.rate).into(),
            f_value: (&r.f_value).into(),
            f_below_five_quarters: r.f_below_five_quarters,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorDto {
    pub word: String,
    pub lambda: String,
    pub mu: String,
    pub mode: String,
    pub residual: String,
}

impl From<&RelatorCertificate> for RelatorDto {
    fn from(c: &RelatorCertificate) -> Self {
        RelatorDto {
            word: c.word.to_string(),
            lambda: c.lambda.to_string(),
            mu: c.mu.to_string(),
            mode: c.mode.name().into(),
            residual: residual_text(&c.residual),
        }
    }
}

fn residual_text(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        format!("{}", r.to_f64())
    }
}

impl RelatorDto {
    /// Exact certificates only; numeric modes never produce one.
    pub fn to_certificate(&self) -> Result<RelatorCertificate, CliError> {
        let mode = match self.mode.as_str() {
            "exact-identity" => RelatorMode::Exact,
            "psl-identity" => RelatorMode::Psl,
            other => return Err(CliError::Usage(format!("unknown relator mode `{other}`"))),
        };
        Ok(RelatorCertificate {
            word: self.word.parse()?,
            lambda: self.lambda.parse::<GaussianRational>()?,
            mu: self.mu.parse::<GaussianRational>()?,
            mode,
            residual: self.residual.parse()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDto {
    pub power: Option<String>,
    pub power_exponent: usize,
    pub alternating: usize,
    pub syllables: usize,
    pub alarm: bool,
    pub detail: String,
}

impl From<&FormCheck> for FormDto {
    fn from(f: &FormCheck) -> Self {
        FormDto {
            power: f.form.power.map(|(kind, k)| match kind {
                PowerKind::AbInv => format!("(a b^-1)^{k}"),
                PowerKind::AInvB => format!("(a^-1 b)^{k}"),
            }),
            power_exponent: f.form.power_exponent(),
            alternating: f.form.alternating,
            syllables: f.syllables,
            alarm: f.alarm,
            detail: f.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorCheckDto {
    pub relator: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RelatorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl RelatorCheckDto {
    pub fn residual_of(r: &Rational) -> String {
        residual_text(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorFindDto {
    pub lambda: String,
    pub mu: String,
    pub max_syllables: usize,
    pub max_exponent: i64,
    pub word: Option<String>,
    pub sigma_upper: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDto {
    pub word: String,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub word: String,
    pub pieces: Vec<PieceDto>,
}

impl DecompositionDto {
    pub fn new(w: &Word, d: &Decomposition) -> Self {
        DecompositionDto {
            word: w.to_string(),
            pieces: d
                .pieces
                .iter()
                .map(|(p, t)| PieceDto {
                    word: p.to_string(),
                    tag: match t {
                        PieceTag::W => "W".into(),
                        PieceTag::F => "F".into(),
                    },
                })
                .collect(),
        }
    }
}
