//! JSON forms of every record the tool emits.
//!
//! Field elements are written as decimal strings. Objects are emitted through
//! [`serde_json::Value`], whose maps keep keys sorted, so output is canonical.
//! Each wire type converts back into its domain type.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sumroots_core::charsum::{CharSumResult, ScanSummary};
use sumroots_core::clique::{CliqueBoundReport, CliqueResult};
use sumroots_core::decomp::{DecompositionKind, DecompositionRecord, DivisorCountReport};
use sumroots_core::stepanov::{AuxiliaryPolynomial, NullCoefficients, StepanovCertificate, StepanovInstance};
use sumroots_core::{DensePolynomial, FieldElement, PrimeField};

use crate::error::{CliError, CliResult};

pub fn element_strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(|x| x.value().to_string()).collect()
}

fn parse_element(field: PrimeField, s: &str) -> CliResult<FieldElement> {
    match s.parse::<u64>() {
        Ok(v) if v < field.modulus() as u64 => Ok(field.element(v)),
        _ => Err(CliError::Format(format!("`{s}` is not a residue mod {}", field.modulus()))),
    }
}

fn parse_elements(field: PrimeField, xs: &[String]) -> CliResult<Vec<FieldElement>> {
    xs.iter().map(|s| parse_element(field, s)).collect()
}

fn parse_indices(xs: &[String]) -> CliResult<Vec<usize>> {
    xs.iter().map(|s| s.parse().map_err(|_| CliError::Format(format!("bad vertex `{s}`")))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOrder {
    pub b: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryWire {
    pub exponent: u64,
    pub null_coeffs: Vec<String>,
    pub null_constant: String,
    /// Coefficients of `F`, constant term first.
    pub polynomial: Vec<String>,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateWire {
    pub p: u64,
    pub d: u64,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub r: usize,
    /// `|A||B|`.
    pub lhs: u64,
    /// `d + r`.
    pub rhs: u64,
    pub bound_ok: bool,
    pub auxiliary: Option<AuxiliaryWire>,
    pub multiplicities: Vec<RootOrder>,
}

impl From<&StepanovCertificate> for CertificateWire {
    fn from(c: &StepanovCertificate) -> Self {
        let inst = &c.instance;
        CertificateWire {
            p: inst.field().modulus() as u64,
            d: inst.d(),
            a: element_strings(inst.a()),
            b: element_strings(inst.b()),
            r: c.r,
            lhs: (c.m() * c.n()) as u64,
            rhs: inst.d() + c.r as u64,
            bound_ok: c.bound_ok,
            auxiliary: c.auxiliary.as_ref().map(|aux| AuxiliaryWire {
                exponent: aux.exponent,
                null_coeffs: element_strings(&aux.null.coeffs),
                null_constant: aux.null.constant.value().to_string(),
                polynomial: aux.polynomial.raw_coeffs().iter().map(u32::to_string).collect(),
                degree: aux.polynomial.degree(),
            }),
            multiplicities: c
                .multiplicities
                .iter()
                .map(|&(b, order)| RootOrder { b: b.value().to_string(), order })
                .collect(),
        }
    }
}

impl CertificateWire {
    /// Rebuilds the certificate. The instance is re-validated; nothing else is
    /// checked, so a tampered record can still be handed to the audit.
    pub fn to_domain(&self) -> CliResult<StepanovCertificate> {
        let field = PrimeField::new(self.p)?;
        let a = parse_elements(field, &self.a)?;
        let b = parse_elements(field, &self.b)?;
        let instance = StepanovInstance::new(field, self.d, &a, &b)?;
        let auxiliary = match &self.auxiliary {
            None => None,
            Some(aux) => Some(AuxiliaryPolynomial {
                polynomial: DensePolynomial::from_coeffs(field, &parse_elements(field, &aux.polynomial)?)?,
                null: NullCoefficients {
                    coeffs: parse_elements(field, &aux.null_coeffs)?,
                    constant: parse_element(field, &aux.null_constant)?,
                },
                exponent: aux.exponent,
            }),
        };
        let multiplicities =
            self.multiplicities.iter().map(|m| Ok((parse_element(field, &m.b)?, m.order))).collect::<CliResult<_>>()?;
        Ok(StepanovCertificate { instance, auxiliary, r: self.r, multiplicities, bound_ok: self.bound_ok })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueWire {
    pub p: u64,
    pub d: u64,
    pub omega: usize,
    pub witness: Vec<String>,
    pub explored_nodes: u64,
    pub exact: bool,
    pub paper_bound: f64,
    pub old_bound: Option<f64>,
    pub tight: bool,
}

impl CliqueWire {
    pub fn new(result: &CliqueResult, bounds: &CliqueBoundReport) -> Self {
        CliqueWire {
            p: bounds.p,
            d: bounds.d,
            omega: result.omega,
            witness: result.witness.iter().map(usize::to_string).collect(),
            explored_nodes: result.explored_nodes,
            exact: result.exact,
            paper_bound: bounds.paper_bound,
            old_bound: bounds.old_bound,
            tight: bounds.tight,
        }
    }

    pub fn to_domain(&self) -> CliResult<(CliqueResult, CliqueBoundReport)> {
        let result = CliqueResult {
            omega: self.omega,
            witness: parse_indices(&self.witness)?,
            explored_nodes: self.explored_nodes,
            exact: self.exact,
        };
        let bounds = CliqueBoundReport {
            p: self.p,
            d: self.d,
            omega: self.omega,
            paper_bound: self.paper_bound,
            old_bound: self.old_bound,
            tight: self.tight,
        };
        Ok((result, bounds))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionWire {
    pub kind: String,
    pub p: u64,
    pub d: u64,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Option<Vec<String>>,
    pub unique_sums: bool,
    pub product_check: bool,
    pub zero_sums: usize,
    pub paley_form: Option<u64>,
    pub symmetry_class: usize,
}

impl From<&DecompositionRecord> for DecompositionWire {
    fn from(r: &DecompositionRecord) -> Self {
        DecompositionWire {
            kind: r.kind.name().to_string(),
            p: r.p,
            d: r.d,
            a: element_strings(&r.a),
            b: r.b.as_deref().map(element_strings),
            unique_sums: r.unique_sums,
            product_check: r.product_check,
            zero_sums: r.zero_sums,
            paley_form: r.paley_form,
            symmetry_class: r.symmetry_class,
        }
    }
}

impl DecompositionWire {
    pub fn to_domain(&self) -> CliResult<DecompositionRecord> {
        let field = PrimeField::new(self.p)?;
        let kind = DecompositionKind::from_name(&self.kind)
            .ok_or_else(|| CliError::Format(format!("unknown decomposition kind `{}`", self.kind)))?;
        Ok(DecompositionRecord {
            kind,
            p: self.p,
            d: self.d,
            a: parse_elements(field, &self.a)?,
            b: self.b.as_deref().map(|b| parse_elements(field, b)).transpose()?,
            unique_sums: self.unique_sums,
            product_check: self.product_check,
            zero_sums: self.zero_sums,
            paley_form: self.paley_form,
            symmetry_class: self.symmetry_class,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharSumWire {
    pub p: u64,
    pub order: u64,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Option<Vec<String>>,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub exact: Option<i64>,
    pub trivial_bound: u64,
    pub vinogradov_bound: Option<f64>,
    pub vinogradov_ok: Option<bool>,
    pub nontrivial: bool,
}

impl CharSumWire {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: u64,
        order: u64,
        a: &[FieldElement],
        b: &[FieldElement],
        c: Option<&[FieldElement]>,
        s: &CharSumResult,
        vinogradov_ok: Option<bool>,
    ) -> Self {
        CharSumWire {
            p,
            order,
            a: element_strings(a),
            b: element_strings(b),
            c: c.map(element_strings),
            re: s.value.re,
            im: s.value.im,
            modulus: s.modulus(),
            exact: s.exact,
            trivial_bound: s.trivial_bound,
            vinogradov_bound: s.vinogradov_bound,
            vinogradov_ok,
            nontrivial: s.nontrivial,
        }
    }

    pub fn to_domain(&self) -> CharSumResult {
        CharSumResult {
            value: Complex64::new(self.re, self.im),
            exact: self.exact,
            trivial_bound: self.trivial_bound,
            vinogradov_bound: self.vinogradov_bound,
            nontrivial: self.nontrivial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanWire {
    pub p: u64,
    pub order: u64,
    pub epsilon: f64,
    pub seed: u64,
    pub trials: u64,
    pub set_size: usize,
    pub ratios: Vec<f64>,
    pub histogram: [u64; 10],
    pub nontrivial_count: u64,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
}

impl From<&ScanSummary> for ScanWire {
    fn from(s: &ScanSummary) -> Self {
        ScanWire {
            p: s.p,
            order: s.order,
            epsilon: s.epsilon,
            seed: s.seed,
            trials: s.trials,
            set_size: s.set_size,
            ratios: s.ratios.clone(),
            histogram: s.histogram,
            nontrivial_count: s.nontrivial_count,
            max_ratio: s.max_ratio(),
            mean_ratio: s.mean_ratio(),
        }
    }
}

impl ScanWire {
    pub fn to_domain(&self) -> ScanSummary {
        ScanSummary {
            p: self.p,
            order: self.order,
            epsilon: self.epsilon,
            seed: self.seed,
            trials: self.trials,
            set_size: self.set_size,
            ratios: self.ratios.clone(),
            histogram: self.histogram,
            nontrivial_count: self.nontrivial_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorsWire {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    #[serde(rename = "P")]
    pub shifted_primes: u64,
    #[serde(rename = "H")]
    pub integers: u64,
    pub pi_x: u64,
    pub prime_fraction: f64,
}

impl From<&DivisorCountReport> for DivisorsWire {
    fn from(r: &DivisorCountReport) -> Self {
        DivisorsWire {
            x: r.x,
            y: r.y,
            z: r.z,
            shifted_primes: r.shifted_primes,
            integers: r.integers,
            pi_x: r.pi_x,
            prime_fraction: r.prime_fraction(),
        }
    }
}

impl DivisorsWire {
    pub fn to_domain(&self) -> DivisorCountReport {
        DivisorCountReport {
            x: self.x,
            y: self.y,
            z: self.z,
            shifted_primes: self.shifted_primes,
            integers: self.integers,
            pi_x: self.pi_x,
        }
    }
}

/// One record of any kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Record {
    Certificate(CertificateWire),
    Clique(CliqueWire),
    Decomposition(DecompositionWire),
    CharSum(CharSumWire),
    Scan(ScanWire),
    Divisors(DivisorsWire),
}

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::Certificate(_) => "certificate",
            Record::Clique(_) => "clique",
            Record::Decomposition(_) => "decomposition",
            Record::CharSum(_) => "charsum",
            Record::Scan(_) => "scan",
            Record::Divisors(_) => "divisors",
        }
    }

    pub fn body(&self) -> CliResult<Value> {
        Ok(match self {
            Record::Certificate(w) => serde_json::to_value(w)?,
            Record::Clique(w) => serde_json::to_value(w)?,
            Record::Decomposition(w) => serde_json::to_value(w)?,
            Record::CharSum(w) => serde_json::to_value(w)?,
            Record::Scan(w) => serde_json::to_value(w)?,
            Record::Divisors(w) => serde_json::to_value(w)?,
        })
    }

    pub fn from_body(kind: &str, body: Value) -> CliResult<Record> {
        Ok(match kind {
            "certificate" => Record::Certificate(serde_json::from_value(body)?),
            "clique" => Record::Clique(serde_json::from_value(body)?),
            "decomposition" => Record::Decomposition(serde_json::from_value(body)?),
            "charsum" => Record::CharSum(serde_json::from_value(body)?),
            "scan" => Record::Scan(serde_json::from_value(body)?),
            "divisors" => Record::Divisors(serde_json::from_value(body)?),
            other => return Err(CliError::Format(format!("unknown record kind `{other}`"))),
        })
    }
}
