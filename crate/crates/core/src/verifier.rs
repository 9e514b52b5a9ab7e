//! Independent certification of witness lattices.
//!
//! Everything here starts from raw basis vectors: the Gram matrix,
//! saturation and minimum are recomputed, never taken from a builder.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{build_generic, expected_identity, CaseId, IdentityForm, Mode};
use crate::criteria::{yang_yu_certifiable, CriterionReport, DiscriminantReport};
use crate::error::{Error, Result};
use crate::lattice::{gram_of, labelling_discriminant, saturation_in, AmbientVector, Labelling, Sublattice};
use crate::linalg::{is_positive_definite, rational_inverse, IntMatrix};

pub const AMBIENT_ID: &str = "E8+E8+U+U+I3";
pub const TOOL_VERSION: &str = concat!("hassett ", env!("CARGO_PKG_VERSION"));

/// The twenty discriminants of the rank-20 intersection.
pub const COROLLARY_TARGETS: [i64; 20] =
    [14, 38, 26, 98, 218, 294, 386, 602, 866, 1178, 1538, 1946, 2166, 2402, 2906, 3458, 4058, 4706, 6146, 6938];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LabellingCheck {
    pub target_d: i64,
    pub realized_d: i64,
    pub saturated_in_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    /// Absent when the basis is too malformed to span a lattice.
    pub criterion: Option<CriterionReport>,
    pub labellings: Vec<LabellingCheck>,
    pub gram_matches_paper: Option<bool>,
    pub realized_gram: Option<IntMatrix>,
    pub verdict: Verdict,
    pub failure_reasons: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Record whether the realized Gram equals a displayed one.
    pub fn compare_with(&mut self, paper: &IntMatrix) {
        self.gram_matches_paper = Some(self.realized_gram.as_ref() == Some(paper));
    }
}

fn failed(reasons: Vec<String>, gram: Option<IntMatrix>) -> WitnessReport {
    WitnessReport {
        criterion: None,
        labellings: Vec::new(),
        gram_matches_paper: None,
        realized_gram: gram,
        verdict: Verdict::Fail,
        failure_reasons: reasons,
    }
}

/// Check `M = <basis>` against the nonemptiness criterion and each
/// `K_i = <h², basis[i+1]>` against `targets[i]`.
pub fn verify_witness(basis: &[AmbientVector], targets: &[i64]) -> WitnessReport {
    let mut reasons = Vec::new();
    if basis.first() != Some(&AmbientVector::h_squared()) {
        reasons.push("FIRST_NOT_H2".to_string());
    }
    if basis.len() != targets.len() + 1 {
        reasons.push("TARGET_COUNT_MISMATCH".to_string());
    }
    let gram = (!basis.is_empty()).then(|| gram_of(basis).expect("ambient vectors share one rank"));
    let m = match Sublattice::new(basis.to_vec()) {
        Ok(m) if !basis.is_empty() => m,
        _ => {
            reasons.push("DEPENDENT_BASIS".to_string());
            return failed(reasons, gram);
        }
    };
    let criterion = yang_yu_certifiable(&m);
    if !criterion.contains_h_squared {
        reasons.push("NOT_CONTAIN_H2".to_string());
    }
    if !criterion.positive_definite {
        reasons.push("NOT_POSITIVE_DEFINITE".to_string());
    }
    if !criterion.saturated {
        reasons.push("NOT_SATURATED".to_string());
    }
    if let Some(k) = criterion.minimum_norm.filter(|&k| k < 3) {
        reasons.push(format!("MIN_NORM_{k}"));
    }
    let mut labellings = Vec::with_capacity(targets.len());
    for (i, (&target, v)) in targets.iter().zip(basis.iter().skip(1)).enumerate() {
        let realized = labelling_discriminant(v).to_i64().unwrap_or(i64::MAX);
        let saturated = Labelling::new(*v)
            .ok()
            .and_then(|k| saturation_in(k.sublattice(), &m).ok())
            .unwrap_or(false);
        if realized != target {
            reasons.push(format!("DISC_MISMATCH({i})"));
        }
        if !saturated {
            reasons.push(format!("LABEL_NOT_SATURATED({i})"));
        }
        labellings.push(LabellingCheck { target_d: target, realized_d: realized, saturated_in_m: saturated });
    }
    let verdict = if reasons.is_empty() && criterion.pass { Verdict::Pass } else { Verdict::Fail };
    WitnessReport {
        criterion: Some(criterion),
        labellings,
        gram_matches_paper: None,
        realized_gram: gram,
        verdict,
        failure_reasons: reasons,
    }
}

/// Brute-force counterpart of [`crate::lattice::short_vectors`]: every
/// integer vector in the box `xᵢ² ≤ c·(g⁻¹)ᵢᵢ`, filtered by `xᵀgx ≤ c`.
pub fn oracle_short_vectors(g: &IntMatrix, c: i64) -> Result<Vec<Vec<i64>>> {
    if !is_positive_definite(g)? {
        return Err(Error::NotPositiveDefinite);
    }
    if c <= 0 {
        return Ok(Vec::new());
    }
    let inv = rational_inverse(g)?;
    let n = g.rows();
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let limit = &inv[i][i] * BigInt::from(c);
            let mut r = 0i64;
            while num_rational::BigRational::from_integer(BigInt::from((r + 1) * (r + 1))) <= limit {
                r += 1;
            }
            r
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let cap = BigInt::from(c);
    loop {
        if let Some(&first) = x.iter().find(|&&v| v != 0) {
            if first > 0 {
                let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                if g.quadratic_form(&big)? <= cap {
                    out.push(x.clone());
                }
            }
        }
        // odometer step over the box
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return Ok(out);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub ambient: String,
    pub basis: Vec<AmbientVector>,
    pub targets: Vec<i64>,
    pub report: WitnessReport,
    pub tool_version: String,
}

impl Certificate {
    pub fn new(basis: Vec<AmbientVector>, targets: Vec<i64>, report: WitnessReport) -> Self {
        Certificate { ambient: AMBIENT_ID.to_string(), basis, targets, report, tool_version: TOOL_VERSION.to_string() }
    }

    /// Verify `basis` against `targets` and wrap the result.
    pub fn issue(basis: Vec<AmbientVector>, targets: Vec<i64>) -> Self {
        let report = verify_witness(&basis, &targets);
        Certificate::new(basis, targets, report)
    }

    /// Fresh report from the stored basis and targets; the embedded report is ignored.
    pub fn reverify(&self) -> WitnessReport {
        let mut report = verify_witness(&self.basis, &self.targets);
        if self.ambient != AMBIENT_ID {
            report.verdict = Verdict::Fail;
            report.failure_reasons.push("UNKNOWN_AMBIENT".to_string());
        }
        report
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorollaryReport {
    pub discriminants: Vec<DiscriminantReport>,
    pub all_distinct: bool,
    pub certificate: Certificate,
    pub pass: bool,
}

/// Build, verify and classify the twenty-discriminant intersection.
pub fn verify_corollary20() -> CorollaryReport {
    let discriminants: Vec<DiscriminantReport> = COROLLARY_TARGETS.iter().map(|&d| DiscriminantReport::new(d)).collect();
    let mut sorted = COROLLARY_TARGETS.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let all_distinct = sorted.len() == COROLLARY_TARGETS.len();
    let outcome = build_generic(&COROLLARY_TARGETS, Mode::Goal).expect("the listed targets are admissible");
    let basis = outcome.basis.unwrap_or_default();
    let certificate = Certificate::issue(basis, COROLLARY_TARGETS.to_vec());
    let arithmetic = discriminants.iter().all(|r| r.star && r.k3_admissible)
        && discriminants.iter().all(|r| r.double_star == !matches!(r.d, 14 | 38));
    let pass = all_distinct && arithmetic && certificate.report.passed();
    CorollaryReport { discriminants, all_distinct, certificate, pass }
}

/// Compare both sides of the completed-square display at `trials` seeded
/// points with coordinates in `[-50, 50]`.
pub fn check_identity(case: CaseId, params: &[i64], form: IdentityForm, trials: usize, seed: u64) -> Result<bool> {
    if trials == 0 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    let rank = params.len() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = vec![0i64; rank];
    for _ in 0..trials {
        for x in point.iter_mut() {
            *x = rng.gen_range(-50..=50);
        }
        let (l, r) = expected_identity(case, params, &point, form)?;
        if !(l - r).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
