//! Gray images of codes over E and the checks run on them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::binary::{BinaryCode, WeightSummary, Word, MAX_MINIMALITY_K};
use crate::construction::{
    materialize, CodeOverE, ConstructionType, DefiningSetSpec, Limits, Side,
};
use crate::distribution::{
    distribution_bruteforce, distribution_closed_form, distribution_formula, lee_enumerator,
    LeeDistribution, FORMULA_MAX_M,
};
use crate::error::{Error, Result};
use crate::ring::RingVector;

/// Optimality claims that need an external table of best-known codes.
pub const DATABASE_OPTIMALITY: &str = "not verifiable offline";

/// The binary code `Φ(C)`, spanned by the images of the `2m` generators
/// `a·eᵢ` and `c·eᵢ` of `E^m`.
pub fn gray_image(spec: &DefiningSetSpec, limits: &Limits) -> Result<BinaryCode> {
    limits.check(spec.m())?;
    let ods = materialize(spec)?;
    let m = spec.m();
    let n = ods.len();
    let generators = (0..m).flat_map(|i| {
        let unit = 1u32 << i;
        [RingVector::from_bits(m, unit, 0), RingVector::from_bits(m, 0, unit)]
    });
    let words = generators.map(|v| {
        let mut w = Word::zeros(2 * n);
        for (j, e) in ods.coordinates(&v).enumerate() {
            let (t, st) = e.gray();
            if t {
                w.set(j);
            }
            if st {
                w.set(n + j);
            }
        }
        w
    });
    BinaryCode::from_generators(2 * n, words.collect::<Vec<_>>())
}

/// `Σ_{i<k} ⌈d / 2^i⌉`.
pub fn griesmer_sum(k: usize, d: u64) -> u64 {
    (0..k as u32)
        .map(|i| d.div_ceil(1u64.checked_shl(i).unwrap_or(u64::MAX)))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GriesmerCheck {
    pub sum: u64,
    pub equality: bool,
}

impl GriesmerCheck {
    fn new(n: u64, k: usize, d: u64) -> Self {
        let sum = griesmer_sum(k, d);
        Self { sum, equality: sum == n }
    }
}

/// Griesmer sum for `[n, k, d]`. A sum above `n` means the parameters
/// cannot belong to a real code, so it is reported as an error.
pub fn griesmer_check(n: u64, k: usize, d: u64) -> Result<GriesmerCheck> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameters(format!(
            "Griesmer bound needs k >= 1 and d >= 1, got k = {k}, d = {d}"
        )));
    }
    let check = GriesmerCheck::new(n, k, d);
    if check.sum > n {
        return Err(Error::InvalidParameters(format!(
            "[{n}, {k}, {d}] violates the Griesmer bound (sum {})",
            check.sum
        )));
    }
    Ok(check)
}

/// `2·wt_min > wt_max`, the binary case of the Ashikhmin–Barg condition.
pub fn ashikhmin_barg(wt_min: u64, wt_max: u64) -> Result<bool> {
    if wt_max == 0 {
        return Err(Error::InvalidParameters("wt_max must be positive".into()));
    }
    Ok(2 * wt_min > wt_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equidistance {
    pub equidistant: bool,
    /// `r` with weight `r·2^(k-1)` and `n ≥ r(2^k - 1)`, when both hold.
    pub replication: Option<u64>,
}

pub fn equidistant_check(distribution: &BTreeMap<usize, u64>, n: usize, k: usize) -> Equidistance {
    let summary = WeightSummary::of(distribution);
    if summary.num_nonzero_weights != 1 || k == 0 {
        return Equidistance { equidistant: false, replication: None };
    }
    let wt = summary.wt_min.expect("one nonzero weight") as u64;
    let half = 1u64 << (k - 1);
    let replication = (wt % half == 0)
        .then(|| wt / half)
        .filter(|&r| n as u64 >= r * ((1u64 << k) - 1));
    Equidistance { equidistant: true, replication }
}

/// Measured properties of a binary code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    /// `None` for the zero code.
    pub d: Option<usize>,
    pub hamming_distribution: BTreeMap<usize, u64>,
    pub num_nonzero_weights: usize,
    pub wt_min: Option<usize>,
    pub wt_max: Option<usize>,
    pub self_orthogonal: bool,
    pub all_weights_div4: bool,
    /// `None` when `k` exceeds the exhaustive-scan cap.
    pub minimal_exhaustive: Option<bool>,
    pub ashikhmin_barg: bool,
    pub griesmer: Option<GriesmerCheck>,
    pub griesmer_equality: bool,
    pub equidistant: bool,
    pub replication: Option<u64>,
}

impl CodeReport {
    pub fn measure(code: &BinaryCode) -> Result<Self> {
        Self::measure_with(code, true)
    }

    /// Like [`CodeReport::measure`], optionally skipping the minimality
    /// scan, which dominates the cost for large `k`.
    pub fn measure_with(code: &BinaryCode, minimality: bool) -> Result<Self> {
        let distribution = code.weight_distribution()?;
        let summary = WeightSummary::of(&distribution);
        let minimal_exhaustive = if minimality && code.k() <= MAX_MINIMALITY_K {
            Some(code.is_minimal_exhaustive()?)
        } else {
            None
        };
        let (ashikhmin_barg, griesmer) = match (summary.wt_min, summary.wt_max) {
            (Some(lo), Some(hi)) => (
                ashikhmin_barg(lo as u64, hi as u64)?,
                Some(GriesmerCheck::new(code.n() as u64, code.k(), lo as u64)),
            ),
            _ => (true, None),
        };
        let eq = equidistant_check(&distribution, code.n(), code.k());
        Ok(Self {
            n: code.n(),
            k: code.k(),
            d: summary.wt_min,
            all_weights_div4: distribution.keys().all(|w| w % 4 == 0),
            hamming_distribution: distribution,
            num_nonzero_weights: summary.num_nonzero_weights,
            wt_min: summary.wt_min,
            wt_max: summary.wt_max,
            self_orthogonal: code.is_self_orthogonal(),
            minimal_exhaustive,
            ashikhmin_barg,
            griesmer_equality: griesmer.is_some_and(|g| g.equality),
            griesmer,
            equidistant: eq.equidistant,
            replication: eq.replication,
        })
    }
}

/// Predicted `[n, k, d]` of a Gray image. `d` is kept doubled because the
/// formulas give `d = 1/2` style values at boundary parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedParams {
    pub n: u64,
    pub k: usize,
    pub twice_d: i64,
}

impl ExpectedParams {
    /// `d` when the prediction is an integer.
    pub fn d(&self) -> Option<u64> {
        (self.twice_d >= 0 && self.twice_d % 2 == 0).then_some(self.twice_d as u64 / 2)
    }
}

/// The stated parameters for the Gray image of `spec`.
pub fn expected_gray_params(spec: &DefiningSetSpec) -> ExpectedParams {
    let m = spec.m() as u32;
    let p = spec.first().weight() as u32;
    let q = spec.second().weight() as u32;
    let u = spec.first().union(&spec.second()).expect("same m").weight();
    let pw = |e: u32| 1i64 << e;
    let n = 2 * spec.size();
    let (k, twice_d) = match (spec.side(), spec.kind()) {
        (Side::Left, ConstructionType::T1) => (2 * p as usize, pw(p + q)),
        (Side::Left, ConstructionType::T2) => (2 * m as usize, (pw(m) - pw(p)) * pw(q)),
        (Side::Left, ConstructionType::T3) => (2 * p as usize, pw(p) * (pw(m) - pw(q))),
        (Side::Left, ConstructionType::T4) => (2 * m as usize, (pw(m) - pw(p)) * (pw(m) - pw(q))),
        (Side::Left, ConstructionType::T5) => (2 * m as usize, pw(2 * m) - pw(p + q)),
        (Side::Right, ConstructionType::T1) => (u, pw(p + q)),
        (Side::Right, ConstructionType::T2) => (m as usize, (pw(m) - pw(p)) * pw(q)),
        (Side::Right, ConstructionType::T3) => (m as usize, pw(p + 1) * (pw(m) - pw(q))),
        (Side::Right, ConstructionType::T4) => (m as usize, 2 * (pw(m) - pw(p)) * (pw(m) - pw(q))),
        (Side::Right, ConstructionType::T5) => (m as usize, 2 * (pw(2 * m) - pw(p + q))),
    };
    ExpectedParams { n, k, twice_d }
}

/// Measured versus predicted parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsCheck {
    pub expected: ExpectedParams,
    pub n_matches: bool,
    pub k_matches: bool,
    /// `None` for the zero code, whose distance is undefined.
    pub d_matches: Option<bool>,
}

impl ParamsCheck {
    pub fn new(spec: &DefiningSetSpec, report: &CodeReport) -> Self {
        let expected = expected_gray_params(spec);
        Self {
            expected,
            n_matches: expected.n == report.n as u64,
            k_matches: expected.k == report.k,
            d_matches: report.d.map(|d| expected.twice_d == 2 * d as i64),
        }
    }

    pub fn all_match(&self) -> bool {
        self.n_matches && self.k_matches && self.d_matches != Some(false)
    }
}

/// One θ optimality predicate and what the Griesmer bound says about the
/// measured parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaVerdict {
    pub theta: i64,
    /// The parameter range of the predicate holds.
    pub applicable: bool,
    /// The range holds and `θ` lies in its window.
    pub fires: bool,
    pub griesmer_sum: Option<u64>,
    pub griesmer_sum_next: Option<u64>,
    /// `Σ(k, d) ≤ n < Σ(k, d + 1)`: no `[n, k, d + 1]` code exists.
    pub griesmer_optimal: Option<bool>,
}

impl ThetaVerdict {
    fn new(theta: i64, applicable: bool, fires: bool, report: &CodeReport) -> Self {
        let (sum, next) = match report.d {
            Some(d) if report.k > 0 => (
                Some(griesmer_sum(report.k, d as u64)),
                Some(griesmer_sum(report.k, d as u64 + 1)),
            ),
            _ => (None, None),
        };
        let n = report.n as u64;
        Self {
            theta,
            applicable,
            fires,
            griesmer_sum: sum,
            griesmer_sum_next: next,
            griesmer_optimal: sum.zip(next).map(|(s, t)| s <= n && t > n),
        }
    }

    /// False only when the predicate fires and the bound disagrees.
    pub fn holds(&self) -> bool {
        !self.fires || self.griesmer_optimal == Some(true)
    }
}

/// Claims made for right codes, checked against a measured report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RightVerdicts {
    pub params: ParamsCheck,
    /// `None` when no sufficient condition is stated for the type.
    pub minimality_condition: Option<bool>,
    pub minimal: Option<bool>,
    pub theta3: Option<ThetaVerdict>,
    pub theta4: Option<ThetaVerdict>,
}

impl RightVerdicts {
    /// Minimality holds wherever its sufficient condition does.
    pub fn minimality_holds(&self) -> bool {
        self.minimality_condition != Some(true) || self.minimal == Some(true)
    }

    pub fn theta_holds(&self) -> bool {
        self.theta3.iter().chain(&self.theta4).all(ThetaVerdict::holds)
    }
}

/// `None` for left specs.
pub fn right_verdicts(spec: &DefiningSetSpec, report: &CodeReport) -> Option<RightVerdicts> {
    if spec.side() != Side::Right {
        return None;
    }
    let m = spec.m() as i64;
    let p = spec.first().weight() as i64;
    let q = spec.second().weight() as i64;
    let minimality_condition = match spec.kind() {
        ConstructionType::T3 => Some(q <= m - 2),
        ConstructionType::T4 => Some(true),
        ConstructionType::T5 => Some(p + q <= 2 * m - 2),
        _ => None,
    };
    let (theta3, theta4) = if spec.kind() == ConstructionType::T3 {
        let t3 = (1i64 << (p + 1)) - 1;
        let in3 = p + q < m;
        let t4 = (1i64 << (p + q + 1 - m).max(0)) * ((1i64 << (m - q)) - 1);
        let in4 = m <= p + q && p + q < 2 * m;
        (
            Some(ThetaVerdict::new(t3, in3, in3 && 1 <= t3 && t3 < p + q + 1, report)),
            Some(ThetaVerdict::new(t4, in4, in4 && 0 < t4 && t4 < m, report)),
        )
    } else {
        (None, None)
    };
    Some(RightVerdicts {
        params: ParamsCheck::new(spec, report),
        minimality_condition,
        minimal: report.minimal_exhaustive,
        theta3,
        theta4,
    })
}

/// Everything computed for one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub spec: DefiningSetSpec,
    pub code: CodeOverE,
    pub lee_per_message: LeeDistribution,
    pub lee_per_codeword: LeeDistribution,
    pub enumerator: String,
    pub closed_form_agrees: bool,
    pub gray: CodeReport,
    pub params: ParamsCheck,
    pub right_verdicts: Option<RightVerdicts>,
    pub database_optimality: &'static str,
}

/// Distribution by direct encoding when `m` is within `limits`, otherwise
/// by the character-sum formula.
pub fn lee_distribution(spec: &DefiningSetSpec, limits: &Limits) -> Result<LeeDistribution> {
    if limits.check(spec.m()).is_ok() {
        distribution_bruteforce(spec, limits)
    } else if spec.m() <= FORMULA_MAX_M {
        distribution_formula(spec)
    } else {
        Err(Error::TooLarge { m: spec.m(), cap: FORMULA_MAX_M })
    }
}

pub fn analyze(spec: &DefiningSetSpec, limits: &Limits) -> Result<AnalysisReport> {
    let per_message = lee_distribution(spec, limits)?;
    let kernel = per_message.kernel_size();
    let per_codeword = per_message.to_per_codeword(kernel)?;
    let enumerator = lee_enumerator(&per_codeword, spec.size())?;
    let closed_form_agrees = distribution_closed_form(spec)? == per_message;
    let gray = CodeReport::measure(&gray_image(spec, limits)?)?;
    Ok(AnalysisReport {
        spec: *spec,
        code: CodeOverE::with_kernel(spec, kernel),
        params: ParamsCheck::new(spec, &gray),
        right_verdicts: right_verdicts(spec, &gray),
        lee_per_message: per_message,
        lee_per_codeword: per_codeword,
        enumerator: enumerator.to_string(),
        closed_form_agrees,
        gray,
        database_optimality: DATABASE_OPTIMALITY,
    })
}
