//! Parameter sweeps that check every stated property over a grid of specs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{gray_image, griesmer_check, right_verdicts, CodeReport, ParamsCheck};
use crate::boolean::{mask, BinaryVector};
use crate::construction::{CodeOverE, ConstructionType, DefiningSetSpec, Limits, Side};
use crate::distribution::{distribution_bruteforce, distribution_closed_form, LeeDistribution};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Brute-force distribution equals the closed-form table; code size
    /// matches the stated size.
    Tables,
    /// Gray image `[n, k, d]` equals the stated parameters.
    Params,
    /// Self-orthogonality when `|M| + |N| ≥ 3`, and weights divisible by 4
    /// imply self-orthogonality.
    Orthogonality,
    /// Stated minimality conditions, and Ashikhmin–Barg implies minimal.
    Minimality,
    /// No generated code violates the Griesmer bound.
    Griesmer,
    /// Every firing θ predicate gives Griesmer-optimal parameters.
    Theta,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Tables,
        Check::Params,
        Check::Orthogonality,
        Check::Minimality,
        Check::Griesmer,
        Check::Theta,
    ];

    fn needs_gray(self) -> bool {
        self != Check::Tables
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Tables => "tables",
            Check::Params => "params",
            Check::Orthogonality => "orthogonality",
            Check::Minimality => "minimality",
            Check::Griesmer => "griesmer",
            Check::Theta => "theta",
        })
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameters(format!("unknown check {s:?}")))
    }
}

/// Which subsets `M`, `N` a sweep visits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetFilter {
    #[default]
    All,
    /// Only subsets of at most this many coordinates.
    MaxSize(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub m_range: RangeInclusive<usize>,
    pub types: Vec<ConstructionType>,
    pub sides: Vec<Side>,
    pub subset_filter: SubsetFilter,
    pub checks: Vec<Check>,
}

impl SweepConfig {
    /// All types, both sides, all subsets, all checks.
    pub fn new(m_range: RangeInclusive<usize>) -> Self {
        Self {
            m_range,
            types: ConstructionType::ALL.to_vec(),
            sides: Side::ALL.to_vec(),
            subset_filter: SubsetFilter::All,
            checks: Check::ALL.to_vec(),
        }
    }

    pub fn with_checks(mut self, checks: &[Check]) -> Self {
        self.checks = checks.to_vec();
        self
    }

    /// Exhaustive checks need `m` within the limits; the minimality scan is
    /// held to half of that.
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        let (lo, hi) = (*self.m_range.start(), *self.m_range.end());
        if lo == 0 || lo > hi {
            return Err(Error::InvalidParameters(format!("empty or invalid m range {lo}..{hi}")));
        }
        limits.check(hi)?;
        let minimality_cap = limits.max_exhaustive_m / 2;
        if self.checks.contains(&Check::Minimality) && hi > minimality_cap {
            return Err(Error::TooLarge { m: hi, cap: minimality_cap });
        }
        Ok(())
    }

    /// Non-degenerate specs in sweep order: `m`, type, side, then `M` and
    /// `N` by increasing bitmask.
    pub fn specs(&self) -> Vec<DefiningSetSpec> {
        let keep = |bits: u32| match self.subset_filter {
            SubsetFilter::All => true,
            SubsetFilter::MaxSize(s) => bits.count_ones() as usize <= s,
        };
        let mut out = Vec::new();
        for m in self.m_range.clone() {
            for &kind in &self.types {
                for &side in &self.sides {
                    for a in (0..=mask(m)).filter(|&a| keep(a)) {
                        for b in (0..=mask(m)).filter(|&b| keep(b)) {
                            let first = BinaryVector::from_bits_unchecked(m, a);
                            let second = BinaryVector::from_bits_unchecked(m, b);
                            if let Ok(spec) = DefiningSetSpec::new(kind, first, second, side) {
                                out.push(spec);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounter {
    /// Specs on which the check had something to verify.
    pub tested: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub spec: DefiningSetSpec,
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub specs: u64,
    pub counters: BTreeMap<Check, CheckCounter>,
    /// In sweep order.
    pub mismatches: Vec<Mismatch>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Source of the expected per-message distribution for the table check.
pub type TableSource<'a> = &'a (dyn Fn(&DefiningSetSpec) -> Result<LeeDistribution> + Sync);

pub fn run_sweep(config: &SweepConfig, limits: &Limits) -> Result<SweepSummary> {
    run_sweep_with(config, limits, &distribution_closed_form)
}

/// [`run_sweep`] with the closed-form tables replaced by `tables`.
pub fn run_sweep_with(
    config: &SweepConfig,
    limits: &Limits,
    tables: TableSource<'_>,
) -> Result<SweepSummary> {
    config.validate(limits)?;
    let specs = config.specs();
    let outcomes: Vec<Vec<Outcome>> = specs
        .par_iter()
        .map(|spec| check_spec(spec, &config.checks, limits, tables))
        .collect::<Result<_>>()?;

    let mut summary = SweepSummary {
        specs: specs.len() as u64,
        counters: config.checks.iter().map(|&c| (c, CheckCounter::default())).collect(),
        mismatches: Vec::new(),
    };
    for (spec, results) in specs.iter().zip(outcomes) {
        for Outcome { check, failure } in results {
            let counter = summary.counters.entry(check).or_default();
            counter.tested += 1;
            if let Some(detail) = failure {
                counter.mismatches += 1;
                summary.mismatches.push(Mismatch { spec: *spec, check, detail });
            }
        }
    }
    Ok(summary)
}

struct Outcome {
    check: Check,
    failure: Option<String>,
}

impl Outcome {
    fn new(check: Check, failures: Vec<String>) -> Self {
        Self {
            check,
            failure: (!failures.is_empty()).then(|| failures.join("; ")),
        }
    }
}

fn check_spec(
    spec: &DefiningSetSpec,
    checks: &[Check],
    limits: &Limits,
    tables: TableSource<'_>,
) -> Result<Vec<Outcome>> {
    let report = if checks.iter().any(|c| c.needs_gray()) {
        let code = gray_image(spec, limits)?;
        Some(CodeReport::measure_with(&code, checks.contains(&Check::Minimality))?)
    } else {
        None
    };
    let p = spec.first().weight();
    let q = spec.second().weight();
    let mut out = Vec::new();
    for &check in checks {
        let mut failures = Vec::new();
        match (check, &report) {
            (Check::Tables, _) => {
                let brute = distribution_bruteforce(spec, limits)?;
                let expected = tables(spec)?;
                if brute != expected {
                    failures.push(format!("distribution {}", diff(&brute, &expected)));
                }
                let code = CodeOverE::with_kernel(spec, brute.kernel_size());
                if !code.matches_claimed_size() {
                    failures.push(format!(
                        "code size {} (kernel {}) vs stated {}",
                        code.code_size,
                        code.kernel_size,
                        spec.claimed_code_size()
                    ));
                }
            }
            (Check::Params, Some(r)) => {
                let pc = ParamsCheck::new(spec, r);
                if !pc.all_match() {
                    failures.push(format!(
                        "measured [{}, {}, {}] vs stated [{}, {}, {}]",
                        r.n,
                        r.k,
                        r.d.map_or("-".into(), |d| d.to_string()),
                        pc.expected.n,
                        pc.expected.k,
                        half(pc.expected.twice_d)
                    ));
                }
            }
            (Check::Orthogonality, Some(r)) => {
                if p + q >= 3 && !r.self_orthogonal {
                    failures.push(format!("|M|+|N| = {} but not self-orthogonal", p + q));
                }
                if r.all_weights_div4 && !r.self_orthogonal {
                    failures.push("weights divisible by 4 but not self-orthogonal".into());
                }
            }
            (Check::Minimality, Some(r)) => {
                let Some(minimal) = r.minimal_exhaustive else { continue };
                if r.ashikhmin_barg && !minimal {
                    failures.push("Ashikhmin-Barg holds but code is not minimal".into());
                }
                if let Some(v) = right_verdicts(spec, r) {
                    if !v.minimality_holds() {
                        failures.push("stated minimality condition holds but code is not minimal".into());
                    }
                }
            }
            (Check::Griesmer, Some(r)) => {
                let Some(d) = r.d else { continue };
                if let Err(e) = griesmer_check(r.n as u64, r.k, d as u64) {
                    failures.push(e.to_string());
                }
            }
            (Check::Theta, Some(r)) => {
                let Some(v) = right_verdicts(spec, r) else { continue };
                let fired: Vec<_> = v.theta3.iter().chain(&v.theta4).filter(|t| t.fires).collect();
                if fired.is_empty() {
                    continue;
                }
                for t in fired {
                    if !t.holds() {
                        failures.push(format!(
                            "theta = {} fires but Griesmer sums are {:?} / {:?} for n = {}",
                            t.theta, t.griesmer_sum, t.griesmer_sum_next, r.n
                        ));
                    }
                }
            }
            (_, None) => unreachable!("gray report is built for every non-table check"),
        }
        out.push(Outcome::new(check, failures));
    }
    Ok(out)
}

fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        (twice / 2).to_string()
    } else {
        format!("{}/2", twice)
    }
}

/// Weight-by-weight differences, e.g. `w=32: 224 vs 225`.
pub fn diff(actual: &LeeDistribution, expected: &LeeDistribution) -> String {
    let weights: std::collections::BTreeSet<u64> =
        actual.entries.keys().chain(expected.entries.keys()).copied().collect();
    weights
        .into_iter()
        .filter(|&w| actual.frequency(w) != expected.frequency(w))
        .map(|w| format!("w={w}: {} vs {}", actual.frequency(w), expected.frequency(w)))
        .collect::<Vec<_>>()
        .join(", ")
}
