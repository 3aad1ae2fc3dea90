//! Lee weight distributions, computed three ways, and the Lee weight
//! enumerator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::boolean::mask;
use crate::construction::{lee_weight_formula, materialize, DefiningSetSpec, Limits};
use crate::error::{Error, Result};
use crate::ring::RingVector;
use crate::tables::closed_form_rows;

/// Largest `m` for which [`distribution_formula`] walks all `4^m` messages.
pub const FORMULA_MAX_M: usize = 12;

/// What the frequencies of a [`LeeDistribution`] count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Messages `v ∈ E^m`; sums to `4^m`.
    PerMessage,
    /// Distinct codewords; sums to the code size.
    PerCodeword,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeeDistribution {
    pub basis: Basis,
    pub entries: BTreeMap<u64, u64>,
}

impl LeeDistribution {
    pub fn new(basis: Basis, entries: BTreeMap<u64, u64>) -> Self {
        let entries = entries.into_iter().filter(|&(_, f)| f > 0).collect();
        Self { basis, entries }
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    /// Messages encoding to the zero word; only meaningful per message.
    pub fn kernel_size(&self) -> u64 {
        self.frequency(0)
    }

    /// Weights above zero with nonzero frequency, ascending.
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.entries.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn num_nonzero_weights(&self) -> usize {
        self.nonzero_weights().len()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.nonzero_weights().last().copied()
    }

    /// Divides every bin by `kernel`, turning message counts into codeword
    /// counts. Fails unless every bin divides exactly.
    pub fn to_per_codeword(&self, kernel: u64) -> Result<Self> {
        if self.basis != Basis::PerMessage {
            return Err(Error::WrongBasis { expected: "per_message" });
        }
        if kernel == 0 {
            return Err(Error::InvalidParameters("kernel size 0".into()));
        }
        let mut entries = BTreeMap::new();
        for (&weight, &frequency) in &self.entries {
            if frequency % kernel != 0 {
                return Err(Error::IndivisibleFrequency { weight, frequency, kernel });
            }
            entries.insert(weight, frequency / kernel);
        }
        Ok(Self::new(Basis::PerCodeword, entries))
    }
}

/// Histogram over all `4^m` messages of the Lee weight of the actual
/// codeword, encoded coordinate by coordinate.
pub fn distribution_bruteforce(spec: &DefiningSetSpec, limits: &Limits) -> Result<LeeDistribution> {
    limits.check(spec.m())?;
    let ods = materialize(spec)?;
    let m = spec.m();
    let full = mask(m);
    let entries = (0..=full)
        .into_par_iter()
        .fold(BTreeMap::new, |mut hist, a| {
            for b in 0..=full {
                let v = RingVector::from_bits(m, a, b);
                let w: u64 = ods.coordinates(&v).map(|e| e.lee_weight() as u64).sum();
                *hist.entry(w).or_insert(0u64) += 1;
            }
            hist
        })
        .reduce(BTreeMap::new, merge_histograms);
    Ok(LeeDistribution::new(Basis::PerMessage, entries))
}

/// Histogram over all `4^m` messages of [`lee_weight_formula`].
pub fn distribution_formula(spec: &DefiningSetSpec) -> Result<LeeDistribution> {
    let m = spec.m();
    if m > FORMULA_MAX_M {
        return Err(Error::TooLarge { m, cap: FORMULA_MAX_M });
    }
    let full = mask(m);
    let entries = (0..=full)
        .into_par_iter()
        .map(|a| {
            let mut hist = BTreeMap::new();
            for b in 0..=full {
                let v = RingVector::from_bits(m, a, b);
                let w = lee_weight_formula(spec, &v).expect("length matches");
                *hist.entry(w).or_insert(0u64) += 1;
            }
            hist
        })
        .reduce(BTreeMap::new, merge_histograms);
    Ok(LeeDistribution::new(Basis::PerMessage, entries))
}

/// The closed-form table with equal weights merged and empty rows dropped.
pub fn distribution_closed_form(spec: &DefiningSetSpec) -> Result<LeeDistribution> {
    let mut entries = BTreeMap::new();
    for row in closed_form_rows(spec) {
        if row.frequency == 0 {
            continue;
        }
        if row.frequency < 0 || row.twice_weight < 0 || row.twice_weight % 2 != 0 {
            return Err(Error::InvalidParameters(format!(
                "table row (2w = {}, f = {}) for {spec} is not a valid weight class",
                row.twice_weight, row.frequency
            )));
        }
        *entries.entry((row.twice_weight / 2) as u64).or_insert(0u64) += row.frequency as u64;
    }
    Ok(LeeDistribution::new(Basis::PerMessage, entries))
}

fn merge_histograms(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (w, f) in b {
        *a.entry(w).or_insert(0) += f;
    }
    a
}

/// One monomial `coeff · X^x Y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratorTerm {
    pub x_exp: u64,
    pub y_exp: u64,
    pub coeff: u64,
}

/// A homogeneous weight enumerator, kept with decreasing `X` exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumerator {
    terms: Vec<EnumeratorTerm>,
}

impl Enumerator {
    pub fn from_terms(terms: impl IntoIterator<Item = EnumeratorTerm>) -> Self {
        let mut merged: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for t in terms {
            *merged.entry((t.x_exp, t.y_exp)).or_insert(0) += t.coeff;
        }
        let mut terms: Vec<_> = merged
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .map(|((x_exp, y_exp), coeff)| EnumeratorTerm { x_exp, y_exp, coeff })
            .collect();
        terms.sort_by(|a, b| b.x_exp.cmp(&a.x_exp).then(a.y_exp.cmp(&b.y_exp)));
        Self { terms }
    }

    pub fn terms(&self) -> &[EnumeratorTerm] {
        &self.terms
    }

    pub fn total(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }
}

/// `Σ_w A_w X^{2n-w} Y^w` for a code of length `n` over E.
pub fn lee_enumerator(dist: &LeeDistribution, length: u64) -> Result<Enumerator> {
    if dist.basis != Basis::PerCodeword {
        return Err(Error::WrongBasis { expected: "per_codeword" });
    }
    let full = 2 * length;
    let mut terms = Vec::with_capacity(dist.entries.len());
    for (&w, &coeff) in &dist.entries {
        if w > full {
            return Err(Error::InvalidParameters(format!(
                "weight {w} exceeds the Gray length {full}"
            )));
        }
        terms.push(EnumeratorTerm { x_exp: full - w, y_exp: w, coeff });
    }
    Ok(Enumerator::from_terms(terms))
}

impl fmt::Display for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let bare = t.x_exp == 0 && t.y_exp == 0;
            if t.coeff != 1 || bare {
                write!(f, "{}", t.coeff)?;
            }
            write_power(f, 'X', t.x_exp)?;
            write_power(f, 'Y', t.y_exp)?;
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, exp: u64) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        e => write!(f, "{var}^{e}"),
    }
}

/// Accepts both `X^128 + 14X^96Y^32` and the braced `X^{128} + 14 X^{96}Y^{32}`.
impl FromStr for Enumerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}')
            .collect();
        if cleaned.is_empty() {
            return Err(Error::EnumeratorParse("empty input".into()));
        }
        let mut terms = Vec::new();
        for raw in cleaned.split('+') {
            terms.push(parse_term(raw).ok_or_else(|| Error::EnumeratorParse(format!("bad term {raw:?}")))?);
        }
        Ok(Self::from_terms(terms))
    }
}

fn parse_term(raw: &str) -> Option<EnumeratorTerm> {
    let digits = raw.chars().take_while(|c| c.is_ascii_digit()).count();
    let (coeff, mut rest) = if digits > 0 {
        (raw[..digits].parse().ok()?, &raw[digits..])
    } else {
        (1, raw)
    };
    let mut x_exp = 0;
    let mut y_exp = 0;
    let mut seen_any = digits > 0;
    while let Some(var) = rest.chars().next() {
        rest = &rest[1..];
        let exp = if let Some(tail) = rest.strip_prefix('^') {
            let n = tail.chars().take_while(|c| c.is_ascii_digit()).count();
            if n == 0 {
                return None;
            }
            let e: u64 = tail[..n].parse().ok()?;
            rest = &tail[n..];
            e
        } else {
            1
        };
        match var {
            'X' => x_exp += exp,
            'Y' => y_exp += exp,
            _ => return None,
        }
        seen_any = true;
    }
    seen_any.then_some(EnumeratorTerm { x_exp, y_exp, coeff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{ConstructionType, Side};

    fn spec(m: usize, kind: ConstructionType, first: &[usize], second: &[usize], side: Side) -> DefiningSetSpec {
        DefiningSetSpec::from_coords(m, kind, first, second, side).unwrap()
    }

    fn dist(pairs: &[(u64, u64)], basis: Basis) -> LeeDistribution {
        LeeDistribution::new(basis, pairs.iter().copied().collect())
    }

    #[test]
    fn bruteforce_left_t1() {
        let s = spec(5, ConstructionType::T1, &[1, 2, 3], &[2, 3, 4], Side::Left);
        let d = distribution_bruteforce(&s, &Limits::default()).unwrap();
        assert_eq!(d, dist(&[(64, 784), (32, 224), (0, 16)], Basis::PerMessage));
        let per = d.to_per_codeword(d.kernel_size()).unwrap();
        assert_eq!(per, dist(&[(64, 49), (32, 14), (0, 1)], Basis::PerCodeword));
        assert_eq!(distribution_formula(&s).unwrap(), d);
        assert_eq!(distribution_closed_form(&s).unwrap(), d);
    }

    #[test]
    fn bruteforce_left_t2() {
        let s = spec(4, ConstructionType::T2, &[2, 4], &[3], Side::Left);
        let d = distribution_bruteforce(&s, &Limits::default()).unwrap();
        assert!(d.frequency(0) >= 1);
        let per = d.to_per_codeword(d.kernel_size()).unwrap();
        assert_eq!(
            per,
            dist(
                &[(12, 24), (28, 72), (24, 144), (16, 6), (32, 9), (0, 1)],
                Basis::PerCodeword
            )
        );
    }

    #[test]
    fn closed_form_right_t1() {
        let s = spec(5, ConstructionType::T1, &[1, 2, 3], &[2, 3, 4], Side::Right);
        let d = distribution_closed_form(&s).unwrap();
        assert_eq!(d, dist(&[(64, 896), (32, 64), (0, 64)], Basis::PerMessage));
        let per = d.to_per_codeword(64).unwrap();
        assert_eq!(per, dist(&[(64, 14), (32, 1), (0, 1)], Basis::PerCodeword));
    }

    #[test]
    fn closed_form_trivial_code_merges() {
        let s = spec(3, ConstructionType::T1, &[], &[], Side::Left);
        let d = distribution_closed_form(&s).unwrap();
        assert_eq!(d, dist(&[(0, 64)], Basis::PerMessage));
        assert_eq!(distribution_bruteforce(&s, &Limits::default()).unwrap(), d);
    }

    #[test]
    fn bruteforce_respects_cap() {
        let s = spec(5, ConstructionType::T1, &[1], &[2], Side::Left);
        assert!(distribution_bruteforce(&s, &Limits::new(4)).is_err());
    }

    #[test]
    fn per_codeword_requires_divisibility() {
        let d = dist(&[(0, 4), (2, 6)], Basis::PerMessage);
        assert!(matches!(d.to_per_codeword(4), Err(Error::IndivisibleFrequency { .. })));
        let per = dist(&[(0, 1)], Basis::PerCodeword);
        assert!(per.to_per_codeword(1).is_err());
    }

    #[test]
    fn enumerator_rendering() {
        let trivial = dist(&[(0, 1)], Basis::PerCodeword);
        assert_eq!(lee_enumerator(&trivial, 4).unwrap().to_string(), "X^8");

        let per = dist(&[(64, 49), (32, 14), (0, 1)], Basis::PerCodeword);
        let e = lee_enumerator(&per, 64).unwrap();
        assert_eq!(e.to_string(), "X^128 + 14X^96Y^32 + 49X^64Y^64");
        assert_eq!(e.total(), 64);

        let msg = dist(&[(0, 1)], Basis::PerMessage);
        assert!(lee_enumerator(&msg, 4).is_err());
    }

    #[test]
    fn enumerator_parsing() {
        let braced: Enumerator = "X^{128} + 14 X^{96}Y^{32} + 49 X^{64} Y^{64}".parse().unwrap();
        let plain: Enumerator = "X^128 + 14X^96Y^32 + 49X^64Y^64".parse().unwrap();
        assert_eq!(braced, plain);
        // Order of terms does not matter.
        let shuffled: Enumerator = "49X^64Y^64 + X^128 + 14X^96Y^32".parse().unwrap();
        assert_eq!(shuffled, plain);
        let round: Enumerator = plain.to_string().parse().unwrap();
        assert_eq!(round, plain);
        assert!("".parse::<Enumerator>().is_err());
        assert!("X^ + 1".parse::<Enumerator>().is_err());
        assert!("Z^3".parse::<Enumerator>().is_err());
    }
}
