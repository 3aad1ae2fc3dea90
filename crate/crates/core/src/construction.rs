//! Defining sets `D = aD₁ + cD₂ ⊆ E^m` built from Δ_M, Δ_N and their
//! complements, and the left/right codes `v ↦ (v·d)_{d∈D}` and
//! `v ↦ (d·v)_{d∈D}`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolean::{check_dimension, mask, subset_from_coords, BinaryVector, SimplexRegion};
use crate::error::{Error, Result};
use crate::ring::{dot_bits, RingElement, RingVector};

/// Environment variable that overrides [`Limits::max_exhaustive_m`].
pub const MAX_M_ENV: &str = "RINGCODE_MAX_M";

/// Largest defining set that [`materialize`] will build.
pub const MAX_MATERIALIZED: u64 = 1 << 26;

/// Caps on exhaustive work over E^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_exhaustive_m: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_exhaustive_m: 8 }
    }
}

impl Limits {
    pub fn new(max_exhaustive_m: usize) -> Self {
        Self { max_exhaustive_m }
    }

    /// Default limits, with `RINGCODE_MAX_M` taking precedence when set.
    pub fn from_env() -> Self {
        std::env::var(MAX_M_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(|m| Self::new(m.min(crate::boolean::MAX_M)))
            .unwrap_or_default()
    }

    pub fn check(&self, m: usize) -> Result<()> {
        if m > self.max_exhaustive_m {
            return Err(Error::TooLarge {
                m,
                cap: self.max_exhaustive_m,
            });
        }
        Ok(())
    }
}

/// Which of the five defining-set shapes to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionType {
    /// aΔ_M + cΔ_N
    T1,
    /// aΔ_M^c + cΔ_N
    T2,
    /// aΔ_M + cΔ_N^c
    T3,
    /// aΔ_M^c + cΔ_N^c
    T4,
    /// E^m \ (aΔ_M + cΔ_N)
    T5,
}

impl ConstructionType {
    pub const ALL: [ConstructionType; 5] = [Self::T1, Self::T2, Self::T3, Self::T4, Self::T5];

    pub fn index(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for ConstructionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index())
    }
}

impl FromStr for ConstructionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(Self::T1),
            "T2" => Ok(Self::T2),
            "T3" => Ok(Self::T3),
            "T4" => Ok(Self::T4),
            "T5" => Ok(Self::T5),
            other => Err(Error::InvalidParameters(format!("unknown type {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const ALL: [Side; 2] = [Side::Left, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(Error::InvalidParameters(format!("unknown side {other:?}"))),
        }
    }
}

/// A product block `aD₁ + cD₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub first: SimplexRegion,
    pub second: SimplexRegion,
}

impl Block {
    pub fn size(&self) -> u64 {
        self.first.size() * self.second.size()
    }
}

/// The symbolic description of a defining set together with the side of the
/// code built from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecDocument", into = "SpecDocument")]
pub struct DefiningSetSpec {
    m: usize,
    kind: ConstructionType,
    first: BinaryVector,
    second: BinaryVector,
    side: Side,
}

impl DefiningSetSpec {
    /// Validates the spec. Types whose defining set would be empty are
    /// rejected with [`Error::DegenerateDefiningSet`].
    pub fn new(
        kind: ConstructionType,
        first: BinaryVector,
        second: BinaryVector,
        side: Side,
    ) -> Result<Self> {
        let m = first.len();
        check_dimension(m)?;
        if second.len() != m {
            return Err(Error::LengthMismatch { left: m, right: second.len() });
        }
        let spec = Self { m, kind, first, second, side };
        if spec.size() == 0 {
            return Err(Error::DegenerateDefiningSet(spec.to_string()));
        }
        Ok(spec)
    }

    /// Convenience constructor from 1-based coordinate lists.
    pub fn from_coords(
        m: usize,
        kind: ConstructionType,
        first: &[usize],
        second: &[usize],
        side: Side,
    ) -> Result<Self> {
        Self::new(
            kind,
            subset_from_coords(m, first)?,
            subset_from_coords(m, second)?,
            side,
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> ConstructionType {
        self.kind
    }

    /// The subset `M`.
    pub fn first(&self) -> BinaryVector {
        self.first
    }

    /// The subset `N`.
    pub fn second(&self) -> BinaryVector {
        self.second
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn with_side(&self, side: Side) -> Self {
        Self { side, ..*self }
    }

    /// The defining set as a disjoint union of product blocks.
    pub fn blocks(&self) -> Vec<Block> {
        let m_set = self.first;
        let n_set = self.second;
        let simplex = SimplexRegion::simplex;
        let complement = SimplexRegion::complement;
        let block = |first, second| Block { first, second };
        match self.kind {
            ConstructionType::T1 => vec![block(simplex(m_set), simplex(n_set))],
            ConstructionType::T2 => vec![block(complement(m_set), simplex(n_set))],
            ConstructionType::T3 => vec![block(simplex(m_set), complement(n_set))],
            ConstructionType::T4 => vec![block(complement(m_set), complement(n_set))],
            ConstructionType::T5 => {
                let full = SimplexRegion::full(self.m).expect("dimension already checked");
                vec![
                    block(complement(m_set), full),
                    block(simplex(m_set), complement(n_set)),
                ]
            }
        }
    }

    /// `|D|` in closed form.
    pub fn size(&self) -> u64 {
        self.blocks().iter().map(Block::size).sum()
    }

    /// Membership of `at₁ + ct₂`.
    pub fn contains_bits(&self, t1: u32, t2: u32) -> bool {
        let in_m = t1 & !self.first.bits() == 0;
        let in_n = t2 & !self.second.bits() == 0;
        match self.kind {
            ConstructionType::T1 => in_m && in_n,
            ConstructionType::T2 => !in_m && in_n,
            ConstructionType::T3 => in_m && !in_n,
            ConstructionType::T4 => !in_m && !in_n,
            ConstructionType::T5 => !(in_m && in_n),
        }
    }

    /// Code size claimed for this construction: `4^m / |kernel|`.
    pub fn claimed_code_size(&self) -> u64 {
        let m = self.m as u32;
        let p = self.first.weight() as u32;
        match (self.side, self.kind) {
            (Side::Left, ConstructionType::T1 | ConstructionType::T3) => 1 << (2 * p),
            (Side::Left, _) => 1 << (2 * m),
            (Side::Right, ConstructionType::T1) => {
                1 << (self.first.bits() | self.second.bits()).count_ones()
            }
            (Side::Right, _) => 1 << m,
        }
    }
}

impl fmt::Display for DefiningSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} m={} M={{{}}} N={{{}}}",
            self.side,
            self.kind,
            self.m,
            join(&self.first.support()),
            join(&self.second.support())
        )
    }
}

fn join(coords: &[usize]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Subsets in JSON may be an array `[1,3]` or a string `"1,3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetDocument {
    List(Vec<usize>),
    Text(String),
}

impl SubsetDocument {
    fn resolve(&self, m: usize) -> Result<BinaryVector> {
        match self {
            SubsetDocument::List(coords) => subset_from_coords(m, coords),
            SubsetDocument::Text(text) => crate::boolean::parse_subset(m, text),
        }
    }
}

/// The JSON form of a [`DefiningSetSpec`], before validation. Deserialize
/// into this type to tell malformed input apart from a well-formed spec
/// that fails [`DefiningSetSpec::new`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub m: usize,
    #[serde(rename = "type")]
    pub kind: ConstructionType,
    #[serde(rename = "M")]
    pub first: SubsetDocument,
    #[serde(rename = "N")]
    pub second: SubsetDocument,
    pub side: Side,
}

impl TryFrom<SpecDocument> for DefiningSetSpec {
    type Error = Error;

    fn try_from(repr: SpecDocument) -> Result<Self> {
        check_dimension(repr.m)?;
        DefiningSetSpec::new(
            repr.kind,
            repr.first.resolve(repr.m)?,
            repr.second.resolve(repr.m)?,
            repr.side,
        )
    }
}

impl From<DefiningSetSpec> for SpecDocument {
    fn from(spec: DefiningSetSpec) -> Self {
        SpecDocument {
            m: spec.m,
            kind: spec.kind,
            first: SubsetDocument::List(spec.first.support()),
            second: SubsetDocument::List(spec.second.support()),
            side: spec.side,
        }
    }
}

/// A defining set listed in canonical order: `t₁` ascending, then `t₂`
/// ascending, as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDefiningSet {
    spec: DefiningSetSpec,
    elements: Vec<RingVector>,
}

impl OrderedDefiningSet {
    pub fn spec(&self) -> &DefiningSetSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[RingVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The codeword of message `v`.
    pub fn encode(&self, v: &RingVector) -> Result<Vec<RingElement>> {
        self.check_message(v)?;
        Ok(self.coordinates(v).collect())
    }

    /// Lee weight of the codeword of `v`, computed coordinate by coordinate.
    pub fn encoded_lee_weight(&self, v: &RingVector) -> Result<u64> {
        self.check_message(v)?;
        Ok(self.coordinates(v).map(|e| e.lee_weight() as u64).sum())
    }

    pub(crate) fn coordinates<'a>(&'a self, v: &RingVector) -> impl Iterator<Item = RingElement> + 'a {
        let (va, vb) = (v.alpha().bits(), v.beta().bits());
        let side = self.spec.side;
        self.elements.iter().map(move |d| match side {
            Side::Left => dot_bits(va, vb, d.alpha().bits()),
            Side::Right => dot_bits(d.alpha().bits(), d.beta().bits(), va),
        })
    }

    fn check_message(&self, v: &RingVector) -> Result<()> {
        if v.len() != self.spec.m {
            return Err(Error::LengthMismatch {
                left: self.spec.m,
                right: v.len(),
            });
        }
        Ok(())
    }
}

/// Lists `D` in canonical order.
pub fn materialize(spec: &DefiningSetSpec) -> Result<OrderedDefiningSet> {
    let size = spec.size();
    if size > MAX_MATERIALIZED {
        return Err(Error::InvalidParameters(format!(
            "defining set of {size} elements exceeds the cap of {MAX_MATERIALIZED}"
        )));
    }
    let m = spec.m;
    let full = mask(m);
    let mut elements = Vec::with_capacity(size as usize);
    for t1 in 0..=full {
        for t2 in 0..=full {
            if spec.contains_bits(t1, t2) {
                elements.push(RingVector::from_bits(m, t1, t2));
            }
        }
    }
    debug_assert_eq!(elements.len() as u64, size);
    Ok(OrderedDefiningSet {
        spec: *spec,
        elements,
    })
}

/// Lee weight of the codeword of `v` from character sums over the blocks of
/// `D`, without touching individual elements.
pub fn lee_weight_formula(spec: &DefiningSetSpec, v: &RingVector) -> Result<u64> {
    if v.len() != spec.m {
        return Err(Error::LengthMismatch { left: spec.m, right: v.len() });
    }
    let alpha = v.alpha();
    let beta = v.beta();
    let sum = alpha.xor(&beta)?;
    let mut twice: i64 = 0;
    for block in spec.blocks() {
        let size = block.size() as i64;
        let first = block.first.size() as i64;
        let second = block.second.size() as i64;
        twice += match spec.side {
            // 2|B| - |D₂| (χ_β(D₁) + χ_{α+β}(D₁))
            Side::Left => 2 * size - second * (block.first.chi(&beta) + block.first.chi(&sum)),
            // 2|B| - χ_α(D₂) (|D₁| + χ_α(D₁))
            Side::Right => 2 * size - block.second.chi(&alpha) * (first + block.first.chi(&alpha)),
        };
    }
    debug_assert!(twice >= 0 && twice % 2 == 0, "odd doubled weight {twice}");
    Ok((twice / 2) as u64)
}

/// Number of messages whose codeword is zero, by exhaustive scan.
pub fn kernel_size(spec: &DefiningSetSpec, limits: &Limits) -> Result<u64> {
    limits.check(spec.m)?;
    let ods = materialize(spec)?;
    let m = spec.m;
    let full = mask(m);
    let count = (0..=full)
        .into_par_iter()
        .map(|a| {
            (0..=full)
                .filter(|&b| {
                    let v = RingVector::from_bits(m, a, b);
                    ods.coordinates(&v).all(|e| e == RingElement::Zero)
                })
                .count() as u64
        })
        .sum();
    Ok(count)
}

/// A code over E together with the size bookkeeping of its encoding map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeOverE {
    pub spec: DefiningSetSpec,
    pub length: u64,
    pub message_space_size: u64,
    pub kernel_size: u64,
    pub code_size: u64,
}

impl CodeOverE {
    /// Measures the kernel by exhaustive scan.
    pub fn measure(spec: &DefiningSetSpec, limits: &Limits) -> Result<Self> {
        let kernel = kernel_size(spec, limits)?;
        Ok(Self::with_kernel(spec, kernel))
    }

    pub fn with_kernel(spec: &DefiningSetSpec, kernel: u64) -> Self {
        let messages = 1u64 << (2 * spec.m);
        Self {
            spec: *spec,
            length: spec.size(),
            message_space_size: messages,
            kernel_size: kernel,
            code_size: messages / kernel,
        }
    }

    pub fn matches_claimed_size(&self) -> bool {
        self.code_size == self.spec.claimed_code_size()
    }
}
