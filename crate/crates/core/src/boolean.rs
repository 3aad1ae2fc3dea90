//! Vectors over F₂^m, simplicial complexes in the support order, and the
//! character sums used to evaluate Lee weights without enumeration.
//!
//! Coordinate `i` of `[m] = {1, ..., m}` lives in bit `i - 1` of the mask, so a
//! vector doubles as the subset of `[m]` given by its support.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension handled anywhere in the crate.
pub const MAX_M: usize = 16;

/// An element of F₂^m stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryVector {
    m: u8,
    bits: u32,
}

impl BinaryVector {
    pub fn new(m: usize, bits: u32) -> Result<Self> {
        check_dimension(m)?;
        if bits & !mask(m) != 0 {
            return Err(Error::InvalidSubset(format!(
                "bits {bits:#b} exceed length {m}"
            )));
        }
        Ok(Self { m: m as u8, bits })
    }

    pub(crate) fn from_bits_unchecked(m: usize, bits: u32) -> Self {
        debug_assert!(bits & !mask(m) == 0);
        Self { m: m as u8, bits }
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, 0)
    }

    /// The all-ones vector, i.e. the subset `[m]` itself.
    pub fn full(m: usize) -> Result<Self> {
        check_dimension(m)?;
        Ok(Self::from_bits_unchecked(m, mask(m)))
    }

    /// Builds the vector whose support is the given set of 1-based coordinates.
    pub fn from_support(m: usize, support: &[usize]) -> Result<Self> {
        check_dimension(m)?;
        let mut bits = 0u32;
        for &i in support {
            if i == 0 || i > m {
                return Err(Error::InvalidSubset(format!(
                    "coordinate {i} is outside [1, {m}]"
                )));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self::from_bits_unchecked(m, bits))
    }

    /// Parses a string such as `"1010"`, coordinate 1 first.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let m = s.len();
        check_dimension(m)?;
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::InvalidSubset(format!("bad bit {ch:?} in {s:?}"))),
            }
        }
        Ok(Self::from_bits_unchecked(m, bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.m as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Hamming weight, equal to the size of the support.
    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Coordinate `i` (1-based).
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} out of range");
        self.bits >> (i - 1) & 1 == 1
    }

    /// Sorted 1-based support.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.get(i)).collect()
    }

    /// `self` covers `other` when `Supp(other) ⊆ Supp(self)`.
    pub fn covers(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(other.bits & !self.bits == 0)
    }

    /// The F₂ inner product.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::from_bits_unchecked(self.len(), self.bits ^ other.bits))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self::from_bits_unchecked(self.len(), self.bits | other.bits))
    }

    /// Every vector of F₂^m in ascending bitmask order.
    pub fn all(m: usize) -> Result<impl Iterator<Item = Self>> {
        check_dimension(m)?;
        Ok((0..=mask(m)).map(move |bits| Self::from_bits_unchecked(m, bits)))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn check_dimension(m: usize) -> Result<()> {
    if m == 0 || m > MAX_M {
        return Err(Error::InvalidDimension(m));
    }
    Ok(())
}

#[inline]
pub(crate) fn mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

#[inline]
pub(crate) fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

/// Parses a subset of `[m]` written as `"1,3,4"`: 1-based, strictly ascending.
/// The empty (or all-whitespace) string is the empty set.
pub fn parse_subset(m: usize, text: &str) -> Result<BinaryVector> {
    let text = text.trim();
    if text.is_empty() {
        return BinaryVector::zero(m);
    }
    let mut coords = Vec::new();
    for part in text.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSubset(format!("{part:?} is not a coordinate")))?;
        coords.push(i);
    }
    subset_from_coords(m, &coords)
}

/// Validates a 1-based strictly ascending coordinate list.
pub fn subset_from_coords(m: usize, coords: &[usize]) -> Result<BinaryVector> {
    if let Some(w) = coords.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSubset(format!(
            "coordinates must be strictly ascending ({} then {})",
            w[0], w[1]
        )));
    }
    BinaryVector::from_support(m, coords)
}

/// A down-closed subset of F₂^m, kept as the antichain of its maximal faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    maximal_faces: Vec<BinaryVector>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces`. Faces covered by another face
    /// are dropped, so the stored list is always an antichain.
    pub fn from_faces(m: usize, faces: &[BinaryVector]) -> Result<Self> {
        check_dimension(m)?;
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        for f in faces {
            if f.len() != m {
                return Err(Error::LengthMismatch { left: m, right: f.len() });
            }
        }
        let mut maximal: Vec<BinaryVector> = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            let dominated = faces.iter().enumerate().any(|(j, g)| {
                j != i && f.bits & !g.bits == 0 && (f.bits != g.bits || j < i)
            });
            if !dominated {
                maximal.push(*f);
            }
        }
        maximal.sort();
        Ok(Self { m, maximal_faces: maximal })
    }

    /// Δ_M: the complex with the single maximal face `M`.
    pub fn simplex(face: BinaryVector) -> Self {
        Self {
            m: face.len(),
            maximal_faces: vec![face],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn maximal_faces(&self) -> &[BinaryVector] {
        &self.maximal_faces
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        v.len() == self.m && self.maximal_faces.iter().any(|f| v.bits & !f.bits == 0)
    }

    /// All members in ascending bitmask order.
    pub fn members(&self) -> Vec<BinaryVector> {
        let mut bits: Vec<u32> = Vec::new();
        for f in &self.maximal_faces {
            bits.extend(submasks(f.bits));
        }
        bits.sort_unstable();
        bits.dedup();
        bits.into_iter()
            .map(|b| BinaryVector::from_bits_unchecked(self.m, b))
            .collect()
    }

    /// `|Δ|` via inclusion–exclusion over nonempty sets of maximal faces.
    pub fn size_inclusion_exclusion(&self) -> u64 {
        let ones = vec![1i64; self.m];
        self.generating_function_eval(&ones) as u64
    }

    /// Evaluates the generating polynomial `Σ_{v∈Δ} Π y_i^{v_i}` at an integer
    /// point using the inclusion–exclusion product form.
    pub fn generating_function_eval(&self, y: &[i64]) -> i64 {
        assert_eq!(y.len(), self.m, "point has wrong arity");
        let faces = &self.maximal_faces;
        let mut total = 0i64;
        for selection in 1u64..(1u64 << faces.len()) {
            let mut meet = mask(self.m);
            for (j, f) in faces.iter().enumerate() {
                if selection >> j & 1 == 1 {
                    meet &= f.bits;
                }
            }
            let term: i64 = (0..self.m)
                .filter(|i| meet >> i & 1 == 1)
                .map(|i| 1 + y[i])
                .product();
            if selection.count_ones() % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}

/// All submasks of `bits`, including 0 and `bits`.
fn submasks(bits: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(bits);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & bits) };
        Some(cur)
    })
}

/// Either Δ_M or its complement F₂^m \ Δ_M, kept symbolically so that
/// complements of size close to 2^m are never materialized by accident.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexRegion {
    face: BinaryVector,
    complement: bool,
}

impl SimplexRegion {
    pub fn simplex(face: BinaryVector) -> Self {
        Self { face, complement: false }
    }

    pub fn complement(face: BinaryVector) -> Self {
        Self { face, complement: true }
    }

    /// F₂^m, i.e. Δ_[m].
    pub fn full(m: usize) -> Result<Self> {
        Ok(Self::simplex(BinaryVector::full(m)?))
    }

    pub fn m(&self) -> usize {
        self.face.len()
    }

    pub fn face(&self) -> BinaryVector {
        self.face
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    pub fn size(&self) -> u64 {
        let inside = 1u64 << self.face.weight();
        if self.complement {
            (1u64 << self.m()) - inside
        } else {
            inside
        }
    }

    #[inline]
    pub fn contains_bits(&self, t: u32) -> bool {
        (t & !self.face.bits == 0) != self.complement
    }

    pub fn contains(&self, t: &BinaryVector) -> bool {
        t.len() == self.m() && self.contains_bits(t.bits)
    }

    /// χ_α over the region in closed form.
    pub fn chi(&self, alpha: &BinaryVector) -> i64 {
        let on_simplex = chi_simplex_fast(alpha, &self.face);
        if self.complement {
            let whole = if alpha.is_zero() { 1i64 << self.m() } else { 0 };
            whole - on_simplex
        } else {
            on_simplex
        }
    }

    /// Members in ascending bitmask order.
    pub fn members(&self) -> impl Iterator<Item = BinaryVector> + '_ {
        let m = self.m();
        (0..=mask(m))
            .filter(move |&t| self.contains_bits(t))
            .map(move |t| BinaryVector::from_bits_unchecked(m, t))
    }
}

/// Ψ(α|M): true iff `Supp(α) ∩ M = ∅`.
#[inline]
pub fn psi(alpha: &BinaryVector, subset: &BinaryVector) -> bool {
    alpha.bits & subset.bits == 0
}

/// χ_α(Q) = Σ_{t∈Q} (−1)^{α·t}, by direct summation.
pub fn chi<I>(alpha: &BinaryVector, set: I) -> i64
where
    I: IntoIterator<Item = BinaryVector>,
{
    set.into_iter()
        .map(|t| if parity(alpha.bits & t.bits) { -1 } else { 1 })
        .sum()
}

/// χ_α(Δ_M) = 2^{|M|} Ψ(α|M), without enumerating Δ_M.
#[inline]
pub fn chi_simplex_fast(alpha: &BinaryVector, subset: &BinaryVector) -> i64 {
    if psi(alpha, subset) {
        1i64 << subset.weight()
    } else {
        0
    }
}

/// `|{v ∈ F₂^m : Ψ(v|M) = target}|`.
pub fn count_psi(m: usize, subset: &BinaryVector, target: bool) -> u64 {
    let p = subset.weight() as u32;
    let free = 1u64 << (m as u32 - p);
    if target {
        free
    } else {
        ((1u64 << p) - 1) * free
    }
}

/// `|{v : Ψ(v|M) = 0, Ψ(v|N) = 0}|`.
pub fn count_psi_pair(m: usize, first: &BinaryVector, second: &BinaryVector) -> u64 {
    let union = BinaryVector::from_bits_unchecked(m, first.bits | second.bits);
    count_psi(m, first, false) + count_psi(m, second, false) - count_psi(m, &union, false)
}

/// Which values Ψ(w|M) and Ψ(v+w|M) take in [`count_psi_joint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JointCase {
    pub psi_w: bool,
    pub psi_sum: bool,
}

impl JointCase {
    pub const ALL: [JointCase; 4] = [
        JointCase { psi_w: false, psi_sum: false },
        JointCase { psi_w: false, psi_sum: true },
        JointCase { psi_w: true, psi_sum: false },
        JointCase { psi_w: true, psi_sum: true },
    ];
}

/// Counts ordered pairs `(v, w)` with `v, w, v + w` all nonzero and the given
/// Ψ pattern on `w` and `v + w`.
pub fn count_psi_joint(m: usize, subset: &BinaryVector, case: JointCase) -> u64 {
    let p = subset.weight() as u32;
    let outside = 1u64 << (m as u32 - p);
    let hit = ((1u64 << p) - 1) * outside;
    match (case.psi_w, case.psi_sum) {
        // (2^p - 2) 2^{m-p} + (2^{m-p} - 1) = hit - 1; written without the
        // subtraction so that p = 0 does not underflow.
        (false, false) => hit.saturating_sub(1) * hit,
        (false, true) | (true, false) => hit * (outside - 1),
        (true, true) => (outside - 1) * outside.saturating_sub(2),
    }
}
