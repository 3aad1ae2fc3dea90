//! Arithmetic in the four-element ring E = {0, a, b, c = a + b} with
//! `a² = a`, `b² = b`, `ab = a`, `ba = b`, and vectors over it.
//!
//! E has characteristic 2, is not commutative, and has no identity. The
//! opposite ring F is covered by swapping the arguments of [`RingElement::mul`].
//!
//! Every element is uniquely `a·s + c·t` with `s, t ∈ F₂`, so a vector over E
//! is stored as a pair of binary vectors `x = aα + cβ`.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::boolean::{check_dimension, mask, parity, BinaryVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[repr(u8)]
pub enum RingElement {
    Zero = 0,
    A = 1,
    B = 2,
    C = 3,
}

use RingElement::{Zero as O, A, B, C};

const ADD: [[RingElement; 4]; 4] = [
    [O, A, B, C],
    [A, O, C, B],
    [B, C, O, A],
    [C, B, A, O],
];

// Row is the left factor.
const MUL: [[RingElement; 4]; 4] = [
    [O, O, O, O],
    [O, A, A, O],
    [O, B, B, O],
    [O, C, C, O],
];

impl RingElement {
    pub const ALL: [RingElement; 4] = [O, A, B, C];

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    /// Coordinates `(s, t)` with `self = a·s + c·t`.
    #[inline]
    pub fn decompose(self) -> (bool, bool) {
        match self {
            O => (false, false),
            A => (true, false),
            B => (true, true),
            C => (false, true),
        }
    }

    #[inline]
    pub fn compose(s: bool, t: bool) -> Self {
        match (s, t) {
            (false, false) => O,
            (true, false) => A,
            (true, true) => B,
            (false, true) => C,
        }
    }

    /// Φ(as + ct) = (t, s + t).
    #[inline]
    pub fn gray(self) -> (bool, bool) {
        let (s, t) = self.decompose();
        (t, s ^ t)
    }

    pub fn lee_weight(self) -> u32 {
        let (x, y) = self.gray();
        x as u32 + y as u32
    }
}

impl Add for RingElement {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        ADD[self as usize][rhs as usize]
    }
}

/// `self × rhs` in E. Multiplication in F is `rhs * self`.
impl Mul for RingElement {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        MUL[self as usize][rhs as usize]
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            O => "0",
            A => "a",
            B => "b",
            C => "c",
        })
    }
}

/// A vector `aα + cβ` in E^m.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RingVector {
    alpha: BinaryVector,
    beta: BinaryVector,
}

impl RingVector {
    pub fn new(alpha: BinaryVector, beta: BinaryVector) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::LengthMismatch {
                left: alpha.len(),
                right: beta.len(),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub(crate) fn from_bits(m: usize, alpha: u32, beta: u32) -> Self {
        Self {
            alpha: BinaryVector::from_bits_unchecked(m, alpha),
            beta: BinaryVector::from_bits_unchecked(m, beta),
        }
    }

    pub fn zero(m: usize) -> Result<Self> {
        check_dimension(m)?;
        Ok(Self::from_bits(m, 0, 0))
    }

    pub fn from_elements(elements: &[RingElement]) -> Result<Self> {
        let m = elements.len();
        check_dimension(m)?;
        let (mut alpha, mut beta) = (0u32, 0u32);
        for (i, e) in elements.iter().enumerate() {
            let (s, t) = e.decompose();
            alpha |= (s as u32) << i;
            beta |= (t as u32) << i;
        }
        Ok(Self::from_bits(m, alpha, beta))
    }

    pub fn elements(&self) -> Vec<RingElement> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Coordinate `i`, 0-based.
    pub fn get(&self, i: usize) -> RingElement {
        RingElement::compose(
            self.alpha.bits() >> i & 1 == 1,
            self.beta.bits() >> i & 1 == 1,
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self) -> BinaryVector {
        self.alpha
    }

    pub fn beta(&self) -> BinaryVector {
        self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            alpha: self.alpha.xor(&other.alpha)?,
            beta: self.beta.xor(&other.beta)?,
        })
    }

    /// Left scalar multiplication `e·x`, coordinate-wise.
    pub fn scale_left(&self, e: RingElement) -> Self {
        let elems: Vec<_> = self.elements().into_iter().map(|x| e * x).collect();
        Self::from_elements(&elems).expect("length preserved")
    }

    /// Right scalar multiplication `x·e`, coordinate-wise.
    pub fn scale_right(&self, e: RingElement) -> Self {
        let elems: Vec<_> = self.elements().into_iter().map(|x| x * e).collect();
        Self::from_elements(&elems).expect("length preserved")
    }

    /// `Σ x_i y_i` with the factors kept in order.
    ///
    /// Since `x × y = x` when `y ∈ {a, b}` and `0` otherwise, only the
    /// coordinates where `y` has an `a`-component contribute.
    pub fn dot(&self, other: &Self) -> Result<RingElement> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(dot_bits(
            self.alpha.bits(),
            self.beta.bits(),
            other.alpha.bits(),
        ))
    }

    /// The Gray image in block layout `(β | α + β)`.
    pub fn gray_map(&self) -> Vec<bool> {
        let m = self.len();
        let (a, b) = (self.alpha.bits(), self.beta.bits());
        let first = (0..m).map(|i| b >> i & 1 == 1);
        let second = (0..m).map(|i| (a ^ b) >> i & 1 == 1);
        first.chain(second).collect()
    }

    /// `wt_H(β) + wt_H(α + β)`.
    pub fn lee_weight(&self) -> usize {
        lee_weight_bits(self.alpha.bits(), self.beta.bits())
    }

    pub fn lee_distance(&self, other: &Self) -> Result<usize> {
        Ok(self.add(other)?.lee_weight())
    }

    /// Every vector of E^m, ordered by `(α, β)`.
    pub fn all(m: usize) -> Result<impl Iterator<Item = Self>> {
        check_dimension(m)?;
        let full = mask(m);
        Ok((0..=full).flat_map(move |a| (0..=full).map(move |b| Self::from_bits(m, a, b))))
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        f.write_str(")")
    }
}

/// Dot product of `aα + cβ` with a vector whose `a`-component is `gamma`.
#[inline]
pub(crate) fn dot_bits(alpha: u32, beta: u32, gamma: u32) -> RingElement {
    RingElement::compose(parity(alpha & gamma), parity(beta & gamma))
}

#[inline]
pub(crate) fn lee_weight_bits(alpha: u32, beta: u32) -> usize {
    (beta.count_ones() + (alpha ^ beta).count_ones()) as usize
}
