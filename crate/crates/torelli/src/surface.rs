//! First homology of a genus-g surface with one boundary component, as an
//! exact integer lattice of rank 2g with the symplectic intersection pairing.
//!
//! Basis order is fixed throughout the crate: `a1 .. ag, b1 .. bg`, with
//! pairing `(a_i, b_i) = +1` and all other basis pairings zero.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Genus of the ambient surface; every class attached to it has length 2g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceConfig {
    genus: usize,
}

impl SurfaceConfig {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        Ok(SurfaceConfig { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of H, i.e. 2g.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn zero(&self) -> HClass {
        HClass {
            coords: vec![0; self.rank()],
        }
    }

    /// The basis class `a_i`, 1-indexed.
    pub fn a(&self, i: usize) -> HClass {
        assert!((1..=self.genus).contains(&i), "a{} out of range", i);
        let mut v = self.zero();
        v.coords[i - 1] = 1;
        v
    }

    /// The basis class `b_i`, 1-indexed.
    pub fn b(&self, i: usize) -> HClass {
        assert!((1..=self.genus).contains(&i), "b{} out of range", i);
        let mut v = self.zero();
        v.coords[self.genus + i - 1] = 1;
        v
    }

    /// Build a class from raw coordinates, rejecting wrong lengths.
    pub fn class(&self, coords: Vec<i64>) -> Result<HClass> {
        if coords.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(HClass { coords })
    }

    /// Name of the basis vector with 0-based index `i`: `a1..ag` then `b1..bg`.
    pub fn basis_name(&self, i: usize) -> String {
        if i < self.genus {
            format!("a{}", i + 1)
        } else {
            format!("b{}", i - self.genus + 1)
        }
    }
}

/// An integer first-homology class in the fixed symplectic basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HClass {
    coords: Vec<i64>,
}

impl HClass {
    pub fn from_coords(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: if coords.is_empty() { 2 } else { coords.len() + 1 },
                got: coords.len(),
            });
        }
        Ok(HClass { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> HClass {
        HClass {
            coords: self.coords.iter().map(|&c| c * k).collect(),
        }
    }

    /// The algebraic intersection pairing. Bilinear, antisymmetric,
    /// `(a_i, b_i) = +1`.
    pub fn pairing(&self, other: &HClass) -> Result<i64> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let g = self.genus();
        let mut s: i64 = 0;
        for i in 0..g {
            s += self.coords[i] * other.coords[g + i] - self.coords[g + i] * other.coords[i];
        }
        Ok(s)
    }

    /// Component-wise reduction to H_1(S, Z2).
    pub fn mod2(&self) -> Mod2Vec {
        Mod2Vec {
            bits: self.coords.iter().map(|&c| (c.rem_euclid(2)) as u8).collect(),
        }
    }
}

impl fmt::Display for HClass {
    /// Canonical rendering: `2·a1 - 2·b3`, zero class as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus();
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if i < g {
                format!("a{}", i + 1)
            } else {
                format!("b{}", i - g + 1)
            };
            if first {
                write!(f, "{}·{}", c, name)?;
                first = false;
            } else if c < 0 {
                write!(f, " - {}·{}", -c, name)?;
            } else {
                write!(f, " + {}·{}", c, name)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &HClass {
    type Output = HClass;
    fn add(self, rhs: &HClass) -> HClass {
        assert_eq!(self.rank(), rhs.rank(), "cross-surface class arithmetic");
        HClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for &HClass {
    type Output = HClass;
    fn sub(self, rhs: &HClass) -> HClass {
        assert_eq!(self.rank(), rhs.rank(), "cross-surface class arithmetic");
        HClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Neg for &HClass {
    type Output = HClass;
    fn neg(self) -> HClass {
        self.scaled(-1)
    }
}

/// A vector over Z2 of length 2g.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod2Vec {
    bits: Vec<u8>,
}

impl Mod2Vec {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() || bits.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: if bits.is_empty() { 2 } else { bits.len() + 1 },
                got: bits.len(),
            });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parse("mod-2 vector entries must be 0 or 1".into()));
        }
        Ok(Mod2Vec { bits })
    }

    pub fn zero(rank: usize) -> Self {
        Mod2Vec {
            bits: vec![0; rank],
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn rank(&self) -> usize {
        self.bits.len()
    }

    pub fn genus(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn add(&self, other: &Mod2Vec) -> Mod2Vec {
        assert_eq!(self.rank(), other.rank());
        Mod2Vec {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(x, y)| x ^ y)
                .collect(),
        }
    }

    /// Mod-2 intersection pairing; symmetric since -1 = 1.
    pub fn pairing(&self, other: &Mod2Vec) -> u8 {
        assert_eq!(self.rank(), other.rank());
        let g = self.genus();
        let mut s = 0u8;
        for i in 0..g {
            s ^= self.bits[i] & other.bits[g + i];
            s ^= self.bits[g + i] & other.bits[i];
        }
        s
    }

    pub fn support(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }
}
