//! Integer symplectic matrices and the homology action of Dehn twists.
//!
//! A twist about a curve of class c acts on H as the transvection
//! `v -> v + k·(v,c)·c`; products of transvections give the homology shadow
//! of any twist word, and a word lies over the Torelli group exactly when
//! that shadow is the identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{HClass, Mod2Vec};

/// A 2g x 2g integer matrix; the constructors here always produce matrices
/// satisfying `M^T J M = J` for the standard skew form J.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMatrix {
    n: usize,
    // row-major
    entries: Vec<i64>,
}

impl SpMatrix {
    pub fn identity(rank: usize) -> Self {
        assert!(rank > 0 && rank % 2 == 0);
        let mut entries = vec![0; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        SpMatrix { n: rank, entries }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n % 2 != 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix must be square of even size".into()));
        }
        Ok(SpMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Matrix of the k-th power of the twist transvection along c.
    pub fn transvection(c: &HClass, k: i64) -> Self {
        let n = c.rank();
        let mut m = SpMatrix::identity(n);
        // column j = e_j + k·(e_j, c)·c
        for j in 0..n {
            let mut ej = vec![0i64; n];
            ej[j] = 1;
            let ej = HClass::from_coords(ej).expect("even length");
            let coef = k * ej.pairing(c).expect("same rank");
            if coef != 0 {
                for i in 0..n {
                    m.entries[i * n + j] += coef * c.coords()[i];
                }
            }
        }
        m
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        SpMatrix { n, entries }
    }

    pub fn apply(&self, v: &HClass) -> Result<HClass> {
        if v.rank() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: v.rank(),
            });
        }
        let out = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entries[i * self.n + j] * v.coords()[j])
                    .sum()
            })
            .collect();
        HClass::from_coords(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity(self.n)
    }

    /// Exact check of `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let g = n / 2;
        // (M^T J M)[i][j] = sum_k M[k][i] * (J M)[k][j]
        // J M: rows 0..g are rows g..2g of M; rows g..2g are -(rows 0..g).
        for i in 0..n {
            for j in 0..n {
                let mut s: i64 = 0;
                for k in 0..g {
                    s += self.entries[k * n + i] * self.entries[(g + k) * n + j];
                    s -= self.entries[(g + k) * n + i] * self.entries[k * n + j];
                }
                let expect = if j == i + g {
                    1
                } else if i == j + g {
                    -1
                } else {
                    0
                };
                if s != expect {
                    return false;
                }
            }
        }
        true
    }

    pub fn mod2(&self) -> Mod2Matrix {
        Mod2Matrix {
            n: self.n,
            entries: self.entries.iter().map(|&e| (e.rem_euclid(2)) as u8).collect(),
        }
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Product of twist transvections in word order.
pub fn word_to_sp(word: &[(HClass, i64)]) -> Result<SpMatrix> {
    let rank = match word.first() {
        Some((c, _)) => c.rank(),
        None => return Ok(SpMatrix::identity(2)),
    };
    let mut m = SpMatrix::identity(rank);
    for (c, k) in word {
        if c.rank() != rank {
            return Err(Error::Dimension {
                expected: rank,
                got: c.rank(),
            });
        }
        m = m.mul(&SpMatrix::transvection(c, *k));
    }
    Ok(m)
}

/// True iff the word's homology shadow is the identity.
pub fn is_torelli_shadow(word: &[(HClass, i64)]) -> Result<bool> {
    Ok(word_to_sp(word)?.is_identity())
}

/// A 2g x 2g matrix over Z2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Matrix {
    n: usize,
    entries: Vec<u8>,
}

impl Mod2Matrix {
    pub fn identity(rank: usize) -> Self {
        assert!(rank > 0 && rank % 2 == 0);
        let mut entries = vec![0; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        Mod2Matrix { n: rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    /// Mod-2 transvection along a class d: `v -> v + (v,d)·d`.
    /// `d = 0` yields the identity.
    pub fn transvection(d: &Mod2Vec) -> Self {
        let n = d.rank();
        let mut m = Mod2Matrix::identity(n);
        for j in 0..n {
            let mut bits = vec![0u8; n];
            bits[j] = 1;
            let ej = Mod2Vec::from_bits(bits).expect("valid bits");
            if ej.pairing(d) == 1 {
                for i in 0..n {
                    m.entries[i * n + j] ^= d.get(i);
                }
            }
        }
        m
    }

    pub fn mul(&self, other: &Mod2Matrix) -> Mod2Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.entries[i * n + k] == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] ^= other.entries[k * n + j];
                }
            }
        }
        Mod2Matrix { n, entries }
    }

    /// Column i as a mod-2 vector (the image of the i-th basis class).
    pub fn column(&self, i: usize) -> Mod2Vec {
        Mod2Vec::from_bits((0..self.n).map(|r| self.entries[r * self.n + i]).collect())
            .expect("valid column")
    }

    pub fn apply(&self, v: &Mod2Vec) -> Mod2Vec {
        assert_eq!(self.n, v.rank());
        let out = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .fold(0u8, |s, j| s ^ (self.entries[i * self.n + j] & v.get(j)))
            })
            .collect();
        Mod2Vec::from_bits(out).expect("valid bits")
    }

    /// Checks preservation of the mod-2 pairing on all basis pairs.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let cols: Vec<Mod2Vec> = (0..n).map(|i| self.column(i)).collect();
        let g = n / 2;
        for i in 0..n {
            for j in (i + 1)..n {
                let expect = if j == i + g { 1 } else { 0 };
                if cols[i].pairing(&cols[j]) != expect {
                    return false;
                }
            }
        }
        true
    }
}
