//! Degree-3 exterior power of H over Z: canonical wedge monomials with
//! integer coefficients, the contraction map down to H, and the
//! Chillingworth class arithmetic built on it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::HClass;

/// An integer linear combination of canonical monomials `e_i ^ e_j ^ e_k`
/// with strictly increasing indices over the 2g basis classes. No zero
/// coefficients are stored, so equality is map equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wedge3 {
    rank: usize,
    terms: BTreeMap<[usize; 3], i64>,
}

impl Wedge3 {
    pub fn zero(rank: usize) -> Self {
        assert!(rank > 0 && rank % 2 == 0);
        Wedge3 {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<[usize; 3], i64> {
        &self.terms
    }

    pub fn coeff(&self, monomial: [usize; 3]) -> i64 {
        self.terms.get(&monomial).copied().unwrap_or(0)
    }

    fn insert(&mut self, monomial: [usize; 3], coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(monomial).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&monomial);
        }
    }

    pub fn add(&self, other: &Wedge3) -> Wedge3 {
        assert_eq!(self.rank, other.rank, "cross-surface wedge arithmetic");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, *c);
        }
        out
    }

    pub fn neg(&self) -> Wedge3 {
        self.scaled(-1)
    }

    pub fn scaled(&self, k: i64) -> Wedge3 {
        if k == 0 {
            return Wedge3::zero(self.rank);
        }
        Wedge3 {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn sub(&self, other: &Wedge3) -> Wedge3 {
        self.add(&other.neg())
    }

    /// The contraction down to H: on a decomposable class,
    /// `u^v^w -> 2((u,v)w - (u,w)v + (v,w)u)`, extended linearly.
    /// Every output coordinate is even.
    pub fn contraction(&self) -> HClass {
        let mut out = vec![0i64; self.rank];
        let g = self.rank / 2;
        // pairing of basis vectors e_i, e_j for i < j: 1 iff j == i + g
        let pair = |i: usize, j: usize| -> i64 {
            if j == i + g {
                1
            } else {
                0
            }
        };
        for (&[i, j, k], &c) in &self.terms {
            out[k] += 2 * c * pair(i, j);
            out[j] -= 2 * c * pair(i, k);
            out[i] += 2 * c * pair(j, k);
        }
        HClass::from_coords(out).expect("even rank")
    }

    /// Wedge with a degree-1 class; the result vanishes exactly when this
    /// 3-form is divisible by the class. Returned as canonical 4-monomials.
    pub fn wedge_class(&self, v: &HClass) -> BTreeMap<[usize; 4], i64> {
        assert_eq!(self.rank, v.rank(), "cross-surface wedge arithmetic");
        let mut out: BTreeMap<[usize; 4], i64> = BTreeMap::new();
        for (&[i, j, k], &c) in &self.terms {
            for (l, &vc) in v.coords().iter().enumerate() {
                if vc == 0 || l == i || l == j || l == k {
                    continue;
                }
                let mut idx = [i, j, k, l];
                let mut sign = 1i64;
                for x in 0..4 {
                    for y in (x + 1)..4 {
                        if idx[x] > idx[y] {
                            idx.swap(x, y);
                            sign = -sign;
                        }
                    }
                }
                let e = out.entry(idx).or_insert(0);
                *e += sign * c * vc;
                if *e == 0 {
                    out.remove(&idx);
                }
            }
        }
        out
    }

    /// True iff `self ^ v = 0`, i.e. v divides this 3-form over Q.
    pub fn annihilated_by(&self, v: &HClass) -> bool {
        self.wedge_class(v).is_empty()
    }
}

impl fmt::Display for Wedge3 {
    /// Canonical rendering: coefficient, `·`, caret-joined basis names in
    /// ascending index order; terms sorted by monomial, e.g. `-1·a2^a3^a4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = self.rank / 2;
        let name = |i: usize| {
            if i < g {
                format!("a{}", i + 1)
            } else {
                format!("b{}", i - g + 1)
            }
        };
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = format!("{}^{}^{}", name(m[0]), name(m[1]), name(m[2]));
            if idx == 0 {
                write!(f, "{}·{}", c, mono)?;
            } else if *c < 0 {
                write!(f, " - {}·{}", -c, mono)?;
            } else {
                write!(f, " + {}·{}", c, mono)?;
            }
        }
        Ok(())
    }
}

/// The trilinear alternating product of three classes, expanded in the basis
/// and canonicalized with sign.
pub fn wedge3(u: &HClass, v: &HClass, w: &HClass) -> Result<Wedge3> {
    if u.rank() != v.rank() || u.rank() != w.rank() {
        return Err(Error::Dimension {
            expected: u.rank(),
            got: if u.rank() != v.rank() { v.rank() } else { w.rank() },
        });
    }
    let n = u.rank();
    let mut out = Wedge3::zero(n);
    // coefficient of e_i^e_j^e_k (i<j<k) is the 3x3 minor determinant
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let det = u.coords()[i] * (v.coords()[j] * w.coords()[k] - v.coords()[k] * w.coords()[j])
                    - v.coords()[i] * (u.coords()[j] * w.coords()[k] - u.coords()[k] * w.coords()[j])
                    + w.coords()[i] * (u.coords()[j] * v.coords()[k] - u.coords()[k] * v.coords()[j]);
                out.insert([i, j, k], det);
            }
        }
    }
    Ok(out)
}

/// The Chillingworth class of an element with the given Johnson image:
/// contraction applied to the image.
pub fn chillingworth_class(tau_image: &Wedge3) -> HClass {
    tau_image.contraction()
}

/// Change-of-winding-number evaluation: the pairing of c against the
/// Chillingworth class.
pub fn e_f(c: &HClass, t_f: &HClass) -> Result<i64> {
    c.pairing(t_f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceConfig;
    use proptest::prelude::*;

    fn s(g: usize) -> SurfaceConfig {
        SurfaceConfig::new(g).unwrap()
    }

    #[test]
    fn sorted_monomial() {
        let sc = s(4);
        let w = wedge3(&sc.a(2), &sc.a(3), &sc.a(4)).unwrap();
        assert_eq!(w.terms().len(), 1);
        assert_eq!(w.coeff([1, 2, 3]), 1);
        assert_eq!(w.to_string(), "1·a2^a3^a4");
    }

    #[test]
    fn repeated_argument_vanishes() {
        let sc = s(3);
        let u = &sc.a(1) + &sc.b(2).scaled(2);
        let w = &sc.b(3) - &sc.a(2);
        assert!(wedge3(&u, &u, &w).unwrap().is_zero());
    }

    #[test]
    fn contraction_examples() {
        let sc = s(4);
        // all pairings vanish
        let w = wedge3(&sc.a(2), &sc.a(3), &sc.a(4)).unwrap();
        assert!(w.contraction().is_zero());
        // only (a1,b1) survives
        let w = wedge3(&sc.a(1), &sc.b(1), &sc.a(2)).unwrap();
        assert_eq!(w.contraction(), sc.a(2).scaled(2));
        // zero input
        assert!(Wedge3::zero(8).contraction().is_zero());
    }

    #[test]
    fn contraction_lands_in_2h() {
        let sc = s(3);
        let u = &(&sc.a(1) + &sc.b(2)) + &sc.a(3).scaled(3);
        let v = &sc.b(1) - &sc.a(2);
        let w = &sc.b(3) + &sc.a(1).scaled(-2);
        let c = wedge3(&u, &v, &w).unwrap().contraction();
        assert!(c.coords().iter().all(|x| x % 2 == 0));
    }

    #[test]
    fn chillingworth_class_is_the_contraction() {
        let sc = s(2);
        let w = wedge3(&sc.a(1), &sc.b(1), &sc.a(2)).unwrap();
        assert_eq!(chillingworth_class(&w), w.contraction());
        assert_eq!(chillingworth_class(&w), sc.a(2).scaled(2));
    }

    #[test]
    fn e_f_examples() {
        let sc = s(2);
        assert_eq!(e_f(&sc.a(2), &sc.b(2).scaled(2)).unwrap(), 2);
        assert_eq!(e_f(&sc.b(1), &sc.a(1).scaled(2)).unwrap(), -2);
        assert_eq!(e_f(&sc.a(1), &sc.zero()).unwrap(), 0);
    }

    #[test]
    fn isotropic_triples_contract_to_zero() {
        let sc = s(4);
        let u = &sc.a(1) + &sc.a(2).scaled(2);
        let v = &sc.a(3) - &sc.a(1);
        let w = sc.a(4);
        assert_eq!(u.pairing(&v).unwrap(), 0);
        assert!(wedge3(&u, &v, &w).unwrap().contraction().is_zero());
    }

    #[test]
    fn wedge_class_divisibility() {
        let sc = s(2);
        let v = &sc.a(1) + &sc.b(2);
        let w3 = wedge3(&sc.a(2), &sc.b(1), &v).unwrap();
        assert!(w3.annihilated_by(&v));
        assert!(!w3.annihilated_by(&sc.a(1)));
    }

    fn arb_class() -> impl Strategy<Value = HClass> {
        proptest::collection::vec(-3i64..=3, 8).prop_map(|v| HClass::from_coords(v).unwrap())
    }

    proptest! {
        #[test]
        fn alternating_under_transposition(u in arb_class(), v in arb_class(), w in arb_class()) {
            let uvw = wedge3(&u, &v, &w).unwrap();
            prop_assert_eq!(wedge3(&v, &u, &w).unwrap(), uvw.neg());
            prop_assert_eq!(wedge3(&u, &w, &v).unwrap(), uvw.neg());
            prop_assert_eq!(wedge3(&w, &v, &u).unwrap(), uvw.neg());
        }

        #[test]
        fn contraction_is_linear(u in arb_class(), v in arb_class(), w in arb_class(), x in arb_class(), k in -3i64..=3) {
            let p = wedge3(&u, &v, &w).unwrap();
            let q = wedge3(&u, &v, &x).unwrap();
            prop_assert_eq!(p.add(&q).contraction(), &p.contraction() + &q.contraction());
            prop_assert_eq!(p.scaled(k).contraction(), p.contraction().scaled(k));
        }

        #[test]
        fn trilinear_in_last_argument(u in arb_class(), v in arb_class(), w in arb_class(), x in arb_class()) {
            let lhs = wedge3(&u, &v, &(&w + &x)).unwrap();
            let rhs = wedge3(&u, &v, &w).unwrap().add(&wedge3(&u, &v, &x).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
