//! The square-free Z2 algebra generated by bars of nonzero mod-2 homology
//! classes. Internally only polynomials over the 2g basis variables are
//! stored; the bar of a composite class is expanded through
//! `bar(u + v) = bar(u) + bar(v) + (u·v)·1` into that normal form, so two
//! elements are equal iff their stored term sets are equal.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::Mod2Vec;
use crate::symplectic::Mod2Matrix;

/// A Z2 linear combination of square-free monomials in the 2g basis-bar
/// variables. A monomial is a strictly increasing index set; the empty set
/// is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolPoly {
    nvars: usize,
    terms: BTreeSet<Vec<usize>>,
}

impl BoolPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars > 0 && nvars % 2 == 0);
        BoolPoly {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = BoolPoly::zero(nvars);
        p.terms.insert(Vec::new());
        p
    }

    /// The bar of the i-th basis class (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = BoolPoly::zero(nvars);
        p.terms.insert(vec![i]);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeSet<Vec<usize>> {
        &self.terms
    }

    pub fn contains_term(&self, monomial: &[usize]) -> bool {
        self.terms.contains(monomial)
    }

    /// Z2 addition: symmetric difference of term sets.
    pub fn add(&self, other: &BoolPoly) -> BoolPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut terms = self.terms.clone();
        for m in &other.terms {
            if !terms.remove(m) {
                terms.insert(m.clone());
            }
        }
        BoolPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Distribute, union variables inside each product (bars are
    /// idempotent), cancel mod 2.
    pub fn mul(&self, other: &BoolPoly) -> BoolPoly {
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
        let mut terms: BTreeSet<Vec<usize>> = BTreeSet::new();
        for m in &self.terms {
            for n in &other.terms {
                let mut mn: Vec<usize> = m.iter().chain(n.iter()).copied().collect();
                mn.sort_unstable();
                mn.dedup();
                if !terms.remove(&mn) {
                    terms.insert(mn);
                }
            }
        }
        BoolPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Largest monomial size; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn is_in_b3(&self) -> bool {
        self.degree() <= 3
    }
}

impl fmt::Display for BoolPoly {
    /// Canonical rendering: monomials as space-joined variable names in
    /// basis order, terms `+`-joined in graded-lexicographic order, the
    /// constant term as `1`, the zero polynomial as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let g = self.nvars / 2;
        let name = |i: usize| {
            if i < g {
                format!("a{}", i + 1)
            } else {
                format!("b{}", i - g + 1)
            }
        };
        let mut sorted: Vec<&Vec<usize>> = self.terms.iter().collect();
        sorted.sort_by_key(|m| (m.len(), (*m).clone()));
        let rendered: Vec<String> = sorted
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// The bar of a nonzero mod-2 class, expanded into the basis-variable
/// normal form: the sum of the basis bars in the support plus the constant
/// counting mod 2 the pairwise intersections inside the support. The result
/// is independent of the expansion order.
pub fn bar(v: &Mod2Vec) -> Result<BoolPoly> {
    if v.is_zero() {
        return Err(Error::BarOfZero);
    }
    let n = v.rank();
    let g = v.genus();
    let mut p = BoolPoly::zero(n);
    let supp = v.support();
    for &i in &supp {
        p.terms.insert(vec![i]);
    }
    let mut constant = 0u8;
    for (x, &i) in supp.iter().enumerate() {
        for &j in &supp[x + 1..] {
            // basis pairing mod 2: 1 iff {i, j} is a symplectic pair
            if j == i + g {
                constant ^= 1;
            }
        }
    }
    if constant == 1 {
        p.terms.insert(Vec::new());
    }
    Ok(p)
}

/// Push a polynomial through a mod-2 symplectic change of coordinates:
/// each variable maps to the bar of the image of its basis class, extended
/// multiplicatively over monomials and additively over terms. Fixes 1.
pub fn sp2_action(m: &Mod2Matrix, p: &BoolPoly) -> Result<BoolPoly> {
    if m.rank() != p.nvars() {
        return Err(Error::Dimension {
            expected: p.nvars(),
            got: m.rank(),
        });
    }
    if !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let n = p.nvars();
    let mut out = BoolPoly::zero(n);
    for mono in p.terms() {
        let mut term = BoolPoly::one(n);
        for &i in mono {
            // columns of a symplectic matrix are nonzero, so bar is defined
            term = term.mul(&bar(&m.column(i))?);
        }
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceConfig;

    fn s(g: usize) -> SurfaceConfig {
        SurfaceConfig::new(g).unwrap()
    }

    fn v(sc: &SurfaceConfig, coords: &[i64]) -> Mod2Vec {
        sc.class(coords.to_vec()).unwrap().mod2()
    }

    #[test]
    fn bar_of_basis_generator() {
        let sc = s(2);
        assert_eq!(bar(&sc.a(1).mod2()).unwrap(), BoolPoly::var(4, 0));
    }

    #[test]
    fn bar_picks_up_intersection_constant() {
        let sc = s(2);
        // a1 + b1 -> a1 + b1 + 1
        let p = bar(&v(&sc, &[1, 0, 1, 0])).unwrap();
        let expect = BoolPoly::var(4, 0)
            .add(&BoolPoly::var(4, 2))
            .add(&BoolPoly::one(4));
        assert_eq!(p, expect);
        // b1 + a2 + b2 -> b1 + a2 + b2 + 1
        let p = bar(&v(&sc, &[0, 1, 1, 1])).unwrap();
        let expect = BoolPoly::var(4, 2)
            .add(&BoolPoly::var(4, 1))
            .add(&BoolPoly::var(4, 3))
            .add(&BoolPoly::one(4));
        assert_eq!(p, expect);
    }

    #[test]
    fn bar_of_zero_rejected() {
        assert!(matches!(bar(&Mod2Vec::zero(4)), Err(Error::BarOfZero)));
    }

    #[test]
    fn bars_are_idempotent() {
        let sc = s(2);
        let x = bar(&v(&sc, &[1, 1, 0, 1])).unwrap();
        assert_eq!(x.mul(&x), x);
    }

    #[test]
    fn product_example() {
        // bar(a1)·bar(b1)·(1 + bar(a2)) = a1b1 + a1b1a2
        let sc = s(2);
        let p = bar(&sc.a(1).mod2())
            .unwrap()
            .mul(&bar(&sc.b(1).mod2()).unwrap())
            .mul(&BoolPoly::one(4).add(&bar(&sc.a(2).mod2()).unwrap()));
        let mut expect = BoolPoly::zero(4);
        expect.terms.insert(vec![0, 2]);
        expect.terms.insert(vec![0, 1, 2]);
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "a1 b1 + a1 a2 b1");
    }

    #[test]
    fn triple_product_collapses() {
        // x y w with w = x+y+z and all pairings 0 equals x y z
        let sc = s(3);
        let x = sc.a(1).mod2();
        let y = sc.a(2).mod2();
        let z = sc.a(3).mod2();
        let w = x.add(&y).add(&z);
        let lhs = bar(&x).unwrap().mul(&bar(&y).unwrap()).mul(&bar(&w).unwrap());
        let rhs = bar(&x).unwrap().mul(&bar(&y).unwrap()).mul(&bar(&z).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_and_b3() {
        let sc = s(4);
        let p = bar(&sc.a(2).mod2())
            .unwrap()
            .mul(&bar(&sc.a(3).mod2()).unwrap())
            .mul(&bar(&sc.a(4).mod2()).unwrap());
        assert_eq!(p.degree(), 3);
        assert!(p.is_in_b3());
        assert_eq!(BoolPoly::one(8).degree(), 0);
        assert!(BoolPoly::one(8).is_in_b3());
        let q = p.mul(&bar(&sc.a(1).mod2()).unwrap());
        assert_eq!(q.degree(), 4);
        assert!(!q.is_in_b3());
    }

    #[test]
    fn bar_well_defined_exhaustively_small_genus() {
        // bar(u + w) = bar(u) + bar(w) + (u·w)·1 for every decomposition,
        // which makes every expansion order agree.
        for g in 1..=2 {
            let n = 2 * g;
            for vbits in 1u32..(1 << n) {
                let vv = Mod2Vec::from_bits((0..n).map(|i| ((vbits >> i) & 1) as u8).collect())
                    .unwrap();
                let pv = bar(&vv).unwrap();
                for ubits in 1u32..(1 << n) {
                    let wbits = vbits ^ ubits;
                    if wbits == 0 || ubits == vbits {
                        continue;
                    }
                    let uu =
                        Mod2Vec::from_bits((0..n).map(|i| ((ubits >> i) & 1) as u8).collect())
                            .unwrap();
                    let ww =
                        Mod2Vec::from_bits((0..n).map(|i| ((wbits >> i) & 1) as u8).collect())
                            .unwrap();
                    let mut rhs = bar(&uu).unwrap().add(&bar(&ww).unwrap());
                    if uu.pairing(&ww) == 1 {
                        rhs = rhs.add(&BoolPoly::one(n));
                    }
                    assert_eq!(pv, rhs, "v={:b} u={:b}", vbits, ubits);
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let sc = s(2);
        let a1b1 = BoolPoly::var(4, 0).mul(&BoolPoly::var(4, 2));
        // identity fixes everything
        let id = Mod2Matrix::identity(4);
        assert_eq!(sp2_action(&id, &a1b1).unwrap(), a1b1);
        assert_eq!(sp2_action(&id, &BoolPoly::one(4)).unwrap(), BoolPoly::one(4));
        // transvection along b2 fixes a1 and b1
        let m = Mod2Matrix::transvection(&sc.b(2).mod2());
        assert_eq!(sp2_action(&m, &a1b1).unwrap(), a1b1);
        // transvection along b1 maps a1 -> a1+b1, so
        // a1 b1 -> bar(a1+b1)·b1 = (a1+b1+1)b1 = a1 b1
        let m = Mod2Matrix::transvection(&sc.b(1).mod2());
        assert_eq!(sp2_action(&m, &a1b1).unwrap(), a1b1);
        // and 1 is always fixed
        assert_eq!(sp2_action(&m, &BoolPoly::one(4)).unwrap(), BoolPoly::one(4));
    }

    #[test]
    fn action_rejects_non_symplectic() {
        // the all-ones matrix is degenerate
        let mut rows = vec![vec![1i64; 4]; 4];
        rows[0][0] = 1;
        let m = crate::symplectic::SpMatrix::from_rows(rows).unwrap().mod2();
        assert!(matches!(
            sp2_action(&m, &BoolPoly::one(4)),
            Err(Error::NotSymplectic)
        ));
    }

    #[test]
    fn linear_bar_stays_linear_under_action() {
        let sc = s(2);
        let m = Mod2Matrix::transvection(&v(&sc, &[1, 1, 1, 0]));
        let p = sp2_action(&m, &BoolPoly::var(4, 0)).unwrap();
        assert!(p.degree() <= 1);
    }

    mod laws {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = BoolPoly> {
            proptest::collection::vec(proptest::collection::btree_set(0usize..4, 0..=3), 0..=4)
                .prop_map(|monos| {
                    let mut p = BoolPoly::zero(4);
                    for m in monos {
                        let mut t = BoolPoly::one(4);
                        for i in m {
                            t = t.mul(&BoolPoly::var(4, i));
                        }
                        p = p.add(&t);
                    }
                    p
                })
        }

        proptest! {
            #[test]
            fn mul_commutative_associative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(p.mul(&q), q.mul(&p));
                prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            }

            #[test]
            fn mul_distributes_over_add(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            }

            #[test]
            fn add_is_involutive(p in arb_poly(), q in arb_poly()) {
                prop_assert_eq!(p.add(&q).add(&q), p);
            }
        }
    }
}
