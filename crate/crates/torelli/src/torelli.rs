//! Evaluation of the two abelian-quotient homomorphisms on factored
//! elements: bounding-pair maps, separating twists, and simply intersecting
//! pair (SIP) maps, together with kernel predicates and the separating-SIP
//! image span.
//!
//! The generator formulas are definitional here; nothing is evaluated on
//! unfactored mapping classes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolean::{bar, sp2_action, BoolPoly};
use crate::error::{Error, Result};
use crate::surface::HClass;
use crate::symplectic::{Mod2Matrix, SpMatrix};
use crate::wedge::{wedge3, Wedge3};

fn check_sign(sign: i64) -> Result<i64> {
    if sign == 1 || sign == -1 {
        Ok(sign)
    } else {
        Err(Error::invariant(format!("sign must be +1 or -1, got {}", sign)))
    }
}

fn check_symplectic_basis(basis: &[(HClass, HClass)], rank: usize) -> Result<()> {
    for (x, y) in basis {
        if x.rank() != rank || y.rank() != rank {
            return Err(Error::Dimension {
                expected: rank,
                got: if x.rank() != rank { x.rank() } else { y.rank() },
            });
        }
    }
    for (i, (xi, yi)) in basis.iter().enumerate() {
        if xi.pairing(yi)? != 1 {
            return Err(Error::invariant(format!(
                "basis pair {} must have pairing +1, got {}",
                i + 1,
                xi.pairing(yi)?
            )));
        }
        for (j, (xj, yj)) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            if xi.pairing(xj)? != 0 || yi.pairing(yj)? != 0 || xi.pairing(yj)? != 0 {
                return Err(Error::invariant(format!(
                    "basis pairs {} and {} are not symplectically orthogonal",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// A bounding-pair map `T_c T_d^{-1}`: the common oriented class of the
/// pair together with a symplectic basis of the genus-k subsurface the two
/// curves bound. Genus 0 (an isotopic pair) is allowed and contributes zero
/// to both homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPData {
    pair_class: HClass,
    basis: Vec<(HClass, HClass)>,
}

impl BPData {
    pub fn new(pair_class: HClass, basis: Vec<(HClass, HClass)>) -> Result<Self> {
        let rank = pair_class.rank();
        check_symplectic_basis(&basis, rank)?;
        for (i, (x, y)) in basis.iter().enumerate() {
            if x.pairing(&pair_class)? != 0 || y.pairing(&pair_class)? != 0 {
                return Err(Error::invariant(format!(
                    "basis pair {} must pair to zero with the bounding-pair class",
                    i + 1
                )));
            }
        }
        Ok(BPData { pair_class, basis })
    }

    pub fn pair_class(&self) -> &HClass {
        &self.pair_class
    }

    pub fn basis(&self) -> &[(HClass, HClass)] {
        &self.basis
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.pair_class.rank()
    }

    /// Push the data through an integer symplectic change of coordinates.
    pub fn transformed(&self, m: &SpMatrix) -> Result<BPData> {
        BPData::new(
            m.apply(&self.pair_class)?,
            self.basis
                .iter()
                .map(|(x, y)| Ok((m.apply(x)?, m.apply(y)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// A twist about a separating curve of genus k, with a symplectic basis of
/// the bounded subsurface and the twist exponent sign. The curve itself is
/// null-homologous, so no class is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepTwistData {
    rank: usize,
    basis: Vec<(HClass, HClass)>,
    sign: i64,
}

impl SepTwistData {
    pub fn new(rank: usize, basis: Vec<(HClass, HClass)>, sign: i64) -> Result<Self> {
        if rank == 0 || rank % 2 != 0 {
            return Err(Error::Dimension {
                expected: 2,
                got: rank,
            });
        }
        check_symplectic_basis(&basis, rank)?;
        Ok(SepTwistData {
            rank,
            basis,
            sign: check_sign(sign)?,
        })
    }

    pub fn basis(&self) -> &[(HClass, HClass)] {
        &self.basis
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn transformed(&self, m: &SpMatrix) -> Result<SepTwistData> {
        SepTwistData::new(
            self.rank,
            self.basis
                .iter()
                .map(|(x, y)| Ok((m.apply(x)?, m.apply(y)?)))
                .collect::<Result<Vec<_>>>()?,
            self.sign,
        )
    }
}

/// One signed bounding-pair factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedBp {
    pub bp: BPData,
    pub sign: i64,
}

impl SignedBp {
    pub fn new(bp: BPData, sign: i64) -> Result<Self> {
        Ok(SignedBp {
            bp,
            sign: check_sign(sign)?,
        })
    }
}

/// The two-bounding-pair factorization payload. The second pair carries a
/// full subsurface basis; the first pair's subsurface basis has no
/// homological fingerprint in the source data, so only its class is stored
/// and its contribution is recovered by subtraction (see
/// [`putman_residual`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PutmanData {
    image_class: HClass,
    second: BPData,
}

impl PutmanData {
    pub fn new(image_class: HClass, second: BPData) -> Result<Self> {
        if image_class != *second.pair_class() {
            return Err(Error::invariant(
                "the two bounding pairs of the two-factor form share one homology class",
            ));
        }
        Ok(PutmanData {
            image_class,
            second,
        })
    }

    pub fn image_class(&self) -> &HClass {
        &self.image_class
    }

    pub fn second(&self) -> &BPData {
        &self.second
    }
}

/// A simply intersecting pair map, recorded through its lantern: the four
/// boundary classes (lantern on the left, so they sum to zero and pairwise
/// pair to zero) and optional bounding-pair factorizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SIPData {
    boundary: [HClass; 4],
    five_bp: Option<Vec<SignedBp>>,
    two_bp: Option<PutmanData>,
}

impl SIPData {
    pub fn new(
        boundary: [HClass; 4],
        five_bp: Option<Vec<SignedBp>>,
        two_bp: Option<PutmanData>,
    ) -> Result<Self> {
        let rank = boundary[0].rank();
        for c in &boundary {
            if c.rank() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: c.rank(),
                });
            }
        }
        let sum = boundary
            .iter()
            .fold(HClass::from_coords(vec![0; rank])?, |acc, c| &acc + c);
        if !sum.is_zero() {
            return Err(Error::invariant(
                "lantern boundary classes must sum to zero",
            ));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if boundary[i].pairing(&boundary[j])? != 0 {
                    return Err(Error::invariant(
                        "lantern boundary classes must pairwise pair to zero",
                    ));
                }
            }
        }
        if let Some(items) = &five_bp {
            if items.len() != 5 {
                return Err(Error::invariant(format!(
                    "five-factor form must have exactly 5 items, got {}",
                    items.len()
                )));
            }
            for it in items {
                if it.bp.rank() != rank {
                    return Err(Error::Dimension {
                        expected: rank,
                        got: it.bp.rank(),
                    });
                }
            }
        }
        if let Some(p) = &two_bp {
            if p.image_class.rank() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: p.image_class.rank(),
                });
            }
        }
        Ok(SIPData {
            boundary,
            five_bp,
            two_bp,
        })
    }

    pub fn boundary(&self) -> &[HClass; 4] {
        &self.boundary
    }

    pub fn five_bp(&self) -> Option<&[SignedBp]> {
        self.five_bp.as_deref()
    }

    pub fn two_bp(&self) -> Option<&PutmanData> {
        self.two_bp.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.boundary[0].rank()
    }

    /// The wedge of the boundary classes x, y, z; the image of the map is
    /// this up to a global sign.
    pub fn boundary_wedge(&self) -> Wedge3 {
        wedge3(&self.boundary[1], &self.boundary[2], &self.boundary[3])
            .expect("validated ranks")
    }

    pub fn transformed(&self, m: &SpMatrix) -> Result<SIPData> {
        let boundary = [
            m.apply(&self.boundary[0])?,
            m.apply(&self.boundary[1])?,
            m.apply(&self.boundary[2])?,
            m.apply(&self.boundary[3])?,
        ];
        let five_bp = match &self.five_bp {
            None => None,
            Some(items) => Some(
                items
                    .iter()
                    .map(|it| SignedBp::new(it.bp.transformed(m)?, it.sign))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let two_bp = match &self.two_bp {
            None => None,
            Some(p) => Some(PutmanData::new(
                m.apply(&p.image_class)?,
                p.second.transformed(m)?,
            )?),
        };
        SIPData::new(boundary, five_bp, two_bp)
    }
}

/// One item of a factored Torelli element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorItem {
    Bp { data: BPData, sign: i64 },
    Sep(SepTwistData),
    Sip { data: SIPData, sign: i64 },
}

impl FactorItem {
    fn rank(&self) -> usize {
        match self {
            FactorItem::Bp { data, .. } => data.rank(),
            FactorItem::Sep(s) => s.rank(),
            FactorItem::Sip { data, .. } => data.rank(),
        }
    }
}

/// An ordered product of generator items, all on one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorelliFactorization {
    rank: usize,
    items: Vec<FactorItem>,
}

impl TorelliFactorization {
    pub fn new(rank: usize, items: Vec<FactorItem>) -> Result<Self> {
        if rank == 0 || rank % 2 != 0 {
            return Err(Error::Dimension {
                expected: 2,
                got: rank,
            });
        }
        for it in &items {
            if it.rank() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: it.rank(),
                });
            }
        }
        Ok(TorelliFactorization { rank, items })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn items(&self) -> &[FactorItem] {
        &self.items
    }
}

// ---------------------------------------------------------------------------
// Johnson homomorphism evaluators
// ---------------------------------------------------------------------------

/// Image of a signed bounding-pair map: `sign · Σ x_i ∧ y_i ∧ c`.
pub fn tau_bp(bp: &BPData, sign: i64) -> Wedge3 {
    let mut out = Wedge3::zero(bp.rank());
    for (x, y) in bp.basis() {
        out = out.add(&wedge3(x, y, bp.pair_class()).expect("validated ranks"));
    }
    if sign < 0 {
        out = out.neg();
    }
    out
}

/// Separating twists always map to zero.
pub fn tau_sep(s: &SepTwistData) -> Wedge3 {
    Wedge3::zero(s.rank())
}

/// Image of a simply intersecting pair map. With a five-factor form the
/// signed sum is exact. Without one the image is determined only up to the
/// unresolved global sign, so the call succeeds only when the boundary
/// wedge vanishes (the two kernel situations), where the sign is irrelevant.
pub fn tau_sip(s: &SIPData) -> Result<Wedge3> {
    if let Some(items) = s.five_bp() {
        let mut out = Wedge3::zero(s.rank());
        for it in items {
            out = out.add(&tau_bp(&it.bp, it.sign));
        }
        return Ok(out);
    }
    let w = s.boundary_wedge();
    if w.is_zero() {
        Ok(w)
    } else {
        Err(Error::MissingFactorization)
    }
}

/// Sum of the item images (the target is abelian).
pub fn tau_word(f: &TorelliFactorization) -> Result<Wedge3> {
    let mut out = Wedge3::zero(f.rank());
    for it in f.items() {
        let w = match it {
            FactorItem::Bp { data, sign } => tau_bp(data, *sign),
            FactorItem::Sep(s) => tau_sep(s),
            FactorItem::Sip { data, sign } => {
                let w = tau_sip(data)?;
                if *sign < 0 {
                    w.neg()
                } else {
                    w
                }
            }
        };
        out = out.add(&w);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Birman-Craggs-Johnson evaluators
// ---------------------------------------------------------------------------

/// Image of a bounding-pair map: `Σ x̄_i ȳ_i (1 + c̄)`. The twist sign is
/// irrelevant over Z2. Errors if the pair class vanishes mod 2, where the
/// bar is undefined.
pub fn sigma_bp(bp: &BPData) -> Result<BoolPoly> {
    let n = bp.rank();
    if bp.genus() == 0 {
        return Ok(BoolPoly::zero(n));
    }
    let cbar = bar(&bp.pair_class().mod2())?;
    let factor = BoolPoly::one(n).add(&cbar);
    let mut out = BoolPoly::zero(n);
    for (x, y) in bp.basis() {
        out = out.add(&bar(&x.mod2())?.mul(&bar(&y.mod2())?).mul(&factor));
    }
    Ok(out)
}

/// Image of a separating twist: `Σ x̄_i ȳ_i`, sign-independent.
pub fn sigma_sep(s: &SepTwistData) -> Result<BoolPoly> {
    let mut out = BoolPoly::zero(s.rank());
    for (x, y) in s.basis() {
        out = out.add(&bar(&x.mod2())?.mul(&bar(&y.mod2())?));
    }
    Ok(out)
}

/// Image of a simply intersecting pair map: zero whenever some boundary
/// class vanishes mod 2; otherwise the five-factor sum when available, or
/// the bar-triple of three boundary classes (any three agree).
pub fn sigma_sip(s: &SIPData) -> Result<BoolPoly> {
    let n = s.rank();
    if s.boundary().iter().any(|c| c.mod2().is_zero()) {
        return Ok(BoolPoly::zero(n));
    }
    if let Some(items) = s.five_bp() {
        let mut out = BoolPoly::zero(n);
        for it in items {
            out = out.add(&sigma_bp(&it.bp)?);
        }
        return Ok(out);
    }
    let b = s.boundary();
    Ok(bar(&b[1].mod2())?
        .mul(&bar(&b[2].mod2())?)
        .mul(&bar(&b[3].mod2())?))
}

/// Sum of the item images over Z2.
pub fn sigma_word(f: &TorelliFactorization) -> Result<BoolPoly> {
    let mut out = BoolPoly::zero(f.rank());
    for it in f.items() {
        let p = match it {
            FactorItem::Bp { data, .. } => sigma_bp(data)?,
            FactorItem::Sep(s) => sigma_sep(s)?,
            FactorItem::Sip { data, .. } => sigma_sip(data)?,
        };
        out = out.add(&p);
    }
    Ok(out)
}

/// Image of a separating SIP map `[T_c, T_d]` given the twist data of c and
/// of its image curve under T_d (each with its own subsurface basis):
/// the sum of the two separating-twist images.
pub fn sigma_separating_sip(c: &SepTwistData, image_c: &SepTwistData) -> Result<BoolPoly> {
    if c.rank() != image_c.rank() {
        return Err(Error::Dimension {
            expected: c.rank(),
            got: image_c.rank(),
        });
    }
    Ok(sigma_sep(c)?.add(&sigma_sep(image_c)?))
}

// ---------------------------------------------------------------------------
// Kernel and subgroup predicates
// ---------------------------------------------------------------------------

/// Membership in the Johnson kernel, decided by vanishing of the image
/// wedge. Note the boundary wedge also vanishes for linear dependences
/// among three boundary classes beyond the two geometric situations
/// (a null-homologous boundary or two homologous boundaries).
pub fn sip_in_johnson_kernel(s: &SIPData) -> bool {
    match tau_sip(s) {
        Ok(w) => w.is_zero(),
        // no factorization and a nonzero boundary wedge: the image is
        // ± that wedge, hence nonzero either way
        Err(_) => false,
    }
}

/// Membership in the Birman-Craggs-Johnson kernel: the image vanishes iff
/// some lantern boundary class is zero mod 2.
pub fn sip_in_bcj_kernel(s: &SIPData) -> Result<bool> {
    let direct = sigma_sip(s)?.is_zero();
    let criterion = s.boundary().iter().any(|c| c.mod2().is_zero());
    debug_assert_eq!(direct, criterion);
    Ok(direct)
}

/// Membership in the subgroup of winding-number-zero elements for a word of
/// bounding-pair maps and separating twists: the signed sum
/// `Σ sign·2·genus·[class]` vanishes. Checked against the contraction of
/// the word's image, which must agree.
pub fn chillingworth_membership(f: &TorelliFactorization) -> Result<bool> {
    let mut total = HClass::from_coords(vec![0; f.rank()])?;
    for it in f.items() {
        match it {
            FactorItem::Bp { data, sign } => {
                total = &total + &data.pair_class().scaled(sign * 2 * data.genus() as i64);
            }
            FactorItem::Sep(_) => {}
            FactorItem::Sip { .. } => {
                return Err(Error::invariant(
                    "winding-number membership expects bounding-pair and separating-twist items",
                ));
            }
        }
    }
    let via_contraction = tau_word(f)?.contraction();
    if via_contraction != total {
        return Err(Error::invariant(format!(
            "closed form {} disagrees with contraction {}",
            total, via_contraction
        )));
    }
    Ok(total.is_zero())
}

/// The residual Johnson contribution of the first pair in the two-factor
/// form: the full image minus the second pair's image.
pub fn putman_residual(s: &SIPData) -> Result<Wedge3> {
    let two = s
        .two_bp()
        .ok_or(Error::MissingFactorization)?;
    let total = tau_sip(s)?;
    Ok(total.sub(&tau_bp(two.second(), 1)))
}

/// Consistency of the two-factor form against the five-factor form: the
/// residual contribution must be divisible by the shared class of the first
/// pair (its wedge with that class vanishes).
pub fn putman_check(s: &SIPData) -> Result<bool> {
    let two = s
        .two_bp()
        .ok_or(Error::MissingFactorization)?;
    let residual = putman_residual(s)?;
    Ok(residual.annihilated_by(two.image_class()))
}

// ---------------------------------------------------------------------------
// Separating-SIP image span
// ---------------------------------------------------------------------------

/// A basis of a Z2 subspace of the degree-at-most-2 part of the boolean
/// algebra, in reduced row-echelon form over the graded-lexicographic
/// monomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    nvars: usize,
    basis: Vec<BoolPoly>,
}

impl SpanBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BoolPoly] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// True iff the polynomial lies in the spanned subspace.
    pub fn contains(&self, p: &BoolPoly) -> bool {
        let cols = monomial_index(self.nvars);
        let mut v = match poly_to_vec(p, &cols) {
            Some(v) => v,
            None => return false, // degree > 2
        };
        for b in &self.basis {
            let bv = poly_to_vec(b, &cols).expect("basis stays in degree 2");
            let lead = bv.iter().position(|&x| x == 1).expect("nonzero basis row");
            if v[lead] == 1 {
                for (x, y) in v.iter_mut().zip(&bv) {
                    *x ^= y;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Graded-lex monomial order for degree <= 2: constant, linears, pairs.
fn monomial_index(nvars: usize) -> Vec<Vec<usize>> {
    let mut cols: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..nvars {
        cols.push(vec![i]);
    }
    for i in 0..nvars {
        for j in (i + 1)..nvars {
            cols.push(vec![i, j]);
        }
    }
    cols
}

fn poly_to_vec(p: &BoolPoly, cols: &[Vec<usize>]) -> Option<Vec<u8>> {
    let mut v = vec![0u8; cols.len()];
    for m in p.terms() {
        let idx = cols.iter().position(|c| c == m)?;
        v[idx] = 1;
    }
    Some(v)
}

fn vec_to_poly(v: &[u8], cols: &[Vec<usize>], nvars: usize) -> BoolPoly {
    let mut p = BoolPoly::zero(nvars);
    for (i, &bit) in v.iter().enumerate() {
        if bit == 1 {
            let mut mono = BoolPoly::one(nvars);
            for &var in &cols[i] {
                mono = mono.mul(&BoolPoly::var(nvars, var));
            }
            p = p.add(&mono);
        }
    }
    p
}

fn row_reduce(rows: &mut Vec<Vec<u8>>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.retain(|r| r.contains(&1));
}

/// The three separating-SIP images used as seeds for the span, embedded at
/// the given genus (they live on a genus-2 subsurface).
pub fn separating_sip_seed_images(genus: usize) -> Result<Vec<BoolPoly>> {
    if genus < 2 {
        return Err(Error::invariant("the seed images need genus at least 2"));
    }
    let sc = crate::surface::SurfaceConfig::new(genus)?;
    let n = sc.rank();
    let pair = |x: HClass, y: HClass| -> Result<SepTwistData> {
        SepTwistData::new(n, vec![(x, y)], 1)
    };
    let t2 = sigma_separating_sip(
        &pair(sc.a(1), sc.b(1))?,
        &pair(&sc.a(1) + &sc.b(2), sc.b(1))?,
    )?;
    // the pairs are stored in the orientation with pairing +1
    let t3 = sigma_separating_sip(
        &pair(&(&sc.b(1) + &sc.a(2)) + &sc.b(2), sc.b(2))?,
        &pair(&(&(&sc.a(1) + &sc.b(1)) + &sc.a(2)) + &sc.b(2), sc.b(2))?,
    )?;
    let t4 = sigma_separating_sip(
        &pair(sc.a(1), sc.b(1))?,
        &pair(
            &(&sc.a(1) + &sc.a(2)) + &sc.b(2),
            &(&sc.b(1) + &sc.a(2)) + &sc.b(2),
        )?,
    )?;
    Ok(vec![t2, t3, t4])
}

/// Span of the seed images under `samples` random mod-2 symplectic changes
/// of coordinates (products of mod-2 transvections, seeded), restricted to
/// the degree-at-most-2 monomial coordinates. The seeds themselves are
/// always included.
pub fn ssip_span(genus: usize, samples: usize, seed: u64) -> Result<SpanBasis> {
    let seeds = separating_sip_seed_images(genus)?;
    let n = 2 * genus;
    let cols = monomial_index(n);
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for p in &seeds {
        rows.push(poly_to_vec(p, &cols).ok_or_else(|| {
            Error::invariant("seed image leaves the degree-2 filtration")
        })?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let m = random_mod2_symplectic(n, &mut rng);
        for p in &seeds {
            let img = sp2_action(&m, p)?;
            rows.push(poly_to_vec(&img, &cols).ok_or_else(|| {
                Error::invariant("transported image leaves the degree-2 filtration")
            })?);
        }
    }
    row_reduce(&mut rows);
    let basis = rows.iter().map(|r| vec_to_poly(r, &cols, n)).collect();
    Ok(SpanBasis { nvars: n, basis })
}

/// Random product of 1..=4 mod-2 transvections.
fn random_mod2_symplectic(rank: usize, rng: &mut ChaCha8Rng) -> Mod2Matrix {
    let mut m = Mod2Matrix::identity(rank);
    let steps = rng.gen_range(1..=4);
    for _ in 0..steps {
        let mut bits = vec![0u8; rank];
        while bits.iter().all(|&b| b == 0) {
            for b in bits.iter_mut() {
                *b = rng.gen_range(0..=1);
            }
        }
        let d = crate::surface::Mod2Vec::from_bits(bits).expect("valid bits");
        m = m.mul(&Mod2Matrix::transvection(&d));
    }
    m
}

/// Random product of integer transvections with small powers; always
/// exactly symplectic.
pub fn random_symplectic(rank: usize, steps: usize, rng: &mut ChaCha8Rng) -> SpMatrix {
    let mut m = SpMatrix::identity(rank);
    for _ in 0..steps {
        let mut coords = vec![0i64; rank];
        while coords.iter().all(|&c| c == 0) {
            for c in coords.iter_mut() {
                *c = rng.gen_range(-1..=1);
            }
        }
        let c = HClass::from_coords(coords).expect("even rank");
        let k = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        m = m.mul(&SpMatrix::transvection(&c, k));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::SurfaceConfig;

    fn s(g: usize) -> SurfaceConfig {
        SurfaceConfig::new(g).unwrap()
    }

    #[test]
    fn bp_invariants_enforced() {
        let sc = s(2);
        // pairing(a1, b1) = 1 but class not orthogonal to basis
        assert!(BPData::new(sc.b(1), vec![(sc.a(1), sc.b(1))]).is_err());
        // non-symplectic pair
        assert!(BPData::new(sc.a(2), vec![(sc.a(1), sc.a(2))]).is_err());
        // valid genus-1
        assert!(BPData::new(sc.a(2), vec![(sc.a(1), sc.b(1))]).is_ok());
    }

    #[test]
    fn tau_bp_examples() {
        let sc = s(4);
        // genus-1, basis {a1,b1}, class -a2
        let bp = BPData::new(-&sc.a(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        let w = tau_bp(&bp, 1);
        assert_eq!(w, wedge3(&sc.a(1), &sc.b(1), &(-&sc.a(2))).unwrap());
        // genus-0 contributes nothing
        let bp0 = BPData::new(sc.a(1), vec![]).unwrap();
        assert!(tau_bp(&bp0, 1).is_zero());
        // genus-3 display
        let bp3 = BPData::new(
            -&sc.a(4),
            vec![(sc.a(1), sc.b(1)), (sc.a(2), sc.b(2)), (sc.a(3), sc.b(3))],
        )
        .unwrap();
        let mut expect = Wedge3::zero(8);
        for i in 1..=3 {
            expect = expect.add(&wedge3(&sc.a(i), &sc.b(i), &(-&sc.a(4))).unwrap());
        }
        assert_eq!(tau_bp(&bp3, 1), expect);
    }

    #[test]
    fn tau_sep_is_zero() {
        let sc = s(2);
        let sep = SepTwistData::new(4, vec![(sc.a(1), sc.b(1))], 1).unwrap();
        assert!(tau_sep(&sep).is_zero());
        let sep0 = SepTwistData::new(4, vec![], -1).unwrap();
        assert!(tau_sep(&sep0).is_zero());
    }

    #[test]
    fn sigma_bp_genus1_example() {
        let sc = s(2);
        let bp = BPData::new(sc.a(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        let p = sigma_bp(&bp).unwrap();
        assert_eq!(p.to_string(), "a1 b1 + a1 a2 b1");
    }

    #[test]
    fn sigma_bp_rejects_even_class() {
        let sc = s(2);
        let bp = BPData::new(sc.a(2).scaled(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        assert!(matches!(sigma_bp(&bp), Err(Error::BarOfZero)));
    }

    #[test]
    fn sigma_sep_type_fixtures() {
        let sc = s(2);
        let t2c = SepTwistData::new(4, vec![(sc.a(1), sc.b(1))], 1).unwrap();
        assert_eq!(sigma_sep(&t2c).unwrap().to_string(), "a1 b1");
        let t3c = SepTwistData::new(
            4,
            vec![(&(&sc.b(1) + &sc.a(2)) + &sc.b(2), sc.b(2))],
            1,
        )
        .unwrap();
        assert_eq!(sigma_sep(&t3c).unwrap().to_string(), "a2 b2 + b1 b2");
    }

    #[test]
    fn separating_sip_type_values() {
        let seeds = separating_sip_seed_images(2).unwrap();
        assert_eq!(seeds[0].to_string(), "b1 b2");
        assert_eq!(seeds[1].to_string(), "b2 + a1 b2");
        // exact expansion of the stated bases keeps the bare a1 term
        assert_eq!(
            seeds[2].to_string(),
            "1 + a1 + a2 + b1 + b2 + a1 a2 + a1 b2 + a2 b1 + b1 b2"
        );
    }

    #[test]
    fn standard_fixture_values() {
        let sip = fixtures::standard_sip();
        let sc = s(4);
        let tau = tau_sip(&sip).unwrap();
        assert_eq!(tau, wedge3(&sc.a(2), &sc.a(3), &sc.a(4)).unwrap().neg());
        assert_eq!(tau.to_string(), "-1·a2^a3^a4");
        let sig = sigma_sip(&sip).unwrap();
        assert_eq!(sig.to_string(), "a2 a4 + a2 a3 a4");
        assert!(!sip_in_johnson_kernel(&sip));
        assert!(!sip_in_bcj_kernel(&sip).unwrap());
        assert!(tau.contraction().is_zero());
    }

    #[test]
    fn standard_fixture_triple_products_agree() {
        let sip = fixtures::standard_sip();
        let sig = sigma_sip(&sip).unwrap();
        let b = sip.boundary();
        for skip in 0..4 {
            let picked: Vec<&HClass> = (0..4).filter(|&i| i != skip).map(|i| &b[i]).collect();
            let prod = bar(&picked[0].mod2())
                .unwrap()
                .mul(&bar(&picked[1].mod2()).unwrap())
                .mul(&bar(&picked[2].mod2()).unwrap());
            assert_eq!(prod, sig, "triple omitting index {}", skip);
        }
    }

    #[test]
    fn degenerate_fixtures() {
        let null = fixtures::sip_null_boundary();
        assert!(tau_sip(&null).unwrap().is_zero());
        assert!(sigma_sip(&null).unwrap().is_zero());
        assert!(sip_in_johnson_kernel(&null));
        assert!(sip_in_bcj_kernel(&null).unwrap());

        let twoh = fixtures::sip_two_homologous();
        assert!(tau_sip(&twoh).unwrap().is_zero());
        assert!(sip_in_johnson_kernel(&twoh));
        assert!(!sip_in_bcj_kernel(&twoh).unwrap());
        assert_eq!(sigma_sip(&twoh).unwrap().to_string(), "a1 a2");

        let even = fixtures::sip_mod2_null_boundary();
        assert!(!sip_in_johnson_kernel(&even));
        assert!(sip_in_bcj_kernel(&even).unwrap());
        assert!(matches!(tau_sip(&even), Err(Error::MissingFactorization)));
    }

    #[test]
    fn tau_word_agrees_itemwise() {
        let sip = fixtures::standard_sip();
        let as_one = TorelliFactorization::new(
            8,
            vec![FactorItem::Sip {
                data: sip.clone(),
                sign: 1,
            }],
        )
        .unwrap();
        let as_five = TorelliFactorization::new(
            8,
            sip.five_bp()
                .unwrap()
                .iter()
                .map(|it| FactorItem::Bp {
                    data: it.bp.clone(),
                    sign: it.sign,
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(tau_word(&as_one).unwrap(), tau_word(&as_five).unwrap());
        assert_eq!(sigma_word(&as_one).unwrap(), sigma_word(&as_five).unwrap());
        // empty word
        let empty = TorelliFactorization::new(8, vec![]).unwrap();
        assert!(tau_word(&empty).unwrap().is_zero());
        // item followed by its inverse
        let cancel = TorelliFactorization::new(
            8,
            vec![
                FactorItem::Sip {
                    data: sip.clone(),
                    sign: 1,
                },
                FactorItem::Sip { data: sip, sign: -1 },
            ],
        )
        .unwrap();
        assert!(tau_word(&cancel).unwrap().is_zero());
    }

    #[test]
    fn sigma_outputs_stay_in_b3() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let sip = fixtures::standard_sip();
        for _ in 0..20 {
            let m = random_symplectic(8, 3, &mut rng);
            let moved = sip.transformed(&m).unwrap();
            assert!(sigma_sip(&moved).unwrap().is_in_b3());
            for it in moved.five_bp().unwrap() {
                assert!(sigma_bp(&it.bp).unwrap().is_in_b3());
            }
        }
        for (c, i) in [
            fixtures::ssip_type2(),
            fixtures::ssip_type3(),
            fixtures::ssip_type4(),
        ] {
            assert!(sigma_separating_sip(&c, &i).unwrap().is_in_b3());
        }
    }

    #[test]
    fn word_evaluators_additive_under_concatenation() {
        let sip = fixtures::standard_sip();
        let sc = s(4);
        let bp = BPData::new(sc.a(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        let u = vec![FactorItem::Sip {
            data: sip,
            sign: 1,
        }];
        let v = vec![
            FactorItem::Bp {
                data: bp,
                sign: -1,
            },
            FactorItem::Sep(SepTwistData::new(8, vec![(sc.a(1), sc.b(1))], 1).unwrap()),
        ];
        let mut uv = u.clone();
        uv.extend(v.clone());
        let fu = TorelliFactorization::new(8, u).unwrap();
        let fv = TorelliFactorization::new(8, v).unwrap();
        let fuv = TorelliFactorization::new(8, uv).unwrap();
        assert_eq!(
            tau_word(&fuv).unwrap(),
            tau_word(&fu).unwrap().add(&tau_word(&fv).unwrap())
        );
        assert_eq!(
            sigma_word(&fuv).unwrap(),
            sigma_word(&fu).unwrap().add(&sigma_word(&fv).unwrap())
        );
    }

    #[test]
    fn chillingworth_examples() {
        let sc = s(2);
        let bp = BPData::new(sc.a(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        // bp followed by its inverse
        let f = TorelliFactorization::new(
            4,
            vec![
                FactorItem::Bp {
                    data: bp.clone(),
                    sign: 1,
                },
                FactorItem::Bp {
                    data: bp.clone(),
                    sign: -1,
                },
            ],
        )
        .unwrap();
        assert!(chillingworth_membership(&f).unwrap());
        // two genus-1 items with opposite classes
        let bp_neg = BPData::new(-&sc.a(2), vec![(sc.a(1), sc.b(1))]).unwrap();
        let f = TorelliFactorization::new(
            4,
            vec![
                FactorItem::Bp {
                    data: bp.clone(),
                    sign: 1,
                },
                FactorItem::Bp {
                    data: bp_neg,
                    sign: 1,
                },
            ],
        )
        .unwrap();
        assert!(chillingworth_membership(&f).unwrap());
        // a single genus-1 item: class 2·a2, not zero
        let f = TorelliFactorization::new(4, vec![FactorItem::Bp { data: bp, sign: 1 }]).unwrap();
        assert!(!chillingworth_membership(&f).unwrap());
    }

    #[test]
    fn putman_residual_divisible() {
        let sip = fixtures::standard_sip();
        assert!(putman_check(&sip).unwrap());
        let residual = putman_residual(&sip).unwrap();
        assert!(!residual.is_zero());
        // frozen expected residual: -a2^a3^a4 + a2^a3^b3 - a2^a4^b3 + a3^a4^b3
        assert_eq!(
            residual.to_string(),
            "-1·a2^a3^a4 + 1·a2^a3^b3 - 1·a2^a4^b3 + 1·a3^a4^b3"
        );
    }

    #[test]
    fn span_reaches_dimension_ten() {
        let span = ssip_span(2, 25, 7).unwrap();
        assert_eq!(span.dimension(), 10);
        // symplectic monomials only enter in pairs: a1b1 + a2b2 is in the
        // span, a1b1 alone is not
        let a1b1 = BoolPoly::var(4, 0).mul(&BoolPoly::var(4, 2));
        let a2b2 = BoolPoly::var(4, 1).mul(&BoolPoly::var(4, 3));
        assert!(span.contains(&a1b1.add(&a2b2)));
        assert!(!span.contains(&a1b1));
    }

    #[test]
    fn span_is_deterministic() {
        let s1 = ssip_span(2, 10, 42).unwrap();
        let s2 = ssip_span(2, 10, 42).unwrap();
        assert_eq!(s1, s2);
    }
}
