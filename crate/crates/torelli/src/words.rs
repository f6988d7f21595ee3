//! Abstract word algebra over twist symbols: free and cyclic reduction,
//! the lantern-neighbourhood trichotomy for two-generator words,
//! partial-commutation normal forms, and mechanical replay of word-level
//! derivations against a declared relation environment.
//!
//! Symbols carry opaque curve ids and no geometric content. Conjugation is
//! built in through fold/unfold: `T_g^e T_h T_g^-e` folds to a twist about
//! the image curve, written `g(h)` or `g^-1(h)` and treated as a fresh id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::HClass;
use crate::symplectic::{word_to_sp, SpMatrix};

/// An opaque curve name. Atomic ids contain no parentheses; image ids have
/// the shape `g(h)` or `g^-1(h)` where g and h are themselves ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(String);

impl CurveId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::BadCurveId(name));
        }
        let id = CurveId(name);
        id.validate()?;
        Ok(id)
    }

    fn validate(&self) -> Result<()> {
        if let Some((g, _, h)) = self.split_image() {
            g.validate()?;
            h.validate()?;
            Ok(())
        } else if self
            .0
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        {
            Ok(())
        } else {
            Err(Error::BadCurveId(self.0.clone()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The id of the image curve `g^e(h)`.
    pub fn image(g: &CurveId, exp: i8, h: &CurveId) -> CurveId {
        if exp >= 0 {
            CurveId(format!("{}({})", g.0, h.0))
        } else {
            CurveId(format!("{}^-1({})", g.0, h.0))
        }
    }

    /// Decompose an image id into (conjugator, exponent, base). The final
    /// `)` must close a parenthesis whose prefix is the conjugator,
    /// optionally suffixed `^-1`.
    pub fn split_image(&self) -> Option<(CurveId, i8, CurveId)> {
        let s = &self.0;
        if !s.ends_with(')') {
            return None;
        }
        let bytes = s.as_bytes();
        let mut depth = 0i32;
        let mut open = None;
        for i in (0..bytes.len()).rev() {
            match bytes[i] {
                b')' => depth += 1,
                b'(' => {
                    depth -= 1;
                    if depth == 0 {
                        open = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let open = open?;
        let inner = &s[open + 1..s.len() - 1];
        let mut prefix = &s[..open];
        let mut exp = 1i8;
        if let Some(stripped) = prefix.strip_suffix("^-1") {
            prefix = stripped;
            exp = -1;
        }
        if prefix.is_empty() || inner.is_empty() {
            return None;
        }
        Some((CurveId(prefix.to_string()), exp, CurveId(inner.to_string())))
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One signed twist symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist {
    pub id: CurveId,
    pub exp: i8,
}

impl Twist {
    pub fn new(id: CurveId, exp: i8) -> Result<Self> {
        if exp != 1 && exp != -1 {
            return Err(Error::Parse(format!(
                "twist exponent must be +1 or -1, got {}",
                exp
            )));
        }
        Ok(Twist { id, exp })
    }

    pub fn inverse(&self) -> Twist {
        Twist {
            id: self.id.clone(),
            exp: -self.exp,
        }
    }

    fn cancels(&self, other: &Twist) -> bool {
        self.id == other.id && self.exp == -other.exp
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp < 0 {
            write!(f, "{}^-1", self.id)
        } else {
            write!(f, "{}", self.id)
        }
    }
}

pub type Word = Vec<Twist>;

pub fn render_word(w: &[Twist]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Inverse of a word: reverse order, flip exponents.
pub fn invert_word(w: &[Twist]) -> Word {
    w.iter().rev().map(|t| t.inverse()).collect()
}

/// Cancel adjacent inverse pairs until none remain. Stack-based, hence
/// confluent.
pub fn free_reduce(w: &[Twist]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for t in w {
        if out.last().is_some_and(|last| last.cancels(t)) {
            out.pop();
        } else {
            out.push(t.clone());
        }
    }
    out
}

/// Freely reduce, then strip inverse first/last pairs until the word is
/// cyclically reduced.
pub fn cyclic_reduce(w: &[Twist]) -> Word {
    let mut out = free_reduce(w);
    while out.len() >= 2 && out.first().unwrap().cancels(out.last().unwrap()) {
        out.pop();
        out.remove(0);
    }
    out
}

/// The trichotomy for a mapping class of the four-holed sphere presented as
/// a word in the twists about the two defining curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanternClass {
    FiniteOrder,
    Reducible,
    PseudoAnosov,
}

impl fmt::Display for LanternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanternClass::FiniteOrder => write!(f, "finite-order"),
            LanternClass::Reducible => write!(f, "reducible"),
            LanternClass::PseudoAnosov => write!(f, "pseudo-Anosov"),
        }
    }
}

/// Classify a word in the free group on the two twist generators: the
/// empty reduced word is the identity; conjugates of nonzero powers of
/// either generator or of their product are the reducible classes;
/// everything else is pseudo-Anosov. Conjugacy to a power is decided on
/// the cyclically reduced word.
pub fn lantern_classify(w: &[Twist], gen_a: &CurveId, gen_b: &CurveId) -> Result<LanternClass> {
    for t in w {
        if t.id != *gen_a && t.id != *gen_b {
            return Err(Error::UnknownSymbol(t.id.as_str().to_string()));
        }
    }
    let reduced = free_reduce(w);
    if reduced.is_empty() {
        return Ok(LanternClass::FiniteOrder);
    }
    let c = cyclic_reduce(&reduced);
    debug_assert!(!c.is_empty());
    // a^k or b^k: one id, uniform exponent (cyclic reduction forces it)
    if c.iter().all(|t| t.id == c[0].id) {
        debug_assert!(c.iter().all(|t| t.exp == c[0].exp));
        return Ok(LanternClass::Reducible);
    }
    // (ab)^k up to rotation and inversion: even length, alternating ids,
    // uniform exponent
    if c.len() % 2 == 0 {
        let uniform = c.iter().all(|t| t.exp == c[0].exp);
        let alternating = c.windows(2).all(|p| p[0].id != p[1].id);
        if uniform && alternating && c[0].id != c[c.len() - 1].id {
            return Ok(LanternClass::Reducible);
        }
    }
    Ok(LanternClass::PseudoAnosov)
}

/// One lantern-relation instance: the product of the four boundary twists
/// equals the product of the three interior twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanternInstance {
    pub boundary: [CurveId; 4],
    pub interior: [CurveId; 3],
}

impl LanternInstance {
    pub fn new(boundary: [CurveId; 4], interior: [CurveId; 3]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for id in boundary.iter().chain(interior.iter()) {
            if !seen.insert(id.clone()) {
                return Err(Error::invariant(format!(
                    "lantern instance repeats curve '{}'",
                    id
                )));
            }
        }
        Ok(LanternInstance { boundary, interior })
    }

    fn boundary_word(&self) -> Word {
        self.boundary
            .iter()
            .map(|id| Twist {
                id: id.clone(),
                exp: 1,
            })
            .collect()
    }

    fn interior_word(&self) -> Word {
        self.interior
            .iter()
            .map(|id| Twist {
                id: id.clone(),
                exp: 1,
            })
            .collect()
    }
}

/// Declared relations: commuting (disjoint) curve pairs and lantern
/// instances. Twists about the same curve always commute.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationEnv {
    commuting: BTreeSet<(CurveId, CurveId)>,
    lanterns: Vec<LanternInstance>,
}

impl RelationEnv {
    pub fn new() -> Self {
        RelationEnv::default()
    }

    pub fn add_commuting(&mut self, a: CurveId, b: CurveId) {
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.commuting.insert(pair);
    }

    pub fn add_lantern(&mut self, l: LanternInstance) -> usize {
        self.lanterns.push(l);
        self.lanterns.len() - 1
    }

    pub fn lanterns(&self) -> &[LanternInstance] {
        &self.lanterns
    }

    pub fn commuting_pairs(&self) -> &BTreeSet<(CurveId, CurveId)> {
        &self.commuting
    }

    pub fn commutes(&self, a: &CurveId, b: &CurveId) -> bool {
        if a == b {
            return true;
        }
        let pair = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        self.commuting.contains(&pair)
    }
}

/// Which side of a lantern relation a substitution rewrites toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanternSide {
    /// Replace the interior product by the boundary product.
    ToBoundary,
    /// Replace the boundary product by the interior product.
    ToInterior,
}

/// One rewriting step. Positions are 0-based indices into the current word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Insert the trivial pair `T_id^exp T_id^-exp` at `pos`.
    Insert { pos: usize, id: CurveId, exp: i8 },
    /// Remove the inverse pair at `pos`, `pos+1`.
    Cancel { pos: usize },
    /// Swap the commuting symbols at `pos`, `pos+1`.
    Commute { pos: usize },
    /// Apply lantern relation `instance` at `pos`. With `inverted`, the
    /// formally inverted relation words are matched instead.
    Lantern {
        instance: usize,
        pos: usize,
        side: LanternSide,
        inverted: bool,
    },
    /// Fold `T_g^e T_h^d T_g^-e` at `pos` into the image twist.
    Fold { pos: usize },
    /// Expand the image twist at `pos` into its conjugation triple.
    Unfold { pos: usize },
    /// Replace the id at `pos` by an isotopic id declared by the script.
    Isotopy { pos: usize, to: CurveId },
}

/// A recorded derivation: a start word, steps, and the claimed end word.
/// Isotopy axioms and distinctness assumptions are fixture-declared inputs,
/// not verified facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationScript {
    pub start: Word,
    pub steps: Vec<Step>,
    pub end: Word,
    pub isotopies: Vec<(CurveId, CurveId)>,
    pub distinct: Vec<(CurveId, CurveId)>,
}

impl DerivationScript {
    fn isotopic(&self, from: &CurveId, to: &CurveId) -> bool {
        self.isotopies
            .iter()
            .any(|(x, y)| (x == from && y == to) || (x == to && y == from))
    }
}

fn subword_matches(word: &[Twist], pos: usize, pattern: &[Twist]) -> bool {
    word.len() >= pos + pattern.len() && &word[pos..pos + pattern.len()] == pattern
}

/// Replay a script step by step. Returns the final word on success; an
/// illegal step or an end-word mismatch reports the failing step index
/// (the end check is reported as index `steps.len()`).
pub fn check_derivation(env: &RelationEnv, script: &DerivationScript) -> Result<Word> {
    let mut word = script.start.clone();
    for (idx, step) in script.steps.iter().enumerate() {
        apply_step(env, script, &mut word, step)
            .map_err(|reason| Error::derivation(idx, reason))?;
    }
    if word != script.end {
        return Err(Error::derivation(
            script.steps.len(),
            format!(
                "final word '{}' does not match declared end '{}'",
                render_word(&word),
                render_word(&script.end)
            ),
        ));
    }
    Ok(word)
}

fn apply_step(
    env: &RelationEnv,
    script: &DerivationScript,
    word: &mut Word,
    step: &Step,
) -> std::result::Result<(), String> {
    match step {
        Step::Insert { pos, id, exp } => {
            if *pos > word.len() {
                return Err(format!("insert position {} out of range", pos));
            }
            if *exp != 1 && *exp != -1 {
                return Err("insert exponent must be +1 or -1".into());
            }
            word.insert(
                *pos,
                Twist {
                    id: id.clone(),
                    exp: -*exp,
                },
            );
            word.insert(
                *pos,
                Twist {
                    id: id.clone(),
                    exp: *exp,
                },
            );
            Ok(())
        }
        Step::Cancel { pos } => {
            if pos + 1 >= word.len() {
                return Err(format!("cancel position {} out of range", pos));
            }
            if !word[*pos].cancels(&word[pos + 1]) {
                return Err(format!(
                    "symbols '{}' '{}' at {} are not an inverse pair",
                    word[*pos],
                    word[pos + 1],
                    pos
                ));
            }
            word.drain(*pos..pos + 2);
            Ok(())
        }
        Step::Commute { pos } => {
            if pos + 1 >= word.len() {
                return Err(format!("commute position {} out of range", pos));
            }
            let (a, b) = (&word[*pos].id, &word[pos + 1].id);
            if !env.commutes(a, b) {
                return Err(format!(
                    "'{}' and '{}' are not declared disjoint",
                    a, b
                ));
            }
            word.swap(*pos, pos + 1);
            Ok(())
        }
        Step::Lantern {
            instance,
            pos,
            side,
            inverted,
        } => {
            let inst = env
                .lanterns()
                .get(*instance)
                .ok_or_else(|| format!("no lantern instance {}", instance))?;
            let (mut from, mut to) = match side {
                LanternSide::ToBoundary => (inst.interior_word(), inst.boundary_word()),
                LanternSide::ToInterior => (inst.boundary_word(), inst.interior_word()),
            };
            if *inverted {
                from = invert_word(&from);
                to = invert_word(&to);
            }
            if !subword_matches(word, *pos, &from) {
                return Err(format!(
                    "word does not contain '{}' at position {}",
                    render_word(&from),
                    pos
                ));
            }
            word.splice(*pos..pos + from.len(), to);
            Ok(())
        }
        Step::Fold { pos } => {
            if pos + 2 >= word.len() {
                return Err(format!("fold position {} out of range", pos));
            }
            let g = word[*pos].clone();
            let h = word[pos + 1].clone();
            let g2 = word[pos + 2].clone();
            if g.id != g2.id || g.exp != -g2.exp {
                return Err(format!(
                    "outer symbols '{}' '{}' are not a conjugating pair",
                    g, g2
                ));
            }
            let folded = Twist {
                id: CurveId::image(&g.id, g.exp, &h.id),
                exp: h.exp,
            };
            word.splice(*pos..pos + 3, [folded]);
            Ok(())
        }
        Step::Unfold { pos } => {
            if *pos >= word.len() {
                return Err(format!("unfold position {} out of range", pos));
            }
            let t = word[*pos].clone();
            let (g, e, h) = t
                .id
                .split_image()
                .ok_or_else(|| format!("'{}' is not an image id", t.id))?;
            let triple = [
                Twist {
                    id: g.clone(),
                    exp: e,
                },
                Twist {
                    id: h,
                    exp: t.exp,
                },
                Twist { id: g, exp: -e },
            ];
            word.splice(*pos..pos + 1, triple);
            Ok(())
        }
        Step::Isotopy { pos, to } => {
            if *pos >= word.len() {
                return Err(format!("isotopy position {} out of range", pos));
            }
            let from = &word[*pos].id;
            if !script.isotopic(from, to) {
                return Err(format!(
                    "no declared isotopy between '{}' and '{}'",
                    from, to
                ));
            }
            word[*pos].id = to.clone();
            Ok(())
        }
    }
}

/// Deterministic normal form of the partial-commutation class: greedily
/// emit the least symbol that can be moved to the front past everything
/// before it. Two words are commutation-equivalent iff their normal forms
/// agree.
pub fn trace_normal_form(env: &RelationEnv, w: &[Twist]) -> Word {
    let mut rest: Vec<Twist> = w.to_vec();
    let mut out: Word = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|t| env.commutes(&t.id, &rest[i].id));
            if !movable {
                continue;
            }
            let key = (rest[i].id.clone(), rest[i].exp < 0);
            match best {
                None => best = Some(i),
                Some(j) => {
                    let jkey = (rest[j].id.clone(), rest[j].exp < 0);
                    if key < jkey {
                        best = Some(i);
                    }
                }
            }
        }
        let i = best.expect("position 0 is always movable");
        out.push(rest.remove(i));
    }
    out
}

/// Resolve the homology class of an id, deriving image ids through the
/// twist action on the conjugator's class.
pub fn class_of(id: &CurveId, classes: &BTreeMap<CurveId, HClass>) -> Result<HClass> {
    if let Some(c) = classes.get(id) {
        return Ok(c.clone());
    }
    if let Some((g, e, h)) = id.split_image() {
        let gc = class_of(&g, classes)?;
        let hc = class_of(&h, classes)?;
        let m = SpMatrix::transvection(&gc, e as i64);
        return m.apply(&hc);
    }
    Err(Error::UnassignedClass(id.as_str().to_string()))
}

/// Necessary-condition cross-check: two words with the same homology shadow.
/// Every id must resolve to a class through `classes` (image ids are
/// derived).
pub fn sp_shadow_check(
    lhs: &[Twist],
    rhs: &[Twist],
    classes: &BTreeMap<CurveId, HClass>,
) -> Result<bool> {
    let to_sp_word = |w: &[Twist]| -> Result<Vec<(HClass, i64)>> {
        w.iter()
            .map(|t| Ok((class_of(&t.id, classes)?, t.exp as i64)))
            .collect()
    };
    let l = word_to_sp(&to_sp_word(lhs)?)?;
    let r = word_to_sp(&to_sp_word(rhs)?)?;
    Ok(l == r)
}
