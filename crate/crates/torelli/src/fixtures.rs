//! Shipped fixtures: the standard genus-4 simply-intersecting-pair
//! configuration with its five-factor and two-factor forms, its degenerate
//! variants, the three separating-SIP configurations at genus 2, a lantern
//! shadow word, and the recorded word-level derivations.
//!
//! Every fixture is built programmatically here and also shipped as a JSON
//! file under `fixtures/`; a test keeps the two in sync byte for byte.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::schema::{
    BpDoc, EnvDoc, FactorizationDoc, InputDoc, ItemDoc, LanternDoc, ScriptDoc, SideDoc,
    SpFactorDoc, SpWordDoc, StepDoc, TwistDoc, TwoBpDoc,
};
use crate::surface::{HClass, SurfaceConfig};
use crate::torelli::{SIPData, SepTwistData};

/// A built-in fixture in document form.
#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Factorization(FactorizationDoc),
    Word(SpWordDoc),
    Script(Box<ScriptDoc>),
}

fn g4() -> SurfaceConfig {
    SurfaceConfig::new(4).expect("genus 4")
}

fn g2() -> SurfaceConfig {
    SurfaceConfig::new(2).expect("genus 2")
}

fn coords(c: &HClass) -> Vec<i64> {
    c.coords().to_vec()
}

// ---------------------------------------------------------------------------
// the standard simply intersecting pair, genus 4
// ---------------------------------------------------------------------------

fn standard_five_bp() -> Vec<BpDoc> {
    let s = g4();
    vec![
        BpDoc {
            sign: 1,
            class: coords(&-&s.a(2)),
            basis: vec![coords(&s.a(1)), coords(&s.b(1))],
        },
        BpDoc {
            sign: 1,
            class: coords(&-&s.a(4)),
            basis: vec![
                coords(&s.a(1)),
                coords(&s.b(1)),
                coords(&s.a(2)),
                coords(&s.b(2)),
                coords(&s.a(3)),
                coords(&s.b(3)),
            ],
        },
        BpDoc {
            sign: 1,
            class: coords(&(&(&s.a(2) - &s.a(3)) + &s.a(4))),
            basis: vec![
                coords(&s.a(1)),
                coords(&s.b(1)),
                coords(&s.a(2)),
                coords(&(&(&s.b(2) - &s.a(3)) + &s.b(3))),
            ],
        },
        BpDoc {
            sign: 1,
            class: coords(&s.a(3)),
            basis: vec![
                coords(&s.a(1)),
                coords(&s.b(1)),
                coords(&s.a(2)),
                coords(&s.b(2)),
            ],
        },
        BpDoc {
            sign: 1,
            class: coords(&(&s.a(4) - &s.a(2))),
            basis: vec![coords(&(&s.a(3) - &s.a(2))), coords(&s.b(3))],
        },
    ]
}

/// The standard fixture: boundary classes (w, x, y, z) =
/// (-a4, a2, -a2+a3, -a3+a4), the five-factor form, and the two-factor
/// payload sharing the fifth pair.
pub fn standard_sip_doc() -> FactorizationDoc {
    let s = g4();
    let five = standard_five_bp();
    let second = five[4].clone();
    FactorizationDoc {
        genus: 4,
        items: vec![ItemDoc::Sip {
            sign: 1,
            boundary: vec![
                coords(&-&s.a(4)),
                coords(&s.a(2)),
                coords(&(&s.a(3) - &s.a(2))),
                coords(&(&s.a(4) - &s.a(3))),
            ],
            five_bp: Some(five),
            two_bp: Some(TwoBpDoc {
                image_class: coords(&(&s.a(4) - &s.a(2))),
                second,
            }),
        }],
    }
}

pub fn standard_sip() -> SIPData {
    standard_sip_doc()
        .as_single_sip()
        .expect("valid fixture")
        .expect("single sip item")
}

fn boundary_only_sip(genus: usize, boundary: Vec<Vec<i64>>) -> FactorizationDoc {
    FactorizationDoc {
        genus,
        items: vec![ItemDoc::Sip {
            sign: 1,
            boundary,
            five_bp: None,
            two_bp: None,
        }],
    }
}

/// One boundary component null-homologous: in both kernels.
pub fn sip_null_boundary_doc() -> FactorizationDoc {
    let s = g4();
    boundary_only_sip(
        4,
        vec![
            coords(&-&s.a(3)),
            coords(&s.zero()),
            coords(&s.a(2)),
            coords(&(&s.a(3) - &s.a(2))),
        ],
    )
}

pub fn sip_null_boundary() -> SIPData {
    sip_null_boundary_doc()
        .as_single_sip()
        .expect("valid")
        .expect("single sip")
}

/// Two homologous boundary components: in the Johnson kernel; the other
/// image is decided by the mod-2 classes (nonzero here).
pub fn sip_two_homologous_doc() -> FactorizationDoc {
    let s = g4();
    boundary_only_sip(
        4,
        vec![
            coords(&(&s.a(1).scaled(-2) - &s.a(2))),
            coords(&s.a(1)),
            coords(&s.a(1)),
            coords(&s.a(2)),
        ],
    )
}

pub fn sip_two_homologous() -> SIPData {
    sip_two_homologous_doc()
        .as_single_sip()
        .expect("valid")
        .expect("single sip")
}

/// A boundary class that is nonzero over Z but zero mod 2: outside the
/// Johnson kernel, inside the other kernel.
pub fn sip_mod2_null_boundary_doc() -> FactorizationDoc {
    let s = g4();
    boundary_only_sip(
        4,
        vec![
            coords(&(&(&s.a(1).scaled(-2) - &s.a(2)) - &s.a(3))),
            coords(&s.a(1).scaled(2)),
            coords(&s.a(2)),
            coords(&s.a(3)),
        ],
    )
}

pub fn sip_mod2_null_boundary() -> SIPData {
    sip_mod2_null_boundary_doc()
        .as_single_sip()
        .expect("valid")
        .expect("single sip")
}

// ---------------------------------------------------------------------------
// separating SIP configurations, genus 2
// ---------------------------------------------------------------------------

fn sep_pair_doc(c_basis: [(HClass, HClass); 1], image_basis: [(HClass, HClass); 1]) -> FactorizationDoc {
    FactorizationDoc {
        genus: 2,
        items: vec![
            ItemDoc::Sep {
                sign: 1,
                basis: vec![coords(&c_basis[0].0), coords(&c_basis[0].1)],
            },
            ItemDoc::Sep {
                sign: -1,
                basis: vec![coords(&image_basis[0].0), coords(&image_basis[0].1)],
            },
        ],
    }
}

pub fn ssip_type2_doc() -> FactorizationDoc {
    let s = g2();
    sep_pair_doc(
        [(s.a(1), s.b(1))],
        [(&s.a(1) + &s.b(2), s.b(1))],
    )
}

pub fn ssip_type3_doc() -> FactorizationDoc {
    // pairs stored in the orientation with pairing +1
    let s = g2();
    sep_pair_doc(
        [(&(&s.b(1) + &s.a(2)) + &s.b(2), s.b(2))],
        [(&(&(&s.a(1) + &s.b(1)) + &s.a(2)) + &s.b(2), s.b(2))],
    )
}

pub fn ssip_type4_doc() -> FactorizationDoc {
    let s = g2();
    sep_pair_doc(
        [(s.a(1), s.b(1))],
        [(
            &(&s.a(1) + &s.a(2)) + &s.b(2),
            &(&s.b(1) + &s.a(2)) + &s.b(2),
        )],
    )
}

fn sep_pair_from_doc(doc: &FactorizationDoc) -> (SepTwistData, SepTwistData) {
    let (_, f) = doc.to_factorization().expect("valid fixture");
    let mut seps = f.items().iter().filter_map(|it| match it {
        crate::torelli::FactorItem::Sep(s) => Some(s.clone()),
        _ => None,
    });
    (seps.next().expect("first"), seps.next().expect("second"))
}

/// The twist data of c and of its image curve for each configuration.
pub fn ssip_type2() -> (SepTwistData, SepTwistData) {
    sep_pair_from_doc(&ssip_type2_doc())
}

pub fn ssip_type3() -> (SepTwistData, SepTwistData) {
    sep_pair_from_doc(&ssip_type3_doc())
}

pub fn ssip_type4() -> (SepTwistData, SepTwistData) {
    sep_pair_from_doc(&ssip_type4_doc())
}

// ---------------------------------------------------------------------------
// bounding-pair fixtures
// ---------------------------------------------------------------------------

pub fn bp_genus1_doc() -> FactorizationDoc {
    let s = g2();
    FactorizationDoc {
        genus: 2,
        items: vec![ItemDoc::Bp {
            sign: 1,
            class: coords(&s.a(1)),
            basis: vec![coords(&s.a(2)), coords(&s.b(2))],
        }],
    }
}

pub fn bp_genus2_doc() -> FactorizationDoc {
    let s = SurfaceConfig::new(3).expect("genus 3");
    FactorizationDoc {
        genus: 3,
        items: vec![ItemDoc::Bp {
            sign: 1,
            class: coords(&s.a(1)),
            basis: vec![
                coords(&s.a(2)),
                coords(&s.b(2)),
                coords(&s.a(3)),
                coords(&s.b(3)),
            ],
        }],
    }
}

// ---------------------------------------------------------------------------
// lantern homology classes
// ---------------------------------------------------------------------------

/// Boundary classes of the standard lantern embedding, then the three
/// interior classes.
fn lantern_classes() -> ([HClass; 4], [HClass; 3]) {
    let s = g4();
    (
        [
            s.a(2),
            &s.a(3) - &s.a(2),
            &s.a(4) - &s.a(3),
            -&s.a(4),
        ],
        [
            s.a(3),
            &s.a(4) - &s.a(2),
            &(&s.a(2) - &s.a(3)) + &s.a(4),
        ],
    )
}

/// The lantern relation as an identity-shadow word: the boundary product
/// times the inverted interior product.
pub fn lantern_shadow_doc() -> SpWordDoc {
    let (boundary, interior) = lantern_classes();
    let mut word: Vec<SpFactorDoc> = boundary
        .iter()
        .map(|c| SpFactorDoc {
            class: coords(c),
            exp: 1,
        })
        .collect();
    for c in interior.iter().rev() {
        word.push(SpFactorDoc {
            class: coords(c),
            exp: -1,
        });
    }
    SpWordDoc { genus: 4, word }
}

// ---------------------------------------------------------------------------
// derivation scripts
// ---------------------------------------------------------------------------

fn tw(id: &str, exp: i8) -> TwistDoc {
    TwistDoc {
        id: id.to_string(),
        exp,
    }
}

fn word_doc(spec: &[(&str, i8)]) -> Vec<TwistDoc> {
    spec.iter().map(|(id, exp)| tw(id, *exp)).collect()
}

fn commuting(pairs: &[(&str, &str)]) -> Vec<[String; 2]> {
    pairs
        .iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect()
}

/// Environment of the two stacked lanterns: the top one bounded by
/// x, y, z, w with interior a, b, c, the bottom one bounded by y, z, v, u
/// with interior f, d, e, plus the disjointness facts the derivations use.
fn two_lantern_env() -> EnvDoc {
    EnvDoc {
        commuting: commuting(&[
            ("u", "e"),
            ("u", "d"),
            ("u", "f"),
            ("w", "v"),
            ("w", "e"),
            ("w", "d"),
            ("w", "f"),
            ("v", "e"),
            ("v", "d"),
            ("v", "f"),
            ("c", "e"),
            ("c", "d"),
            ("a", "e"),
        ]),
        lanterns: vec![
            LanternDoc {
                boundary: ["x".into(), "y".into(), "z".into(), "w".into()],
                interior: ["a".into(), "b".into(), "c".into()],
            },
            LanternDoc {
                boundary: ["y".into(), "z".into(), "v".into(), "u".into()],
                interior: ["f".into(), "d".into(), "e".into()],
            },
        ],
    }
}

fn two_lantern_classes() -> BTreeMap<String, Vec<i64>> {
    let s = g4();
    let mut m = BTreeMap::new();
    let mut put = |id: &str, c: HClass| {
        m.insert(id.to_string(), coords(&c));
    };
    put("x", s.a(2));
    put("y", &s.a(3) - &s.a(2));
    put("z", &s.a(4) - &s.a(3));
    put("w", -&s.a(4));
    put("u", -&s.a(2));
    put("v", -&s.a(4));
    put("a", s.a(3));
    put("b", &s.a(4) - &s.a(2));
    put("c", &(&s.a(2) - &s.a(3)) + &s.a(4));
    put("f", &(&s.a(2) - &s.a(3)) + &s.a(4));
    put("d", s.a(3));
    put("e", &s.a(4) - &s.a(2));
    m
}

/// The rewrite of the commutator word in a and b into the five
/// bounding-pair factors, with positions shifted by `offset` so the same
/// chain can run inside a larger word.
fn five_factor_steps(offset: usize) -> Vec<StepDoc> {
    let ins = |pos: usize, id: &str, exp: i8| StepDoc::Insert {
        pos,
        id: id.to_string(),
        exp,
    };
    let lan = |instance: usize, pos: usize, side: SideDoc| StepDoc::Lantern {
        instance,
        pos,
        side,
        inverted: false,
    };
    let com = |pos: usize| StepDoc::Commute { pos };
    vec![
        ins(offset + 2, "c", 1),
        lan(0, offset, SideDoc::ToBoundary),
        ins(offset + 3, "v", 1),
        ins(offset + 4, "u", 1),
        lan(1, offset + 1, SideDoc::ToInterior),
        com(offset + 3),
        com(offset + 2),
        com(offset + 1),
        com(offset + 5),
        com(offset + 4),
        com(offset + 3),
        com(offset + 2),
        com(offset + 5),
        com(offset + 4),
        com(offset + 3),
        com(offset + 6),
        com(offset + 5),
        com(offset + 7),
    ]
}

const FIVE_FACTOR_END: [(&str, i8); 10] = [
    ("x", 1),
    ("u", -1),
    ("w", 1),
    ("v", -1),
    ("f", 1),
    ("c", -1),
    ("d", 1),
    ("a", -1),
    ("e", 1),
    ("b", -1),
];

/// The commutator of the twists about a and b rewritten as five
/// bounding-pair maps via the two lantern relations.
pub fn lemma_factorsip_doc() -> ScriptDoc {
    ScriptDoc {
        name: Some("lemma_factorsip".into()),
        genus: Some(4),
        env: two_lantern_env(),
        start: word_doc(&[("a", 1), ("b", 1), ("a", -1), ("b", -1)]),
        steps: five_factor_steps(0),
        end: word_doc(&FIVE_FACTOR_END),
        isotopies: vec![],
        distinct: vec![],
        classes: Some(two_lantern_classes()),
    }
}

/// The same commutator rewritten as two bounding-pair maps by folding the
/// conjugate and exhibiting the shared curve e.
pub fn putman_f5_doc() -> ScriptDoc {
    ScriptDoc {
        name: Some("putman_f5".into()),
        genus: Some(4),
        env: two_lantern_env(),
        start: word_doc(&[("a", 1), ("b", 1), ("a", -1), ("b", -1)]),
        steps: vec![
            StepDoc::Fold { pos: 0 },
            StepDoc::Insert {
                pos: 1,
                id: "e".into(),
                exp: -1,
            },
        ],
        end: word_doc(&[("a(b)", 1), ("e", -1), ("e", 1), ("b", -1)]),
        isotopies: vec![],
        distinct: vec![],
        classes: Some(two_lantern_classes()),
    }
}

/// Combining the two-factor and five-factor forms of the same commutator
/// into a relation among bounding-pair maps: three factors equal two.
pub fn johnson_lemma10_doc() -> ScriptDoc {
    let mut steps = vec![
        StepDoc::Unfold { pos: 4 },
        StepDoc::Insert {
            pos: 7,
            id: "b".into(),
            exp: -1,
        },
    ];
    steps.extend(five_factor_steps(4));
    for pos in [3usize, 2, 1, 0, 5, 4] {
        steps.push(StepDoc::Cancel { pos });
    }
    ScriptDoc {
        name: Some("johnson_lemma10".into()),
        genus: Some(4),
        env: two_lantern_env(),
        start: word_doc(&[
            ("v", 1),
            ("w", -1),
            ("u", 1),
            ("x", -1),
            ("a(b)", 1),
            ("e", -1),
        ]),
        steps,
        end: word_doc(&[("f", 1), ("c", -1), ("d", 1), ("a", -1)]),
        isotopies: vec![],
        distinct: vec![],
        classes: Some(two_lantern_classes()),
    }
}

/// Environment of a single lantern bounded by a, b, c, d with interior
/// x, y, z; the interior curve x is disjoint from every boundary curve.
fn one_lantern_env() -> EnvDoc {
    EnvDoc {
        commuting: commuting(&[("x", "a"), ("x", "b"), ("x", "c"), ("x", "d")]),
        lanterns: vec![LanternDoc {
            boundary: ["a".into(), "b".into(), "c".into(), "d".into()],
            interior: ["x".into(), "y".into(), "z".into()],
        }],
    }
}

fn one_lantern_classes() -> BTreeMap<String, Vec<i64>> {
    let s = g4();
    let mut m = BTreeMap::new();
    let mut put = |id: &str, c: HClass| {
        m.insert(id.to_string(), coords(&c));
    };
    put("a", s.a(2));
    put("b", &s.a(3) - &s.a(2));
    put("c", &s.a(4) - &s.a(3));
    put("d", -&s.a(4));
    put("x", s.a(3));
    put("y", &s.a(4) - &s.a(2));
    put("z", &(&s.a(2) - &s.a(3)) + &s.a(4));
    m
}

/// Two presentations of one map: the commutator of the twists about the
/// image curve y^-1(x) and y equals the commutator of the twists about
/// z and x, through the lantern relation.
pub fn sip_equality_doc() -> ScriptDoc {
    let com = |pos: usize| StepDoc::Commute { pos };
    let can = |pos: usize| StepDoc::Cancel { pos };
    ScriptDoc {
        name: Some("sip_equality".into()),
        genus: Some(4),
        env: one_lantern_env(),
        start: word_doc(&[("y^-1(x)", 1), ("y", 1), ("y^-1(x)", -1), ("y", -1)]),
        steps: vec![
            StepDoc::Unfold { pos: 0 },
            StepDoc::Unfold { pos: 4 },
            can(3),
            can(4),
            StepDoc::Insert {
                pos: 3,
                id: "z".into(),
                exp: 1,
            },
            StepDoc::Lantern {
                instance: 0,
                pos: 1,
                side: SideDoc::ToBoundary,
                inverted: false,
            },
            StepDoc::Insert {
                pos: 0,
                id: "z".into(),
                exp: 1,
            },
            StepDoc::Insert {
                pos: 3,
                id: "x".into(),
                exp: -1,
            },
            StepDoc::Lantern {
                instance: 0,
                pos: 1,
                side: SideDoc::ToBoundary,
                inverted: true,
            },
            com(5),
            can(4),
            com(4),
            can(3),
            com(3),
            can(2),
            com(2),
            can(1),
        ],
        end: word_doc(&[("z", 1), ("x", 1), ("z", -1), ("x", -1)]),
        isotopies: vec![],
        distinct: vec![],
        classes: Some(one_lantern_classes()),
    }
}

/// The word whose triviality is equivalent to two SIP maps coinciding,
/// folded down to the two image twists. That the two image curves are
/// distinct is a declared geometric input, not something the word algebra
/// decides.
pub fn sip_distinctness_doc() -> ScriptDoc {
    ScriptDoc {
        name: Some("sip_distinctness".into()),
        genus: Some(4),
        env: one_lantern_env(),
        start: word_doc(&[
            ("x", 1),
            ("z", -1),
            ("x", -1),
            ("y", -1),
            ("z", 1),
            ("y", 1),
        ]),
        steps: vec![StepDoc::Fold { pos: 0 }, StepDoc::Fold { pos: 1 }],
        end: word_doc(&[("x(z)", -1), ("y^-1(z)", 1)]),
        isotopies: vec![],
        distinct: vec![["x(z)".into(), "y^-1(z)".into()]],
        classes: Some(one_lantern_classes()),
    }
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

/// Shipped fixture files, embedded at build time.
pub const FIXTURE_FILES: &[(&str, &str)] = &[
    (
        "standard_sip",
        include_str!("../fixtures/standard_sip.json"),
    ),
    (
        "sip_null_boundary",
        include_str!("../fixtures/sip_null_boundary.json"),
    ),
    (
        "sip_two_homologous",
        include_str!("../fixtures/sip_two_homologous.json"),
    ),
    (
        "sip_mod2_null",
        include_str!("../fixtures/sip_mod2_null.json"),
    ),
    ("ssip_type2", include_str!("../fixtures/ssip_type2.json")),
    ("ssip_type3", include_str!("../fixtures/ssip_type3.json")),
    ("ssip_type4", include_str!("../fixtures/ssip_type4.json")),
    ("bp_genus1", include_str!("../fixtures/bp_genus1.json")),
    ("bp_genus2", include_str!("../fixtures/bp_genus2.json")),
    (
        "lantern_shadow",
        include_str!("../fixtures/lantern_shadow.json"),
    ),
    (
        "lemma_factorsip",
        include_str!("../fixtures/lemma_factorsip.json"),
    ),
    ("putman_f5", include_str!("../fixtures/putman_f5.json")),
    (
        "sip_equality",
        include_str!("../fixtures/sip_equality.json"),
    ),
    (
        "sip_distinctness",
        include_str!("../fixtures/sip_distinctness.json"),
    ),
    (
        "johnson_lemma10",
        include_str!("../fixtures/johnson_lemma10.json"),
    ),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURE_FILES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture_json(name: &str) -> Option<&'static str> {
    FIXTURE_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, j)| *j)
}

/// Build the named fixture programmatically.
pub fn builtin(name: &str) -> Option<Fixture> {
    Some(match name {
        "standard_sip" => Fixture::Factorization(standard_sip_doc()),
        "sip_null_boundary" => Fixture::Factorization(sip_null_boundary_doc()),
        "sip_two_homologous" => Fixture::Factorization(sip_two_homologous_doc()),
        "sip_mod2_null" => Fixture::Factorization(sip_mod2_null_boundary_doc()),
        "ssip_type2" => Fixture::Factorization(ssip_type2_doc()),
        "ssip_type3" => Fixture::Factorization(ssip_type3_doc()),
        "ssip_type4" => Fixture::Factorization(ssip_type4_doc()),
        "bp_genus1" => Fixture::Factorization(bp_genus1_doc()),
        "bp_genus2" => Fixture::Factorization(bp_genus2_doc()),
        "lantern_shadow" => Fixture::Word(lantern_shadow_doc()),
        "lemma_factorsip" => Fixture::Script(Box::new(lemma_factorsip_doc())),
        "putman_f5" => Fixture::Script(Box::new(putman_f5_doc())),
        "sip_equality" => Fixture::Script(Box::new(sip_equality_doc())),
        "sip_distinctness" => Fixture::Script(Box::new(sip_distinctness_doc())),
        "johnson_lemma10" => Fixture::Script(Box::new(johnson_lemma10_doc())),
        _ => return None,
    })
}

pub fn builtin_to_json(f: &Fixture) -> String {
    let mut s = match f {
        Fixture::Factorization(d) => serde_json::to_string_pretty(d),
        Fixture::Word(d) => serde_json::to_string_pretty(d),
        Fixture::Script(d) => serde_json::to_string_pretty(d),
    }
    .expect("fixture serializes");
    s.push('\n');
    s
}

/// Parse a shipped non-script fixture into an input document.
pub fn load_input(name: &str) -> Result<Option<InputDoc>> {
    match fixture_json(name) {
        None => Ok(None),
        Some(json) => {
            if serde_json::from_str::<ScriptDoc>(json).is_ok() {
                return Ok(None);
            }
            Ok(Some(crate::schema::parse_input(json)?))
        }
    }
}
