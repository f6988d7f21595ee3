//! Serde document types for the JSON input formats accepted by the CLI and
//! shipped as fixtures, with validated conversions into the core types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{HClass, SurfaceConfig};
use crate::torelli::{
    BPData, FactorItem, PutmanData, SIPData, SepTwistData, SignedBp, TorelliFactorization,
};
use crate::words::{
    CurveId, DerivationScript, LanternInstance, LanternSide, RelationEnv, Step, Twist, Word,
};

fn default_sign() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpDoc {
    #[serde(default = "default_sign")]
    pub sign: i64,
    pub class: Vec<i64>,
    /// Flat list of 2k vectors; consecutive entries pair up.
    pub basis: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBpDoc {
    pub image_class: Vec<i64>,
    pub second: BpDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ItemDoc {
    Bp {
        #[serde(default = "default_sign")]
        sign: i64,
        class: Vec<i64>,
        basis: Vec<Vec<i64>>,
    },
    Sep {
        #[serde(default = "default_sign")]
        sign: i64,
        basis: Vec<Vec<i64>>,
    },
    Sip {
        #[serde(default = "default_sign")]
        sign: i64,
        boundary: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        five_bp: Option<Vec<BpDoc>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        two_bp: Option<TwoBpDoc>,
    },
}

/// A factored Torelli element over a declared genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub genus: usize,
    pub items: Vec<ItemDoc>,
}

/// A word of twist powers given by homology classes, for the symplectic
/// shadow commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpWordDoc {
    pub genus: usize,
    pub word: Vec<SpFactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpFactorDoc {
    pub class: Vec<i64>,
    pub exp: i64,
}

/// Any evaluator input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputDoc {
    Factorization(FactorizationDoc),
    SpWord(SpWordDoc),
}

fn basis_pairs(sc: &SurfaceConfig, basis: &[Vec<i64>]) -> Result<Vec<(HClass, HClass)>> {
    if basis.len() % 2 != 0 {
        return Err(Error::invariant(
            "basis must list an even number of vectors (consecutive pairs)",
        ));
    }
    basis
        .chunks(2)
        .map(|pair| Ok((sc.class(pair[0].clone())?, sc.class(pair[1].clone())?)))
        .collect()
}

fn bp_from_doc(sc: &SurfaceConfig, doc: &BpDoc) -> Result<SignedBp> {
    SignedBp::new(
        BPData::new(sc.class(doc.class.clone())?, basis_pairs(sc, &doc.basis)?)?,
        doc.sign,
    )
}

pub fn sip_from_doc(
    sc: &SurfaceConfig,
    boundary: &[Vec<i64>],
    five_bp: &Option<Vec<BpDoc>>,
    two_bp: &Option<TwoBpDoc>,
) -> Result<SIPData> {
    if boundary.len() != 4 {
        return Err(Error::invariant(format!(
            "a lantern has 4 boundary classes, got {}",
            boundary.len()
        )));
    }
    let b = [
        sc.class(boundary[0].clone())?,
        sc.class(boundary[1].clone())?,
        sc.class(boundary[2].clone())?,
        sc.class(boundary[3].clone())?,
    ];
    let five = match five_bp {
        None => None,
        Some(items) => Some(
            items
                .iter()
                .map(|d| bp_from_doc(sc, d))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let two = match two_bp {
        None => None,
        Some(t) => {
            let second = bp_from_doc(sc, &t.second)?;
            Some(PutmanData::new(sc.class(t.image_class.clone())?, second.bp)?)
        }
    };
    SIPData::new(b, five, two)
}

impl FactorizationDoc {
    pub fn to_factorization(&self) -> Result<(SurfaceConfig, TorelliFactorization)> {
        let sc = SurfaceConfig::new(self.genus)?;
        let items = self
            .items
            .iter()
            .map(|item| match item {
                ItemDoc::Bp { sign, class, basis } => Ok(FactorItem::Bp {
                    data: BPData::new(sc.class(class.clone())?, basis_pairs(&sc, basis)?)?,
                    sign: *sign,
                }),
                ItemDoc::Sep { sign, basis } => Ok(FactorItem::Sep(SepTwistData::new(
                    sc.rank(),
                    basis_pairs(&sc, basis)?,
                    *sign,
                )?)),
                ItemDoc::Sip {
                    sign,
                    boundary,
                    five_bp,
                    two_bp,
                } => Ok(FactorItem::Sip {
                    data: sip_from_doc(&sc, boundary, five_bp, two_bp)?,
                    sign: *sign,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((sc, TorelliFactorization::new(sc.rank(), items)?))
    }

    /// The single SIP item, when the document is exactly that.
    pub fn as_single_sip(&self) -> Result<Option<SIPData>> {
        if self.items.len() != 1 {
            return Ok(None);
        }
        let sc = SurfaceConfig::new(self.genus)?;
        match &self.items[0] {
            ItemDoc::Sip {
                boundary,
                five_bp,
                two_bp,
                ..
            } => Ok(Some(sip_from_doc(&sc, boundary, five_bp, two_bp)?)),
            _ => Ok(None),
        }
    }
}

impl SpWordDoc {
    pub fn to_word(&self) -> Result<Vec<(HClass, i64)>> {
        let sc = SurfaceConfig::new(self.genus)?;
        self.word
            .iter()
            .map(|f| Ok((sc.class(f.class.clone())?, f.exp)))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// derivation scripts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDoc {
    pub id: String,
    pub exp: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanternDoc {
    pub boundary: [String; 4],
    pub interior: [String; 3],
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvDoc {
    #[serde(default)]
    pub commuting: Vec<[String; 2]>,
    #[serde(default)]
    pub lanterns: Vec<LanternDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideDoc {
    ToBoundary,
    ToInterior,
}

fn default_false() -> bool {
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum StepDoc {
    Insert {
        pos: usize,
        id: String,
        exp: i8,
    },
    Cancel {
        pos: usize,
    },
    Commute {
        pos: usize,
    },
    Lantern {
        instance: usize,
        pos: usize,
        side: SideDoc,
        #[serde(default = "default_false", skip_serializing_if = "std::ops::Not::not")]
        inverted: bool,
    },
    Fold {
        pos: usize,
    },
    Unfold {
        pos: usize,
    },
    Isotopy {
        pos: usize,
        to: String,
    },
}

/// A shipped or user-supplied derivation script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    pub env: EnvDoc,
    pub start: Vec<TwistDoc>,
    pub steps: Vec<StepDoc>,
    pub end: Vec<TwistDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isotopies: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub distinct: Vec<[String; 2]>,
    /// Optional homology class per atomic id, enabling the shadow check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<BTreeMap<String, Vec<i64>>>,
}

fn word_from_docs(docs: &[TwistDoc]) -> Result<Word> {
    docs.iter()
        .map(|t| Twist::new(CurveId::new(t.id.clone())?, t.exp))
        .collect()
}

/// A script's relation environment, replayable steps, and optional class
/// assignment.
pub type ScriptParts = (
    RelationEnv,
    DerivationScript,
    Option<BTreeMap<CurveId, HClass>>,
);

impl ScriptDoc {
    pub fn to_parts(&self) -> Result<ScriptParts> {
        let mut env = RelationEnv::new();
        for [a, b] in &self.env.commuting {
            env.add_commuting(CurveId::new(a.clone())?, CurveId::new(b.clone())?);
        }
        for l in &self.env.lanterns {
            let boundary = [
                CurveId::new(l.boundary[0].clone())?,
                CurveId::new(l.boundary[1].clone())?,
                CurveId::new(l.boundary[2].clone())?,
                CurveId::new(l.boundary[3].clone())?,
            ];
            let interior = [
                CurveId::new(l.interior[0].clone())?,
                CurveId::new(l.interior[1].clone())?,
                CurveId::new(l.interior[2].clone())?,
            ];
            env.add_lantern(LanternInstance::new(boundary, interior)?);
        }
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(match s {
                    StepDoc::Insert { pos, id, exp } => Step::Insert {
                        pos: *pos,
                        id: CurveId::new(id.clone())?,
                        exp: *exp,
                    },
                    StepDoc::Cancel { pos } => Step::Cancel { pos: *pos },
                    StepDoc::Commute { pos } => Step::Commute { pos: *pos },
                    StepDoc::Lantern {
                        instance,
                        pos,
                        side,
                        inverted,
                    } => Step::Lantern {
                        instance: *instance,
                        pos: *pos,
                        side: match side {
                            SideDoc::ToBoundary => LanternSide::ToBoundary,
                            SideDoc::ToInterior => LanternSide::ToInterior,
                        },
                        inverted: *inverted,
                    },
                    StepDoc::Fold { pos } => Step::Fold { pos: *pos },
                    StepDoc::Unfold { pos } => Step::Unfold { pos: *pos },
                    StepDoc::Isotopy { pos, to } => Step::Isotopy {
                        pos: *pos,
                        to: CurveId::new(to.clone())?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let pairs = |v: &Vec<[String; 2]>| -> Result<Vec<(CurveId, CurveId)>> {
            v.iter()
                .map(|[a, b]| Ok((CurveId::new(a.clone())?, CurveId::new(b.clone())?)))
                .collect()
        };
        let script = DerivationScript {
            start: word_from_docs(&self.start)?,
            steps,
            end: word_from_docs(&self.end)?,
            isotopies: pairs(&self.isotopies)?,
            distinct: pairs(&self.distinct)?,
        };
        let classes = match &self.classes {
            None => None,
            Some(map) => {
                let genus = self
                    .genus
                    .ok_or_else(|| Error::invariant("classes need a declared genus"))?;
                let sc = SurfaceConfig::new(genus)?;
                let mut out = BTreeMap::new();
                for (id, coords) in map {
                    out.insert(CurveId::new(id.clone())?, sc.class(coords.clone())?);
                }
                Some(out)
            }
        };
        Ok((env, script, classes))
    }
}

pub fn parse_input(json: &str) -> Result<InputDoc> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_script(json: &str) -> Result<ScriptDoc> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}
