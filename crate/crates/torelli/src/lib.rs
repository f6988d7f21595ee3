//! Exact symbolic computation for factored elements of the Torelli group
//! of a genus-g surface with one boundary component.
//!
//! The crate models the first homology lattice with its intersection
//! pairing and twist transvections ([`surface`], [`symplectic`]), the
//! degree-3 exterior power target of the Johnson homomorphism with the
//! contraction map ([`wedge`]), the square-free Z2 algebra target of the
//! Birman-Craggs-Johnson homomorphism ([`boolean`]), evaluators and kernel
//! predicates for bounding-pair maps, separating twists, and simply
//! intersecting pair maps ([`torelli`]), and an abstract twist-word algebra
//! for replaying word-level derivations ([`words`]).
//!
//! All arithmetic is exact; overflow aborts rather than wrapping.

#![allow(clippy::manual_is_multiple_of)]

pub mod boolean;
pub mod error;
pub mod fixtures;
pub mod schema;
pub mod surface;
pub mod symplectic;
pub mod torelli;
pub mod wedge;
pub mod words;

pub use error::{Error, Result};
pub use surface::{HClass, Mod2Vec, SurfaceConfig};
pub use symplectic::{is_torelli_shadow, word_to_sp, Mod2Matrix, SpMatrix};
pub use wedge::{chillingworth_class, e_f, wedge3, Wedge3};
pub use boolean::{bar, sp2_action, BoolPoly};
pub use torelli::{
    chillingworth_membership, putman_check, putman_residual, sigma_bp, sigma_sep,
    sigma_separating_sip, sigma_sip, sigma_word, sip_in_bcj_kernel, sip_in_johnson_kernel,
    ssip_span, tau_bp, tau_sep, tau_sip, tau_word, BPData, FactorItem, PutmanData, SIPData,
    SepTwistData, SignedBp, TorelliFactorization,
};
pub use words::{
    check_derivation, cyclic_reduce, free_reduce, lantern_classify, sp_shadow_check,
    trace_normal_form, CurveId, DerivationScript, LanternClass, RelationEnv, Twist, Word,
};
