//! An exact-arithmetic engine for finite A∞-categories.
//!
//! The engine stores A∞-categories, functors and transformations as
//! truncated families of component maps on shifted hom quivers, evaluates
//! the component calculus (θ, B, M) with the Getzler–Jones sign discipline,
//! and verifies every identity blockwise through a tensor-arity truncation
//! with zero numerical tolerance. The inductive constructions of homotopy
//! theory (unit transformations, inverses, cancellation, quasi-inverse
//! equivalences) are realized by contracting explicit mapping cones.

pub mod cat;
pub mod error;
pub mod exactlin;

pub use error::{CatError, ExactLinError};
