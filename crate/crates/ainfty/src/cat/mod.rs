//! Graded quivers, A∞-categories, A∞-functors and coderivations as truncated
//! component families, with expansion formulas and identity checkers.
//!
//! All component data lives on the shifted hom quiver: the stored module for
//! a pair (X, Y) is sA(X, Y) and the stored differentials b_n have degree +1
//! regardless of arity. The traditional m_n view exists only at the
//! conversion boundary (`convert`).

mod category;
mod coderivation;
mod convert;
mod expand;
mod functor;
mod quiver;
mod report;
mod transport;

pub use category::{AInfCategory, AInfCategoryBuilder};
pub use coderivation::Coderivation;
pub use convert::{b_components_from_m, m_components_from_b, MComponents};
pub use expand::SeqBlockMap;
pub use functor::{compose_functors, AInfFunctor, AInfFunctorBuilder};
pub use quiver::{ObjSeq, Quiver};
pub use transport::{conjugate_by_homomorphism, conjugate_by_iso};
pub use report::{Defect, Report};
