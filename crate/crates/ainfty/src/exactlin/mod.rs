//! Exact graded linear algebra over a field: graded modules, Koszul-signed
//! tensor calculus, complexes, cohomology, homotopy solving, cones and
//! contractions.

pub mod complex;
pub mod field;
pub mod gmap;
pub mod matrix;
pub mod module;
pub mod tensor;

pub use complex::{
    build_cone_contraction, cohomology, cone, contract_cycle, find_chain_homotopy,
    homotopy_inverse, is_homotopy_invertible, ChainMap, Cohomology, Complex, Cone,
    ConeContraction, HomComplexOf, HomotopyInverse,
};
pub use field::{Field, FieldSpec, Fp64, Rat};
pub use gmap::GradedMap;
pub use matrix::{LinearSystem, Matrix};
pub use module::{Degree, GradedModule};
pub use tensor::{tensor_apply, tensor_maps, TensorFactor, TensorSpace};
