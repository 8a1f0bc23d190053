//! Degree −R versal deformation data of affine toric varieties.
//!
//! Pipeline: a cone σ and a primitive degree `R` give the cross-section `Q`,
//! its Minkowski summand space, the base ideal, the η̄* calculus, the Hilbert
//! basis of σ∨, the toric equations of `Y` with their liftings, and the
//! dimensions of `T¹(−R)` and `T²(−kR)`.

pub mod base_space;
pub mod cone;
pub mod cross_section;
pub mod error;
pub mod eta;
pub mod exact;
pub mod family;
pub mod hilbert;
pub mod minkowski;
pub mod poly;
pub mod tangent;

pub use cone::{check_codim2_smooth, dual_cone, faces, PointedCone};
pub use cross_section::{cross_section, CrossSection, Edge, Vertex};
pub use error::{Error, Result};
pub use exact::{hermite_normal_form, kernel_lattice, primitive_part, solve_nonneg_integer, LatticeBasis, Rat};
