//! Operations on rational complexes used in tropical geometry: lineality
//! quotients, stars, normal fans and skeleta, recession fans, balancing,
//! transverse hyperplane sections and separating hyperplanes.
//!
//! All fans use the outer (maximizing) normal convention.

mod balancing;
mod lineality;
mod normal_fan;
mod section;
mod witness;

pub use balancing::{balancing_check, BalanceReport, RidgeBalance};
pub use lineality::{
    annihilator_projection, complex_lineality_space, project_complex, quotient_by_lineality, star, star_cones,
};
pub use normal_fan::{normal_fan, recession_fan, skeleton};
pub use section::{hyperplane_section, AffineHyperplane, SectionResult};
pub use witness::{witness_hyperplane, SeparationWitness, Side};
