//! Simplicial homology with integer, rational and finite field coefficients,
//! plus builders for mapping cylinders, Pontryagin surface stages and
//! Edwards-Walsh skeleta.

pub mod abgroup;
pub mod builders;
pub mod complex;
pub mod field;
pub mod homology;
pub mod snf;

pub use abgroup::{AbGroup, Coefficients};
pub use complex::{ChainComplex, ChainMap, HomologyError, SimplicialComplex, SimplicialMap};
pub use homology::{cohomology, homology, induced, induced_simplicial, integral_homology, Homology, InducedMapReport, Variance};
