//! Graded modules, bounded complexes, Koszul complexes, homology and free
//! resolutions over a quotient ring.

mod complex;
mod homology;
mod koszul;
mod presentation;
mod resolution;
mod semifree;

pub use complex::{Complex, FreeComplex};
pub use homology::{all_homology, homology, homology_vanishes, k_dimension, module_length, sup_homology, HomologyModule};
pub use koszul::{koszul_complex, koszul_complex_ring};
pub use presentation::ModulePresentation;
pub use resolution::{cancel_units, has_unit_entries, minimal_free_resolution, BettiTable, Resolution};
pub use semifree::semifree_resolution;

