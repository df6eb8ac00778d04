//! Gröbner bases of submodules of free modules over `F_p[x_1..x_n]`,
//! normal forms, syzygies and preimages. Every module computation over a
//! quotient `S/I` is lifted to `S` by adding the relations `I * e_j`.

mod buchberger;
mod element;
mod syzygy;

pub use buchberger::{buchberger, compute, GbOutput, GroebnerBasis};
pub use element::{ModTerm, ModuleElement};
pub use syzygy::{ideal_relations, submodule_equal, syzygies, Lifter, SubmoduleData};

#[allow(unused_imports)]
pub(crate) use syzygy::column_degree;
