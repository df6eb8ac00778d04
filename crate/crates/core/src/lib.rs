pub mod error;
pub mod field;
pub mod monomial;
pub mod poly;
pub mod groebner;
pub mod matrix;
pub mod ring;
pub mod homological;
pub mod invariants;
pub mod frobenius;
pub mod detector;
pub mod cli;

pub use error::{Error, Result};
pub use homological::{Complex, ModulePresentation};
pub use poly::{PolyRing, Polynomial};
pub use ring::QuotientRing;

// The guide's chapters, compiled so their snippets run as doc-tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    pub mod rings {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    pub mod resolutions {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    pub mod frobenius {}
    #[doc = include_str!("../../../book/src/detector.md")]
    pub mod detector {}
    #[doc = include_str!("../../../book/src/loewy.md")]
    pub mod loewy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
