//! Monogenic functions in the paravector variable: Clifford arithmetic,
//! slice and generalized CK-extensions, the Fueter-Sce-Qian map, the dual
//! Radon transform and coherent state transforms, each with checks.
//!
//! The guide in `book/` walks through the pieces; its snippets run as doctests.

pub mod clifford;
pub mod constants;
pub mod cst;
pub mod error;
pub mod export;
pub mod extension;
pub mod fueter;
pub mod gauss;
pub mod json;
pub mod kernels;
pub mod laurent;
pub mod poly;
pub mod radial;
pub mod radon;
pub mod report;
pub mod scalar;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/algebra.md")]
    struct Algebra;
    #[doc = include_str!("../../../book/src/extensions.md")]
    struct Extensions;
    #[doc = include_str!("../../../book/src/fueter.md")]
    struct Fueter;
    #[doc = include_str!("../../../book/src/radon.md")]
    struct Radon;
    #[doc = include_str!("../../../book/src/cst.md")]
    struct Cst;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
