//! Runs the code listings of the book as doctests. Each chapter gets its own
//! module so a failure points at the chapter it came from.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/polyhedra.md")]
pub mod polyhedra {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bergman.md")]
pub mod bergman {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/connectivity.md")]
pub mod connectivity {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/quotients.md")]
pub mod quotients {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/sections.md")]
pub mod sections {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
