//! Exact rational polyhedral fans and complexes, Bergman fans of matroids,
//! and certification of k-connectivity through codimension one.
//!
//! A pure `d`-dimensional polyhedral complex is *k-connected through
//! codimension one* when removing any `k - 1` closed facets leaves its
//! facet-ridge hypergraph connected. Tropicalizations of irreducible
//! varieties with an `ℓ`-dimensional lineality space are `(d - ℓ)`-connected,
//! so a failing certificate is an obstruction to realizability.
//!
//! ```
//! use tropicon::{connectivity, generators};
//!
//! let fan = generators::two_planes();
//! let h = connectivity::build_hypergraph(&fan).unwrap();
//! let cert = connectivity::is_k_connected(&h, 2, &Default::default()).unwrap();
//! assert!(!cert.verdict);
//! ```

pub mod connectivity;
mod error;
pub mod generators;
pub mod io;
pub mod matroid;
pub mod polyhedral;
pub mod ratlin;
pub mod tropical;

pub use error::{Error, Result};
pub use polyhedral::{Complex, HRep, Polyhedron};
pub use ratlin::{QMatrix, QVector, Rational};
