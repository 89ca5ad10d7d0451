//! Analysis of finite simplicial complexes given as facet lists.
//!
//! * [`complex`]: faces, links, stars, joins, full subcomplexes,
//!   pseudomanifold and orientability checks.
//! * [`homology`]: exact (co)homology over ℤ and ℤ/p via [`snf`].
//! * [`verify`]: complement homology, Alexander duality and local homology
//!   checks.
//! * [`pi1`]: edge-path presentations, Tietze simplification and freeness
//!   verdicts with checkable certificates.
//! * [`bounds`]: vertex-count lower bounds and sphere verdicts.
//! * [`combinatoriality`]: small-link certificates, low-dimensional sphere
//!   recognition and a bistellar-flip heuristic.

pub mod bounds;
pub mod combinatoriality;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod pi1;
pub mod simplex;
pub mod snf;
pub mod verify;

pub use complex::{Orientability, PseudomanifoldReport, SimplicialComplex, VertexSet};
pub use error::{ComplexError, Error, Result};
pub use homology::{Coefficients, GroupInvariants, HomologyProfile};
pub use simplex::{Simplex, VertexId};
