//! Mod-2 quadruple point invariants of embedded surfaces.
//!
//! Given two regularly homotopic embeddings e, e′ of a closed orientable
//! genus-n surface F into R³, the number of quadruple points of any generic
//! regular homotopy between them is determined mod 2 by homological data:
//!
//! Q(e, e′) = ψ̂(A⁰(e), A¹(e); A⁰(e′), A¹(e′)) + (n + 1)·ε̂(e, e′)
//!
//! where A⁰, A¹ are the kernels of H₁(F; Z/2) into the two complementary
//! regions and ε̂ compares induced orientations. The crate is layered as
//!
//! - [`gf2`]: packed vectors, matrices and canonical subspaces over GF(2);
//! - [`quadform`]: quadratic forms and orthogonal maps;
//! - [`tsd`]: totally singular decompositions, good bases, ψ and ψ̂;
//! - [`invariant`]: embedding data and the Q formulas;
//! - [`oracle`]: exhaustive cross-checks in dimensions 2 and 4;
//! - [`random`]: generators for property tests.

pub mod error;
pub mod gf2;
pub mod invariant;
pub mod oracle;
pub mod quadform;
pub mod random;
pub mod tsd;

pub use error::{Error, ErrorClass, Result};
pub use gf2::{BitMatrix, BitVector, Subspace};
pub use invariant::{
    compose_split, epsilon_hat, form_of, pullback_by_diffeo, q_diffeo, q_system, quadruple_invariant,
    regularly_homotopic, DiffeoData, EmbeddingData, Orientation, SystemEmbeddingData,
};
pub use oracle::{EnumerationReport, Violation};
pub use quadform::{OrthogonalMap, QuadraticForm};
pub use tsd::{
    complete_to_tsd, direct_sum, equivalent, good_basis, psi, psi_hat, psi_hat_recipe, transport, GoodBasis, Tsd,
};
