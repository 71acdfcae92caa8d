//! Exact conjugacy computations in finitely generated Coxeter groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`system`], [`word`], [`engine`]: Coxeter systems, words, elements and
//!   the exact multiplication engine;
//! * [`braid`]: braid-move closures of words;
//! * [`parabolic`]: coset decompositions, longest elements, normalizers and
//!   the Lusztig decomposition `N_W(W_I) = W_I ⋊ N_I`;
//! * [`geom`]: the numeric reflection representation, used as an
//!   independent cross-check of the exact engine;
//! * [`conjugacy`]: cyclic shifts, tight conjugation, minimal conjugates,
//!   conjugacy decisions with certificates, straightness and twisted
//!   conjugacy in finite parabolics;
//! * [`complex`]: chambers, residues, projections and the minimal-conjugate
//!   chamber sets;
//! * [`verify`]: property suites used by the command-line `verify` command.

pub mod braid;
pub mod complex;
pub mod conjugacy;
pub mod engine;
pub mod error;
pub mod finite_type;
pub mod geom;
pub mod parabolic;
pub mod system;
pub mod verify;
pub mod word;
pub mod zoo;

pub use error::{Error, ParseErrorKind, Result};
pub use finite_type::FiniteType;
pub use system::{CoxeterSystem, Order};
pub use word::{Element, GenSubset, Generator, Word};
