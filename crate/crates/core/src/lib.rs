//! Shifts of finite type presented as random-substitution subshifts.
//!
//! The crate builds the cycle-substitution of a strongly connected graph,
//! computes exact finite-window languages of random substitutions, checks
//! that both sides agree, and provides the entropy constructions that move
//! the topological entropy of a substitution by controlled amounts.
//!
//! ```
//! use subshift::{cyclesub, fixtures, Limits};
//!
//! let g = fixtures::mickey();
//! let theta = cyclesub::vertex_cycle_substitution(&g).unwrap();
//! let report = cyclesub::verify_language_equality(&g, 6, &Limits::default()).unwrap();
//! assert!(report.equal);
//! assert!(theta.is_primitive().primitive);
//! ```

pub mod cli;
pub mod cyclesub;
pub mod digraph;
pub mod entropy;
pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod randsub;
pub mod sft;
pub mod words;

pub use digraph::{Cycle, Decomposition, Digraph, Mode};
pub use error::{Error, Result};
pub use matrix::{matrix_classify, perron_eigenvalue, BoolMatrix, Classification, ZeroOneMatrix};
pub use randsub::{DeterministicSubstitution, LanguageTable, Limits, RandomSubstitution};
pub use sft::{ComplexityProfile, Sft};
pub use words::{Alphabet, Letter, Word, WordSet};
