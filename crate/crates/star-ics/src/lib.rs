//! Exact distance machinery for star graphs.
//!
//! The star graph `ST_n` is the Cayley graph of the symmetric group `S_n`
//! with the star transpositions `(1 i)`, `i = 2..n`, as generators; an edge
//! swaps the first entry of a permutation word with its `i`-th entry. This
//! crate groups permutations by their 1-invariant cycle structure (the
//! length of the cycle containing the symbol 1 plus the multiset of the
//! other proper cycle lengths), builds the binary directed tree `Λ_n` whose
//! vertices are those classes, threads it into an oriented graph `Γ_n`, and
//! reads exact distance distributions of `ST_n` (and of its efficient
//! dominating sets) off the tree with big-integer class counting.
//!
//! Everything computable is cross-checked against a brute-force BFS oracle
//! over the full Cayley graph for small `n` (see [`oracle`]).
//!
//! Modules:
//! - [`perm`]: permutations, star-generator moves, cycle structures, class keys.
//! - [`lambda`]: the class tree `Λ_n` — generation, pruning, ledgers, tables.
//! - [`threading`]: the threaded orientation `Γ_n`.
//! - [`dist`]: exact weight distributions, diameter, counting functions.
//! - [`oracle`]: BFS ground truth and quotient verification.
//! - [`export`]: DOT / JSON / CSV / text renderings and JSON re-import.

pub mod dist;
mod error;
pub mod export;
pub mod lambda;
pub mod oracle;
pub mod perm;
pub mod threading;

pub use error::Error;
pub use lambda::{IndexString, LambdaNode, LambdaTree, LedgerRow};
pub use perm::{CycleStructure, IcsKey, Permutation};
pub use threading::GammaGraph;
