//! Tree shifts over the k-regular rooted tree and the decision procedures
//! around them: sofic presentations by unrestricted Rabin automata,
//! finite-tree automata over full-tree-patterns, shifts of finite type,
//! cellular automata, and algorithms deciding emptiness, fullness, equality
//! of sofic tree shifts and surjectivity of cellular automata between them.
//!
//! The crate is organized along the objects it manipulates:
//!
//! - [`alphabet`], [`tree`], [`pattern`], [`moore`]: words, finite subtrees,
//!   labeled patterns with their canonical term syntax, and finitely
//!   described configurations.
//! - [`rabin`]: unrestricted Rabin automata, essentialization, pattern
//!   acceptance with witnesses, the join, and the subset co-determinization.
//! - [`fta`]: finite-tree automata, the subset finite-tree automaton in
//!   language and complement mode, complementation, emptiness and witness
//!   sampling.
//! - [`sft`]: shifts of finite type, locally and globally admissible blocks,
//!   and the canonical Rabin presentation.
//! - [`ca`]: cellular automata, composition, the image-automaton
//!   construction and the SFT cover of a sofic presentation.
//! - [`decide`]: fullness, equality, containment, and surjectivity, all
//!   returning independently checkable witnesses on negative answers.
//! - [`format`]: the line-oriented document formats used by the `treeshift`
//!   command-line tool.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared and run concurrently. Constructions that can
//! blow up (subset automata, products, rule tables) take a [`Budget`] and
//! fail cleanly when it is exceeded.

pub mod alphabet;
pub mod ca;
pub mod decide;
pub mod error;
pub mod format;
pub mod fta;
pub mod moore;
pub mod pattern;
pub mod rabin;
pub mod sft;
pub mod tree;

#[cfg(test)]
pub(crate) mod fixtures;

pub use alphabet::{Alphabet, Arity, Letter};
pub use error::{Budget, Error};
pub use moore::MooreColoring;
pub use pattern::Pattern;
pub use rabin::{RabinAutomaton, RunAssignment, StateId, TransitionBundle};
pub use tree::{FullTree, Subtree, Word};
