//! Cellular automata over the groups Z^d.
//!
//! The crate covers the automaton object itself ([`ca`]), its alphabets and
//! local rules ([`alphabet`], [`field`]), integer lattices for periodic
//! configurations and subgroup restriction ([`lattice`]), finite quotient
//! automata ([`quotient`]), exact decision procedures in dimension one
//! ([`onedim`]), finite projective sequences ([`projlim`]), and the JSON
//! document formats used by the command-line tool ([`doc`]).
//!
//! Bulk work (rule tabulation, quotient maps, rule corpora, lattice scans)
//! runs on rayon when the default `parallel` feature is on and sequentially
//! otherwise; results are identical either way.

pub mod alphabet;
pub mod builtin;
pub mod ca;
pub mod corpus;
pub mod doc;
pub mod error;
pub mod field;
pub mod lattice;
mod linsolve;
pub mod onedim;
mod parallel;
pub mod projlim;
pub mod quotient;

pub use alphabet::{Alphabet, AlphabetKind, LocalRule, Matrix, MorphismClass, RuleBody, Symbol, DEFAULT_BUDGET};
pub use ca::{compose, CellularAutomaton, PeriodicConfig};
pub use error::{Error, Result};
pub use lattice::{hnf, CosetTable, GroupElement, Index, Lattice};
