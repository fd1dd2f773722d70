//! Exact computations for one-block factor codes on shifts of finite type.
//!
//! A shift of finite type is presented here as a finite directed graph on a
//! symbol alphabet ([`SymbolGraph`]): points of the shift are bi-infinite
//! vertex walks. A factor code is a vertex labeling ([`FactorTriple`]) sending
//! each symbol to a letter of the image alphabet; the image is a sofic shift.
//!
//! On top of that the crate computes, exactly and with machine-checkable
//! witnesses:
//!
//! * the minimal fiber cardinality over finite words and the degree of a
//!   finite-to-one code ([`degree`]),
//! * the class degree via minimal transition blocks ([`classdeg`]),
//! * transition-class structure of fibers over periodic points ([`fibers`]),
//! * permutations induced by repeated blocks, partitions of word fibers, and
//!   diamonds confined to proper subshifts ([`structure`]),
//! * the supporting word-matrix monoid and sliding-block recodings
//!   ([`monoid`], [`codes`]).
//!
//! Everything is deterministic: alphabets carry a fixed total order, all
//! reported sets and witnesses are minimal for the documented tie-breaks, and
//! no hash-order-dependent containers are used.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command line
//! front end live in the companion `shiftlab-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod classdeg;
pub mod codes;
pub mod degree;
pub mod error;
pub mod fibers;
pub mod graph;
pub mod monoid;
pub mod structure;
pub mod triple;

mod scc;

pub use bits::{BitMatrix, BitSet};
pub use error::Error;
pub use graph::{HigherBlock, SymbolGraph, XSym};
pub use triple::{FactorTriple, WordMatrix, YSym};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
