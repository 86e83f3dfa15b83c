//! Oriented m-Cayley digraphs of valency three over finite groups.
//!
//! The crate builds the digraphs from connection matrices, computes their
//! full automorphism groups, checks whether `Aut(Γ)` is exactly the
//! right-translation group `R(G)`, and searches connection matrices
//! exhaustively to certify the cases where no such digraph exists.

pub mod autgroup;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod group;
pub mod input;
pub mod mcayley;
mod par;
pub mod report;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
