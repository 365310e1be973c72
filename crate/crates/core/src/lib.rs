//! Construction and certification of finite permutation quotients of free
//! products of finite groups (optionally amalgamated over a common subgroup),
//! in which the image of a chosen element has a prescribed order.
//!
//! The pipeline works on *action graphs*: labelled, directed graphs in which
//! every generator label acts as a bijection on the vertex set and every
//! factor subgraph is a Cayley graph of its factor.  Layered covers of such
//! graphs stretch the cycles of a target word by controlled amounts, and an
//! independent permutation oracle certifies the resulting element order
//! before anything is reported.

#![forbid(unsafe_code)]

pub mod arith;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;
pub mod surgery;
pub mod trace;
pub mod witness;
pub mod words;

pub use graph::{ActionGraph, Label};
pub use group::{FiniteGroup, GroupHom};
pub use witness::PotencyWitness;
pub use words::{FactorSystem, Letter, Word};
