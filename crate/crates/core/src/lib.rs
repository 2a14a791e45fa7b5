//! Computational engine for finite groups with abelian Sylow subgroups
//! (A-groups), given by Cayley tables.
//!
//! The crate decides isomorphism and computes full automorphism groups of
//! A-groups in time polynomial in the group order, and ships brute-force
//! oracles plus a small construction DSL so every step can be cross-checked
//! at desk scale.
//!
//! Module map:
//! - [`cayley`]: groups as multiplication tables, subgroups, quotients,
//!   Sylow subgroups, solvable radical, products.
//! - [`perm`]: permutation groups with stabilizer chains (membership, order,
//!   transporters, homomorphism kernels and preimages).
//! - [`strings`]: subset transporters by dynamic programming over subsets,
//!   and string isomorphism under a permutation group.
//! - [`abelian`]: bases of abelian groups, homocyclic decompositions, the
//!   matrix encoding of endomorphism rings, linear algebra mod p^k.
//! - [`repr`]: representations of a group on an abelian group, and the
//!   elementary-abelian (semisimple) toolkit.
//! - [`transport`]: representation-transporting automorphisms.
//! - [`intertwine`]: intertwining automorphisms via module homomorphism
//!   spaces and unit groups of centralizer rings.
//! - [`structure`]: characteristic complements, Schur-Zassenhaus, Hall
//!   subgroups of solvable groups.
//! - [`aut`]: the recursive automorphism-group engine.
//! - [`oracle`]: budgeted brute-force automorphism/isomorphism search.
//! - [`reduce`]: reductions between isomorphism-type problems on a
//!   direct-factor-closed class.
//! - [`dsl`]: the group construction expression language.
//! - [`fileio`]: the on-disk group table format.

pub mod abelian;
pub mod aut;
mod bits;
pub mod cayley;
pub mod dsl;
mod error;
pub mod fileio;
pub mod intertwine;
pub mod oracle;
pub mod perm;
pub mod reduce;
pub mod repr;
pub mod strings;
pub mod structure;
pub mod transport;

pub use error::{Error, Result};
