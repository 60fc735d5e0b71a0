//! Strongly regular graphs from transitive permutation group actions.
//!
//! This crate is `no_std` (with `alloc`). File formats, the command line and
//! parallel drivers live in the `srgforge` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod construct;
pub mod graph;
pub mod orbitmat;
pub mod perm;
