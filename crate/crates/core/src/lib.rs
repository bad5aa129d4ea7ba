//! Finite models of the Leibniz calculus: pushout-products, pullback-homs,
//! orthogonality, lattice-valued simplices and horns, and the inner-horn
//! retract, with a decision procedure for bounded distributive lattices.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod fincat;
pub mod lattice;
pub mod leibniz;
pub mod obligation;
pub mod retract;
pub mod shapes;
pub mod symlat;
