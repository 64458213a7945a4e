//! Exact computations with bigraded modules over `H_n ⊗ H_m`, where `H_n` is
//! the Taft algebra at a primitive `n`-th root of unity, together with their
//! stable categories and Grothendieck rings.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod k0;
pub mod modules;
pub mod quantum;
pub mod stable;
