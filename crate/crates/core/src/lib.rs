#![allow(clippy::manual_is_multiple_of)]

//! Solutions of the discrete Lambert congruence x*g^x = c (mod p^e).
//!
//! The discrete Lambert problem (DWP) asks for all x with x*g^x = c mod p^e,
//! for an odd prime p and units g, c. In the extended range {1..p^e*m},
//! m = ord_p(g), there are exactly m solutions, and they can be found
//! orders of magnitude faster than by scanning: split g into its
//! Teichmuller and one-unit parts, solve mod p, Hensel-lift each root to
//! mod p^e, and recombine with the CRT.
//!
//! Modules:
//! - [`modarith`]: u64 modular arithmetic, orders, generators, CRT, BSGS.
//! - [`padic`]: truncated p-adic arithmetic (Teichmuller split, exp/log).
//! - [`solver`]: the lift-based solver plus a brute-force oracle.
//! - [`patterns`]: executable verifiers for structural identities of the
//!   solution sets (sums, bijections, special pairs, order formulas).
//! - [`elgamal`]: desk-scale ElGamal signatures and the fixed-s2 forgery
//!   that reduces to the DWP.
//! - [`rng`]: the explicit LCG used for reproducible sampling.

pub mod elgamal;
pub mod modarith;
pub mod padic;
pub mod patterns;
pub mod rng;
pub mod solver;

pub use modarith::{PrimePower, Residue};
pub use solver::{DwpInstance, SolutionSet};
