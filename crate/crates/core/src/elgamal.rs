//! Desk-scale ElGamal signatures and the fixed-s2 forgery that reduces to
//! the discrete Lambert problem.
//!
//! Signing: s1 = g^y mod p, s2 = y^(-1) (msg - x*s1) mod (p-1).
//! Verification accepts when h^s1 * s1^s2 = g^msg (mod p). Fixing s2 and
//! solving for s1 turns the verification congruence into
//! s1 * a^s1 = b (mod p) with a = h^(s2^-1) and b = g^(msg * s2^-1), i.e.
//! a discrete Lambert instance. Extended-range solutions of that instance
//! forge signatures that pass any verifier not range-checking s1 — the
//! `RangePolicy` knob makes both verifier behaviours available.
//!
//! No hashing, no large primes, no randomness: nonces are caller-supplied
//! so everything is deterministic and testable.

use crate::modarith::{gcd, inv_mod, mul_mod, pow_mod, ModArithError, PrimePower, Residue};
use crate::solver::{solve_all, DwpInstance, SolverError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElGamalError {
    /// Group base must generate the full unit group mod p.
    NotAGenerator {
        g: u64,
        p: u64,
    },
    /// Private keys live in {1..p-2}.
    PrivateKeyOutOfRange {
        x: u64,
        p: u64,
    },
    /// Nonces must be in {1..p-2} and invertible mod p-1.
    InvalidNonce {
        y: u64,
        p: u64,
    },
    /// Fixed s2 must be invertible mod p-1.
    InvalidS2 {
        s2: u64,
        p: u64,
    },
    Arith(ModArithError),
    Solver(SolverError),
}

impl fmt::Display for ElGamalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElGamalError::NotAGenerator { g, p } => {
                write!(f, "{g} is not a generator mod {p}")
            }
            ElGamalError::PrivateKeyOutOfRange { x, p } => {
                write!(f, "private key {x} outside 1..={}", p - 2)
            }
            ElGamalError::InvalidNonce { y, p } => {
                write!(f, "nonce {y} is not a unit mod {}", p - 1)
            }
            ElGamalError::InvalidS2 { s2, p } => {
                write!(f, "s2 = {s2} is not a unit mod {}", p - 1)
            }
            ElGamalError::Arith(e) => write!(f, "{e}"),
            ElGamalError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ElGamalError {}

impl From<ModArithError> for ElGamalError {
    fn from(e: ModArithError) -> Self {
        ElGamalError::Arith(e)
    }
}

impl From<SolverError> for ElGamalError {
    fn from(e: SolverError) -> Self {
        ElGamalError::Solver(e)
    }
}

/// Public domain parameters: an odd prime p and a generator g mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalParams {
    p: u64,
    g: u64,
}

impl ElGamalParams {
    pub fn new(p: u64, g: u64) -> Result<Self, ElGamalError> {
        let pp = PrimePower::new(p, 1)?;
        let g = g % p;
        if g == 0 || !pp.is_generator(Residue::new(g, p))? {
            return Err(ElGamalError::NotAGenerator { g, p });
        }
        Ok(ElGamalParams { p, g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }
}

/// Key pair: private exponent x and public h = g^x mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalKeypair {
    params: ElGamalParams,
    x_priv: u64,
    h: u64,
}

impl ElGamalKeypair {
    pub fn params(&self) -> ElGamalParams {
        self.params
    }

    pub fn public_key(&self) -> u64 {
        self.h
    }

    pub fn private_key(&self) -> u64 {
        self.x_priv
    }
}

/// A signature (s1, s2). Validity is a property checked by `verify`, not
/// an invariant of the type; forged s1 values may exceed p-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub s1: u64,
    pub s2: u64,
}

/// How the verifier treats the range of s1. The scheme's definition does
/// not constrain it; `Strict` additionally requires 1 <= s1 <= p-1, which
/// is exactly the check that blocks extended-range Lambert forgeries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangePolicy {
    Strict,
    Extended,
}

pub fn keygen(params: ElGamalParams, x_priv: u64) -> Result<ElGamalKeypair, ElGamalError> {
    let p = params.p;
    if x_priv < 1 || x_priv > p - 2 {
        return Err(ElGamalError::PrivateKeyOutOfRange { x: x_priv, p });
    }
    Ok(ElGamalKeypair {
        params,
        x_priv,
        h: pow_mod(params.g, x_priv, p),
    })
}

/// Signs with an explicit nonce y (must be a unit mod p-1).
pub fn sign(kp: &ElGamalKeypair, msg: u64, y: u64) -> Result<Signature, ElGamalError> {
    let p = kp.params.p;
    let order = p - 1;
    if y < 1 || y > p - 2 || gcd(y, order) != 1 {
        return Err(ElGamalError::InvalidNonce { y, p });
    }
    let s1 = pow_mod(kp.params.g, y, p);
    let y_inv = inv_mod(y, order).expect("nonce checked to be a unit");
    let diff = (msg as i128 - (kp.x_priv as i128 * s1 as i128)).rem_euclid(order as i128) as u64;
    let s2 = mul_mod(y_inv, diff, order);
    Ok(Signature { s1, s2 })
}

/// Checks h^s1 * s1^s2 = g^msg (mod p). Under `Strict` the signature is
/// additionally rejected unless 1 <= s1 <= p-1.
pub fn verify(
    params: ElGamalParams,
    h: u64,
    msg: u64,
    sig: &Signature,
    policy: RangePolicy,
) -> bool {
    let p = params.p;
    if sig.s1 < 1 {
        return false;
    }
    if policy == RangePolicy::Strict && sig.s1 > p - 1 {
        return false;
    }
    let v1 = mul_mod(pow_mod(h, sig.s1, p), pow_mod(sig.s1 % p, sig.s2, p), p);
    let v2 = pow_mod(params.g, msg, p);
    v1 == v2
}

/// The discrete Lambert instance behind a fixed-s2 forgery: solving
/// s1 * a^s1 = b (mod p) with a = h^(s2^-1 mod p-1), b = g^(msg * s2^-1).
pub fn reduction_instance(
    params: ElGamalParams,
    h: u64,
    msg: u64,
    s2: u64,
) -> Result<DwpInstance, ElGamalError> {
    let p = params.p;
    let order = p - 1;
    if gcd(s2 % order, order) != 1 {
        return Err(ElGamalError::InvalidS2 { s2, p });
    }
    let s2_inv = inv_mod(s2 % order, order).expect("s2 checked to be a unit");
    let a = pow_mod(h, s2_inv, p);
    let b = pow_mod(params.g, mul_mod(msg % order, s2_inv, order), p);
    Ok(DwpInstance::from_params(p, 1, a, b)?)
}

/// Forges signatures for `msg` with the chosen s2 by enumerating all
/// extended-range solutions of the reduced Lambert instance. Every
/// returned signature passes `Extended` verification.
pub fn forge_fixed_s2(
    params: ElGamalParams,
    h: u64,
    msg: u64,
    s2: u64,
) -> Result<Vec<Signature>, ElGamalError> {
    let inst = reduction_instance(params, h, msg, s2)?;
    let set = solve_all(&inst)?;
    let s2 = s2 % (params.p - 1);
    Ok(set
        .solutions()
        .iter()
        .map(|&s1| Signature { s1, s2 })
        .collect())
}
