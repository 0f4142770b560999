//! Exact modular arithmetic over unsigned 64-bit integers.
//!
//! Every value stays below 2^63 and every multiplication goes through a
//! 128-bit intermediate before reduction, so no operation can overflow or
//! lose precision. Primality and factoring are deterministic trial
//! division; the moduli here are desk-scale prime powers, not
//! cryptographic ones.

use std::collections::HashMap;
use std::fmt;

/// Errors produced by the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModArithError {
    /// `egcd(0, 0)` has no well-defined cofactors.
    EgcdBothZero,
    /// Inverse requested for a non-unit; carries the offending gcd.
    NotInvertible { value: u64, modulus: u64, gcd: u64 },
    /// Operation requires a unit (gcd 1 with the modulus).
    NotAUnit { value: u64, modulus: u64 },
    /// CRT moduli share a common factor.
    NonCoprimeModuli { m1: u64, m2: u64 },
    /// Combined CRT modulus would exceed the 63-bit width contract.
    CrtOverflow { m1: u64, m2: u64 },
    /// Prime-power base fails the deterministic primality check or is even.
    NotAnOddPrime { p: u64 },
    /// Prime-power exponent must be at least 1.
    ZeroExponent,
    /// p^(e+4) must fit in 63 bits so series working precision never overflows.
    ModulusTooLarge { p: u64, e: u32 },
    /// Two residues that must share a modulus do not.
    ModulusMismatch { left: u64, right: u64 },
}

impl fmt::Display for ModArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModArithError::EgcdBothZero => write!(f, "egcd(0, 0) is undefined"),
            ModArithError::NotInvertible {
                value,
                modulus,
                gcd,
            } => {
                write!(f, "{value} is not invertible mod {modulus} (gcd {gcd})")
            }
            ModArithError::NotAUnit { value, modulus } => {
                write!(f, "{value} is not a unit mod {modulus}")
            }
            ModArithError::NonCoprimeModuli { m1, m2 } => {
                write!(f, "CRT moduli {m1} and {m2} are not coprime")
            }
            ModArithError::CrtOverflow { m1, m2 } => {
                write!(f, "CRT modulus {m1}*{m2} exceeds 63 bits")
            }
            ModArithError::NotAnOddPrime { p } => {
                write!(f, "p must be an odd prime, got {p}")
            }
            ModArithError::ZeroExponent => write!(f, "prime-power exponent must be >= 1"),
            ModArithError::ModulusTooLarge { p, e } => {
                write!(f, "{p}^({e}+4) exceeds 63 bits; instance too large")
            }
            ModArithError::ModulusMismatch { left, right } => {
                write!(f, "residues have different moduli: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for ModArithError {}

/// (a * b) mod m without overflow.
#[inline(always)]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^exp mod m by binary exponentiation, O(log exp) multiplications.
pub fn pow_mod(mut a: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns (g, u, v) with g = gcd(a, b) >= 0 and a*u + b*v = g.
pub fn egcd(a: i128, b: i128) -> Result<(i128, i128, i128), ModArithError> {
    if a == 0 && b == 0 {
        return Err(ModArithError::EgcdBothZero);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut u0, mut u1) = (1i128, 0i128);
    let (mut v0, mut v1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (u0, u1) = (u1, u0 - q * u1);
        (v0, v1) = (v1, v0 - q * v1);
    }
    if r0 < 0 {
        (r0, u0, v0) = (-r0, -u0, -v0);
    }
    Ok((r0, u0, v0))
}

/// a^(-1) mod m, or the offending gcd if a is not a unit.
pub fn inv_mod(a: u64, m: u64) -> Result<u64, ModArithError> {
    let (g, u, _) = egcd(a as i128, m as i128)?;
    if g != 1 {
        return Err(ModArithError::NotInvertible {
            value: a,
            modulus: m,
            gcd: g as u64,
        });
    }
    Ok(u.rem_euclid(m as i128) as u64)
}

/// A congruence class in canonical form: 0 <= value < modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` into [0, modulus). `modulus` must be positive.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    /// Accepts negative representatives and reduces them into [0, modulus).
    pub fn from_signed(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: (value as i128).rem_euclid(modulus as i128) as u64,
            modulus,
        }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// self^exp mod modulus.
    pub fn pow(self, exp: u64) -> Residue {
        Residue {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; errors with the offending gcd for non-units.
    pub fn inv(self) -> Result<Residue, ModArithError> {
        Ok(Residue {
            value: inv_mod(self.value, self.modulus)?,
            modulus: self.modulus,
        })
    }

    /// True iff gcd(value, modulus) = 1.
    pub fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Deterministic primality by trial division up to sqrt(n).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of n by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A validated modulus p^e with p an odd prime and e >= 1.
///
/// Construction enforces p^(e+4) < 2^63 so that series arithmetic done at a
/// few extra digits of p-adic precision stays inside u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    e: u32,
    modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self, ModArithError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(ModArithError::NotAnOddPrime { p });
        }
        if e == 0 {
            return Err(ModArithError::ZeroExponent);
        }
        let mut headroom: u128 = 1;
        for _ in 0..(e + 4) {
            headroom *= p as u128;
            if headroom >= 1u128 << 63 {
                return Err(ModArithError::ModulusTooLarge { p, e });
            }
        }
        let mut modulus = 1u64;
        for _ in 0..e {
            modulus *= p;
        }
        Ok(PrimePower { p, e, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Euler phi: p^(e-1) * (p - 1).
    pub fn phi(&self) -> u64 {
        (self.modulus / self.p) * (self.p - 1)
    }

    /// The residue of `value` mod p^e.
    pub fn residue(&self, value: u64) -> Residue {
        Residue::new(value, self.modulus)
    }

    /// p^k for 0 <= k <= e.
    pub fn power(&self, k: u32) -> u64 {
        assert!(k <= self.e, "p^{k} exceeds the modulus exponent {}", self.e);
        let mut out = 1u64;
        for _ in 0..k {
            out *= self.p;
        }
        out
    }

    /// Least k >= 1 with g^k = 1 mod p^e.
    ///
    /// Factors phi(p^e) by trial division, then strips prime factors from
    /// the exponent while g^(ord/q) stays 1.
    pub fn mult_order(&self, g: Residue) -> Result<u64, ModArithError> {
        if g.modulus() != self.modulus {
            return Err(ModArithError::ModulusMismatch {
                left: g.modulus(),
                right: self.modulus,
            });
        }
        if !g.is_unit() {
            return Err(ModArithError::NotAUnit {
                value: g.value(),
                modulus: self.modulus,
            });
        }
        let mut ord = self.phi();
        for q in prime_factors(self.phi()) {
            while ord % q == 0 && pow_mod(g.value(), ord / q, self.modulus) == 1 {
                ord /= q;
            }
        }
        Ok(ord)
    }

    /// True iff g generates the full unit group mod p^e.
    pub fn is_generator(&self, g: Residue) -> Result<bool, ModArithError> {
        Ok(self.mult_order(g)? == self.phi())
    }

    /// Smallest generator >= 2, scanning 2, 3, 4, ...
    pub fn find_generator(&self) -> Residue {
        let mut candidate = 2u64;
        loop {
            assert!(
                candidate < self.modulus,
                "no generator found below the modulus"
            );
            if candidate % self.p != 0 {
                let r = self.residue(candidate);
                if self.mult_order(r).expect("unit by construction") == self.phi() {
                    return r;
                }
            }
            candidate += 1;
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

/// Combines x = r1 (mod m1), x = r2 (mod m2) into the unique residue mod m1*m2.
pub fn crt_pair(r1: Residue, r2: Residue) -> Result<Residue, ModArithError> {
    let (m1, m2) = (r1.modulus(), r2.modulus());
    let (g, u, _) = egcd(m1 as i128, m2 as i128)?;
    if g != 1 {
        return Err(ModArithError::NonCoprimeModuli { m1, m2 });
    }
    let combined = m1
        .checked_mul(m2)
        .filter(|&m| m < 1u64 << 63)
        .ok_or(ModArithError::CrtOverflow { m1, m2 })?;
    // x = r1 + m1 * ((r2 - r1) * m1^(-1) mod m2)
    let m1_inv = u.rem_euclid(m2 as i128) as u64;
    let diff = (r2.value() as i128 - r1.value() as i128).rem_euclid(m2 as i128) as u64;
    let t = mul_mod(diff, m1_inv, m2);
    Ok(Residue::new(r1.value() + m1 * t, combined))
}

/// Baby-step giant-step discrete log: least x >= 0 with g^x = h, or None
/// when h lies outside the subgroup generated by g. O(sqrt(order)) space.
pub fn bsgs_dlog(g: Residue, h: Residue, order: u64) -> Option<u64> {
    assert_eq!(g.modulus(), h.modulus(), "modulus mismatch");
    let m = g.modulus();
    let step = {
        let mut s = (order as f64).sqrt() as u64;
        while s * s < order {
            s += 1;
        }
        s.max(1)
    };
    let mut table: HashMap<u64, u64> = HashMap::with_capacity(step as usize);
    let mut baby = 1u64;
    for j in 0..step {
        table.entry(baby).or_insert(j);
        baby = mul_mod(baby, g.value(), m);
    }
    let giant = inv_mod(pow_mod(g.value(), step, m), m).ok()?;
    let mut current = h.value();
    for i in 0..=step {
        if let Some(&j) = table.get(&current) {
            return Some(i * step + j);
        }
        current = mul_mod(current, giant, m);
    }
    None
}
