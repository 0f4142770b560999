//! Truncated p-adic arithmetic mod p^e.
//!
//! Every unit g mod p^e splits as g = omega(g) * `<g>`, where omega(g) is the
//! Teichmuller representative (the unique (p-1)-th root of unity congruent
//! to g mod p) and the one-unit part `<g>` is congruent to 1 mod p. One-units
//! are where the p-adic exp and log live; both series are computed exactly
//! mod p^e by carrying a few extra digits of working precision so that the
//! divisions by k and k! never lose information.

use crate::modarith::{inv_mod, mul_mod, pow_mod, ModArithError, PrimePower, Residue};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicError {
    /// Operation needs a unit mod p^e.
    NotAUnit {
        value: u64,
        modulus: u64,
    },
    /// log and one-unit powers need an argument congruent to 1 mod p.
    NotAOneUnit {
        value: u64,
        modulus: u64,
    },
    /// exp converges only on arguments congruent to 0 mod p (p odd).
    NotDivisibleByP {
        value: u64,
        modulus: u64,
    },
    /// The series working modulus p^(e+V) would leave 63 bits.
    PrecisionOverflow {
        p: u64,
        working_exponent: u32,
    },
    Arith(ModArithError),
}

impl fmt::Display for PadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicError::NotAUnit { value, modulus } => {
                write!(f, "{value} is not a unit mod {modulus}")
            }
            PadicError::NotAOneUnit { value, modulus } => {
                write!(f, "{value} mod {modulus} is not congruent to 1 mod p")
            }
            PadicError::NotDivisibleByP { value, modulus } => {
                write!(f, "{value} mod {modulus} is not congruent to 0 mod p")
            }
            PadicError::PrecisionOverflow {
                p,
                working_exponent,
            } => {
                write!(f, "working modulus {p}^{working_exponent} exceeds 63 bits")
            }
            PadicError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PadicError {}

impl From<ModArithError> for PadicError {
    fn from(e: ModArithError) -> Self {
        PadicError::Arith(e)
    }
}

fn check_unit(pp: &PrimePower, g: Residue) -> Result<(), PadicError> {
    if g.modulus() != pp.modulus() {
        return Err(ModArithError::ModulusMismatch {
            left: g.modulus(),
            right: pp.modulus(),
        }
        .into());
    }
    if g.value() % pp.p() == 0 {
        return Err(PadicError::NotAUnit {
            value: g.value(),
            modulus: pp.modulus(),
        });
    }
    Ok(())
}

fn check_one_unit(pp: &PrimePower, u: Residue) -> Result<(), PadicError> {
    if u.modulus() != pp.modulus() {
        return Err(ModArithError::ModulusMismatch {
            left: u.modulus(),
            right: pp.modulus(),
        }
        .into());
    }
    if u.value() % pp.p() != 1 {
        return Err(PadicError::NotAOneUnit {
            value: u.value(),
            modulus: pp.modulus(),
        });
    }
    Ok(())
}

/// The Teichmuller representative of g: the unique omega mod p^e with
/// omega = g (mod p) and omega^(p-1) = 1 (mod p^e).
///
/// Computed as g^(p^(e-1)): raising to the p-th power e-1 times drives g to
/// the fixed point of x -> x^p in its mod-p class.
pub fn teichmuller(pp: &PrimePower, g: Residue) -> Result<Residue, PadicError> {
    check_unit(pp, g)?;
    let exp = pp.modulus() / pp.p(); // p^(e-1)
    Ok(g.pow(exp))
}

/// The one-unit part `<g>` = g / omega(g), congruent to 1 mod p.
pub fn one_unit_part(pp: &PrimePower, g: Residue) -> Result<Residue, PadicError> {
    let omega = teichmuller(pp, g)?;
    let inv = omega.inv().expect("Teichmuller representative is a unit");
    Ok(g * inv)
}

/// The multiplicative split g = omega(g) * `<g>` mod p^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeichDecomposition {
    g: Residue,
    omega: Residue,
    one_unit: Residue,
}

impl TeichDecomposition {
    pub fn new(pp: &PrimePower, g: Residue) -> Result<Self, PadicError> {
        let omega = teichmuller(pp, g)?;
        let one_unit = g * omega.inv().expect("Teichmuller representative is a unit");
        Ok(TeichDecomposition { g, omega, one_unit })
    }

    pub fn g(&self) -> Residue {
        self.g
    }

    pub fn omega(&self) -> Residue {
        self.omega
    }

    pub fn one_unit(&self) -> Residue {
        self.one_unit
    }
}

/// Truncation parameters for the exp/log series mod p^e.
///
/// `term_count` = 2e terms suffice: term k of either series has valuation
/// at least k - log_p(k!) >= e once k >= 2e (p odd). The sums are carried
/// mod p^working_exponent, with enough spare digits that every division by
/// k or k! is an exact integer division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicSeriesBudget {
    term_count: u32,
    working_exponent: u32,
    working_modulus: u64,
}

impl PadicSeriesBudget {
    /// Budget for log: spare digits cover max v_p(k) over k <= 2e.
    pub fn for_log(pp: &PrimePower) -> Result<Self, PadicError> {
        let term_count = 2 * pp.e();
        let spare = floor_log(pp.p(), term_count as u64);
        Self::build(pp, term_count, spare)
    }

    /// Budget for exp: spare digits cover v_p((2e)!).
    pub fn for_exp(pp: &PrimePower) -> Result<Self, PadicError> {
        let term_count = 2 * pp.e();
        let mut spare = 0u32;
        let mut q = pp.p();
        loop {
            let part = term_count as u64 / q;
            if part == 0 {
                break;
            }
            spare += part as u32;
            q *= pp.p();
        }
        Self::build(pp, term_count, spare)
    }

    fn build(pp: &PrimePower, term_count: u32, spare: u32) -> Result<Self, PadicError> {
        let working_exponent = pp.e() + spare;
        let mut working_modulus: u64 = 1;
        for _ in 0..working_exponent {
            working_modulus = working_modulus
                .checked_mul(pp.p())
                .filter(|&m| m < 1u64 << 63)
                .ok_or(PadicError::PrecisionOverflow {
                    p: pp.p(),
                    working_exponent,
                })?;
        }
        Ok(PadicSeriesBudget {
            term_count,
            working_exponent,
            working_modulus,
        })
    }

    pub fn term_count(&self) -> u32 {
        self.term_count
    }

    pub fn working_exponent(&self) -> u32 {
        self.working_exponent
    }

    pub fn working_modulus(&self) -> u64 {
        self.working_modulus
    }
}

/// Largest v >= 0 with base^v <= n.
fn floor_log(base: u64, n: u64) -> u32 {
    let mut v = 0u32;
    let mut acc = base;
    while acc <= n {
        v += 1;
        acc *= base;
    }
    v
}

/// Splits k into (v_p(k), unit part).
fn strip_p(mut k: u64, p: u64) -> (u32, u64) {
    let mut s = 0u32;
    while k % p == 0 {
        k /= p;
        s += 1;
    }
    (s, k)
}

/// p-adic logarithm of a one-unit, exact mod p^e.
///
/// Sums (-1)^(k+1) (u-1)^k / k for k = 1..2e at working precision; each
/// division by k splits into an exact shift by p^v_p(k) and multiplication
/// by the inverse of the unit part. The result is congruent to 0 mod p.
pub fn padic_log(pp: &PrimePower, u: Residue) -> Result<Residue, PadicError> {
    check_one_unit(pp, u)?;
    let budget = PadicSeriesBudget::for_log(pp)?;
    let pe = pp.modulus();
    let w = budget.working_modulus();
    let d = u.value() - 1; // divisible by p
    let mut power = 1u64; // d^k mod w
    let mut sum = 0u64;
    for k in 1..=budget.term_count() as u64 {
        power = mul_mod(power, d, w);
        let (s, k_unit) = strip_p(k, pp.p());
        let shifted = (power / pp.power(s)) % pe;
        let term = mul_mod(shifted, inv_mod(k_unit % pe, pe)?, pe);
        sum = if k % 2 == 1 {
            (sum + term) % pe
        } else {
            (sum + pe - term) % pe
        };
    }
    Ok(Residue::new(sum, pe))
}

/// p-adic exponential of an argument divisible by p, exact mod p^e.
///
/// Sums t^k / k! for k = 0..2e; the running factorial is kept split as
/// p^s * unit so the division is exact. The result is a one-unit.
pub fn padic_exp(pp: &PrimePower, t: Residue) -> Result<Residue, PadicError> {
    if t.modulus() != pp.modulus() {
        return Err(ModArithError::ModulusMismatch {
            left: t.modulus(),
            right: pp.modulus(),
        }
        .into());
    }
    if t.value() % pp.p() != 0 {
        return Err(PadicError::NotDivisibleByP {
            value: t.value(),
            modulus: pp.modulus(),
        });
    }
    let budget = PadicSeriesBudget::for_exp(pp)?;
    let pe = pp.modulus();
    let w = budget.working_modulus();
    let mut power = 1u64; // t^k mod w
    let mut fact_unit = 1u64; // unit part of k! mod w
    let mut fact_val = 0u32; // v_p(k!)
    let mut sum = 1u64 % pe;
    for k in 1..=budget.term_count() as u64 {
        power = mul_mod(power, t.value(), w);
        let (s, k_unit) = strip_p(k, pp.p());
        fact_val += s;
        fact_unit = mul_mod(fact_unit, k_unit, w);
        // v_p(k!) <= 2e/(p-1) <= e for p >= 3, so the shift stays exact
        let shifted = (power / pp.power(fact_val)) % pe;
        let term = mul_mod(shifted, inv_mod(fact_unit % pe, pe)?, pe);
        sum = (sum + term) % pe;
    }
    Ok(Residue::new(sum, pe))
}

/// u^x mod p^e for a one-unit u, well defined because ord(u) divides
/// p^(e-1); the exponent is reduced before the modular power.
///
/// Agrees with padic_exp(x * padic_log(u)) for every integer x.
pub fn one_unit_power(pp: &PrimePower, u: Residue, x: u64) -> Result<Residue, PadicError> {
    check_one_unit(pp, u)?;
    let exp = x % (pp.modulus() / pp.p()); // x mod p^(e-1)
    Ok(Residue::new(
        pow_mod(u.value(), exp, pp.modulus()),
        pp.modulus(),
    ))
}
