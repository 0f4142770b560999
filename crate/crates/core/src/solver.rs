//! Enumerates all solutions of x*g^x = c (mod p^e) in the canonical range
//! {1..p^e*m}, m = ord_p(g).
//!
//! The fast path works one congruence class mod m at a time: in class x0
//! the map interpolates to h(x) = x * omega(g)^x0 * `<g>`^x - c, whose mod-p
//! root lifts uniquely to mod p^e because the derivative omega(g)^x0 is a
//! unit. The lifted root is recombined with the class by the CRT. A linear
//! scan oracle validates the whole pipeline on small instances.

use crate::modarith::{crt_pair, inv_mod, mul_mod, pow_mod, ModArithError, PrimePower, Residue};
use crate::padic::PadicError;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// g must be prime to p (hypothesis of the counting theorem).
    GNotUnit {
        g: u64,
        p: u64,
    },
    /// c must be prime to p (hypothesis of the counting theorem).
    CNotUnit {
        c: u64,
        p: u64,
    },
    /// solve_mod_p only accepts e = 1 instances.
    ExponentNotOne {
        e: u32,
    },
    /// hensel_lift takes a class index x0 in {1..m}.
    ClassIndexOutOfRange {
        x0: u64,
        m: u64,
    },
    /// hensel_lift requires a mod-p root of the interpolated map.
    NotARoot {
        a: u64,
        x0: u64,
    },
    Arith(ModArithError),
    Padic(PadicError),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::GNotUnit { g, p } => write!(f, "g = {g} is divisible by p = {p}"),
            SolverError::CNotUnit { c, p } => write!(f, "c = {c} is divisible by p = {p}"),
            SolverError::ExponentNotOne { e } => {
                write!(f, "solve_mod_p needs e = 1, got e = {e}")
            }
            SolverError::ClassIndexOutOfRange { x0, m } => {
                write!(f, "class index {x0} outside 1..={m}")
            }
            SolverError::NotARoot { a, x0 } => {
                write!(f, "{a} is not a mod-p root of the class-{x0} map")
            }
            SolverError::Arith(e) => write!(f, "{e}"),
            SolverError::Padic(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolverError {}

impl From<ModArithError> for SolverError {
    fn from(e: ModArithError) -> Self {
        SolverError::Arith(e)
    }
}

impl From<PadicError> for SolverError {
    fn from(e: PadicError) -> Self {
        SolverError::Padic(e)
    }
}

/// A validated problem (p, e, g, c) with p odd prime and g, c units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DwpInstance {
    pp: PrimePower,
    g: Residue,
    c: Residue,
    /// ord_p(g mod p); the solution count in the canonical range.
    m: u64,
}

impl DwpInstance {
    pub fn new(pp: PrimePower, g: u64, c: u64) -> Result<Self, SolverError> {
        let g = pp.residue(g);
        let c = pp.residue(c);
        if g.value() % pp.p() == 0 {
            return Err(SolverError::GNotUnit {
                g: g.value(),
                p: pp.p(),
            });
        }
        if c.value() % pp.p() == 0 {
            return Err(SolverError::CNotUnit {
                c: c.value(),
                p: pp.p(),
            });
        }
        let mod_p = PrimePower::new(pp.p(), 1)?;
        let m = mod_p.mult_order(mod_p.residue(g.value()))?;
        Ok(DwpInstance { pp, g, c, m })
    }

    pub fn from_params(p: u64, e: u32, g: u64, c: u64) -> Result<Self, SolverError> {
        Self::new(PrimePower::new(p, e)?, g, c)
    }

    pub fn prime_power(&self) -> &PrimePower {
        &self.pp
    }

    pub fn g(&self) -> Residue {
        self.g
    }

    pub fn c(&self) -> Residue {
        self.c
    }

    /// m = ord_p(g mod p). Divides p - 1.
    pub fn order_mod_p(&self) -> u64 {
        self.m
    }

    /// Canonical solution window bound p^e * m.
    pub fn range_bound(&self) -> u64 {
        self.pp.modulus() * self.m
    }

    /// Direct congruence check: x not divisible by p and x*g^x = c mod p^e.
    pub fn is_solution(&self, x: u64) -> bool {
        let pe = self.pp.modulus();
        x % self.pp.p() != 0 && mul_mod(x, pow_mod(self.g.value(), x, pe), pe) == self.c.value()
    }
}

impl fmt::Display for DwpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x*{}^x = {} (mod {}^{})",
            self.g.value(),
            self.c.value(),
            self.pp.p(),
            self.pp.e()
        )
    }
}

/// How a solution set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Hensel,
    BruteForce,
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveMethod::Hensel => write!(f, "hensel"),
            SolveMethod::BruteForce => write!(f, "brute_force"),
        }
    }
}

/// All solutions of an instance inside a stated range, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    instance: DwpInstance,
    solutions: Vec<u64>,
    range_bound: u64,
    method: SolveMethod,
}

impl SolutionSet {
    pub fn instance(&self) -> &DwpInstance {
        &self.instance
    }

    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    pub fn range_bound(&self) -> u64 {
        self.range_bound
    }

    pub fn method(&self) -> SolveMethod {
        self.method
    }

    /// (x mod m, x mod p^e) for each solution, in solution order.
    pub fn residue_pairs(&self) -> Vec<(u64, u64)> {
        let m = self.instance.order_mod_p();
        let pe = self.instance.prime_power().modulus();
        self.solutions.iter().map(|&x| (x % m, x % pe)).collect()
    }

    /// The solution congruent to x0 mod m (x0 = m names the zero class).
    pub fn solution_in_class(&self, x0: u64) -> Option<u64> {
        let m = self.instance.order_mod_p();
        self.solutions.iter().copied().find(|&x| x % m == x0 % m)
    }

    pub fn sum(&self) -> u128 {
        self.solutions.iter().map(|&x| x as u128).sum()
    }
}

/// Precomputed data shared by the per-class lifts of one instance. Digit
/// corrections only ever exponentiate by values below p, so those powers
/// are tabulated once and the lift itself touches no modpow at all.
struct LiftContext {
    p: u64,
    e: u32,
    pe: u64,
    c: u64,
    omega: u64,
    /// unit_pow_tables[k][t] = `<g>`^(t * p^k) mod p^e for t in 0..p.
    unit_pow_tables: Vec<Vec<u64>>,
}

impl LiftContext {
    fn new(inst: &DwpInstance) -> Result<Self, SolverError> {
        let pp = inst.prime_power();
        let pe = pp.modulus();
        let p = pp.p();
        // the Teichmuller split g = omega * <g>; omega^(p-1) = 1 mod p^e,
        // so its inverse is the (p-2)-th power
        let omega = pow_mod(inst.g().value(), pe / p, pe);
        let one_unit = mul_mod(inst.g().value(), pow_mod(omega, p - 2, pe), pe);
        let mut unit_pow_tables = Vec::with_capacity(pp.e() as usize);
        let mut base = one_unit; // <g>^(p^k)
        for _ in 0..pp.e() {
            let mut table = Vec::with_capacity(p as usize);
            let mut acc = 1u64;
            for _ in 0..p {
                table.push(acc);
                acc = mul_mod(acc, base, pe);
            }
            unit_pow_tables.push(table);
            base = acc; // acc = base^p after the inner loop
        }
        Ok(LiftContext {
            p,
            e: pp.e(),
            pe,
            c: inst.c().value(),
            omega,
            unit_pow_tables,
        })
    }

    /// Lifts a root a of h(x) = x * w_x0 * `<g>`^x - c from mod p to mod p^e
    /// by correcting one p-adic digit per step. `d_inv` is the inverse mod
    /// p of the derivative w_x0 = omega^x0.
    fn lift(&self, w_x0: u64, d_inv: u64, a: u64) -> u64 {
        if self.e == 1 {
            return a;
        }
        let pe = self.pe;
        let mut x = a;
        let mut upow = self.unit_pow_tables[0][a as usize]; // <g>^x
        let mut pk = 1u64;
        for k in 1..self.e {
            pk *= self.p;
            let h = (mul_mod(x, mul_mod(w_x0, upow, pe), pe) + pe - self.c) % pe;
            debug_assert_eq!(h % pk, 0, "previous digit correction failed");
            let r = (h / pk) % self.p;
            let t = mul_mod((self.p - r) % self.p, d_inv, self.p);
            if t != 0 {
                x += t * pk;
                upow = mul_mod(upow, self.unit_pow_tables[k as usize][t as usize], pe);
            }
        }
        debug_assert!(x >= 1 && x < self.pe);
        x
    }
}

/// Mod-p solver (e = 1): in class x0 the congruence collapses to
/// x = c * g^(-x0) (mod p); the CRT welds the class and the root into the
/// unique solution in {1..p*m}.
pub fn solve_mod_p(inst: &DwpInstance) -> Result<SolutionSet, SolverError> {
    let pp = inst.prime_power();
    if pp.e() != 1 {
        return Err(SolverError::ExponentNotOne { e: pp.e() });
    }
    let p = pp.p();
    let m = inst.order_mod_p();
    let ginv = inv_mod(inst.g().value(), p)?;
    let mut root = inst.c().value() % p;
    let mut solutions = Vec::with_capacity(m as usize);
    for x0 in 1..=m {
        root = mul_mod(root, ginv, p);
        let combined = crt_pair(Residue::new(x0 % m, m), Residue::new(root, p))?;
        let x = combined.value();
        solutions.push(if x == 0 { inst.range_bound() } else { x });
    }
    solutions.sort_unstable();
    Ok(SolutionSet {
        instance: *inst,
        solutions,
        range_bound: inst.range_bound(),
        method: SolveMethod::Hensel,
    })
}

/// Lifts a mod-p root `a` of the class-x0 interpolated map to the unique
/// x1 in {1..p^e} with x1 = a (mod p) and x1 * omega^x0 * `<g>`^x1 = c
/// (mod p^e).
pub fn hensel_lift(inst: &DwpInstance, x0: u64, a: u64) -> Result<u64, SolverError> {
    let pp = inst.prime_power();
    let m = inst.order_mod_p();
    if x0 < 1 || x0 > m {
        return Err(SolverError::ClassIndexOutOfRange { x0, m });
    }
    let a = a % pp.p();
    let ctx = LiftContext::new(inst)?;
    let w_x0 = pow_mod(ctx.omega, x0, ctx.pe);
    // root precondition: a * omega^x0 = c (mod p), a nonzero
    if a == 0 || mul_mod(a, w_x0 % ctx.p, ctx.p) != ctx.c % ctx.p {
        return Err(SolverError::NotARoot { a, x0 });
    }
    let d_inv = inv_mod(w_x0 % ctx.p, ctx.p).expect("derivative omega^x0 is a unit mod p");
    Ok(ctx.lift(w_x0, d_inv, a))
}

/// All m solutions in {1..p^e*m}: per class x0 the mod-p root
/// c * omega^(-x0) is Hensel-lifted and CRT-combined with the class.
pub fn solve_all(inst: &DwpInstance) -> Result<SolutionSet, SolverError> {
    let pp = inst.prime_power();
    let p = pp.p();
    let pe = pp.modulus();
    let m = inst.order_mod_p();
    let ctx = LiftContext::new(inst)?;
    // omega = g mod p, so the mod-p root and derivative walk down by g^(-1)
    let ginv_p = pow_mod(inst.g().value() % p, p - 2, p);
    // Garner form of the CRT with both moduli fixed: the combination of
    // x = x1 (mod p^e) and x = x0 (mod m) is x1 + p^e * ((x0 - x1) / p^e mod m)
    let pe_inv_m = inv_mod(pe % m, m)?;
    let mut root = inst.c().value() % p; // c * g^(-x0) mod p
    let mut d_inv = 1u64; // omega^(-x0) mod p
    let mut w_x0 = 1u64; // omega^x0 mod p^e
    let mut solutions = Vec::with_capacity(m as usize);
    for x0 in 1..=m {
        root = mul_mod(root, ginv_p, p);
        d_inv = mul_mod(d_inv, ginv_p, p);
        w_x0 = mul_mod(w_x0, ctx.omega, pe);
        let x1 = ctx.lift(w_x0, d_inv, root);
        let shift = mul_mod((x0 % m + m - x1 % m) % m, pe_inv_m, m);
        solutions.push(x1 + pe * shift);
    }
    solutions.sort_unstable();
    Ok(SolutionSet {
        instance: *inst,
        solutions,
        range_bound: inst.range_bound(),
        method: SolveMethod::Hensel,
    })
}

/// Exhaustive oracle: scans x = 1..=upper with an incrementally maintained
/// power g^x, skipping multiples of p. O(upper) multiplications.
pub fn brute_force(inst: &DwpInstance, upper: u64) -> SolutionSet {
    let pp = inst.prime_power();
    let p = pp.p();
    let pe = pp.modulus();
    let g = inst.g().value();
    let c = inst.c().value();
    let mut solutions = Vec::new();
    let mut gpow = 1u64;
    let mut next_multiple = p;
    for x in 1..=upper {
        gpow = mul_mod(gpow, g, pe);
        if x == next_multiple {
            next_multiple += p;
            continue;
        }
        if mul_mod(x, gpow, pe) == c {
            solutions.push(x);
        }
    }
    SolutionSet {
        instance: *inst,
        solutions,
        range_bound: upper,
        method: SolveMethod::BruteForce,
    }
}

/// Solution count in the canonical range, straight from the theory: m.
pub fn count_solutions(inst: &DwpInstance) -> u64 {
    inst.order_mod_p()
}
