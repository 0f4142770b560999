//! Executable verifiers for the structural identities of Lambert solution
//! sets: the c' residue bijection, the sum identities, the extended sum
//! conjecture under its two readings, the inverse/negation identities, the
//! special generator pair, and the order formula for (p-1)^n.
//!
//! Each verifier returns a [`PatternReport`] whose verdict is backed by a
//! witness: a failing report always carries data that can be re-checked by
//! direct congruence evaluation, independent of the solver.

use crate::modarith::{gcd, inv_mod, mul_mod, pow_mod, ModArithError, PrimePower, Residue};
use crate::solver::{solve_all, DwpInstance, SolverError};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    /// Pattern applies only to generators.
    NotAGenerator {
        g: u64,
        modulus: u64,
    },
    /// Solution class index j outside 1..=m.
    ClassIndexOutOfRange {
        j: u64,
        m: u64,
    },
    /// Explicit c' outside {1..p^(e-1)(p-1)}.
    CPrimeOutOfRange {
        c_prime: u64,
        bound: u64,
    },
    /// Explicit c' not congruent to the chosen solution mod p.
    CPrimeWrongClass {
        c_prime: u64,
        expected_mod_p: u64,
    },
    /// x outside {1..p^e}.
    XOutOfRange {
        x: u64,
        bound: u64,
    },
    /// Order formula needs n >= 2.
    NTooSmall {
        n: u64,
    },
    /// Order formula needs gcd(p, n) = 1.
    NNotCoprime {
        n: u64,
        p: u64,
    },
    /// g must be a unit.
    GNotUnit {
        g: u64,
        p: u64,
    },
    Arith(ModArithError),
    Solver(SolverError),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::NotAGenerator { g, modulus } => {
                write!(f, "{g} is not a generator mod {modulus}")
            }
            PatternError::ClassIndexOutOfRange { j, m } => {
                write!(f, "solution index {j} outside 1..={m}")
            }
            PatternError::CPrimeOutOfRange { c_prime, bound } => {
                write!(f, "c' = {c_prime} outside 1..={bound}")
            }
            PatternError::CPrimeWrongClass {
                c_prime,
                expected_mod_p,
            } => {
                write!(
                    f,
                    "c' = {c_prime} is not congruent to {expected_mod_p} mod p"
                )
            }
            PatternError::XOutOfRange { x, bound } => write!(f, "x = {x} outside 1..={bound}"),
            PatternError::NTooSmall { n } => write!(f, "n = {n} must be at least 2"),
            PatternError::NNotCoprime { n, p } => write!(f, "n = {n} shares a factor with p = {p}"),
            PatternError::GNotUnit { g, p } => write!(f, "g = {g} is divisible by {p}"),
            PatternError::Arith(e) => write!(f, "{e}"),
            PatternError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PatternError {}

impl From<ModArithError> for PatternError {
    fn from(e: ModArithError) -> Self {
        PatternError::Arith(e)
    }
}

impl From<SolverError> for PatternError {
    fn from(e: SolverError) -> Self {
        PatternError::Solver(e)
    }
}

/// The verifiable patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    CPrimeBijection,
    SumModP,
    SumModM,
    ConjectureA,
    ConjectureB,
    InverseIdentity,
    NegationIdentity,
    SpecialPair,
    OrderFormula,
}

impl PatternId {
    pub const ALL: [PatternId; 9] = [
        PatternId::CPrimeBijection,
        PatternId::SumModP,
        PatternId::SumModM,
        PatternId::ConjectureA,
        PatternId::ConjectureB,
        PatternId::InverseIdentity,
        PatternId::NegationIdentity,
        PatternId::SpecialPair,
        PatternId::OrderFormula,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PatternId::CPrimeBijection => "c_prime_bijection",
            PatternId::SumModP => "sum_mod_p",
            PatternId::SumModM => "sum_mod_m",
            PatternId::ConjectureA => "conjecture_A",
            PatternId::ConjectureB => "conjecture_B",
            PatternId::InverseIdentity => "inverse_identity",
            PatternId::NegationIdentity => "negation_identity",
            PatternId::SpecialPair => "special_pair",
            PatternId::OrderFormula => "order_formula",
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        PatternId::ALL
            .iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(&lower))
            .copied()
            .ok_or_else(|| format!("unknown pattern id: {s}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::NotApplicable => write!(f, "not_applicable"),
        }
    }
}

/// Confirming data or counterexample attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A solution sum and the modulus it was tested against.
    Sum { sum: u128, modulus: u64 },
    /// Matched pairs (solution for c', solution for c) agreeing mod p.
    Matching {
        c_prime: u64,
        pairs: Vec<(u64, u64)>,
    },
    /// Sorted mod-p residue multisets of the two solution sets.
    ResidueMultisets {
        c_prime: u64,
        res_c: Vec<u64>,
        res_c_prime: Vec<u64>,
    },
    /// Two sides of a congruence that was checked.
    Congruence { lhs: u64, rhs: u64, modulus: u64 },
    /// Expected vs computed multiplicative order.
    Order { expected: u64, actual: u64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Sum { sum, modulus } => {
                write!(
                    f,
                    "sum = {sum}, residue {} mod {modulus}",
                    sum % *modulus as u128
                )
            }
            Witness::Matching { c_prime, pairs } => {
                write!(f, "c' = {c_prime}, matching {pairs:?}")
            }
            Witness::ResidueMultisets {
                c_prime,
                res_c,
                res_c_prime,
            } => {
                write!(f, "c' = {c_prime}, residues {res_c:?} vs {res_c_prime:?}")
            }
            Witness::Congruence { lhs, rhs, modulus } => {
                write!(f, "{lhs} vs {rhs} (mod {modulus})")
            }
            Witness::Order { expected, actual } => {
                write!(f, "expected order {expected}, computed {actual}")
            }
        }
    }
}

/// Multiplicative orders of the same g at the two levels p and p^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderPair {
    m_p: u64,
    m_pe: u64,
}

impl OrderPair {
    pub fn of(pp: &PrimePower, g: Residue) -> Result<Self, PatternError> {
        let m_pe = pp.mult_order(g)?;
        let base = PrimePower::new(pp.p(), 1)?;
        let m_p = base.mult_order(base.residue(g.value()))?;
        debug_assert_eq!(m_pe % m_p, 0);
        debug_assert_eq!((pp.modulus() / pp.p() * m_p) % m_pe, 0);
        Ok(OrderPair { m_p, m_pe })
    }

    pub fn m_p(&self) -> u64 {
        self.m_p
    }

    pub fn m_pe(&self) -> u64 {
        self.m_pe
    }
}

/// Outcome of one pattern check on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub pattern: PatternId,
    pub p: u64,
    pub e: u32,
    pub g: u64,
    pub c: Option<u64>,
    pub x: Option<u64>,
    pub n: Option<u64>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub orders: Option<OrderPair>,
}

impl PatternReport {
    fn new(pattern: PatternId, pp: &PrimePower, g: u64) -> Self {
        PatternReport {
            pattern,
            p: pp.p(),
            e: pp.e(),
            g,
            c: None,
            x: None,
            n: None,
            verdict: Verdict::NotApplicable,
            witness: None,
            orders: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fails
    }
}

impl fmt::Display for PatternReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on (p={}, e={}, g={}",
            self.pattern, self.p, self.e, self.g
        )?;
        if let Some(c) = self.c {
            write!(f, ", c={c}")?;
        }
        if let Some(x) = self.x {
            write!(f, ", x={x}")?;
        }
        if let Some(n) = self.n {
            write!(f, ", n={n}")?;
        }
        write!(f, "): {}", self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

/// Checks the residue bijection between the solutions for c and for
/// c' = x_{j,c} mod p: the two solution sets must project onto identical
/// mod-p residue multisets. `j` addresses the solution congruent to j
/// mod m (j = m names the zero class).
pub fn check_c_prime_bijection(inst: &DwpInstance, j: u64) -> Result<PatternReport, PatternError> {
    check_c_prime_bijection_with(inst, j, None)
}

/// Same check with an explicit c' override, which must lie in
/// {1..p^(e-1)(p-1)} and be congruent to x_{j,c} mod p.
pub fn check_c_prime_bijection_with(
    inst: &DwpInstance,
    j: u64,
    c_prime: Option<u64>,
) -> Result<PatternReport, PatternError> {
    let pp = *inst.prime_power();
    let p = pp.p();
    let m = inst.order_mod_p();
    if j < 1 || j > m {
        return Err(PatternError::ClassIndexOutOfRange { j, m });
    }
    let s_c = solve_all(inst)?;
    let x_jc = s_c
        .solution_in_class(j)
        .expect("each class holds one solution");
    let c_prime = match c_prime {
        None => x_jc % p,
        Some(cp) => {
            let bound = pp.modulus() / p * (p - 1);
            if cp < 1 || cp > bound {
                return Err(PatternError::CPrimeOutOfRange { c_prime: cp, bound });
            }
            if cp % p != x_jc % p {
                return Err(PatternError::CPrimeWrongClass {
                    c_prime: cp,
                    expected_mod_p: x_jc % p,
                });
            }
            cp
        }
    };
    let s_cp = solve_all(&DwpInstance::new(pp, inst.g().value(), c_prime)?)?;

    let mut res_c: Vec<u64> = s_c.solutions().iter().map(|x| x % p).collect();
    let mut res_cp: Vec<u64> = s_cp.solutions().iter().map(|x| x % p).collect();
    res_c.sort_unstable();
    res_cp.sort_unstable();

    let mut report = PatternReport::new(PatternId::CPrimeBijection, &pp, inst.g().value());
    report.c = Some(inst.c().value());
    if res_c == res_cp {
        // pair each x_{i,c'} with a distinct x_{k,c} sharing its residue
        let mut taken = vec![false; s_c.solutions().len()];
        let mut pairs = Vec::with_capacity(s_cp.solutions().len());
        for &xi in s_cp.solutions() {
            let k = s_c
                .solutions()
                .iter()
                .enumerate()
                .position(|(idx, &xk)| !taken[idx] && xk % p == xi % p)
                .expect("equal multisets admit a perfect matching");
            taken[k] = true;
            pairs.push((xi, s_c.solutions()[k]));
        }
        report.verdict = Verdict::Holds;
        report.witness = Some(Witness::Matching { c_prime, pairs });
    } else {
        report.verdict = Verdict::Fails;
        report.witness = Some(Witness::ResidueMultisets {
            c_prime,
            res_c,
            res_c_prime: res_cp,
        });
    }
    Ok(report)
}

/// Sum identities over the canonical solution set: the solutions sum to 0
/// mod p (needs m >= 2; the geometric-series argument divides by 1 - g),
/// and to 0 mod m when m is odd.
pub fn check_sums(inst: &DwpInstance) -> Result<(PatternReport, PatternReport), PatternError> {
    let pp = *inst.prime_power();
    let m = inst.order_mod_p();
    let sum = solve_all(inst)?.sum();

    let mut mod_p = PatternReport::new(PatternId::SumModP, &pp, inst.g().value());
    mod_p.c = Some(inst.c().value());
    mod_p.witness = Some(Witness::Sum {
        sum,
        modulus: pp.p(),
    });
    mod_p.verdict = if m == 1 {
        Verdict::NotApplicable
    } else if sum % pp.p() as u128 == 0 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };

    let mut mod_m = PatternReport::new(PatternId::SumModM, &pp, inst.g().value());
    mod_m.c = Some(inst.c().value());
    mod_m.witness = Some(Witness::Sum { sum, modulus: m });
    mod_m.verdict = if m % 2 == 1 {
        if sum % m as u128 == 0 {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    } else {
        Verdict::NotApplicable
    };

    Ok((mod_p, mod_m))
}

/// Tests the extended sum conjecture under both readings.
///
/// A (literal): the m_p canonical solutions in {1..p^e*m_p} must sum to 0
/// mod p^e (and mod m_{p^e} when m_p is odd).
/// B (extended): all solutions in {1..p^e*m_{p^e}} — the canonical set
/// plus its m_{p^e}/m_p period translates — tested the same way.
pub fn check_conjecture(
    inst: &DwpInstance,
) -> Result<(PatternReport, PatternReport), PatternError> {
    let pp = *inst.prime_power();
    let pe = pp.modulus();
    let orders = OrderPair::of(&pp, inst.g())?;
    let m_p = orders.m_p();
    let sum_a = solve_all(inst)?.sum();

    // each base solution x reappears as x + k*period, k < m_pe/m_p
    let period = inst.range_bound() as u128;
    let copies = (orders.m_pe() / m_p) as u128;
    let sum_b = copies
        .checked_mul(sum_a)
        .and_then(|base| {
            (m_p as u128)
                .checked_mul(period)?
                .checked_mul(copies * (copies - 1) / 2)?
                .checked_add(base)
        })
        .expect("extended-range solution sum exceeds 128 bits");

    let build = |id: PatternId, sum: u128| {
        let mut report = PatternReport::new(id, &pp, inst.g().value());
        report.c = Some(inst.c().value());
        report.orders = Some(orders);
        let pe_ok = sum % pe as u128 == 0;
        let m_ok = m_p % 2 == 0 || sum % orders.m_pe() as u128 == 0;
        report.verdict = if pe_ok && m_ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        let modulus = if !pe_ok {
            pe
        } else if !m_ok {
            orders.m_pe()
        } else {
            pe
        };
        report.witness = Some(Witness::Sum { sum, modulus });
        report
    };

    Ok((
        build(PatternId::ConjectureA, sum_a),
        build(PatternId::ConjectureB, sum_b),
    ))
}

/// For fixed x: c = x*g^x, c' = x*(g^-1)^x and c'' = x*(-g)^x satisfy
/// c*c' = x^2 and c'' = (-1)^x * c (mod p^e). Unconditional identities.
pub fn check_inverse_negation(
    pp: &PrimePower,
    g: u64,
    x: u64,
) -> Result<(PatternReport, PatternReport), PatternError> {
    let pe = pp.modulus();
    let g = g % pe;
    if g % pp.p() == 0 {
        return Err(PatternError::GNotUnit { g, p: pp.p() });
    }
    if x < 1 || x > pe {
        return Err(PatternError::XOutOfRange { x, bound: pe });
    }
    let xr = x % pe; // x = p^e collapses to the zero residue
    let c = mul_mod(xr, pow_mod(g, x, pe), pe);
    let c1 = mul_mod(xr, pow_mod(inv_mod(g, pe)?, x, pe), pe);
    let c2 = mul_mod(xr, pow_mod(pe - g, x, pe), pe);

    let mut inverse = PatternReport::new(PatternId::InverseIdentity, pp, g);
    inverse.x = Some(x);
    inverse.c = Some(c);
    let lhs = mul_mod(c, c1, pe);
    let rhs = mul_mod(xr, xr, pe);
    inverse.verdict = if lhs == rhs {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    inverse.witness = Some(Witness::Congruence {
        lhs,
        rhs,
        modulus: pe,
    });

    let mut negation = PatternReport::new(PatternId::NegationIdentity, pp, g);
    negation.x = Some(x);
    negation.c = Some(c);
    let expected = if x % 2 == 0 { c } else { (pe - c) % pe };
    negation.verdict = if c2 == expected {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    negation.witness = Some(Witness::Congruence {
        lhs: c2,
        rhs: expected,
        modulus: pe,
    });

    Ok((inverse, negation))
}

/// For a generator g mod p^e, x = (p^e - p^(e-1))/2 solves x*g^x = c with
/// c = (p^e + p^(e-1))/2; the underlying fact g^x = p^e - 1 is checked too.
pub fn special_solution_check(pp: &PrimePower, g: u64) -> Result<PatternReport, PatternError> {
    let pe = pp.modulus();
    let g = g % pe;
    if g % pp.p() == 0 || !pp.is_generator(pp.residue(g))? {
        return Err(PatternError::NotAGenerator { g, modulus: pe });
    }
    let half_down = (pe - pe / pp.p()) / 2; // x
    let half_up = (pe + pe / pp.p()) / 2; // c
    let gx = pow_mod(g, half_down, pe);
    let lhs = mul_mod(half_down, gx, pe);

    let mut report = PatternReport::new(PatternId::SpecialPair, pp, g);
    report.x = Some(half_down);
    report.c = Some(half_up);
    if gx != pe - 1 {
        report.verdict = Verdict::Fails;
        report.witness = Some(Witness::Congruence {
            lhs: gx,
            rhs: pe - 1,
            modulus: pe,
        });
    } else if lhs != half_up {
        report.verdict = Verdict::Fails;
        report.witness = Some(Witness::Congruence {
            lhs,
            rhs: half_up,
            modulus: pe,
        });
    } else {
        report.verdict = Verdict::Holds;
        report.witness = Some(Witness::Congruence {
            lhs,
            rhs: half_up,
            modulus: pe,
        });
    }
    Ok(report)
}

/// ord_{p^e}((p-1)^n) must be p^(e-1) for even n and 2p^(e-1) for odd n,
/// provided gcd(p, n) = 1 and n >= 2.
pub fn order_formula_check(pp: &PrimePower, n: u64) -> Result<PatternReport, PatternError> {
    if n < 2 {
        return Err(PatternError::NTooSmall { n });
    }
    if gcd(pp.p(), n) != 1 {
        return Err(PatternError::NNotCoprime { n, p: pp.p() });
    }
    let pe = pp.modulus();
    let base = pow_mod(pp.p() - 1, n, pe);
    let expected = if n % 2 == 0 {
        pe / pp.p()
    } else {
        2 * (pe / pp.p())
    };
    let actual = pp.mult_order(pp.residue(base))?;

    let mut report = PatternReport::new(PatternId::OrderFormula, pp, base);
    report.n = Some(n);
    report.verdict = if actual == expected {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    report.witness = Some(Witness::Order { expected, actual });
    Ok(report)
}

#[cfg(test)]
#[path = "patterns_tests.rs"]
mod tests;
