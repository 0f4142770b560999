#![allow(clippy::manual_is_multiple_of)]

//! Acceptance suite: the release gate for the solver, pattern verifiers,
//! p-adic layer and forgery demo. Each test covers one numbered criterion
//! on its full grid and prints a PASS line with the measured outcome.
//!
//! Run with: cargo test -p dwp --test acceptance -- --nocapture

use dwp::elgamal::{
    forge_fixed_s2, keygen, reduction_instance, verify, ElGamalParams, RangePolicy,
};
use dwp::modarith::{mul_mod, pow_mod, PrimePower};
use dwp::padic::{
    one_unit_part, one_unit_power, padic_exp, padic_log, teichmuller, TeichDecomposition,
};
use dwp::patterns::{
    check_conjecture, check_inverse_negation, check_sums, order_formula_check,
    special_solution_check, Verdict, Witness,
};
use dwp::rng::Lcg64;
use dwp::solver::{brute_force, solve_all, DwpInstance};
use std::collections::BTreeMap;
use std::time::Instant;

const ORACLE_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn units_mod(pe: u64, p: u64) -> Vec<u64> {
    (1..pe).filter(|x| x % p != 0).collect()
}

/// Distinct unit sample of size `count` (or every unit when fewer exist),
/// drawn with the documented LCG and returned sorted.
fn sample_units(pp: &PrimePower, count: usize, seed: u64) -> Vec<u64> {
    let all = units_mod(pp.modulus(), pp.p());
    if all.len() <= count {
        return all;
    }
    let mut rng = Lcg64::new(seed);
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(all[rng.next_below(all.len() as u64) as usize]);
    }
    chosen.into_iter().collect()
}

#[test]
fn criterion_01_oracle_equivalence() {
    let mut instances = 0u64;
    for p in ORACLE_PRIMES {
        for e in 1..=3u32 {
            let pp = PrimePower::new(p, e).unwrap();
            for g in 1..p {
                for c in 1..p {
                    let inst = DwpInstance::new(pp, g, c).unwrap();
                    let fast = solve_all(&inst).unwrap();
                    let slow = brute_force(&inst, inst.range_bound());
                    assert_eq!(
                        fast.solutions(),
                        slow.solutions(),
                        "solver/oracle mismatch at p={p} e={e} g={g} c={c}"
                    );
                    let m = inst.order_mod_p();
                    assert_eq!(fast.solutions().len() as u64, m);
                    let mut classes: Vec<u64> = fast.solutions().iter().map(|x| x % m).collect();
                    classes.sort_unstable();
                    classes.dedup();
                    assert_eq!(
                        classes.len() as u64,
                        m,
                        "classes collide at p={p} e={e} g={g} c={c}"
                    );
                    instances += 1;
                }
            }
        }
    }
    println!("criterion 1 (oracle equivalence, Hensel vs scan): PASS over {instances} instances");
}

#[test]
fn criterion_02_complete_residue_system() {
    let mut checked = 0u64;
    for p in ORACLE_PRIMES {
        let base = PrimePower::new(p, 1).unwrap();
        let generators: Vec<u64> = (1..p)
            .filter(|&g| base.is_generator(base.residue(g)).unwrap())
            .collect();
        for e in 1..=3u32 {
            let pp = PrimePower::new(p, e).unwrap();
            for &g in &generators {
                for c in 1..p {
                    let inst = DwpInstance::new(pp, g, c).unwrap();
                    let mut residues: Vec<u64> = solve_all(&inst)
                        .unwrap()
                        .solutions()
                        .iter()
                        .map(|x| x % (p - 1))
                        .collect();
                    residues.sort_unstable();
                    let expected: Vec<u64> = (0..p - 1).collect();
                    assert_eq!(
                        residues,
                        expected,
                        "not a complete residue system mod {} at p={p} e={e} g={g} c={c}",
                        p - 1
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "criterion 2 (complete residue system mod p-1): PASS over {checked} generator instances"
    );
}

#[test]
fn criterion_03_sum_identities() {
    let mut checked = 0u64;
    let mut odd_checked = 0u64;
    for p in ORACLE_PRIMES {
        for e in 1..=3u32 {
            let pp = PrimePower::new(p, e).unwrap();
            for g in 1..p {
                for c in 1..p {
                    let inst = DwpInstance::new(pp, g, c).unwrap();
                    if inst.order_mod_p() < 2 {
                        continue;
                    }
                    let (mod_p, mod_m) = check_sums(&inst).unwrap();
                    assert_eq!(
                        mod_p.verdict,
                        Verdict::Holds,
                        "sum not 0 mod p at p={p} e={e} g={g} c={c}: {mod_p}"
                    );
                    checked += 1;
                    if inst.order_mod_p() % 2 == 1 {
                        assert_eq!(
                            mod_m.verdict,
                            Verdict::Holds,
                            "sum not 0 mod m at p={p} e={e} g={g} c={c}: {mod_m}"
                        );
                        odd_checked += 1;
                    }
                }
            }
        }
    }
    println!(
        "criterion 3 (sum identities): PASS, {checked} mod-p checks, {odd_checked} odd-m mod-m checks"
    );
}

#[test]
fn criterion_04_conjecture_evidence_sweep() {
    const SAMPLE_SEED: u64 = 42;
    let primes = [3u64, 5, 7, 11, 13, 17];
    // per (p, e): [a_holds, a_fails, b_holds, b_fails]
    let mut table: BTreeMap<(u64, u32), [u64; 4]> = BTreeMap::new();
    let mut landmark: Option<u128> = None; // sum for (3,2,2,1) under reading A
    let mut b_failures: Vec<(u64, u32, u64, u64, u128, u64)> = Vec::new();

    for p in primes {
        for e in 1..=4u32 {
            let pp = PrimePower::new(p, e).unwrap();
            let c_values = if e <= 3 {
                units_mod(pp.modulus(), p)
            } else {
                sample_units(&pp, 1000, SAMPLE_SEED)
            };
            let entry = table.entry((p, e)).or_default();
            for g in 1..p {
                for &c in &c_values {
                    let inst = DwpInstance::new(pp, g, c).unwrap();
                    let (a, b) = check_conjecture(&inst).unwrap();
                    match a.verdict {
                        Verdict::Holds => entry[0] += 1,
                        _ => entry[1] += 1,
                    }
                    match b.verdict {
                        Verdict::Holds => entry[2] += 1,
                        _ => {
                            entry[3] += 1;
                            let Some(Witness::Sum { sum, modulus }) = b.witness else {
                                panic!("B failure without witness at p={p} e={e} g={g} c={c}")
                            };
                            b_failures.push((p, e, g, c, sum, modulus));
                        }
                    }
                    if (p, e, g, c) == (3, 2, 2, 1) {
                        let Some(Witness::Sum { sum, .. }) = a.witness else {
                            panic!("missing witness on the landmark record")
                        };
                        landmark = Some(sum);
                    }
                }
            }
        }
    }

    println!("criterion 4: A/B verdict table (p, e, A holds/fails, B holds/fails):");
    for ((p, e), counts) in &table {
        println!(
            "  p={p:2} e={e}: A {:>6}/{:<5} B {:>6}/{:<5}",
            counts[0], counts[1], counts[2], counts[3]
        );
    }

    // the landmark A record must re-derive from a raw scan
    let landmark = landmark.expect("sweep must visit (3,2,2,1)");
    let inst = DwpInstance::from_params(3, 2, 2, 1).unwrap();
    let scanned: u128 = (1..=18u64)
        .filter(|&x| inst.is_solution(x))
        .map(u128::from)
        .sum();
    assert_eq!(scanned, 15);
    assert_eq!(landmark, scanned, "A-record sum must match the direct scan");
    assert_eq!(
        landmark % 9,
        6,
        "the landmark failure residue must be 6 mod 9"
    );

    // every B failure must re-verify by direct congruence evaluation
    for &(p, e, g, c, sum, modulus) in &b_failures {
        let pp = PrimePower::new(p, e).unwrap();
        let inst = DwpInstance::new(pp, g, c).unwrap();
        let base = brute_force(&inst, inst.range_bound());
        let m_pe = pp.mult_order(pp.residue(g)).unwrap();
        let copies = m_pe / inst.order_mod_p();
        let mut direct: u128 = 0;
        for k in 0..copies {
            for &x in base.solutions() {
                let translate = x + k * inst.range_bound();
                assert!(inst.is_solution(translate), "translate {translate} fails");
                direct += translate as u128;
            }
        }
        assert_eq!(
            direct, sum,
            "witness sum must re-derive at p={p} e={e} g={g} c={c}"
        );
        assert_ne!(
            sum % modulus as u128,
            0,
            "witness must reproduce the failure"
        );
    }
    if b_failures.is_empty() {
        println!(
            "criterion 4 (conjecture evidence): PASS, interpretation B holds on 100% of the grid"
        );
    } else {
        println!(
            "criterion 4 (conjecture evidence): PASS, {} B-failures, all witnesses re-verified",
            b_failures.len()
        );
    }
}

#[test]
fn criterion_05_inverse_negation_identities() {
    let primes = [3u64, 5, 7, 11, 13];
    let mut rng = Lcg64::new(9001);
    let mut checked = 0u64;
    while checked < 10_000 {
        let p = primes[rng.next_below(5) as usize];
        let e = 1 + rng.next_below(3) as u32;
        let pp = PrimePower::new(p, e).unwrap();
        let g = 1 + rng.next_below(pp.modulus() - 1);
        if g % p == 0 {
            continue;
        }
        let x = 1 + rng.next_below(pp.modulus());
        let (inv, neg) = check_inverse_negation(&pp, g, x).unwrap();
        assert_eq!(
            inv.verdict,
            Verdict::Holds,
            "c*c' != x^2 at p={p} e={e} g={g} x={x}"
        );
        assert_eq!(
            neg.verdict,
            Verdict::Holds,
            "c'' != (-1)^x c at p={p} e={e} g={g} x={x}"
        );
        checked += 1;
    }
    println!("criterion 5 (inverse/negation identities): PASS over {checked} seeded cases");
}

#[test]
fn criterion_06_special_pair() {
    // the worked instance first: x = 10, c = 15 at p=5, e=2, g=2
    assert_eq!(mul_mod(10, pow_mod(2, 10, 25), 25), 15);

    let mut checked = 0u64;
    for p in [3u64, 5, 7, 11] {
        for e in 1..=3u32 {
            let pp = PrimePower::new(p, e).unwrap();
            for g in 2..pp.modulus() {
                if g % p == 0 || !pp.is_generator(pp.residue(g)).unwrap() {
                    continue;
                }
                let report = special_solution_check(&pp, g).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Holds,
                    "special pair fails: {report}"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 6 (special generator pair): PASS over {checked} generators");
}

#[test]
fn criterion_07_order_formula() {
    let mut checked = 0u64;
    for p in ORACLE_PRIMES {
        for e in 1..=4u32 {
            let pp = PrimePower::new(p, e).unwrap();
            for n in 2..=10u64 {
                if n % p == 0 {
                    continue;
                }
                let report = order_formula_check(&pp, n).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Holds,
                    "order formula fails: {report}"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 7 (order of (p-1)^n): PASS over {checked} (p, e, n) triples");
}

#[test]
fn criterion_08_padic_layer() {
    let moduli = [(3u64, 2u32), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)];

    for (p, e) in moduli {
        let pp = PrimePower::new(p, e).unwrap();
        let pe = pp.modulus();
        let one_units: Vec<u64> = (0..pe / p).map(|k| 1 + k * p).collect();

        // exp/log round trips, both directions, full scans
        for &u in &one_units {
            let lg = padic_log(&pp, pp.residue(u)).unwrap();
            assert_eq!(
                padic_exp(&pp, lg).unwrap().value(),
                u,
                "exp(log({u})) mod {pe}"
            );
        }
        for k in 0..pe / p {
            let t = pp.residue(k * p);
            let ex = padic_exp(&pp, t).unwrap();
            assert_eq!(
                padic_log(&pp, ex).unwrap(),
                t,
                "log(exp({})) mod {pe}",
                k * p
            );
        }

        // homomorphism law over all pairs
        for &u in &one_units {
            let lu = padic_log(&pp, pp.residue(u)).unwrap().value();
            for &v in &one_units {
                let lv = padic_log(&pp, pp.residue(v)).unwrap().value();
                let luv = padic_log(&pp, pp.residue(u) * pp.residue(v))
                    .unwrap()
                    .value();
                assert_eq!(luv, (lu + lv) % pe, "log({u}*{v}) mod {pe}");
            }
        }

        // Teichmuller uniqueness by exhaustive root enumeration
        for a in 1..p {
            let roots: Vec<u64> = (0..pe)
                .filter(|&w| w % p == a && pow_mod(w, p - 1, pe) == 1)
                .collect();
            let omega = teichmuller(&pp, pp.residue(a)).unwrap().value();
            assert_eq!(roots, vec![omega], "uniqueness in class {a} mod {p}^{e}");
        }

        // unit-derivative finite difference at e in {2, 3}
        let h = pe / p;
        for g in units_mod(pe, p) {
            let decomp = TeichDecomposition::new(&pp, pp.residue(g)).unwrap();
            let m = PrimePower::new(p, 1)
                .unwrap()
                .mult_order(dwp::Residue::new(g % p, p))
                .unwrap();
            for x0 in 1..=m {
                let w = decomp.omega().pow(x0).value();
                let f = |x: u64| {
                    let upow = one_unit_power(&pp, decomp.one_unit(), x).unwrap().value();
                    mul_mod(x % pe, mul_mod(w, upow, pe), pe)
                };
                for a in 0..pe {
                    let diff = (f(a + h) + pe - f(a)) % pe;
                    assert_eq!(diff % h, 0, "difference not divisible by p^(e-1)");
                    assert_eq!((diff / h) % p, w % p, "derivative at g={g} x0={x0} a={a}");
                }
            }
        }

        // the decomposition itself
        for g in units_mod(pe, p) {
            let omega = teichmuller(&pp, pp.residue(g)).unwrap();
            let unit = one_unit_part(&pp, pp.residue(g)).unwrap();
            assert_eq!((omega * unit).value(), g);
            assert_eq!(omega.value() % p, g % p);
            assert_eq!(omega.pow(p - 1).value(), 1);
            assert_eq!(unit.value() % p, 1);
        }
    }
    println!("criterion 8 (p-adic layer at p^e in {{9,27,25,125,49,343}}): PASS");
}

#[test]
fn criterion_09_forgery_demo() {
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23];
    let mut rng = Lcg64::new(777);
    let mut scenarios = 0u64;
    let mut forged = 0u64;
    let mut strict_passes = 0u64;
    while scenarios < 50 {
        let p = primes[rng.next_below(8) as usize];
        let pp = PrimePower::new(p, 1).unwrap();
        let params = ElGamalParams::new(p, pp.find_generator().value()).unwrap();
        let x_priv = 1 + rng.next_below(p - 2);
        let msg = rng.next_below(p);
        let s2 = 1 + rng.next_below(p - 1);
        if dwp::modarith::gcd(s2, p - 1) != 1 {
            continue;
        }
        let kp = keygen(params, x_priv).unwrap();
        let h = kp.public_key();
        let inst = reduction_instance(params, h, msg, s2).unwrap();
        let (a, b) = (inst.g().value(), inst.c().value());
        let sigs = forge_fixed_s2(params, h, msg, s2).unwrap();
        assert!(!sigs.is_empty());
        for sig in &sigs {
            assert!(
                verify(params, h, msg, sig, RangePolicy::Extended),
                "forged signature rejected: p={p} x={x_priv} msg={msg} s2={s2} s1={}",
                sig.s1
            );
            assert_eq!(
                mul_mod(sig.s1, pow_mod(a, sig.s1, p), p),
                b,
                "reduction congruence violated at p={p} s1={}",
                sig.s1
            );
            forged += 1;
            if verify(params, h, msg, sig, RangePolicy::Strict) {
                strict_passes += 1;
            }
        }
        scenarios += 1;
    }
    println!(
        "criterion 9 (forgery demo): PASS, {forged} forged signatures over {scenarios} scenarios \
         all verify extended; {strict_passes} also pass strict (reported as data)"
    );
}

#[test]
fn criterion_10_hensel_speedup() {
    let pp = PrimePower::new(13, 3).unwrap();
    let mut rng = Lcg64::new(1313);
    let mut instances = Vec::with_capacity(100);
    while instances.len() < 100 {
        let g = 1 + rng.next_below(pp.modulus() - 1);
        let c = 1 + rng.next_below(pp.modulus() - 1);
        if g % 13 == 0 || c % 13 == 0 {
            continue;
        }
        instances.push(DwpInstance::new(pp, g, c).unwrap());
    }

    // best of three rounds to damp scheduler noise from parallel tests;
    // the fast side runs extra repetitions so its interval is measurable
    const REPS: u32 = 10;
    let mut best = 0.0f64;
    for _ in 0..3 {
        let t = Instant::now();
        let mut fast = Vec::new();
        for _ in 0..REPS {
            fast = instances.iter().map(|i| solve_all(i).unwrap()).collect();
        }
        let fast_time = t.elapsed() / REPS;
        let t = Instant::now();
        let slow: Vec<_> = instances
            .iter()
            .map(|i| brute_force(i, i.range_bound()))
            .collect();
        let slow_time = t.elapsed();
        for (f, s) in fast.iter().zip(&slow) {
            assert_eq!(
                f.solutions(),
                s.solutions(),
                "methods disagree on {}",
                f.instance()
            );
        }
        let ratio = slow_time.as_secs_f64() / fast_time.as_secs_f64();
        if ratio > best {
            best = ratio;
        }
    }
    assert!(
        best >= 50.0,
        "Hensel path only {best:.1}x faster than the scan; the criterion demands 50x"
    );
    println!("criterion 10 (solver speedup at p=13, e=3): PASS, {best:.0}x over 100 instances");
}
