//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion with its
//! wall time against the time limit, and exits nonzero if any fails.
//!
//! Each criterion checks the library result against an oracle computed here
//! by a different route: Burnside's basis theorem for two-generation, direct
//! conjugate intersection for normal cores, a hand-built Cayley action for
//! the regular representation, the GL order formula, and evaluation of
//! polynomials at the roots produced by the splitting tower.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use heavenly::arith::BigRat;
use heavenly::classifier::{
    classify, gl4_deduction, gl4_f2, orbit_bound_product, two_torsion_field_elliptic, ClassifierInput, EllipticInput,
    JacobianInput, Status, SurfaceInput,
};
use heavenly::factor::factor_over_q;
use heavenly::knowledgebase::{HARBATER_272, JONES_DEGREES, JONES_OCTIC};
use heavenly::numberfield::{
    extend, factor_over_tower, ramification_report, splitting_tower, BaseField, FieldTower, KPoly,
    RamificationMethod,
};
use heavenly::permgroup::{
    agl_1_17, core_bound_scan, is_p_group, s3_times_s3, search_two_generation, subdirect_products_s3,
    sylow2_s8_witness, symmetric_group, Perm, PermGroup,
};
use heavenly::poly::{discriminant, resultant, UniPoly};
use heavenly::verifier;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn p(s: &str) -> UniPoly {
    s.parse().expect("literal polynomial")
}

fn lemma(id: &str) -> Result<(), String> {
    let r = verifier::verify(id).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(())
    } else {
        Err(r.render())
    }
}

// 1 ------------------------------------------------------------------------

fn octic() -> Outcome {
    let g = sylow2_s8_witness();
    ensure(g.order() == 128, format!("order {}", g.order()))?;
    ensure(is_p_group(&g, 2), "not a 2-group")?;
    let search = search_two_generation(&g, false).map_err(|e| e.to_string())?;
    ensure(search.pairs_examined == 128 * 128, format!("{} pairs examined", search.pairs_examined))?;
    ensure(search.witness.is_none(), "found a generating pair")?;

    // Burnside: for a 2-group, Φ(G) = ⟨g²⟩ and d(G) = log₂[G : Φ(G)].
    let squares: Vec<Perm> = g.elements().iter().map(|x| x.then(x)).collect();
    let frattini = PermGroup::generate(&squares, 8).unwrap();
    let rank = (g.order() / frattini.order()).trailing_zeros();
    ensure(rank >= 3, format!("Frattini quotient rank {rank}"))?;

    lemma("octic")?;
    Ok(format!(
        "|G| = 128, {} pairs, none generates; Frattini rank {rank}: cannot be generated by 2 elements",
        search.pairs_examined
    ))
}

// 2 ------------------------------------------------------------------------

fn orbit_bounds() -> Outcome {
    let rows: [(&[u64], u64); 6] = [
        (&[4, 2], 256),
        (&[4, 1, 1], 64),
        (&[2, 2, 2], 128),
        (&[2, 2, 1, 1], 32),
        (&[2, 1, 1, 1, 1], 8),
        (&[1, 1, 1, 1, 1, 1], 2),
    ];
    for (orbits, want) in rows {
        let got = orbit_bound_product(orbits).map_err(|e| e.to_string())?;
        ensure(got == want, format!("{orbits:?}: got {got}, expected {want}"))?;
    }
    ensure(orbit_bound_product(&[3, 3]).is_err(), "orbit size 3 accepted")?;
    lemma("orbit_bounds")?;
    Ok("six rows exact".into())
}

// 3 ------------------------------------------------------------------------

/// Some pair of elements of `g` generates a subgroup of order `target`.
fn has_subgroup_of_order_by_pairs(g: &PermGroup, target: usize) -> bool {
    let els = g.elements();
    els.iter().any(|a| {
        els.iter()
            .any(|b| PermGroup::generate(&[*a, *b], g.degree()).is_ok_and(|h| h.order() == target))
    })
}

fn s3_lemma() -> Outcome {
    let subs = subdirect_products_s3();
    let orders: BTreeSet<usize> = subs.iter().map(|s| s.order).collect();
    ensure(orders == BTreeSet::from([6, 18, 36]), format!("orders {orders:?}"))?;
    for s in &subs {
        ensure(s.has_index_3_subgroup, format!("order {} lacks an index-3 subgroup", s.order))?;
        // Index-3 subgroups here have order 2, 6 or 12, all two-generated.
        ensure(
            has_subgroup_of_order_by_pairs(&s.group, s.order / 3),
            format!("pair search finds no index-3 subgroup of order {}", s.order),
        )?;
    }
    lemma("s3")?;
    Ok(format!("{} subdirect products, orders {orders:?}, each with an index-3 subgroup", subs.len()))
}

// 4 ------------------------------------------------------------------------

fn subgroups_by_closure(ambient: &PermGroup) -> Vec<PermGroup> {
    // Every subgroup of S₄ or S₃×S₃ is generated by at most three elements.
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut frontier = vec![PermGroup::trivial(ambient.degree())];
    seen.insert(frontier[0].elements().to_vec());
    let mut all = frontier.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for h in &frontier {
            for x in ambient.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(*x);
                let k = PermGroup::generate(&gens, ambient.degree()).unwrap();
                if seen.insert(k.elements().to_vec()) {
                    next.push(k.clone());
                    all.push(k);
                }
            }
        }
        frontier = next;
    }
    all
}

fn core_by_conjugates(h: &PermGroup, g: &PermGroup) -> usize {
    let mut core: BTreeSet<Perm> = h.elements().iter().copied().collect();
    for x in g.elements() {
        let conj = h.conjugate_set(x);
        core.retain(|e| conj.contains(e));
    }
    core.len()
}

fn core_bound_spot() -> Outcome {
    let mut summary = Vec::new();
    for (name, ambient, expected_subgroups) in [("S4", symmetric_group(4), 30), ("S3xS3", s3_times_s3(), 60)] {
        let scan = core_bound_scan(&ambient).map_err(|e| e.to_string())?;
        ensure(scan.violations.is_empty(), format!("{name}: {:?}", scan.violations))?;
        ensure(scan.groups == expected_subgroups, format!("{name}: {} subgroups", scan.groups))?;

        let subs = subgroups_by_closure(&ambient);
        ensure(subs.len() == expected_subgroups, format!("{name}: closure finds {} subgroups", subs.len()))?;
        let mut chains = 0usize;
        for g in &subs {
            let normals: Vec<&PermGroup> = subs.iter().filter(|n| n.is_normal_in(g)).collect();
            for n in &normals {
                for h in subs.iter().filter(|h| h.is_normal_in(n)) {
                    chains += 1;
                    let d = (g.order() / n.order()) as u128;
                    let m = (n.order() / h.order()) as u128;
                    let core_index = (g.order() / core_by_conjugates(h, g)) as u128;
                    ensure(
                        core_index <= d * m.pow(d as u32),
                        format!("{name}: [G:core] = {core_index} > {d}·{m}^{d}"),
                    )?;
                }
            }
        }
        ensure(chains == scan.chains, format!("{name}: {chains} chains vs {} scanned", scan.chains))?;
        summary.push(format!("{name}: {} subgroups, {chains} chains, 0 violations", scan.groups));
    }
    lemma("core_bound")?;
    Ok(summary.join("; "))
}

// 5 ------------------------------------------------------------------------

fn example_272() -> Outcome {
    let h = agl_1_17();
    ensure(h.order() == 272, format!("order {}", h.order()))?;
    ensure(!is_p_group(&h, 2), "AGL(1,17) reported as a 2-group")?;

    // Cayley action h ↦ h·g on the 272 elements: faithful and fixed-point-free.
    let els = h.elements();
    let pos: HashMap<Perm, usize> = els.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut images: HashSet<Vec<usize>> = HashSet::new();
    for g in els {
        let image: Vec<usize> = els.iter().map(|x| pos[&x.then(g)]).collect();
        let fixed = image.iter().enumerate().filter(|(i, j)| i == *j).count();
        ensure(g.is_identity() || fixed == 0, "a non-identity element fixes a point")?;
        let distinct: HashSet<usize> = image.iter().copied().collect();
        ensure(distinct.len() == 272, "an element acts non-bijectively")?;
        images.insert(image);
    }
    ensure(images.len() == 272, "regular action is not faithful")?;

    for (label, f) in [("32a2", "x^3 - x"), ("64a1", "x^3 - 4*x")] {
        let e = EllipticInput::from_cubic(BaseField::Q, p(f)).map_err(|e| e.to_string())?;
        let t = two_torsion_field_elliptic(&e, 64).map_err(|e| e.to_string())?;
        ensure(t.absolute_degree() == 1, format!("{label}: torsion degree {}", t.absolute_degree()))?;
        let roots = factor_over_q(&p(f)).unwrap();
        ensure(roots.factors.iter().all(|(g, _)| g.deg() == 1), format!("{label}: cubic not split over Q"))?;
    }
    lemma("example272")?;
    Ok("|AGL(1,17)| = 272, regular action faithful, 32a2 and 64a1 have 2-torsion over Q, non-heavenly".into())
}

// 6 ------------------------------------------------------------------------

fn gl4_trace() -> Outcome {
    let formula: u64 = (0..4).map(|i| 16 - (1u64 << i)).product();
    ensure(formula == 20160, format!("formula {formula}"))?;
    let g = gl4_f2();
    ensure(g.order() as u64 == formula, format!("group order {}", g.order()))?;
    let orbit = g.orbit_of(1).len();
    ensure(orbit == 15, format!("orbit {orbit}"))?;
    ensure(orbit * g.stabilizer_of(1).order() == g.order(), "orbit-stabilizer fails")?;

    let cert = gl4_deduction();
    let value = |step: &str, key: &str| cert.iter().find(|s| s.name == step)?.values.get(key)?.as_u64();
    ensure(value("gl4_order", "order") == Some(formula), "certificate order")?;
    ensure(value("orbit_stabilizer", "orbit_bound") == Some(15), "certificate orbit bound")?;
    for id in [JONES_DEGREES, HARBATER_272, JONES_OCTIC] {
        ensure(cert.iter().any(|s| s.cites(id)), format!("missing citation {id}"))?;
    }
    lemma("gl4")?;
    Ok(format!("|GL4(F2)| = {formula}, orbit bound 15, {} steps with citations", cert.len()))
}

// 7 ------------------------------------------------------------------------

fn jacobian(f: &str) -> ClassifierInput {
    SurfaceInput::Jacobian(JacobianInput::new(BaseField::Q, p(f)).unwrap()).into()
}

fn flagship() -> Outcome {
    // disc(xⁿ + a·x) = (-1)^{n(n-1)/2} (-1)^{n-1} (n-1)^{n-1} aⁿ
    let disc_formula = |n: i64, a: i64| -> BigInt {
        let sign = if ((n * (n - 1) / 2) + (n - 1)) % 2 == 0 { 1 } else { -1 };
        BigInt::from(sign) * BigInt::from(n - 1).pow((n - 1) as u32) * BigInt::from(a).pow(n as u32)
    };
    let d = discriminant(&p("x^5 - x")).unwrap();
    ensure(d == BigRat::from_integer(disc_formula(5, -1)), format!("disc(x^5 - x) = {d}"))?;
    ensure(d == BigRat::from_integer((-256).into()), "disc(x^5 - x) is not -256")?;

    let v = classify(&jacobian("x^5 - x")).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Heavenly && v.closure_degree == Some(2), format!("x^5-x: {:?} {:?}", v.status, v.closure_degree))?;
    let recorded = v.step("good_reduction_screen").and_then(|s| s.values.get("discriminants")).cloned();
    ensure(recorded == Some(serde_json::json!(["-256"])), format!("x^5-x recorded disc {recorded:?}"))?;

    let v = classify(&jacobian("x^5 + x")).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Heavenly && v.closure_degree == Some(4), format!("x^5+x: {:?} {:?}", v.status, v.closure_degree))?;

    let v = classify(&jacobian("x^6 - 1")).map_err(|e| e.to_string())?;
    ensure(v.status == Status::NotHeavenly, format!("x^6-1: {:?}", v.status))?;
    ensure(v.odd_ramified_primes == Some(vec!["3".into()]), format!("x^6-1 primes {:?}", v.odd_ramified_primes))?;

    let e: ClassifierInput = EllipticInput::from_cubic(BaseField::Q, p("x^3 - 2")).unwrap().into();
    let v = classify(&e).map_err(|e| e.to_string())?;
    ensure(v.status == Status::NotHeavenly, format!("x^3-2: {:?}", v.status))?;

    lemma("flagship")?;
    Ok("x^5-x heavenly (2, disc -256); x^5+x heavenly (4); x^6-1 not_heavenly {3}; x^3-2 not_heavenly".into())
}

// 8 ------------------------------------------------------------------------

fn splitting_degrees() -> Outcome {
    let mut out = Vec::new();
    for (f, want) in [("x^4 - 2", 8), ("x^3 - 2", 6), ("x^3 - x", 1)] {
        let g = p(f);
        let s = splitting_tower(&KPoly::from_rational(&g), &FieldTower::rational(), 512).map_err(|e| e.to_string())?;
        ensure(s.relative_degree() == want, format!("{f}: degree {}", s.relative_degree()))?;
        let top = s.tower.top();
        let lifted = s.tower.rational_poly(&g);
        let factors = factor_over_tower(&s.tower, &lifted).map_err(|e| e.to_string())?;
        let linear: usize = factors.iter().filter(|(h, _)| h.deg() == 1).map(|(_, e)| *e as usize).sum();
        ensure(linear == g.deg(), format!("{f}: {linear} linear factors over the tower"))?;
        ensure(s.roots.len() == g.deg(), format!("{f}: {} roots", s.roots.len()))?;
        for r in &s.roots {
            ensure(top.is_zero_elem(&top.kp_eval(&lifted, r)), format!("{f}: a recorded root is not a root"))?;
        }
        let distinct: HashSet<String> = s.roots.iter().map(|r| format!("{r:?}")).collect();
        ensure(distinct.len() == g.deg(), format!("{f}: roots not distinct"))?;
        out.push(format!("{f} -> {want}"));
    }
    Ok(out.join(", "))
}

// 9 ------------------------------------------------------------------------

fn ramification() -> Outcome {
    let q = FieldTower::rational();
    let field = |f: &str| extend(&q, &KPoly::from_rational(&p(f))).unwrap();
    let primes = |k: &FieldTower| -> Result<Vec<String>, String> {
        Ok(ramification_report(k)
            .map_err(|e| e.to_string())?
            .ramified_primes()
            .iter()
            .map(ToString::to_string)
            .collect())
    };
    ensure(primes(&field("x^2 + 1"))?.is_empty(), "Q(i) ramified at an odd prime")?;
    ensure(primes(&field("x^2 - 5"))? == ["5"], "Q(sqrt5)")?;

    let k45 = field("x^2 - 45");
    let rep = ramification_report(&k45).map_err(|e| e.to_string())?;
    ensure(primes(&k45)? == ["5"], format!("Q(sqrt45): {:?}", primes(&k45)?))?;
    let at3 = rep.evidence.iter().find(|e| e.prime == 3u32.into()).ok_or("no evidence at 3")?;
    ensure(
        matches!(at3.method, RamificationMethod::RoundTwo { .. }) && at3.index_valuation == Some(1) && !at3.ramified,
        format!("evidence at 3: {at3:?}"),
    )?;
    // Oracle: 45 = 3²·5, so the field discriminant is 4·5 and v₃ = 0.
    ensure(at3.field_disc_valuation() == Some(0), "v_3 of the field discriminant")?;

    // ℚ(ζ₈) = ℚ(i, √2), discriminant 2⁸.
    let qi = extend(&q, &KPoly::from_rational(&p("x^2 + 1"))).unwrap();
    let zeta8 = extend(&qi, &qi.rational_poly(&p("x^2 - 2"))).unwrap();
    ensure(zeta8.absolute_degree() == 4, "Q(zeta8) degree")?;
    ensure(primes(&zeta8)?.is_empty(), format!("Q(zeta8): {:?}", primes(&zeta8)?))?;
    let cyclotomic = field("x^4 + 1");
    ensure(primes(&cyclotomic)?.is_empty(), "Q[x]/(x^4+1) ramified at an odd prime")?;
    Ok("Q(i): {}, Q(sqrt5): {5}, Q(sqrt45): {5} (Round 2 at 3), Q(zeta8): {}".into())
}

// 10 -----------------------------------------------------------------------

const SEED: u8 = 0x5e;
const CASES: u32 = 250;

fn runner(salt: u8) -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[SEED ^ salt; 32]))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (prop::collection::vec(-9i64..=9, 1..=max_deg), prop_oneof![-5i64..=-1, 1i64..=5]).prop_map(|(mut cs, lc)| {
        cs.push(lc);
        UniPoly::from_ints(&cs)
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn random_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=6).prop_flat_map(|n| prop::collection::vec(perm(n), 1..=3).prop_map(move |g| PermGroup::generate(&g, n).unwrap()))
}

fn run_property<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Outcome {
    let mut total = 0u32;

    run_property(
        "factor reconstruction",
        runner(1).run(&(small_poly(4), small_poly(3)), |(f, g)| {
            let h = &f * &g;
            let fac = factor_over_q(&h).unwrap();
            prop_assert_eq!(fac.expand(), h.clone());
            for (q, _) in &fac.factors {
                prop_assert!(q.is_monic() && q.deg() >= 1);
                prop_assert!(h.rem(q).is_zero());
            }
            Ok(())
        })
        ,
    )?;
    total += CASES;

    run_property(
        "disc multiplicativity",
        runner(2).run(&(small_poly(4), small_poly(4)), |(f, g)| {
            let lhs = discriminant(&(&f * &g)).unwrap();
            let r = resultant(&f, &g).unwrap();
            let rhs = discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r;
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        ,
    )?;
    total += CASES;

    run_property(
        "resultant symmetry",
        runner(3).run(&(small_poly(5), small_poly(5)), |(f, g)| {
            let sign = if (f.deg() * g.deg()) % 2 == 0 { BigRat::one() } else { -BigRat::one() };
            prop_assert_eq!(resultant(&f, &g).unwrap(), sign * resultant(&g, &f).unwrap());
            Ok(())
        })
        ,
    )?;
    total += CASES;

    run_property(
        "orbit-stabilizer",
        runner(4).run(&random_group(), |g| {
            for x in 1..=g.degree() {
                prop_assert_eq!(g.orbit_of(x).len() * g.stabilizer_of(x).order(), g.order());
            }
            Ok(())
        })
        ,
    )?;
    total += CASES;

    run_property(
        "Lagrange",
        runner(5).run(&(random_group(), any::<prop::sample::Index>()), |(g, i)| {
            let x = g.elements()[i.index(g.order())];
            let h = PermGroup::generate(&[x], g.degree()).unwrap();
            prop_assert_eq!(h.order() as u64, x.order());
            prop_assert_eq!(g.order() % h.order(), 0);
            // The left cosets partition G into blocks of size |H|.
            let cosets: HashSet<BTreeSet<Perm>> = g
                .elements()
                .iter()
                .map(|a| h.elements().iter().map(|y| a.then(y)).collect())
                .collect();
            prop_assert_eq!(cosets.len() * h.order(), g.order());
            Ok(())
        })
        ,
    )?;
    total += CASES;

    ensure(total >= 1000, format!("only {total} cases"))?;
    Ok(format!("{total} seeded cases over 5 properties, 0 failures"))
}

// --------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "octic witness not 2-generated", 10, octic),
        (2, "orbit-size bounds table", 1, orbit_bounds),
        (3, "subdirect products of S3xS3", 30, s3_lemma),
        (4, "normal-core bound spot check", 60, core_bound_spot),
        (5, "order-272 counterexample", 5, example_272),
        (6, "GL4(F2) trace", 1, gl4_trace),
        (7, "classifier reference instances", 60, flagship),
        (8, "splitting degrees", 30, splitting_degrees),
        (9, "odd ramification", 10, ramification),
        (10, "seeded property suites", 60, properties),
    ];
    let mut failures = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let line = match (&result, in_time) {
            (Ok(detail), true) => format!("PASS criterion {n:>2} {name}: {detail}"),
            (Ok(detail), false) => format!("FAIL criterion {n:>2} {name}: over time limit; {detail}"),
            (Err(why), _) => format!("FAIL criterion {n:>2} {name}: {why}"),
        };
        if !(result.is_ok() && in_time) {
            failures += 1;
        }
        println!("{line} [{:.2}s / {limit}s]", elapsed.as_secs_f64());
    }
    println!("acceptance: {}/10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
