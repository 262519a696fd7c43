//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line to stderr
//! (visible without `--nocapture`) and the test fails if any line is `FAIL`.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use eddsolve::oracle::{column_module, exhaustive_solutions, hnf_solve};
use eddsolve::random::{random_matrix, random_rank_deficient, solvable_instance, RandomScalar, ScalarRange};
use eddsolve::{
    annihilator_generators, build_solution_set, certify, check_solvable_augmented, cofactor, gcd_lcm_pair,
    mutually_associate, parse_matrix, smith, DenseMatrix, Int, Poly, Ring, SolutionParameter, SolutionSet,
    SolvabilityCertificate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> DenseMatrix<Int> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_matrix(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Counts Smith decompositions checked against their input and the ones
/// that failed.
#[derive(Default)]
struct SnfAudit {
    checked: AtomicUsize,
    violations: AtomicUsize,
}

impl SnfAudit {
    fn record<R: Ring>(&self, dec: &eddsolve::SmithDecomposition<R>, input: &DenseMatrix<R>) -> bool {
        self.checked.fetch_add(1, Ordering::Relaxed);
        let ok = dec.verify(input).is_ok();
        if !ok {
            self.violations.fetch_add(1, Ordering::Relaxed);
        }
        ok
    }

    /// `certify` plus the decompositions behind it and behind the augmented
    /// criterion, all verified.
    fn certify<R: Ring>(&self, b: &DenseMatrix<R>, a: &DenseMatrix<R>) -> SolvabilityCertificate<R> {
        let cert = certify(b, a).expect("square instance");
        self.record(&cert.snf_a, a);
        self.record(&cert.snf_b, b);
        let aug = a.hcat(b).expect("same row count");
        self.record(&smith(&aug), &aug);
        cert
    }
}

struct Outcome {
    passed: bool,
    line: String,
}

fn report(criterion: usize, title: &str, passed: bool, detail: String) -> Outcome {
    let tag = if passed { "PASS" } else { "FAIL" };
    let line = format!("{tag} criterion {criterion}: {title}: {detail}");
    let _ = writeln!(std::io::stderr(), "{line}");
    Outcome { passed, line }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn criterion_1(audit: &SnfAudit) -> Outcome {
    let start = Instant::now();
    let (a, b) = (fixture("example_A.mat"), fixture("example_B.mat"));
    let (sa, sb) = (smith(&a), smith(&b));
    let verified = audit.record(&sa, &a) & audit.record(&sb, &b);
    let elapsed = start.elapsed();
    let ok = verified
        && sa.inv_factors == ints(&[1, 2, 6])
        && sb.inv_factors == ints(&[1, 1, 2, 4, 12])
        && within(elapsed, Duration::from_secs(1));
    report(
        1,
        "smith forms of the worked example",
        ok,
        format!("A -> {:?}, B -> {:?} in {elapsed:.2?} (limit 1s)", show(&sa.inv_factors), show(&sb.inv_factors)),
    )
}

fn show<R: Ring>(v: &[R]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn criterion_2(audit: &SnfAudit) -> Outcome {
    let (a, b) = (fixture("example_A.mat"), fixture("example_B.mat"));
    let cert = audit.certify(&b, &a);
    let augmented = check_solvable_augmented(&b, &a).unwrap();
    let hnf = hnf_solve(&b, &a).unwrap();
    let hnf_ok = hnf.as_ref().is_some_and(|x| &b * x == a);
    let ok = cert.solvable && cert.k == 3 && cert.t == 5 && augmented && hnf_ok;
    report(
        2,
        "solvability of the worked example",
        ok,
        format!(
            "certify={} k={} t={} augmented={augmented} hnf={hnf_ok}",
            cert.solvable, cert.k, cert.t
        ),
    )
}

fn criterion_3(audit: &SnfAudit) -> Outcome {
    let start = Instant::now();
    let (a, b) = (fixture("example_A.mat"), fixture("example_B.mat"));
    let (f_star, n_star) = (fixture("example_F.mat"), fixture("example_N.mat"));
    let cert = audit.certify(&b, &a);
    let ss = build_solution_set(&cert).unwrap();
    let pair = gcd_lcm_pair(&ss);
    let f_solves = &b * &pair.f == a;
    let n_solves = &b * &pair.n == a;
    let f_assoc = mutually_associate(&pair.f, &f_star).unwrap();
    let n_assoc = mutually_associate(&pair.n, &n_star).unwrap();
    let elapsed = start.elapsed();
    let ok = f_solves && n_solves && f_assoc && n_assoc && within(elapsed, Duration::from_secs(1));
    report(
        3,
        "gcd and lcm of the worked example",
        ok,
        format!(
            "B*F=A {f_solves}, B*N=A {n_solves}, F~F* {f_assoc}, N~N* {n_assoc} in {elapsed:.2?} (limit 1s)"
        ),
    )
}

fn random_parameter<R: RandomScalar, G: Rng>(rng: &mut G, ss: &SolutionSet<R>) -> SolutionParameter<R> {
    let free = ScalarRange::new(3, 1);
    SolutionParameter {
        t3: random_matrix(rng, ss.n - ss.t, ss.t, &free),
        t4: random_matrix(rng, ss.n - ss.t, ss.n - ss.t, &free),
    }
}

/// Checks B·F = A, B·N = A and, for `samples` random parameters p,
/// F·M(p) = X(p) with the cofactor witness and K·X(p) = N.
fn identities_hold<R: RandomScalar, G: Rng>(
    audit: &SnfAudit,
    b: &DenseMatrix<R>,
    a: &DenseMatrix<R>,
    samples: usize,
    rng: &mut G,
) -> Result<(), String> {
    let cert = audit.certify(b, a);
    if !cert.solvable {
        return Err("constructed instance reported unsolvable".into());
    }
    let ss = build_solution_set(&cert).map_err(|e| e.to_string())?;
    let pair = gcd_lcm_pair(&ss);
    if &(b * &pair.f) != a {
        return Err("B*F != A".into());
    }
    if &(b * &pair.n) != a {
        return Err("B*N != A".into());
    }
    for _ in 0..samples {
        let p = random_parameter(rng, &ss);
        let x = eddsolve::general_solution(&ss, &p).map_err(|e| e.to_string())?;
        if &(b * &x) != a {
            return Err("B*X(p) != A".into());
        }
        let m = cofactor(&ss, &p).map_err(|e| e.to_string())?;
        if &pair.f * &m != x {
            return Err("F*M(p) != X(p)".into());
        }
        if &pair.k * &x != pair.n {
            return Err("K*X(p) != N".into());
        }
    }
    Ok(())
}

/// Runs the randomized identity suite; returns (passes, first failure).
fn identity_suite<R: RandomScalar>(
    audit: &SnfAudit,
    instances: usize,
    sizes: &[usize],
    range: &ScalarRange,
    seed: u64,
) -> (usize, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0;
    let mut first = None;
    for i in 0..instances {
        let n = sizes[i % sizes.len()];
        let (b, a) = solvable_instance::<R, _>(&mut rng, n, range);
        match identities_hold(audit, &b, &a, 5, &mut rng) {
            Ok(()) => passes += 1,
            Err(e) => {
                first.get_or_insert(format!("instance {i} (n={n}): {e}"));
            }
        }
    }
    (passes, first)
}

fn criterion_4(audit: &SnfAudit) -> Outcome {
    let start = Instant::now();
    let (passes, first) = identity_suite::<Int>(audit, 200, &[2, 3, 4, 5, 6], &ScalarRange::new(5, 0), 4);
    let elapsed = start.elapsed();
    let ok = passes == 200 && within(elapsed, Duration::from_secs(60));
    report(
        4,
        "randomized gcd/lcm identities over Z",
        ok,
        format!(
            "{passes}/200 instances in {elapsed:.2?} (limit 60s){}",
            first.map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

/// Three-way agreement on pairs that are not built as products; returns
/// (agreements, solvable count, first disagreement).
fn agreement_suite<R: RandomScalar>(
    audit: &SnfAudit,
    pairs: usize,
    sizes: &[usize],
    wide: &ScalarRange,
    narrow: &ScalarRange,
    seed: u64,
) -> (usize, usize, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut solvable, mut first) = (0, 0, None);
    for i in 0..pairs {
        let n = sizes[i % sizes.len()];
        // Narrow coefficient ranges make B unimodular often enough that
        // both verdicts are exercised.
        let b: DenseMatrix<R> = match i % 3 {
            0 => random_matrix(&mut rng, n, n, narrow),
            1 => random_matrix(&mut rng, n, n, wide),
            _ => random_rank_deficient(&mut rng, n, wide),
        };
        let a: DenseMatrix<R> = random_matrix(&mut rng, n, n, wide);
        let cert = audit.certify(&b, &a);
        let augmented = check_solvable_augmented(&b, &a).unwrap();
        let hnf = hnf_solve(&b, &a).unwrap();
        let hnf_sound = hnf.as_ref().is_none_or(|x| &b * x == a);
        if cert.solvable == augmented && augmented == hnf.is_some() && hnf_sound {
            agree += 1;
            solvable += usize::from(cert.solvable);
        } else {
            first.get_or_insert(format!(
                "pair {i} (n={n}): certify={} augmented={augmented} hnf={}",
                cert.solvable,
                hnf.is_some()
            ));
        }
    }
    (agree, solvable, first)
}

fn criterion_5(audit: &SnfAudit) -> Outcome {
    let (agree, solvable, first) =
        agreement_suite::<Int>(audit, 200, &[2, 3, 4], &ScalarRange::new(3, 0), &ScalarRange::new(1, 0), 5);
    report(
        5,
        "solvability agreement over Z",
        agree == 200,
        format!(
            "{agree}/200 pairs agree ({solvable} solvable, {} not){}",
            200 - solvable,
            first.map(|f| format!("; first disagreement {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_6(audit: &SnfAudit) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let range = ScalarRange::new(5, 0);
    let mut passes = 0;
    let mut first = None;
    for i in 0..50 {
        let n = 2 + i % 4;
        let (b, a) = solvable_instance::<Int, _>(&mut rng, n, &range);
        let cert = audit.certify(&b, &a);
        let ss = build_solution_set(&cert).unwrap();
        let pair = gcd_lcm_pair(&ss);
        let mut gens = vec![pair.n.clone()];
        gens.extend(annihilator_generators(&cert.snf_b));
        let lhs = column_module(&gens).unwrap();
        let rhs = column_module(std::slice::from_ref(&pair.f)).unwrap();
        if lhs == rhs {
            passes += 1;
        } else {
            first.get_or_insert(format!("instance {i} (n={n}, t={})", cert.t));
        }
    }
    report(
        6,
        "column module of N and the annihilator equals that of F",
        passes == 50,
        format!(
            "{passes}/50 instances{}",
            first.map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_7(audit: &SnfAudit) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b_range = ScalarRange::new(2, 0);
    let c_range = ScalarRange::new(1, 0);
    let (mut passes, mut total_solutions) = (0, 0);
    let mut first = None;
    for i in 0..20 {
        let b: DenseMatrix<Int> = if i % 2 == 0 {
            random_rank_deficient(&mut rng, 2, &b_range)
        } else {
            random_matrix(&mut rng, 2, 2, &b_range)
        };
        let c: DenseMatrix<Int> = random_matrix(&mut rng, 2, 2, &c_range);
        let a = &b * &c;
        let cert = audit.certify(&b, &a);
        let ss = build_solution_set(&cert).unwrap();
        let found = exhaustive_solutions(&b, &a, 2).unwrap();
        total_solutions += found.len();
        let all_in_coset = found
            .iter()
            .all(|x| matches!(ss.coset_parameter(x), Ok(Some(p)) if eddsolve::general_solution(&ss, &p).as_ref() == Ok(x)));
        if found.contains(&c) && all_in_coset {
            passes += 1;
        } else {
            first.get_or_insert(format!("instance {i}: {} solutions, t={}", found.len(), cert.t));
        }
    }
    report(
        7,
        "exhaustive solutions lie in the emitted coset",
        passes == 20,
        format!(
            "{passes}/20 instances, {total_solutions} enumerated solutions{}",
            first.map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_8(audit: &SnfAudit) -> Outcome {
    let start = Instant::now();
    let range = ScalarRange::new(3, 2);
    let (passes, first_identity) = identity_suite::<Poly>(audit, 50, &[2, 3], &range, 8);
    let (agree, solvable, first_agree) =
        agreement_suite::<Poly>(audit, 50, &[2, 3], &range, &ScalarRange::new(3, 0), 88);
    let elapsed = start.elapsed();
    let ok = passes == 50 && agree == 50 && within(elapsed, Duration::from_secs(120));
    let failure = first_identity.or(first_agree).map(|f| format!("; first failure {f}")).unwrap_or_default();
    report(
        8,
        "criteria 4 and 5 over Q[x]",
        ok,
        format!(
            "identities {passes}/50, agreement {agree}/50 ({solvable} solvable) in {elapsed:.2?} (limit 120s){failure}"
        ),
    )
}

fn criterion_9(audit: &SnfAudit) -> Outcome {
    let checked = audit.checked.load(Ordering::Relaxed);
    let violations = audit.violations.load(Ordering::Relaxed);
    report(
        9,
        "smith invariants on every decomposition",
        violations == 0 && checked > 0,
        format!("{checked} decompositions checked (P*A*Q=E, P*Pinv=I, Q*Qinv=I, chain), {violations} violations"),
    )
}

#[test]
fn acceptance_criteria() {
    let audit = SnfAudit::default();
    let outcomes = [
        criterion_1(&audit),
        criterion_2(&audit),
        criterion_3(&audit),
        criterion_4(&audit),
        criterion_5(&audit),
        criterion_6(&audit),
        criterion_7(&audit),
        criterion_8(&audit),
        criterion_9(&audit),
    ];
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.line.as_str()).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
