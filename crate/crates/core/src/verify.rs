//! Cross-check battery: runs the Smith pipeline, the augmented-factor
//! criterion and the Hermite oracle against each other on one instance and
//! on randomly perturbed copies of it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gcd_lcm::{cofactor, gcd_lcm_pair, mutually_associate, GcdLcmPair};
use crate::matrix::DenseMatrix;
use crate::oracle::{column_module, hnf_solve};
use crate::random::{random_matrix, random_unimodular, RandomScalar, ScalarRange};
use crate::solver::{
    annihilator_generators, build_solution_set, certify, check_solvable_augmented,
    general_solution, SolutionParameter,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {}", self.name, self.detail)
    }
}

struct Report {
    prefix: String,
    checks: Vec<Check>,
}

impl Report {
    fn new(prefix: impl Into<String>) -> Self {
        Report {
            prefix: prefix.into(),
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: format!("{}/{name}", self.prefix),
            passed,
            detail: detail.into(),
        });
        passed
    }
}

/// Outcome of [`check_instance`]; `pair` is present for solvable instances.
pub struct InstanceOutcome<R> {
    pub checks: Vec<Check>,
    pub solvable: Option<bool>,
    pub pair: Option<GcdLcmPair<R>>,
}

/// Runs every check on one instance, sampling `samples` solution
/// parameters with `rng`.
pub fn check_instance<R: RandomScalar, G: Rng>(
    b: &DenseMatrix<R>,
    a: &DenseMatrix<R>,
    prefix: &str,
    samples: usize,
    rng: &mut G,
) -> InstanceOutcome<R> {
    let mut rep = Report::new(prefix);
    let cert = match certify(b, a) {
        Ok(c) => c,
        Err(e) => {
            rep.record("shape", false, e.to_string());
            return InstanceOutcome {
                checks: rep.checks,
                solvable: None,
                pair: None,
            };
        }
    };
    let snf_a = cert.snf_a.verify(a);
    rep.record("smith-invariants-A", snf_a.is_ok(), snf_a.err().unwrap_or_else(|| format!("rank {}", cert.k)));
    let snf_b = cert.snf_b.verify(b);
    rep.record("smith-invariants-B", snf_b.is_ok(), snf_b.err().unwrap_or_else(|| format!("rank {}", cert.t)));
    let l_unimodular = cert.l.is_unimodular().unwrap_or(false);
    rep.record("transition-unimodular", l_unimodular, "L = V*Pinv");

    let augmented = check_solvable_augmented(b, a).unwrap_or(!cert.solvable);
    rep.record(
        "augmented-agrees",
        augmented == cert.solvable,
        format!("certify={} augmented={augmented}", cert.solvable),
    );
    let hnf_x = hnf_solve(b, a).ok().flatten();
    rep.record(
        "hnf-agrees",
        hnf_x.is_some() == cert.solvable,
        format!("certify={} hnf={}", cert.solvable, hnf_x.is_some()),
    );

    if !cert.solvable {
        let why = cert
            .obstruction
            .as_ref()
            .map_or_else(String::new, |o| o.to_string());
        rep.record("verdict", true, format!("unsolvable: {why}"));
        return InstanceOutcome {
            checks: rep.checks,
            solvable: Some(false),
            pair: None,
        };
    }
    rep.record(
        "verdict",
        true,
        format!("solvable n={} k={} t={}", cert.n, cert.k, cert.t),
    );

    let ss = match build_solution_set(&cert) {
        Ok(ss) => ss,
        Err(e) => {
            rep.record("solution-set", false, e.to_string());
            return InstanceOutcome {
                checks: rep.checks,
                solvable: Some(true),
                pair: None,
            };
        }
    };
    let pair = gcd_lcm_pair(&ss);
    rep.record("gcd-is-solution", &(b * &pair.f) == a, "B*F = A");
    rep.record("lcm-is-solution", &(b * &pair.n) == a, "B*N = A");

    let free = ScalarRange::new(2, 1);
    let (mut divides_ok, mut projector_ok, mut solves_ok) = (true, true, true);
    for _ in 0..samples {
        let p = SolutionParameter {
            t3: random_matrix(rng, ss.n - ss.t, ss.t, &free),
            t4: random_matrix(rng, ss.n - ss.t, ss.n - ss.t, &free),
        };
        let x = general_solution(&ss, &p).expect("parameter shaped from the solution set");
        solves_ok &= &(b * &x) == a;
        let m = cofactor(&ss, &p).expect("parameter shaped from the solution set");
        divides_ok &= &pair.f * &m == x;
        projector_ok &= &pair.k * &x == pair.n;
    }
    rep.record("general-solution", solves_ok, format!("B*X(p) = A for {samples} samples"));
    rep.record("gcd-divides-solutions", divides_ok, format!("F*M(p) = X(p) for {samples} samples"));
    rep.record("projector-identity", projector_ok, format!("K*X(p) = N for {samples} samples"));

    match &hnf_x {
        Some(x) => {
            let in_coset = ss.coset_parameter(x).map(|p| p.is_some()).unwrap_or(false);
            rep.record("hnf-in-coset", in_coset, "Uinv*X_hnf*Q matches [M 0] on its top rows");
        }
        None => {
            rep.record("hnf-in-coset", false, "oracle found no solution");
        }
    }

    let mut gens = vec![pair.n.clone()];
    gens.extend(annihilator_generators(&cert.snf_b));
    let lhs = column_module(&gens);
    let rhs = column_module(std::slice::from_ref(&pair.f));
    let same = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
    rep.record("column-module-gcd", same, "module(N, Ann_r(B)) = module(F)");

    InstanceOutcome {
        checks: rep.checks,
        solvable: Some(true),
        pair: Some(pair),
    }
}

/// Base instance, optional comparisons against expected g.c.d./l.c.m.
/// matrices, then `trials` perturbed copies `(G·B·H, G·A)` with random
/// unimodular `G`, `H`. Trials run in parallel and are reported in order.
pub fn verify_battery<R: RandomScalar>(
    b: &DenseMatrix<R>,
    a: &DenseMatrix<R>,
    trials: usize,
    seed: u64,
    expect_gcd: Option<&DenseMatrix<R>>,
    expect_lcm: Option<&DenseMatrix<R>>,
) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = check_instance(b, a, "base", 5, &mut rng);
    let mut checks = base.checks;

    let mut expect = |label: &str, computed: Option<&DenseMatrix<R>>, expected: Option<&DenseMatrix<R>>| {
        let Some(expected) = expected else { return };
        let name = format!("base/{label}-associate");
        let (passed, detail) = match computed {
            None => (false, "instance is not solvable".to_string()),
            Some(c) => match mutually_associate(c, expected) {
                Ok(true) => (
                    true,
                    format!("computed {label} and expected {label} left-divide each other (equal up to right association)"),
                ),
                Ok(false) => (false, format!("computed {label} and expected {label} are not mutually left-divisible")),
                Err(e) => (false, e.to_string()),
            },
        };
        checks.push(Check { name, passed, detail });
    };
    expect("gcd", base.pair.as_ref().map(|p| &p.f), expect_gcd);
    expect("lcm", base.pair.as_ref().map(|p| &p.n), expect_lcm);

    let Some(base_solvable) = base.solvable else {
        return checks;
    };
    let n = b.rows();
    let per_trial: Vec<Vec<Check>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1 + trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let (g, _) = random_unimodular::<R, _>(&mut rng, n, 3 * n);
            let (h, _) = random_unimodular::<R, _>(&mut rng, n, 3 * n);
            let pb = &(&g * b) * &h;
            let pa = &g * a;
            let prefix = format!("trial-{}", trial + 1);
            let out = check_instance(&pb, &pa, &prefix, 3, &mut rng);
            let mut trial_checks = out.checks;
            trial_checks.push(Check {
                name: format!("{prefix}/solvability-preserved"),
                passed: out.solvable == Some(base_solvable),
                detail: "perturbation (G*B*H, G*A) keeps the verdict".to_string(),
            });
            trial_checks
        })
        .collect();
    checks.extend(per_trial.into_iter().flatten());
    checks
}
