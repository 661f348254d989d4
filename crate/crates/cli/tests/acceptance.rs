//! The acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them alongside the
//! harness output).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hsp_core::characters::{character, dimension, CharacterTable};
use hsp_core::combinatorics::{
    enumerate_matchings, enumerate_partitions, factorial, ConjugacyClass, Partition,
};
use hsp_core::measurement::{
    exhaustive_moments, projector_moments, tv_experiment, GroupCache, RegisterContext,
    TupleSelection, TvExperimentConfig,
};
use hsp_core::oracle::compare_with_analytic;
use hsp_core::spectral::{involution_projector_rank, plancherel};
use hsp_core::tensor::{
    average_multiplicity, conjugacy_reciprocal_sum, kronecker_multiplicity,
    transverse_projection_check,
};
use hsp_core::yor::{involution_projector, Irrep};

fn report(num: u32, label: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {num}: PASS - {label}");
    } else {
        println!("criterion {num}: FAIL - {label}: {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {num} failed: {failures:?}");
}

#[test]
fn criterion_01_dimension_identity() {
    let mut failures = Vec::new();
    for n in 1..=10u32 {
        let total: BigUint = enumerate_partitions(n)
            .iter()
            .map(|lam| {
                let d = dimension(lam);
                &d * &d
            })
            .sum();
        if total != factorial(n) {
            failures.push(format!("n = {n}: sum of squares {total} != {n}!"));
        }
    }
    report(1, "sum of squared dimensions equals n! for n = 1..10", &failures);
}

#[test]
fn criterion_02_orthogonality_and_yor_traces() {
    let mut failures = Vec::new();
    // exact row orthogonality, n <= 8
    for n in 1..=8u32 {
        let classes = enumerate_partitions(n);
        let sizes: Vec<BigInt> = classes
            .iter()
            .map(|mu| BigInt::from(ConjugacyClass::new(mu.clone()).size()))
            .collect();
        let table = CharacterTable::new(n);
        let order = BigInt::from(factorial(n));
        for (a, lam) in classes.iter().enumerate() {
            for lam2 in classes.iter().skip(a) {
                let mut inner = BigInt::zero();
                for (c, mu) in classes.iter().enumerate() {
                    inner += &sizes[c] * table.entry(lam, mu).unwrap() * table.entry(lam2, mu).unwrap();
                }
                let expected = if lam == lam2 { order.clone() } else { BigInt::zero() };
                if inner != expected {
                    failures.push(format!("n = {n}: <chi^{lam}, chi^{lam2}> = {inner}"));
                }
            }
        }
    }
    // Murnaghan-Nakayama values equal matrix traces, n <= 6
    for n in 2..=6u32 {
        for lam in enumerate_partitions(n) {
            let ir = Irrep::build(&lam).unwrap();
            for mu in enumerate_partitions(n) {
                let chi = character(&lam, &mu).unwrap();
                let rep = ConjugacyClass::new(mu.clone()).representative();
                let trace = ir.matrix_of(&rep).trace();
                let chi_f = chi.to_string().parse::<f64>().unwrap();
                if (trace - chi_f).abs() > 1e-9 {
                    failures.push(format!(
                        "n = {n}, chi^{lam}({mu}): trace {trace} vs {chi}"
                    ));
                }
            }
        }
    }
    report(
        2,
        "exact character orthogonality (n <= 8) and MN = YOR traces (n <= 6)",
        &failures,
    );
}

#[test]
fn criterion_03_rank_formula() {
    let mut failures = Vec::new();
    for n in [4usize, 6] {
        let matchings = enumerate_matchings(n).unwrap();
        for lam in enumerate_partitions(n as u32) {
            let ir = Irrep::build(&lam).unwrap();
            let exact = involution_projector_rank(&lam).unwrap();
            for m in &matchings {
                let numeric = involution_projector(&[&ir], m).unwrap().numeric_rank();
                if BigInt::from(numeric) != exact {
                    failures.push(format!(
                        "n = {n}, lambda = {lam}, m = {m:?}: numeric {numeric} vs exact {exact}"
                    ));
                }
            }
        }
    }
    report(3, "numeric projector rank equals (d + chi(M))/2, n in {4,6}", &failures);
}

#[test]
fn criterion_04_moment_formulas() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut check = |n: u32, lambdas: &[Partition], rng: &mut ChaCha8Rng| {
        let ctx = RegisterContext::new(n, lambdas, None).unwrap();
        let cache = GroupCache::new(&ctx).unwrap();
        for _ in 0..20 {
            let mut b = nalgebra::DVector::from_fn(ctx.product_dim(), |_, _| {
                rng.gen::<f64>() - 0.5
            });
            b /= b.norm();
            let formula = projector_moments(&ctx, &cache, &b).unwrap();
            let brute = exhaustive_moments(&ctx, &b).unwrap();
            if (formula.expectation - brute.expectation).abs() > 1e-8 {
                failures.push(format!(
                    "n = {n}, {lambdas:?}: expectation {} vs {}",
                    formula.expectation, brute.expectation
                ));
            }
            if (formula.variance - brute.variance).abs() > 1e-8 {
                failures.push(format!(
                    "n = {n}, {lambdas:?}: variance {} vs {}",
                    formula.variance, brute.variance
                ));
            }
        }
    };
    for n in [4u32, 6] {
        // k = 1: every irrep
        for lam in enumerate_partitions(n) {
            check(n, std::slice::from_ref(&lam), &mut rng);
        }
        // k = 2: Plancherel-sampled pairs (seed-fixed)
        let plan = plancherel(n);
        for _ in 0..5 {
            let pair = [plan.sample(&mut rng), plan.sample(&mut rng)];
            check(n, &pair, &mut rng);
        }
    }
    report(
        4,
        "formula expectation/variance equal exhaustive moments, n in {4,6}, k in {1,2}",
        &failures,
    );
}

#[test]
fn criterion_05_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut run = |n: u32, k: usize| {
        let trivial = compare_with_analytic(n, k, None).unwrap();
        if trivial.max_abs_delta > 1e-9 {
            failures.push(format!(
                "n = {n}, k = {k}, trivial H: max delta {:.3e}",
                trivial.max_abs_delta
            ));
        }
        if n % 2 == 0 {
            for m in enumerate_matchings(n as usize).unwrap() {
                let cmp = compare_with_analytic(n, k, Some(&m)).unwrap();
                if cmp.max_abs_delta > 1e-9 {
                    failures.push(format!(
                        "n = {n}, k = {k}, m = {m:?}: max delta {:.3e}",
                        cmp.max_abs_delta
                    ));
                }
            }
        }
    };
    run(4, 1);
    run(4, 2);
    // n = 5 has no fixed-point-free involutions, so only the trivial
    // subgroup is in scope
    run(5, 1);
    report(
        5,
        "dense simulation equals weak sampling x observation within 1e-9",
        &failures,
    );
}

#[test]
fn criterion_06_average_multiplicity() {
    let mut failures = Vec::new();
    for n in 2..=5u32 {
        let parts = enumerate_partitions(n);
        let order = BigRational::from(BigInt::from(factorial(n)));
        let plancherel_weight = |lam: &Partition| {
            let d = BigInt::from(dimension(lam));
            BigRational::new(&d * &d, BigInt::one()) / order.clone()
        };
        for (k, l) in [(1u32, 0u32), (2, 0), (1, 1), (0, 1), (0, 2)] {
            for tau in &parts {
                let closed = average_multiplicity(tau, k, l).unwrap();
                // exhaustive Plancherel average; each conjugation factor
                // sigma (x) sigma* contributes sigma twice (S_n irreps are
                // self-dual)
                let mut total = BigRational::zero();
                let mut tuples: Vec<(Vec<Partition>, BigRational, BigRational)> =
                    vec![(Vec::new(), BigRational::one(), BigRational::one())];
                for _ in 0..k {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|(f, w, s)| {
                            parts.iter().map(move |rho| {
                                let mut f2 = f.clone();
                                f2.push(rho.clone());
                                let d = BigRational::from(BigInt::from(dimension(rho)));
                                (f2, w.clone() * plancherel_weight(rho), s.clone() * d)
                            })
                        })
                        .collect();
                }
                for _ in 0..l {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|(f, w, s)| {
                            parts.iter().map(move |sig| {
                                let mut f2 = f.clone();
                                f2.push(sig.clone());
                                f2.push(sig.clone());
                                let d = BigRational::from(BigInt::from(dimension(sig)));
                                (f2, w.clone() * plancherel_weight(sig), s.clone() * &d * &d)
                            })
                        })
                        .collect();
                }
                for (factors, weight, scale) in tuples {
                    let mult = BigRational::from(BigInt::from(
                        kronecker_multiplicity(tau, &factors).unwrap(),
                    ));
                    total += weight * mult / scale;
                }
                if closed != total {
                    failures.push(format!(
                        "n = {n}, tau = {tau}, (k,l) = ({k},{l}): {closed} vs {total}"
                    ));
                }
            }
        }
    }
    report(
        6,
        "closed-form average multiplicity equals exhaustive Plancherel average, n <= 5",
        &failures,
    );
}

#[test]
fn criterion_07_reciprocal_sum() {
    let mut failures = Vec::new();
    let expected4 = BigRational::new(BigInt::from(43), BigInt::from(24));
    if conjugacy_reciprocal_sum(4) != expected4 {
        failures.push("n = 4 is not 43/24".into());
    }
    let values: Vec<BigRational> = (1..=60).map(conjugacy_reciprocal_sum).collect();
    for n in 20..60usize {
        if values[n] >= values[n - 1] {
            failures.push(format!("not strictly decreasing at n = {}", n + 1));
        }
    }
    for (i, v) in values.iter().enumerate() {
        if *v < BigRational::one() {
            failures.push(format!("value at n = {} below 1", i + 1));
        }
    }
    report(
        7,
        "exact reciprocal sums for n <= 60, strictly decreasing on 20..60",
        &failures,
    );
}

#[test]
fn criterion_08_transverse_projection() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut instances = 0;
    let mut trial_seed = 0u64;
    while instances < 200 {
        let dim_u = rng.gen_range(1..=6usize);
        let dim_y = rng.gen_range(1..=6usize);
        let dim_w = rng.gen_range(1..=dim_u * dim_u);
        trial_seed += 1;
        let rep = transverse_projection_check(dim_u, dim_y, dim_w, 1, trial_seed).unwrap();
        if !rep.all_within_bound {
            failures.push(format!(
                "dims (U,Y,W) = ({dim_u},{dim_y},{dim_w}): sum {:.6} > bound {:.6}",
                rep.sums[0], rep.bound
            ));
        }
        instances += 1;
    }
    report(
        8,
        "transverse projection bound holds on 200 random instances",
        &failures,
    );
}

#[test]
fn criterion_09_two_register_trend() {
    let mut failures = Vec::new();
    let mut medians = Vec::new();
    for n in [4u32, 6, 8] {
        let config = TvExperimentConfig::new(n, 2, TupleSelection::PlancherelSample(20), 9);
        let table = tv_experiment(&config).unwrap();
        medians.push((n, table.overall_median_tv));
    }
    for w in medians.windows(2) {
        if w[1].1 >= w[0].1 {
            failures.push(format!(
                "median TV did not decrease: n = {} gives {:.6}, n = {} gives {:.6}",
                w[0].0, w[0].1, w[1].0, w[1].1
            ));
        }
    }
    println!(
        "  two-register medians: {}",
        medians
            .iter()
            .map(|(n, m)| format!("n={n}: {m:.6}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    report(
        9,
        "two-register median TV strictly decreases over n = 4 -> 6 -> 8",
        &failures,
    );
}

#[test]
fn criterion_10_determinism() {
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_hsp");
    let base = std::env::temp_dir().join(format!("hsp_acceptance_{}", std::process::id()));
    let mut bodies = Vec::new();
    for run in 0..2 {
        let out = base.join(format!("run{run}"));
        std::fs::create_dir_all(&out).unwrap();
        let status = std::process::Command::new(bin)
            .args(["--out"])
            .arg(&out)
            .args(["tv-scan", "6", "2", "--seed", "7"])
            .status()
            .unwrap();
        if !status.success() {
            failures.push(format!("run {run} exited with {status}"));
            continue;
        }
        bodies.push(std::fs::read(out.join("tv_scan_n6_k2_seed7.csv")).unwrap());
    }
    if bodies.len() == 2 && bodies[0] != bodies[1] {
        failures.push("reports differ between runs".into());
    }
    let _ = std::fs::remove_dir_all(&base);
    report(10, "two runs of tv-scan 6 2 --seed 7 are byte-identical", &failures);
}
