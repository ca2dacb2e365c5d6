//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p dtm-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dtm_core::bratu::{
    analytic_theta_roots, bratu_coeffs, bratu_coeffs_exp, compare, shoot, AnalyticBratu, Branch,
};
use dtm_core::lang::{parse, solve};
use dtm_core::{exp_naive, exp_series, pow_int, pow_naive, Series};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: String) -> Outcome {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("runtime {elapsed:?} exceeds {limit:?}"))
    }
}

/// Largest `|got - want| / max(|want|, 1)` over all coefficients.
fn max_rel_diff(got: &Series, want: &Series) -> f64 {
    got.coeffs()
        .iter()
        .zip(want.coeffs())
        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
        .fold(0.0, f64::max)
}

fn random_series(rng: &mut StdRng, order: usize, zero_prefix: usize) -> Series {
    let mut c: Vec<f64> = (0..=order).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    c[0] = rng.gen_range(0.5..=2.0);
    for v in c.iter_mut().take(zero_prefix) {
        *v = 0.0;
    }
    Series::new(c).unwrap()
}

fn leading_coefficients() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for lambda in [0.5, 1.0, 2.0] {
        for gamma in [0.1, 1.0, 3.0] {
            let u = bratu_coeffs(lambda, gamma, 3).map_err(|e| e.to_string())?;
            if u[0] != 0.0 || u[1] != gamma {
                return Err(format!(
                    "U(0)={} U(1)={} for lambda={lambda} gamma={gamma}",
                    u[0], u[1]
                ));
            }
            worst = worst.max(((u[2] + lambda / 2.0) / (lambda / 2.0)).abs());
            worst = worst.max(((u[3] + gamma * lambda / 6.0) / (gamma * lambda / 6.0)).abs());
        }
    }
    within(Duration::from_millis(1), start.elapsed())?;
    check(
        worst <= 1e-15,
        format!("max relative error {worst:.2e} (tol 1e-15)"),
    )
}

fn miller_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst = [0.0f64; 2];
    let mut over = [0usize; 2];
    for (slot, zero_prefix) in [(0, 0), (1, 2)] {
        for _ in 0..100 {
            let a = random_series(&mut rng, 32, zero_prefix);
            for m in 2..=8 {
                let (fast, _) = pow_int(&a, m).map_err(|e| e.to_string())?;
                let (slow, _) = pow_naive(&a, m).map_err(|e| e.to_string())?;
                let d = max_rel_diff(&fast, &slow);
                worst[slot] = worst[slot].max(d);
                over[slot] += usize::from(d > 1e-10);
            }
        }
    }
    within(Duration::from_secs(1), start.elapsed())?;
    check(
        worst[0] <= 1e-10 && worst[1] <= 1e-10,
        format!(
            "max relative diff {:.2e} (a0 != 0, {}/700 over), {:.2e} (a0 = a1 = 0, {}/700 over), tol 1e-10",
            worst[0], over[0], worst[1], over[1]
        ),
    )
}

fn exp_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = random_series(&mut rng, 32, 0);
        let (fast, _) = exp_series(&a).map_err(|e| e.to_string())?;
        let slow = exp_naive(&a).map_err(|e| e.to_string())?;
        worst = worst.max(max_rel_diff(&fast, &slow));
    }
    within(Duration::from_secs(1), start.elapsed())?;
    check(
        worst <= 1e-10,
        format!("max relative diff {worst:.2e} (tol 1e-10)"),
    )
}

fn bratu_two_paths() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (lambda, gamma) in [(1.0, 0.5), (2.0, 3.0)] {
        let closed = bratu_coeffs(lambda, gamma, 30).map_err(|e| e.to_string())?;
        let via_exp = bratu_coeffs_exp(lambda, gamma, 30).map_err(|e| e.to_string())?;
        for (a, b) in closed.coeffs().iter().zip(via_exp.coeffs()) {
            if *b != 0.0 {
                worst = worst.max(((a - b) / b).abs());
            } else if *a != 0.0 {
                return Err(format!("exp path gives 0 where closed form gives {a}"));
            }
        }
    }
    within(Duration::from_millis(10), start.elapsed())?;
    check(
        worst <= 1e-12,
        format!("max relative diff {worst:.2e} (tol 1e-12)"),
    )
}

fn boundary_value_solve() -> Outcome {
    let start = Instant::now();
    let cmp = compare(1.0, 30, 101, Branch::Lower).map_err(|e| e.to_string())?;
    let e10 = compare(1.0, 10, 101, Branch::Lower)
        .map_err(|e| e.to_string())?
        .max_abs_err;
    let e20 = compare(1.0, 20, 101, Branch::Lower)
        .map_err(|e| e.to_string())?
        .max_abs_err;
    within(Duration::from_secs(1), start.elapsed())?;
    let residual = cmp.solution.residual;
    check(
        residual.abs() <= 1e-12 && cmp.max_abs_err <= 1e-6 && e20 < e10,
        format!(
            "|sum U| = {:.2e} (tol 1e-12), max grid error {:.2e} (tol 1e-6), error N=20 {e20:.2e} < N=10 {e10:.2e}",
            residual.abs(),
            cmp.max_abs_err
        ),
    )
}

fn gamma_theta_duality() -> Outcome {
    let sol = shoot(1.0, 30, Branch::Lower).map_err(|e| e.to_string())?;
    let theta = *analytic_theta_roots(1.0)
        .first()
        .ok_or("no theta root at lambda = 1")?;
    let reference = AnalyticBratu { lambda: 1.0, theta }.gamma();
    let diff = (sol.gamma - reference).abs();
    check(
        diff <= 1e-6,
        format!(
            "gamma {:.15} vs theta*tanh(theta/4) {reference:.15}, diff {diff:.2e} (tol 1e-6)",
            sol.gamma
        ),
    )
}

fn theta_multiplicity() -> Outcome {
    let lambdas = [0.5, 1.0, 2.0, 3.0, 3.5, 4.0, 5.0];
    let counts: Vec<usize> = lambdas
        .iter()
        .map(|&l| analytic_theta_roots(l).len())
        .collect();
    let monotone = counts.windows(2).all(|w| w[1] <= w[0]);
    let at1 = analytic_theta_roots(1.0).len();
    let at5 = analytic_theta_roots(5.0).len();
    check(
        at1 == 2 && at5 == 0 && monotone,
        format!("roots at lambda=1: {at1}, lambda=5: {at5}, counts over {lambdas:?}: {counts:?}"),
    )
}

fn complexity_claim() -> Outcome {
    let mut c = vec![0.25; 65];
    c[0] = 1.5;
    let a = Series::new(c).unwrap();
    let (_, fast) = pow_int(&a, 8).map_err(|e| e.to_string())?;
    let (_, slow) = pow_naive(&a, 8).map_err(|e| e.to_string())?;
    let ratio = slow.multiplies as f64 / fast.multiplies as f64;
    check(
        slow.multiplies == 15015 && ratio >= 3.0,
        format!(
            "naive {} multiplies, Miller {}, ratio {ratio:.3} (need 15015 and >= 3)",
            slow.multiplies, fast.multiplies
        ),
    )
}

fn dsl_equivalence() -> Outcome {
    let exp_growth = solve(&parse("D(u,1) = u").unwrap(), &[1.0], 20).map_err(|e| e.to_string())?;
    let mut fact = 1.0;
    let mut e1 = 0.0f64;
    for k in 0..=20 {
        if k > 0 {
            fact *= k as f64;
        }
        e1 = e1.max((exp_growth[k] * fact - 1.0).abs());
    }
    let riccati =
        solve(&parse("D(u,1) = pow(u,2)").unwrap(), &[1.0], 15).map_err(|e| e.to_string())?;
    let e2 = riccati
        .coeffs()
        .iter()
        .map(|c| (c - 1.0).abs())
        .fold(0.0, f64::max);
    let dsl = solve(&parse("D(u,2) = -1 * exp(u)").unwrap(), &[0.0, 0.5], 20)
        .map_err(|e| e.to_string())?;
    let module = bratu_coeffs_exp(1.0, 0.5, 20).map_err(|e| e.to_string())?;
    let bitwise = dsl
        .coeffs()
        .iter()
        .zip(module.coeffs())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    check(
        e1 <= 1e-12 && e2 <= 1e-12 && bitwise,
        format!(
            "u'=u: {e1:.2e}, u'=u^2: {e2:.2e} (tol 1e-12), Bratu DSL vs module bitwise: {bitwise}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 leading Bratu coefficients U(0..3)", leading_coefficients),
        ("AC2 Miller recurrence vs naive powers", miller_oracle),
        ("AC3 exp recurrence vs constant-split naive exp", exp_oracle),
        ("AC4 Bratu closed recurrence vs exp path", bratu_two_paths),
        (
            "AC5 Bratu boundary-value solve, lambda=1",
            boundary_value_solve,
        ),
        ("AC6 gamma-theta duality", gamma_theta_duality),
        ("AC7 theta root multiplicity", theta_multiplicity),
        ("AC8 multiply-count ratio at N=64, m=8", complexity_claim),
        ("AC9 equation language equivalence", dsl_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
