//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use barnes_core::asym::{bernoulli_bounds_check, bn_full_asym, bn_tail_approx, leading_predictor, relative_error};
use barnes_core::barnes::{functional_equation_residual, log_barnes_g, log_g_weierstrass};
use barnes_core::bigmath::{factorial, stirling1_signed, stirling2};
use barnes_core::coeffs::{bn_exact, bn_partition, c_coeff, gamma_stirling, gamma_stirling_nemes};
use barnes_core::decimal::{agreeing_digits, float_to_scientific, to_scientific};
use barnes_core::series::RationalSeries;
use barnes_core::{Float, Integer, Rational};

const P: u32 = 384;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one() -> Rational {
    Rational::from(1)
}

fn rel_err(n: u32, approx: &Float) -> f64 {
    let exact = Float::with_val(approx.prec(), &bn_exact(n, &one()).unwrap());
    relative_error(&exact, approx).unwrap().to_f64()
}

fn within_factor(got: f64, printed: f64, factor: f64) -> bool {
    got <= printed * factor && got >= printed / factor
}

fn pow2(bits: i32) -> Float {
    Float::with_val(64, Float::i_exp(1, bits))
}

fn exact_coefficient() -> Outcome {
    let s = to_scientific(&bn_exact(25, &one()).unwrap(), 30);
    ensure(s == "-3.80007230719156835910256254456e21", || format!("got {s}"))?;
    Ok(s)
}

fn table_one_n25() -> Outcome {
    let rows = [
        (5, "-3.80007230718902365313203214270e21", 6.696_467_237_517_012e-13),
        (10, "-3.80007230719156771563759457627e21", 1.6932966426732e-16),
        (15, "-3.80007230719156866209504749935e21", 7.973334727905e-17),
    ];
    let mut errs = Vec::new();
    for (m, printed, printed_err) in rows {
        let v = bn_tail_approx(25, &one(), m, P).map_err(|e| e.to_string())?;
        let s = float_to_scientific(&v, 30);
        ensure(s == printed, || format!("m={m}: {s} != {printed}"))?;
        let e = rel_err(25, &v);
        ensure(within_factor(e, printed_err, 2.0), || format!("m={m}: error {e:e} vs {printed_err:e}"))?;
        errs.push(format!("{e:.3e}"));
    }
    Ok(format!("errors {}", errs.join(", ")))
}

fn table_one_n100() -> Outcome {
    let v10 = bn_tail_approx(100, &one(), 10, P).map_err(|e| e.to_string())?;
    let v15 = bn_tail_approx(100, &one(), 15, P).map_err(|e| e.to_string())?;
    let (s10, s15) = (float_to_scientific(&v10, 30), float_to_scientific(&v15, 30));
    let exact = to_scientific(&bn_exact(100, &one()).unwrap(), 30);
    ensure(s10 == "4.61908374472303072283311502200e211", || format!("m=10: {s10}"))?;
    ensure(s15 == "4.61908374472303072283311502201e211", || format!("m=15: {s15}"))?;
    let mutual = agreeing_digits(&s10, &s15);
    let vs_exact = agreeing_digits(&s10, &exact).min(agreeing_digits(&s15, &exact));
    ensure(mutual >= 28, || format!("m=10/15 agree to {mutual} digits"))?;
    ensure(vs_exact >= 28, || format!("agree with exact to {vs_exact} digits"))?;
    Ok(format!("{mutual} digits mutual, {vs_exact} vs exact"))
}

fn table_two_errors() -> Outcome {
    let rows = [(0, 1.76e-3), (5, 1.42e-10), (10, 2.32e-13), (15, 4.29e-15)];
    let mut errs = Vec::new();
    for (k, printed) in rows {
        let v = bn_full_asym(25, &one(), k, P).map_err(|e| e.to_string())?;
        let e = rel_err(25, &v);
        ensure(within_factor(e, printed, 10.0), || format!("k_max={k}: {e:e} vs {printed:e}"))?;
        errs.push(format!("{e:.3e}"));
    }
    Ok(format!("errors {}", errs.join(", ")))
}

fn oracle_equivalence() -> Outcome {
    let rs = [Rational::from(1), Rational::from(-1), Rational::from(2), Rational::from((1, 2))];
    let order = 30;
    for r in &rs {
        let log_series = RationalSeries::from_fn(order, |k| {
            if k == 0 {
                Rational::new()
            } else {
                r * c_coeff(k as u32)
            }
        });
        let via_exp = log_series.exp().map_err(|e| e.to_string())?;
        for n in 0..=order as u32 {
            let exact = bn_exact(n, r).map_err(|e| e.to_string())?;
            ensure(exact == *via_exp.coeff(n as usize), || format!("exp oracle differs at n={n}, r={r}"))?;
            if n >= 1 {
                let part = bn_partition(2 * n, 0, r).map_err(|e| e.to_string())?;
                ensure(exact == part, || format!("partition oracle differs at n={n}, r={r}"))?;
            }
        }
    }
    Ok("n <= 30, r in {1, -1, 2, 1/2}".into())
}

fn leading_order() -> Outcome {
    let dev = |n: u32| {
        let exact = Float::with_val(P, &bn_exact(n, &one()).unwrap());
        let ratio = exact / leading_predictor(n, &one(), P);
        (ratio - 1u32).abs()
    };
    let d40 = dev(40);
    let d100 = dev(100);
    ensure(d40 <= 1e-3, || format!("n=40 deviation {}", d40.to_f64()))?;
    ensure(d100 <= 1e-4, || format!("n=100 deviation {}", d100.to_f64()))?;
    let devs: Vec<Float> = (10..=100).map(dev).collect();
    for (i, w) in devs.windows(2).enumerate() {
        ensure(w[1] < w[0], || format!("not decreasing at n={}", 11 + i))?;
    }
    Ok(format!("n=40 {:.3e}, n=100 {:.3e}", d40.to_f64(), d100.to_f64()))
}

fn stirling_coefficients() -> Outcome {
    let expected = [(1, 1), (1, 12), (1, 288), (-139, 51840), (-571, 2488320)];
    let mut worst = Float::with_val(256, 0);
    for (n, &(p, q)) in expected.iter().enumerate() {
        let g = gamma_stirling(n as u32);
        ensure(g == (p, q), || format!("gamma_{n} = {g}"))?;
        let nemes = gamma_stirling_nemes(n as u32, 256);
        let diff = Float::with_val(256, nemes - &g).abs();
        ensure(diff <= pow2(-128), || format!("Nemes differs at n={n} by {}", diff.to_f64()))?;
        if diff > worst {
            worst = diff;
        }
    }
    Ok(format!("max Nemes deviation {:.2e}", worst.to_f64()))
}

fn bernoulli_bounds() -> Outcome {
    for n in 0..=100 {
        ensure(bernoulli_bounds_check(n).holds, || format!("fails at n={n}"))?;
    }
    Ok("0 <= n <= 100".into())
}

fn barnes_self_consistency() -> Outcome {
    let p = 256;
    let tol = pow2(-200);
    let mut worst = Float::with_val(p, 0);
    for z in [5.0, 10.5, 20.5] {
        let r = functional_equation_residual(&Float::with_val(p, z), p).map_err(|e| e.to_string())?;
        ensure(r <= tol, || format!("residual {} at z={z}", r.to_f64()))?;
        if r > worst {
            worst = r;
        }
    }
    for z in [1, 2] {
        let v = log_barnes_g(&Float::with_val(p, z), p).map_err(|e| e.to_string())?.value;
        ensure(v.clone().abs() <= tol, || format!("log G({}) = {}", z + 1, v.to_f64()))?;
    }
    let z = Float::with_val(p, 8);
    let exact = log_barnes_g(&z, p).map_err(|e| e.to_string())?.value;
    let gaps: Vec<Float> = (12..=17)
        .map(|e| Float::with_val(p, log_g_weierstrass(&z, 1 << e, p).unwrap() - &exact).abs())
        .collect();
    let mut ratios = Vec::new();
    for w in gaps.windows(2) {
        let ratio = Float::with_val(p, &w[0] / &w[1]).to_f64();
        ensure((1.6..=2.4).contains(&ratio), || format!("gap ratio {ratio}"))?;
        ratios.push(format!("{ratio:.3}"));
    }
    Ok(format!("max residual {:.2e}, gap ratios {}", worst.to_f64(), ratios.join(" ")))
}

fn stirling_identities() -> Outcome {
    for n in 0..=20u32 {
        for k in 0..=20u32 {
            let sum: Integer = (0..=20u32).map(|nu| stirling2(n, nu) * stirling1_signed(nu, k)).sum();
            let delta = Integer::from((n == k) as u32);
            ensure(sum == delta, || format!("orthogonality fails at ({n}, {k})"))?;
        }
    }
    let order = 12;
    let e_minus_one = RationalSeries::from_fn(order, |i| {
        if i == 0 {
            Rational::new()
        } else {
            Rational::from((1, factorial(i as u32)))
        }
    });
    let mut power = RationalSeries::one(order);
    for k in 0..=4u32 {
        if k > 0 {
            power = power.mul(&e_minus_one).map_err(|e| e.to_string())?;
        }
        for nu in 0..=order as u32 {
            let coeff = Rational::from(power.coeff(nu as usize) * factorial(nu)) / factorial(k);
            ensure(coeff == stirling2(nu, k), || format!("generating function fails at S({nu}, {k})"))?;
        }
    }
    Ok("orthogonality n <= 20, generating function k <= 4, nu <= 12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact b_25(1) to 30 digits", exact_coefficient),
        ("tail approximation at n = 25", table_one_n25),
        ("tail approximation at n = 100", table_one_n100),
        ("full asymptotic error magnitudes", table_two_errors),
        ("exact oracle equivalence", oracle_equivalence),
        ("leading-order convergence", leading_order),
        ("Stirling coefficients and closed form", stirling_coefficients),
        ("Bernoulli two-sided bounds", bernoulli_bounds),
        ("Barnes G self-consistency", barnes_self_consistency),
        ("Stirling number identities", stirling_identities),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
