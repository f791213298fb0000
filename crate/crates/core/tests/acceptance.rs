//! End-to-end acceptance suite. Every criterion runs on its own thread and
//! reports one `criterion N: pass|fail` line on stdout.

use std::io::Write;
use std::time::{Duration, Instant};

use sigmaform::curvegen::{self, CurveParams};
use sigmaform::exactnum::Rational;
use sigmaform::formulas::{self, golden, Experimental, IdentityReport, N3Mode};
use sigmaform::gradedpoly::{QPoly, Symbol};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passes(r: Result<IdentityReport, formulas::FormulaError>, what: &str) -> Outcome {
    match r {
        Ok(r) if r.passed() => Ok(()),
        Ok(r) => Err(format!("{what}: residual {:?}", r.residual)),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn fails(r: Result<IdentityReport, formulas::FormulaError>, what: &str) -> Outcome {
    match r {
        Ok(r) if !r.passed() && r.residual.as_ref().is_some_and(|res| res.terms > 0) => Ok(()),
        Ok(_) => Err(format!("{what}: negative control passed")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn coeff_check(series: &curvegen::QLaurent, k: i64, want: &str, what: &str, errs: &mut Vec<String>) {
    let got = series.coeff(k);
    let want = golden::parse(want);
    if got != want {
        errs.push(format!("{what}: [{k}] is {got}, printed {want}"));
    }
}

/// Criteria whose printed targets are wrong, with the exact failure text
/// expected; see the decisions ledger.
const KNOWN_FAILURES: [(usize, &str); 1] = [(
    1,
    "x(t): [2] is 1/243*mu1^4 + 1/27*mu1^2*mu2 - 1/9*mu1*mu3 + 1/9*mu2^2 - 1/3*mu4, \
     printed 1/243*mu1^4 + 1/27*mu1^2*mu2 - 1/9*mu1*mu3 + 1/3*mu2^2 - mu4",
)];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = CurveParams::symbolic();
    let mut errs = Vec::new();
    let x = curvegen::x_from_u(&p, 4).map_err(|e| e.to_string())?;
    for k in -2..=2 {
        let want = golden::X_OF_U.iter().find(|(e, _)| *e == k).map_or("0", |(_, s)| s);
        coeff_check(&x, k, want, "x(u)", &mut errs);
    }
    let y = curvegen::y_from_u(&p, 2).map_err(|e| e.to_string())?;
    for k in -3..=0 {
        let want = golden::Y_OF_U.iter().find(|(e, _)| *e == k).map_or("0", |(_, s)| s);
        coeff_check(&y, k, want, "y(u)", &mut errs);
    }
    let sigma = curvegen::sigma_series(&p, 7).map_err(|e| e.to_string())?;
    let u7 = golden::parse(golden::SIGMA_U7).scale_rational(&Rational::factorial(7).recip().unwrap());
    for n in 0..=7u32 {
        let want = match n {
            1 | 3 | 5 => golden::parse(golden::SIGMA_LOW[(n / 2) as usize]),
            7 => u7.clone(),
            _ => QPoly::zero(),
        };
        if sigma.nth(n) != want {
            errs.push(format!("sigma: [u^{n}] is {}, printed {want}", sigma.nth(n)));
        }
    }
    let xt = curvegen::x_from_t(&p, 7);
    for (k, s) in golden::X_OF_T {
        coeff_check(&xt, k, s, "x(t)", &mut errs);
    }
    within(start, Duration::from_secs(1), "golden expansions")?;
    ensure(errs.is_empty(), errs.join("; "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    passes(formulas::verify_star_sum(&CurveParams::symbolic(), 12), "star sum, degree 12")?;
    within(start, Duration::from_secs(10), "star sum")
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let p = CurveParams::symbolic();
    passes(formulas::verify_n2(&p, 10), "two-point, degree 10")?;
    within(start, Duration::from_secs(120), "two-point")?;
    let perturbed = golden::parse(golden::N2_WP_FORM).add(&golden::parse("mu1*mu2"));
    fails(formulas::verify_n2_with(&p, 10, &perturbed), "two-point perturbed")
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let p = CurveParams::symbolic();
    // degree 15 reaches the coordinate-free stratum r8 at (5, 5, 5)
    passes(formulas::verify_n3(&p, 15), "three-point symbolic, degree 15")?;
    within(start, Duration::from_secs(15 * 60), "three-point symbolic")?;
    let perturbed = golden::r_sum().add(&golden::parse("mu1*mu3*mu4"));
    fails(formulas::verify_n3_with(&p, 15, N3Mode::Star, &perturbed), "three-point perturbed")?;
    for seed in 0..10 {
        let start = Instant::now();
        passes(formulas::verify_n3(&formulas::random_params(seed), 10), &format!("three-point seed {seed}"))?;
        within(start, Duration::from_secs(120), &format!("three-point seed {seed}"))?;
    }
    Ok(())
}

fn mu_stratum(p: &QPoly, w: i32) -> QPoly {
    QPoly::from_terms(
        p.terms().iter().filter(|(m, _)| m.restrict(|s| Symbol::MU.contains(&s)).weight() == -w).cloned(),
    )
}

fn criterion_5() -> Outcome {
    let p = CurveParams::symbolic();
    let d2 = formulas::derive_rhs(2, 6, &p).map_err(|e| e.to_string())?;
    // exactly 1/2*(dP_u + dP_v) + mu1/2*(P_u - P_v)
    ensure(d2.poly == golden::parse(golden::N2_WP_FORM), format!("derived n=2: {}", d2.text))?;
    let d3 = formulas::derive_rhs(3, 15, &p).map_err(|e| e.to_string())?;
    for i in 0..9 {
        let got = mu_stratum(&d3.poly, i as i32);
        ensure(got == golden::r(i), format!("derived r{i} = {got}, expected {}", golden::r(i)))?;
    }
    ensure(mu_stratum(&d3.poly, 7).is_zero(), "r7 must vanish")?;
    ensure(d3.poly == golden::r_sum(), "derived n=3 has terms outside r0..r8")
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let r = formulas::verify_ideal_decomposition();
    ensure(r.passed(), format!("ideal: {:?}", r.residual))?;
    within(start, Duration::from_secs(1), "ideal decomposition")?;
    passes(formulas::verify_star_substitution(&CurveParams::symbolic(), 8), "substitution, degree 8")
}

fn criterion_7() -> Outcome {
    passes(formulas::verify_two_term(&CurveParams::symbolic(), 10), "two-term, degree 10")?;
    let classical = CurveParams::classical();
    for n in [2, 3] {
        passes(formulas::verify_det_formula(&classical, n, 9), &format!("det n={n}, degree 9"))?;
    }
    let (random, _) = formulas::randomize(&classical, 17);
    passes(formulas::verify_det_formula(&random, 4, 10), "det n=4, degree 10")?;
    let eq = golden::parse(golden::N2_EQUIANHARMONIC);
    passes(formulas::verify_n2_with(&CurveParams::equianharmonic(), 10, &eq), "equianharmonic two-point")
}

fn criterion_8() -> Outcome {
    for case in 1..=3 {
        passes(formulas::verify_n3_specializations(case, 12), &format!("specialization {case}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    passes(formulas::check_hurwitz(&CurveParams::symbolic(), 20), "Hurwitz through u^20")?;
    passes(formulas::rhs_integrality(6), "integral right-hand sides")
}

fn criterion_10() -> Outcome {
    passes(formulas::verify_battery(&CurveParams::symbolic(), 14), "battery symbolic, degree 14")?;
    passes(formulas::verify_battery(&CurveParams::classical(), 14), "battery classical, degree 14")
}

fn criterion_11() -> Outcome {
    let p = CurveParams::symbolic();
    ensure(formulas::derive_rhs_experimental(4, 20, &p, false, u64::MAX).is_err(), "n=4 ran without opt-in")?;
    match formulas::derive_rhs_experimental(4, 20, &p, true, 20_000).map_err(|e| e.to_string())? {
        Experimental::Resources(r) => ensure(r.unknowns > 0 && r.equations_estimate > 0, "empty resource report")?,
        Experimental::Derived(_) => return Err("symbolic n=4 unexpectedly derived under budget".into()),
    }
    match formulas::derive_rhs_experimental(4, 13, &CurveParams::zero(), true, 1_000_000) {
        Ok(Experimental::Derived(d)) => ensure(d.weight == Some(-15), "n=4 weight"),
        other => Err(format!("n=4 on y^2 = x^3: {other:?}")),
    }
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|c| s.spawn(c)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    // written to the process stdout directly so the lines survive output capture
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    let mut unexpected = Vec::new();
    for (i, r) in results.iter().enumerate() {
        let n = i + 1;
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n).map(|(_, why)| *why);
        match r {
            Ok(()) => writeln!(out, "criterion {n}: pass").unwrap(),
            Err(e) => {
                let tag = if known == Some(e.as_str()) { "documented" } else { "unexpected" };
                writeln!(out, "criterion {n}: fail [{tag}] ({e})").unwrap();
                if known != Some(e.as_str()) {
                    unexpected.push(n);
                }
            }
        }
        if known.is_some() && r.is_ok() {
            writeln!(out, "  note: criterion {n} was expected to fail; update KNOWN_FAILURES").unwrap();
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcomes: {unexpected:?}");
}
