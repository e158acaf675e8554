//! Acceptance gate: each criterion runs once, is timed against its budget
//! and reports a single PASS/FAIL line.

use std::time::{Duration, Instant};

use mascheroni::bounds::{catalog, lookup, sweep, Holds, Selection, Side};
use mascheroni::convergence::{empirical_rate, geometric_grid, optimize_parameters};
use mascheroni::poly::{
    derivative_denominator, derivative_of_f, polynomial_p, polynomial_q, positivity_certificate,
    Variant,
};
use mascheroni::rational::{int, rat};
use mascheroni::real::Dyadic;
use mascheroni::sequences::{eval, split_eval, verify_error_identity, SequenceKind};
use mascheroni::series::{difference_expansion_v, ParamPoly};
use mascheroni::{gamma_reference, BigReal, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn symbolic_expansion() -> Outcome {
    let s = difference_expansion_v(5).map_err(|e| e.to_string())?;
    let expected = [
        (2, ParamPoly::linear(int(1), int(0), rat(-3, 2))),
        (3, ParamPoly::linear(int(1), int(2), rat(-2, 3))),
        (4, ParamPoly::linear(int(1), int(0), rat(-5, 4))),
        (5, ParamPoly::linear(int(1), int(2), rat(-4, 5))),
    ];
    ensure(
        s.coeff(0).as_constant() == Some(int(0)) && s.coeff(1).as_constant() == Some(int(0)),
        "nonzero n^0 or n^-1 term",
    )?;
    for (k, c) in expected {
        ensure(
            s.coeff(k) == c,
            format!("n^-{k}: got {}, want {c}", s.coeff(k)),
        )?;
    }
    Ok(s.to_string())
}

fn optimizer() -> Outcome {
    let opt = optimize_parameters(5).map_err(|e| e.to_string())?;
    ensure(
        opt.a == rat(3, 2) && opt.b == rat(-5, 12),
        format!("(a, b) = ({}, {})", opt.a, opt.b),
    )?;
    ensure(
        opt.next_index == 4 && opt.next_coeff == rat(1, 4),
        format!("next term {}/n^{}", opt.next_coeff, opt.next_index),
    )?;
    ensure(
        opt.rate.sequence_limit == rat(1, 12),
        format!("limit {}", opt.rate.sequence_limit),
    )?;
    Ok("a = 3/2, b = -5/12, next 1/(4n^4), limit 1/12".into())
}

fn numeric_limit() -> Outcome {
    let p = 192;
    let gamma = gamma_reference(p).value().clone();
    for n in [100u64, 1000] {
        let dev = &eval(&SequenceKind::SOptimal, n, p).map_err(|e| e.to_string())? - &gamma;
        let scaled = dev
            .mul_rational(&Rational::from_integer((n * n * n).into()))
            .add_rational(&rat(-1, 12));
        let lo = BigReal::from_rational(&rat(11, 120 * n as i64), p);
        let hi = BigReal::from_rational(&rat(13, 120 * n as i64), p);
        ensure(
            scaled.certainly_gt(&lo) && scaled.certainly_lt(&hi),
            format!("n = {n}: {}", scaled.to_interval_string(20)),
        )?;
    }
    Ok("n = 100, 1000 inside (11/(120n), 13/(120n))".into())
}

fn theorem_sweep() -> Outcome {
    let both = lookup("theorem22").map_err(|e| e.to_string())?;
    let main = sweep(&both, 9, 10_000, 192).map_err(|e| e.to_string())?;
    let lower = lookup("theorem22-lower").map_err(|e| e.to_string())?;
    let early = sweep(&lower, 3, 8, 192).map_err(|e| e.to_string())?;
    for report in [&main, &early] {
        ensure(
            report.count(Holds::CertifiedFalse) == 0 && report.count(Holds::Undecided) == 0,
            format!(
                "{}: {} false, {} undecided",
                report.label,
                report.count(Holds::CertifiedFalse),
                report.count(Holds::Undecided)
            ),
        )?;
    }
    Ok(format!(
        "{} + {} rows certified",
        main.rows.len(),
        early.rows.len()
    ))
}

fn proof_artifacts() -> Outcome {
    let den = derivative_denominator();
    ensure(
        derivative_of_f(Variant::F).equals_quotient(&polynomial_p(), &den),
        "f' identity",
    )?;
    ensure(
        derivative_of_f(Variant::G).equals_quotient(&-&polynomial_q(), &den),
        "g' identity",
    )?;
    let p_cert = positivity_certificate(&polynomial_p(), &int(1));
    let q_cert = positivity_certificate(&polynomial_q(), &int(9));
    let want_p: Vec<Rational> = [160, 1200, 2348, 2055, 875, 150].map(int).to_vec();
    let want_q: Vec<Rational> = [772_064, 1_725_456, 802_376, 164_805, 17_405, 930, 20]
        .map(int)
        .to_vec();
    ensure(
        p_cert.certificate().map(|c| &c.shifted) == Some(&want_p),
        format!("P certificate {p_cert:?}"),
    )?;
    ensure(
        q_cert.certificate().map(|c| &c.shifted) == Some(&want_q),
        format!("Q certificate {q_cert:?}"),
    )?;
    Ok("identities exact, certificates match".into())
}

fn historical_bounds() -> Outcome {
    let mut rows = 0;
    for entry in catalog() {
        let sel = Selection {
            side: Side::Both,
            entry,
        };
        let report = sweep(&sel, sel.n_min(), 2000, 128).map_err(|e| e.to_string())?;
        ensure(
            report.all_true(),
            format!("{}: outcome {}", sel.label(), report.outcome()),
        )?;
        rows += report.rows.len();
    }
    Ok(format!("14 entries, {rows} rows certified"))
}

fn rate_estimates() -> Outcome {
    let grid = geometric_grid(1 << 4, 1 << 10, 2).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (kind, want) in [
        (SequenceKind::GammaN, 2.0),
        (SequenceKind::DeTempleR, 3.0),
        (SequenceKind::SOptimal, 4.0),
    ] {
        let fit = empirical_rate(&kind, &grid, 256).map_err(|e| e.to_string())?;
        ensure(
            (fit.order - want).abs() <= 0.05,
            format!("{kind}: {:.4} vs {want}", fit.order),
        )?;
        parts.push(format!("{kind} {:.4}", fit.order));
    }
    Ok(parts.join(", "))
}

fn enclosure() -> Outcome {
    let e = gamma_reference(64);
    ensure(
        e.certifies_digits("0.57721566490153286")
            .map_err(|e| e.to_string())?,
        "digits not certified",
    )?;
    ensure(
        e.width() <= Dyadic::new(1.into(), -62),
        format!("width {}", e.width().to_f64()),
    )?;
    Ok(format!("width {:.3e}", e.width().to_f64()))
}

fn identity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let a = rat(rng.gen_range(-1000..=1000), rng.gen_range(1..=1000));
        let b = rat(rng.gen_range(-1000..=1000), rng.gen_range(1..=1000));
        for n in 2..=100 {
            ensure(
                verify_error_identity(&a, &b, n).map_err(|e| e.to_string())?,
                format!("({a}, {b}) at n = {n}"),
            )?;
        }
    }
    let v = SequenceKind::VFamily {
        a: rat(3, 2),
        b: rat(-5, 12),
    };
    for n in 3..=2000 {
        let (s, w) = (
            split_eval(&SequenceKind::SOptimal, n, 64).map_err(|e| e.to_string())?,
            split_eval(&v, n, 64).map_err(|e| e.to_string())?,
        );
        ensure(s == w, format!("split mismatch at n = {n}"))?;
    }
    Ok("100 parameter pairs x 99 indices; 1998 exact splits".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (
            "1 symbolic difference expansion",
            Duration::from_secs(1),
            symbolic_expansion,
        ),
        ("2 parameter optimizer", Duration::from_secs(1), optimizer),
        (
            "3 third-order limit at n = 100, 1000",
            Duration::from_secs(10),
            numeric_limit,
        ),
        (
            "4 two-sided s_n bound sweep",
            Duration::from_secs(120),
            theorem_sweep,
        ),
        (
            "5 polynomial identities and certificates",
            Duration::from_secs(1),
            proof_artifacts,
        ),
        (
            "6 historical bounds catalog",
            Duration::from_secs(300),
            historical_bounds,
        ),
        (
            "7 empirical difference orders",
            Duration::from_secs(30),
            rate_estimates,
        ),
        (
            "8 gamma enclosure at 64 bits",
            Duration::from_secs(5),
            enclosure,
        ),
        (
            "9 exact identity suite",
            Duration::from_secs(10),
            identity_suite,
        ),
    ];
    let mut failed = Vec::new();
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        println!(
            "[{}] {name} ({:.2}s / {}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
