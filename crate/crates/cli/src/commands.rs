use std::process::ExitCode;

use mascheroni::bounds::{lookup, sweep, Holds};
use mascheroni::convergence::{empirical_rate, geometric_grid, optimize_parameters};
use mascheroni::poly::{
    derivative_denominator, polynomial_p, polynomial_q, positivity_certificate, tail_sign_verdict,
    CertificateOutcome, Polynomial, Variant,
};
use mascheroni::rational::{int, parse_rational, to_fraction_string};
use mascheroni::sequences::{split_eval, Scalar, SequenceKind, SequenceWalker};
use mascheroni::series::{difference_expansion_v, family_deviation_expansion, ParamPoly};
use mascheroni::{gamma_bootstrap, gamma_reference, EnclosureMethod, Error, Result, Round};
use serde_json::{json, Value};

use crate::envelope::{real_value, row, sci, OutputEnvelope};
use crate::{Command, SeqArgs};

const EXIT_FALSE: u8 = 1;
const EXIT_UNDECIDED: u8 = 3;

pub fn error_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_)
        | Error::Parse(_)
        | Error::UnknownEntry(_)
        | Error::UnsupportedOrder { .. }
        | Error::DegreeOverflow(_) => 2,
        _ => 4,
    }
}

pub fn run(command: Command) -> Result<ExitCode> {
    let (envelope, format, code) = match command {
        Command::Eval {
            seq,
            n,
            from,
            to,
            precision,
            format,
        } => {
            let (from, to) = match (n, from, to) {
                (Some(n), _, _) => (n, n),
                (None, Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::Domain(
                        "eval needs --n or both --from and --to".into(),
                    ))
                }
            };
            (eval(&seq, from, to, precision)?, format, 0)
        }
        Command::Expand {
            a,
            b,
            order,
            deviation,
            format,
        } => (expand(a, b, order, deviation)?, format, 0),
        Command::Optimize { order, format } => (optimize(order)?, format, 0),
        Command::Rate {
            seq,
            grid_start,
            grid_stop,
            grid_factor,
            precision,
            format,
        } => (
            rate(&seq, grid_start, grid_stop, grid_factor, precision)?,
            format,
            0,
        ),
        Command::SweepBounds {
            entry,
            from,
            to,
            precision,
            format,
        } => {
            let (env, code) = sweep_bounds(&entry, from, to, precision)?;
            (env, format, code)
        }
        Command::Certify { target, format } => {
            let (env, code) = certify(&target)?;
            (env, format, code)
        }
        Command::Enclose {
            precision,
            n,
            format,
        } => (enclose(precision, n)?, format, 0),
    };
    envelope
        .emit(format)
        .map_err(|e| Error::Domain(format!("cannot write output: {e}")))?;
    Ok(ExitCode::from(code))
}

fn kind_of(seq: &SeqArgs) -> Result<SequenceKind> {
    SequenceKind::from_id(&seq.seq, seq.a.as_deref(), seq.b.as_deref())
}

fn seq_params(env: &mut OutputEnvelope, kind: &SequenceKind) {
    env.param("seq", kind.id());
    if let SequenceKind::MuFamily { a, b } | SequenceKind::VFamily { a, b } = kind {
        env.param("a", to_fraction_string(a))
            .param("b", to_fraction_string(b));
    }
}

fn scalar(s: &Scalar, p: u32) -> String {
    match s {
        Scalar::Exact(q) => to_fraction_string(q),
        Scalar::Approx(x) => real_value(x, p),
    }
}

fn eval(seq: &SeqArgs, from: u64, to: u64, p: u32) -> Result<OutputEnvelope> {
    let kind = kind_of(seq)?;
    if to < from {
        return Err(Error::Domain(format!("empty range [{from}, {to}]")));
    }
    let mut env = OutputEnvelope::new(
        "eval",
        vec![
            "n",
            "value",
            "value_lo",
            "value_hi",
            "rational_part",
            "log_argument",
        ],
    );
    seq_params(&mut env, &kind);
    env.param("from", from)
        .param("to", to)
        .param("precision", p);
    env.precision(p);
    let mut walker = SequenceWalker::new(kind.clone(), p, to);
    let mut widest = None;
    for n in from..=to {
        let x = walker.value_at(n)?.round_to(p);
        let split = split_eval(&kind, n, p)?;
        let w = x.width();
        if widest.as_ref().is_none_or(|cur| &w > cur) {
            widest = Some(w);
        }
        env.rows.push(row([
            ("n", json!(n)),
            ("value", json!(real_value(&x, p))),
            ("value_lo", json!(sci(x.lo(), p, Round::Down))),
            ("value_hi", json!(sci(x.hi(), p, Round::Up))),
            ("rational_part", json!(scalar(&split.rational_part, p))),
            ("log_argument", json!(scalar(&split.log_argument, p))),
        ]));
    }
    env.metadata.enclosure_width = widest.map(|w| sci(&w, p, Round::Up));
    Ok(env)
}

fn expand(
    a: Option<String>,
    b: Option<String>,
    order: usize,
    deviation: bool,
) -> Result<OutputEnvelope> {
    let a = a.as_deref().map(parse_rational).transpose()?;
    let b = b.as_deref().map(parse_rational).transpose()?;
    let series = if deviation {
        family_deviation_expansion(&ParamPoly::a(), &ParamPoly::b(), order)?
    } else {
        difference_expansion_v(order)?
    }
    .substitute_partial(a.as_ref(), b.as_ref());
    let mut env = OutputEnvelope::new("expand", vec!["k", "coefficient"]);
    env.param(
        "quantity",
        if deviation {
            "v_n - gamma"
        } else {
            "v_n - v_(n+1)"
        },
    )
    .param("order", order)
    .param(
        "a",
        a.as_ref().map_or("symbolic".into(), to_fraction_string),
    )
    .param(
        "b",
        b.as_ref().map_or("symbolic".into(), to_fraction_string),
    );
    for (k, c) in series.terms() {
        env.rows.push(row([
            ("k", json!(k)),
            ("coefficient", json!(c.to_string())),
        ]));
    }
    env.summary = Some(row([("series", json!(series.to_string()))]));
    Ok(env)
}

fn optimize(order: usize) -> Result<OutputEnvelope> {
    let opt = optimize_parameters(order)?;
    let mut env = OutputEnvelope::new(
        "optimize",
        vec![
            "a_star",
            "b_star",
            "next_index",
            "next_coeff",
            "sequence_rate",
            "sequence_limit",
        ],
    );
    env.param("order", order);
    env.rows.push(row([
        ("a_star", json!(to_fraction_string(&opt.a))),
        ("b_star", json!(to_fraction_string(&opt.b))),
        ("next_index", json!(opt.next_index)),
        ("next_coeff", json!(to_fraction_string(&opt.next_coeff))),
        ("sequence_rate", json!(opt.rate.sequence_rate)),
        (
            "sequence_limit",
            json!(to_fraction_string(&opt.rate.sequence_limit)),
        ),
    ]));
    Ok(env)
}

fn rate(seq: &SeqArgs, start: u64, stop: u64, factor: u64, p: u32) -> Result<OutputEnvelope> {
    let kind = kind_of(seq)?;
    let grid = geometric_grid(start, stop, factor)?;
    let fit = empirical_rate(&kind, &grid, p)?;
    let mut env = OutputEnvelope::new("rate", vec!["n", "abs_difference"]);
    seq_params(&mut env, &kind);
    env.param("grid_start", start)
        .param("grid_stop", stop)
        .param("grid_factor", factor)
        .param("precision", p);
    env.precision(p);
    for (n, d) in &fit.points {
        env.rows.push(row([
            ("n", json!(n)),
            ("abs_difference", json!(format!("{d:.6e}"))),
        ]));
    }
    env.summary = Some(row([
        ("difference_order", json!(format!("{:.4}", fit.order))),
        (
            "sequence_rate",
            json!(format!("{:.4}", fit.sequence_rate())),
        ),
        ("residual", json!(format!("{:.2e}", fit.residual))),
        ("reliable", json!(fit.reliable())),
    ]));
    Ok(env)
}

fn sweep_bounds(id: &str, from: Option<u64>, to: u64, p: u32) -> Result<(OutputEnvelope, u8)> {
    let sel = lookup(id)?;
    let from = from.unwrap_or(sel.n_min());
    let report = sweep(&sel, from, to, p)?;
    let mut env = OutputEnvelope::new(
        "sweep-bounds",
        vec![
            "n", "lower", "value_lo", "value_hi", "upper", "verdict", "margin",
        ],
    );
    env.param("entry", sel.label())
        .param("from", from)
        .param("to", to)
        .param("precision", p);
    env.precision(p);
    let side = |b: &Option<mascheroni::BigReal>, q: u32| {
        b.as_ref().map_or(Value::Null, |x| json!(real_value(x, q)))
    };
    for v in &report.rows {
        env.rows.push(row([
            ("n", json!(v.n)),
            ("lower", side(&v.lower, p)),
            ("value_lo", json!(sci(v.value.lo(), p, Round::Down))),
            ("value_hi", json!(sci(v.value.hi(), p, Round::Up))),
            ("upper", side(&v.upper, p)),
            ("verdict", json!(v.holds.as_str())),
            ("margin", json!(sci(v.margin().lo(), p, Round::Down))),
        ]));
    }
    let mut summary = row([
        ("outcome", json!(report.outcome().as_str())),
        ("formula", json!(sel.entry.formula)),
        ("certified_true", json!(report.count(Holds::CertifiedTrue))),
        (
            "certified_false",
            json!(report.count(Holds::CertifiedFalse)),
        ),
        ("undecided", json!(report.count(Holds::Undecided))),
        ("max_precision", json!(report.max_precision())),
    ]);
    if let Some((n, m)) = report.min_margin() {
        summary.insert("min_margin_n".into(), json!(n));
        summary.insert("min_margin".into(), json!(sci(m.lo(), p, Round::Down)));
    }
    if let Some(note) = sel.entry.note {
        summary.insert("note".into(), json!(note));
    }
    env.summary = Some(summary);
    env.metadata.enclosure_width = Some(sci(&gamma_reference(p).width(), p, Round::Up));
    let code = match report.outcome() {
        Holds::CertifiedTrue => 0,
        Holds::CertifiedFalse => EXIT_FALSE,
        Holds::Undecided => EXIT_UNDECIDED,
    };
    Ok((env, code))
}

fn coefficient_rows(
    env: &mut OutputEnvelope,
    plain: &Polynomial,
    shifted: &[mascheroni::Rational],
) {
    let len = plain.coeffs().len().max(shifted.len());
    for k in 0..len {
        env.rows.push(row([
            ("k", json!(k)),
            ("coefficient", json!(to_fraction_string(&plain.coeff(k)))),
            (
                "shifted",
                json!(shifted
                    .get(k)
                    .map(to_fraction_string)
                    .unwrap_or_else(|| "0".into())),
            ),
        ]));
    }
}

fn certify(target: &str) -> Result<(OutputEnvelope, u8)> {
    let mut env = OutputEnvelope::new("certify", vec!["k", "coefficient", "shifted"]);
    env.param("target", target);
    match target {
        "P" | "Q" => {
            let (poly, c) = if target == "P" {
                (polynomial_p(), int(1))
            } else {
                (polynomial_q(), int(9))
            };
            env.param("shift", to_fraction_string(&c));
            let outcome = positivity_certificate(&poly, &c);
            let (shifted, certified) = match &outcome {
                CertificateOutcome::Certified(cert) => (cert.shifted.clone(), true),
                CertificateOutcome::Refused { shifted, .. } => (shifted.clone(), false),
            };
            coefficient_rows(&mut env, &poly, &shifted);
            env.summary = Some(row([
                ("polynomial", json!(poly.to_string())),
                (
                    "positive_on",
                    json!(format!("({}, inf)", to_fraction_string(&c))),
                ),
                ("certified", json!(certified)),
            ]));
            Ok((env, if certified { 0 } else { EXIT_UNDECIDED }))
        }
        "f" | "g" => {
            let variant = if target == "f" {
                Variant::F
            } else {
                Variant::G
            };
            let verdict = match tail_sign_verdict(variant) {
                Ok(v) => v,
                Err(Error::MissingCertificate(msg)) => {
                    env.summary = Some(row([("certified", json!(false)), ("reason", json!(msg))]));
                    return Ok((env, EXIT_UNDECIDED));
                }
                Err(e) => return Err(e),
            };
            let den = derivative_denominator();
            let identity = match variant {
                Variant::F => verdict.derivative.equals_quotient(&polynomial_p(), &den),
                Variant::G => verdict.derivative.equals_quotient(&-&polynomial_q(), &den),
            };
            // Rows show the integer-coefficient polynomial; the canonical
            // numerator differs from it by a positive factor.
            let (poly, c) = match variant {
                Variant::F => (polynomial_p(), int(1)),
                Variant::G => (polynomial_q(), int(9)),
            };
            let shifted = positivity_certificate(&poly, &c)
                .certificate()
                .map(|cert| cert.shifted.clone())
                .unwrap_or_default();
            env.param("shift", to_fraction_string(&c));
            coefficient_rows(&mut env, &poly, &shifted);
            env.summary = Some(row([
                ("certified", json!(true)),
                ("conclusion", json!(verdict.conclusion)),
                (
                    "derivative_numerator",
                    json!(verdict.derivative.numerator().to_string()),
                ),
                (
                    "derivative_denominator",
                    json!(verdict.derivative.denominator().to_string()),
                ),
                (
                    "derivative_sign",
                    json!(if verdict.derivative_sign > 0 {
                        "positive"
                    } else {
                        "negative"
                    }),
                ),
                (
                    "function_sign",
                    json!(if verdict.function_sign > 0 {
                        "positive"
                    } else {
                        "negative"
                    }),
                ),
                ("identity_holds", json!(identity)),
                ("vanishes_at_infinity", json!(verdict.vanishes_at_infinity)),
                ("sequence_from", json!(verdict.sequence_from)),
            ]));
            Ok((env, 0))
        }
        other => Err(Error::Domain(format!("unknown certify target `{other}`"))),
    }
}

fn enclose(p: u32, n: Option<u64>) -> Result<OutputEnvelope> {
    let enclosure = match n {
        Some(n) => gamma_bootstrap(n, p)?,
        None => gamma_reference(p),
    };
    let mut env = OutputEnvelope::new(
        "enclose",
        vec!["lo", "hi", "mid", "width", "method", "index"],
    );
    env.param("precision", p);
    if let Some(n) = n {
        env.param("n", n);
    }
    env.precision(p);
    let (method, index) = match enclosure.method() {
        EnclosureMethod::Bootstrap { n } => ("bootstrap", n),
        EnclosureMethod::Series { n, .. } => ("series", n),
    };
    let width = sci(&enclosure.width(), p, Round::Up);
    env.rows.push(row([
        ("lo", json!(sci(enclosure.lo(), p, Round::Down))),
        ("hi", json!(sci(enclosure.hi(), p, Round::Up))),
        ("mid", json!(sci(&enclosure.mid(), p, Round::Nearest))),
        ("width", json!(width.clone())),
        ("method", json!(method)),
        ("index", json!(index)),
    ]));
    env.metadata.enclosure_width = Some(width);
    Ok(env)
}
