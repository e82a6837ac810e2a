//! The acceptance checklist. Runs without the libtest harness so every
//! criterion prints exactly one PASS or FAIL line, with its bounds, whether
//! or not output capture is on. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use zred::maps::{beta, gamma, sigma};
use zred::oracle::{verify_suite, VerificationReport};
use zred::reduction::{enumerate_g_reduced, enumerate_z_reduced, orbit_to_cycle};
use zred::{Bounds, Form, Operator, Suite};

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fastest of a few timed runs, after one warm-up.
fn best_time<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let out = f();
    let best = (0..5)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed()
        })
        .min()
        .unwrap();
    (out, best)
}

fn discriminants(max: u64) -> impl Iterator<Item = BigInt> {
    (5..=max)
        .filter(|d| d % 4 <= 1 && d.isqrt().pow(2) != *d)
        .map(BigInt::from)
}

fn count_z(max: u64) -> u64 {
    discriminants(max)
        .map(|d| enumerate_z_reduced(&d).unwrap().len() as u64)
        .sum()
}

fn count_g(max: u64) -> u64 {
    discriminants(max)
        .map(|d| enumerate_g_reduced(&d).unwrap().len() as u64)
        .sum()
}

fn run(suite: Suite, delta_max: u64) -> (VerificationReport, Duration) {
    let bounds = Bounds::from_delta_max(delta_max);
    let start = Instant::now();
    let report = verify_suite(suite, &bounds);
    (report, start.elapsed())
}

/// The report must pass and must have looked at at least `min_cases` cases.
fn passing(report: &VerificationReport, min_cases: u64) -> Result<(), String> {
    ensure(report.passed(), || report.to_string())?;
    ensure(report.cases_checked >= min_cases, || {
        format!(
            "{}: only {} cases, expected at least {min_cases}",
            report.theorem_id, report.cases_checked
        )
    })
}

fn remarks(r: &VerificationReport) -> String {
    if r.remarks.is_empty() {
        String::new()
    } else {
        format!(" [{}]", r.remarks.join("; "))
    }
}

fn worked_examples() -> Check {
    let limit = Duration::from_millis(1);
    let (g, tg) = best_time(|| gamma(&Form::new(1, 3, -2)).unwrap());
    ensure(g.to_string() == "3,1,1", || format!("γ(1,3,−2) = {g}"))?;
    let (b, tb) = best_time(|| beta(&Form::new(1, 5, 2)).unwrap());
    ensure(b.to_string() == "1,3,1,1", || format!("β(1,5,2) = {b}"))?;
    let (s, ts) = best_time(|| sigma(&Form::new(1, 5, 2)).unwrap());
    ensure(s.to_string() == "10011", || format!("σ(1,5,2) = {s}"))?;
    for (name, t) in [("γ", tg), ("β", tb), ("σ", ts)] {
        ensure(t < limit, || format!("{name} took {t:?}"))?;
    }
    Ok(format!(
        "γ(1,3,−2)=3,1,1 in {tg:?}; β(1,5,2)=1,3,1,1 in {tb:?}; σ(1,5,2)=10011 in {ts:?}"
    ))
}

fn example_cycle() -> Check {
    let start = Instant::now();
    let orbit = orbit_to_cycle(&Form::new(1, 5, 2), Operator::Zagier).map_err(|e| e.to_string())?;
    let strings: Vec<String> = orbit
        .cycle
        .iter()
        .map(|f| sigma(f).unwrap().to_string())
        .collect();
    let elapsed = start.elapsed();
    let expected =
        [(1, 5, 2), (2, 5, 1), (4, 7, 2), (4, 9, 4), (2, 7, 4)].map(|(a, b, c)| Form::new(a, b, c));
    ensure(orbit.pre_period.is_empty(), || {
        "orbit has a pre-period".into()
    })?;
    ensure(orbit.cycle == expected, || {
        format!("cycle {:?}", orbit.cycle)
    })?;
    ensure(
        strings == ["10011", "11001", "00111", "01110", "11100"],
        || format!("σ-strings {strings:?}"),
    )?;
    // A sixth node (1,5,1) cannot belong: its discriminant is 21, not 17.
    let stray = Form::new(1, 5, 1).discriminant();
    ensure(
        stray == BigInt::from(21) && !orbit.cycle.contains(&Form::new(1, 5, 1)),
        || "(1,5,1) erratum check".into(),
    )?;
    ensure(elapsed < Duration::from_millis(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "(1,5,2) purely periodic, 5-cycle, σ = {}; (1,5,1) has Δ=21 so is not a cycle node; {elapsed:?}",
        strings.join(",")
    ))
}

fn rotation() -> Check {
    let delta_max = 5000;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let (r, t) = pool.install(|| run(Suite::Rotation, delta_max));
    passing(&r, count_z(delta_max))?;
    ensure(t < Duration::from_secs(60), || {
        format!("took {t:?} single-threaded")
    })?;
    Ok(format!(
        "σ∘R_Z = rotate∘σ on all {} Z-reduced forms, Δ ≤ {delta_max}, single-threaded {:.1?}",
        r.cases_checked, t
    ))
}

fn xi_diagrams() -> Check {
    let delta_max = 5000;
    let g = count_g(delta_max);
    let mut parts = Vec::new();
    for suite in [Suite::XiDiagramPlus, Suite::XiDiagramMinus] {
        let (r, t) = run(suite, delta_max);
        // Each G-reduced form of the matching sign is one diagram case; the
        // μ-image checks run over every Z-reduced form on top of that.
        passing(&r, g / 2)?;
        parts.push(format!(
            "{} {} cases in {t:.1?}",
            r.theorem_id, r.cases_checked
        ));
    }
    Ok(format!(
        "both diagrams on G-reduced forms and μ(G±) = β⁻¹(η±(S₁)) on Z-reduced forms, Δ ≤ {delta_max}: {}",
        parts.join(", ")
    ))
}

fn form_from_beads() -> Check {
    let delta_max = 10_000;
    let (r, t) = run(Suite::FormFromBeads, delta_max);
    let strings: u64 = (2..=8).map(|l| 6u64.pow(l)).sum();
    passing(&r, strings)?;
    Ok(format!(
        "τ∘β = id for Δ = k²±4 ≤ {delta_max}; β∘τ = id with the discriminant formula on all {strings} strings of length 2–8, entries ≤ 6; {} cases in {t:.1?}",
        r.cases_checked
    ))
}

fn reduction_relation() -> Check {
    let delta_max = 3000;
    let (r, t) = run(Suite::ReductionRelation, delta_max);
    passing(&r, count_g(delta_max) / 2)?;
    Ok(format!(
        "five identities on G⁺ and Z, Δ ≤ {delta_max}; {} cases in {t:.1?}",
        r.cases_checked
    ))
}

/// Primitive binary necklaces of each length up to `n`, by Möbius inversion.
fn primitive_necklaces(n: u32) -> u64 {
    fn mobius(mut m: u32) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            -sign
        } else {
            sign
        }
    }
    (1..=n)
        .map(|l| {
            let s: i64 = (1..=l)
                .filter(|d| l % d == 0)
                .map(|d| mobius(d) * (1i64 << (l / d)))
                .sum();
            (s / i64::from(l)) as u64
        })
        .sum()
}

fn weight_parity_and_caliber() -> Check {
    let delta_max = 2000;
    let (wp, t1) = run(Suite::WeightParity, delta_max);
    passing(&wp, 1)?;
    let bounds = Bounds::from_delta_max(delta_max);
    let (zc, t2) = run(Suite::ZCaliber, delta_max);
    // Every primitive necklace except the all-zero one of length 1.
    let necklaces = primitive_necklaces(bounds.necklace_len_max as u32) - 1;
    passing(&zc, necklaces)?;
    Ok(format!(
        "weight parity = Pell sign on {} classes, Δ ≤ {delta_max}, in {t1:.1?}{}; calibers rebuild all {} primitive necklaces of length ≤ {} in {t2:.1?}",
        wp.cases_checked,
        remarks(&wp),
        zc.cases_checked,
        bounds.necklace_len_max
    ))
}

fn denjoy() -> Check {
    let delta_max = 2000;
    let (r, t) = run(Suite::Denjoy, delta_max);
    passing(&r, count_z(delta_max))?;
    Ok(format!(
        "three periods prefix-match the surd on all {} Z-reduced forms, Δ ≤ {delta_max}; minimal on primitive forms, a power of the primitive part's period otherwise; {t:.1?}{}",
        r.cases_checked,
        remarks(&r)
    ))
}

fn continuants_and_tz() -> Check {
    let bounds = Bounds::from_delta_max(1);
    let (c, t1) = run(Suite::ContinuantIdentities, 1);
    passing(&c, 10_000)?;
    let (k, t2) = run(Suite::TzKnead, 1);
    passing(&k, 10_000)?;
    Ok(format!(
        "continuant identities on {} random strings in {t1:.1?}; T_Z = pinch∘knead∘pinch on {} random strings in {t2:.1?} (seed {:#x})",
        c.cases_checked, k.cases_checked, bounds.seed
    ))
}

fn cross_engine() -> Check {
    let delta_max = 2000;
    let bounds = Bounds::from_delta_max(delta_max);
    let (r, t) = run(Suite::Lgz, delta_max);
    ensure(
        bounds.surd_samples >= 100 && bounds.surd_terms >= 50,
        || "sample bounds below 100 surds × 50 terms".into(),
    )?;
    passing(&r, 2 * bounds.surd_samples as u64)?;
    Ok(format!(
        "{} Z-reduced and {} G-reduced surds to {} terms agree across engines; reduced ⟺ purely periodic; {} cases, Δ ≤ {delta_max}, {t:.1?}",
        bounds.surd_samples, bounds.surd_samples, bounds.surd_terms, r.cases_checked
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("worked examples", worked_examples),
        ("example cycle", example_cycle),
        ("rotation", rotation),
        ("xi diagrams", xi_diagrams),
        ("form from beads", form_from_beads),
        ("reduction relation", reduction_relation),
        ("weight parity and caliber", weight_parity_and_caliber),
        ("Denjoy", denjoy),
        ("continuants and T_Z", continuants_and_tz),
        ("cross-engine", cross_engine),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
