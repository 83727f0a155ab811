//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion
//! and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use convfib::bench::{self, BenchGrid, BenchRow, NESTED_SUM, SERIES_POWER};
use convfib::convolved::{
    conv_fib_int, factorial, triangle_closed, triangle_recurrence, CoeffTriangle,
};
use convfib::exact::{Integer, Rational};
use convfib::fibonacci::{fib, fibonacci_base};
use convfib::identities::{
    verify_cor2, verify_cor4, verify_cor8, verify_cor8_with, verify_cor9, verify_cor9_with,
    verify_prop1, verify_thm3, verify_thm5, verify_thm6, verify_thm6_with, verify_thm7,
    VerificationReport,
};

type Outcome = Result<String, String>;
type TriangleCheck = fn(&CoeffTriangle) -> convfib::Result<VerificationReport>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(report: &VerificationReport) -> Result<(), String> {
    ensure(report.passed(), || {
        format!("{} failed: {}", report.identity, report.to_json())
    })
}

fn fibonacci_bootstrap() -> Outcome {
    let listed = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144];
    for (n, &want) in listed.iter().enumerate() {
        ensure(fib(n as i64) == Integer::from(want), || {
            format!("fib({n}) = {}", fib(n as i64))
        })?;
    }
    let inverse = fibonacci_base(200).inverse().map_err(|e| e.to_string())?;
    for (n, c) in inverse.coeffs().iter().enumerate() {
        ensure(*c == Rational::from_integer(fib(n as i64)), || {
            format!("t^{n}: {c}")
        })?;
    }
    Ok("fib(0..11) listed values; inverse series equals fib through t^200".into())
}

fn factorial_fibonacci_law() -> Outcome {
    for n in 0..=200 {
        let want = factorial(n as u64) * fib(n as i64);
        ensure(conv_fib_int(n, 1) == want, || format!("n = {n}"))?;
    }
    Ok("p_n(1) = n! F_n for n <= 200".into())
}

fn triangle_ground_truth() -> Outcome {
    let t = triangle_recurrence(12);
    let printed = [
        (2, 1, 2),
        (3, 1, 6),
        (4, 1, 12),
        (4, 2, 12),
        (5, 1, 20),
        (5, 2, 60),
        (6, 1, 30),
        (6, 2, 180),
        (6, 3, 120),
    ];
    for (n, i, want) in printed {
        let got = t.get(n, i).cloned();
        ensure(got == Some(Integer::from(want)), || {
            format!("a_{i}({n}) = {got:?}")
        })?;
    }
    for n in (1..=11usize).step_by(2) {
        let i = n.div_ceil(2);
        let got = t.get(n, i).cloned();
        ensure(got == Some(Integer::from(0)), || {
            format!("a_{i}({n}) = {got:?}")
        })?;
    }
    Ok(format!(
        "{} printed entries and the odd-row zero diagonal",
        printed.len()
    ))
}

fn closed_form_matches_recurrence() -> Outcome {
    let t = triangle_recurrence(60);
    let mut count = 0;
    for (n, i, a) in t.entries() {
        let closed = triangle_closed(n, i).map_err(|e| e.to_string())?;
        ensure(&closed == a, || {
            format!("a_{i}({n}): closed {closed}, recurrence {a}")
        })?;
        count += 1;
    }
    Ok(format!("{count} entries equal for N <= 60"))
}

fn identity_suite() -> Outcome {
    let reports = [
        verify_prop1(50, &(-3..=8).collect::<Vec<_>>()),
        verify_cor2(20, 4),
        verify_thm3(40, 6, &(-2..=8).collect::<Vec<_>>()),
        verify_cor4(60, 6),
        verify_thm5(25, 4),
        verify_thm7(20, 8, &(1..=5).collect::<Vec<_>>()).map_err(|e| e.to_string())?,
        verify_cor8(40, &(-5..=10).collect::<Vec<_>>()).map_err(|e| e.to_string())?,
        verify_cor9(50).map_err(|e| e.to_string())?,
    ];
    let mut cells = 0;
    for report in &reports {
        passed(report)?;
        cells += report.cells;
    }
    Ok(format!("{} identities, {cells} cells", reports.len()))
}

fn symbolic_ode_family() -> Outcome {
    let report = verify_thm6(10, 30).map_err(|e| e.to_string())?;
    passed(&report)?;
    Ok(format!(
        "N <= 10 at order 30 over Q[x], {} cells",
        report.cells
    ))
}

fn mutation_sensitivity() -> Outcome {
    let checkers: [(&str, usize, TriangleCheck); 3] = [
        ("thm6", 10, |t| verify_thm6_with(t, 10, 30)),
        ("cor8", 40, |t| {
            verify_cor8_with(t, 40, &(-5..=10).collect::<Vec<_>>())
        }),
        ("cor9", 50, |t| verify_cor9_with(t, 50)),
    ];
    let mut caught = 0;
    for (n, i) in [(3, 1), (5, 2), (6, 3)] {
        for (name, n_max, check) in &checkers {
            let bad = triangle_recurrence(*n_max)
                .perturbed(n, i, 1)
                .map_err(|e| e.to_string())?;
            let report = check(&bad).map_err(|e| e.to_string())?;
            let ce = report.counterexample.as_ref();
            ensure(!report.passed() && ce.is_some(), || {
                format!("{name} missed a_{i}({n}) + 1")
            })?;
            let at = ce.and_then(|c| c.params["N"].as_u64());
            ensure(at == Some(n as u64), || {
                format!("{name} blamed N = {at:?} for a_{i}({n})")
            })?;
            caught += 1;
        }
    }
    Ok(format!(
        "{caught}/9 perturbations caught at the corrupted row"
    ))
}

fn median_of(rows: &[BenchRow], algorithm: &str, n: usize, r: u32) -> Result<f64, String> {
    rows.iter()
        .find(|row| row.algorithm == algorithm && row.n == n && row.r == Some(r))
        .map(|row| row.nanos as f64)
        .ok_or_else(|| format!("no timing for {algorithm} n={n} r={r}"))
}

fn bench_gate() -> Outcome {
    let rows = bench::run(&BenchGrid::default()).map_err(|e| e.to_string())?;
    let ratio = |alg| -> Result<f64, String> {
        Ok(median_of(&rows, alg, 20, 4)? / median_of(&rows, alg, 10, 4)?)
    };
    let nested = ratio(NESTED_SUM)?;
    let series = ratio(SERIES_POWER)?;
    ensure(nested > series, || {
        format!("nested ratio {nested:.2} <= series ratio {series:.2}")
    })?;
    Ok(format!(
        "cross-check ok; n=20/n=10 at r=4: nested {nested:.1}x, series {series:.1}x"
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "fibonacci bootstrap",
            limit: Some(Duration::from_secs(1)),
            run: fibonacci_bootstrap,
        },
        Criterion {
            name: "p_n(1) = n! F_n",
            limit: Some(Duration::from_secs(2)),
            run: factorial_fibonacci_law,
        },
        Criterion {
            name: "triangle ground truth",
            limit: Some(Duration::from_secs(1)),
            run: triangle_ground_truth,
        },
        Criterion {
            name: "closed form vs recurrence",
            limit: Some(Duration::from_secs(10)),
            run: closed_form_matches_recurrence,
        },
        Criterion {
            name: "identity suite",
            limit: Some(Duration::from_secs(60)),
            run: identity_suite,
        },
        Criterion {
            name: "symbolic ODE family",
            limit: Some(Duration::from_secs(30)),
            run: symbolic_ode_family,
        },
        Criterion {
            name: "mutation sensitivity",
            limit: Some(Duration::from_secs(10)),
            run: mutation_sensitivity,
        },
        Criterion {
            name: "bench correctness gate",
            limit: None,
            run: bench_gate,
        },
    ];
    let mut failures = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {} ({elapsed:.2?}): {detail}", k + 1, c.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL {}. {} ({elapsed:.2?}): {detail}", k + 1, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
