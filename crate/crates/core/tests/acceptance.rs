//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsympat::paperlab::{self, families, CheckResult, Status};
use qsympat::Result;

struct Outcome {
    ok: bool,
    detail: String,
}

fn expect(results: &[CheckResult], want: Status) -> Outcome {
    let bad: Vec<String> = results
        .iter()
        .filter(|r| r.status != want)
        .map(|r| {
            format!(
                "{} {} -> {} witness={}",
                r.check_id,
                r.parameters,
                r.status,
                r.witness.as_ref().map_or("none".into(), |w| w.to_string())
            )
        })
        .collect();
    let notes: Vec<String> = results.iter().flat_map(|r| r.notes.clone()).collect();
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            notes.join("; ")
        } else {
            bad.join("; ")
        },
    }
}

fn within(o: Outcome, spent: Duration, limit: Option<Duration>) -> Outcome {
    match limit {
        Some(l) if spent > l => Outcome {
            ok: false,
            detail: format!("took {spent:?}, limit {l:?}; {}", o.detail),
        },
        _ => o,
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn criterion(label: &str, limit: Option<Duration>, body: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let outcome = body().unwrap_or_else(|e| Outcome {
        ok: false,
        detail: format!("error: {e}"),
    });
    let spent = start.elapsed();
    let outcome = within(outcome, spent, limit);
    println!(
        "{} {label} ({:.1}s) {}",
        if outcome.ok { "PASS" } else { "FAIL" },
        spent.as_secs_f64(),
        outcome.detail
    );
    outcome.ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut all = true;

    all &= criterion("1 symmetric S_3 table, 3 <= n <= 8", Some(secs(60)), || {
        let r = single_threaded(|| paperlab::check_table_s3(8))?;
        Ok(expect(&[r], Status::Pass))
    });

    all &= criterion(
        "2 every other subset of S_3 is not symmetric by n = 8",
        None,
        || {
            let r = paperlab::check_non_table_asymmetry(8)?;
            let mut o = expect(&[r], Status::Pass);
            if o.ok && !o.detail.starts_with("32 sets") {
                o = Outcome {
                    ok: false,
                    detail: format!("expected 32 candidate sets: {}", o.detail),
                };
            }
            Ok(o)
        },
    );

    all &= criterion(
        "3 {1243,1324,3124,4321}: capped-hook sum n <= 10, six terms for 6 <= n <= 10",
        Some(secs(120)),
        || {
            let r = paperlab::check_partial_shuffle(4, Some(4), 10)?;
            Ok(expect(&[r], Status::Pass))
        },
    );

    all &= criterion(
        "4 run structure: no six short runs for m <= 12, at most five runs for n <= 10",
        Some(secs(300)),
        || {
            let r = paperlab::check_runlength_support(12, 10)?;
            Ok(expect(&[r], Status::Pass))
        },
    );

    all &= criterion(
        "5 arc permutations and {1} shuffle {132,312}, 4 <= n <= 8",
        None,
        || {
            let r = paperlab::check_arc(8)?;
            Ok(expect(&[r], Status::Pass))
        },
    );

    all &= criterion(
        "6 K(P) closed iff superstandard hook, all SYT with 1..5 boxes",
        Some(secs(30)),
        || {
            let r = paperlab::check_knuth_classification(5)?;
            let mut o = expect(&[r], Status::Pass);
            if o.ok && !o.detail.starts_with("43 tableaux") {
                o = Outcome {
                    ok: false,
                    detail: format!("expected 43 tableaux: {}", o.detail),
                };
            }
            Ok(o)
        },
    );

    all &= criterion(
        "7 S_4 - X_4 signed expansion for 4 <= n <= 8; K((3,1,1)) - K(124/3/5) at n = 6, 7, 8",
        None,
        || {
            let r = paperlab::check_exceptional_examples(8)?;
            Ok(expect(&[r], Status::Pass))
        },
    );

    all &= criterion(
        "8 RSK laws, Knuth classes as Schur functions, shuffle recursion, dihedral laws",
        None,
        || {
            let rs = vec![
                paperlab::check_rsk_laws(7, 6)?,
                paperlab::check_shuffle_recursion_sample(&families::recursion_pairs(), 7)?,
                paperlab::check_dihedral_laws(8)?,
            ];
            Ok(expect(&rs, Status::Pass))
        },
    );

    all &= criterion(
        "9 signed comodal sums equal Murnaghan-Nakayama characters, |P| <= 5",
        None,
        || {
            let r = paperlab::check_fine_characters(5)?;
            Ok(expect(&[r], Status::Pass))
        },
    );

    all &= criterion("10 conjecture reports: shuffle positivity (>= 20 pairs, n <= 7); j = 5, m in {3, 4, none}, n <= 8", None, || {
        let pairs = families::positivity_pairs();
        let mut rs = vec![paperlab::check_conjecture_shuffle_nonneg(&pairs, 7)?];
        for m in [Some(3), Some(4), None] {
            rs.push(paperlab::check_partial_shuffle(5, m, 8)?);
        }
        let mut o = expect(&rs, Status::ConjectureConsistent);
        let tested = rs[0]
            .notes
            .first()
            .and_then(|n| n.split_whitespace().next())
            .and_then(|t| t.parse::<usize>().ok())
            .unwrap_or(0);
        if o.ok && tested < 20 {
            o = Outcome { ok: false, detail: format!("only {tested} pairs met the hypothesis: {}", o.detail) };
        }
        Ok(o)
    });

    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
