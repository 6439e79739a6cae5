//! Acceptance gate: one PASS/FAIL line per criterion, each with its wall-clock
//! bound. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bicubic::suite::{run_suite, SuiteOptions, SuiteResult};

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);
const F4_MEMORY_LIMIT_KB: u64 = 8 * 1024 * 1024;
const DETERMINISM_SUITES: [&str; 3] = ["f1", "f2", "f3"];

struct Criterion {
    number: u32,
    suite: &'static str,
    bound: Duration,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        suite: "field",
        bound: Duration::from_secs(5),
    },
    Criterion {
        number: 2,
        suite: "group",
        bound: MINUTE,
    },
    Criterion {
        number: 3,
        suite: "construction",
        bound: MINUTE,
    },
    Criterion {
        number: 4,
        suite: "f1",
        bound: SECOND,
    },
    Criterion {
        number: 5,
        suite: "f2",
        bound: Duration::from_secs(5),
    },
    Criterion {
        number: 6,
        suite: "f3",
        bound: Duration::from_secs(10 * 60),
    },
    Criterion {
        number: 7,
        suite: "f4",
        bound: Duration::from_secs(60 * 60),
    },
    Criterion {
        number: 8,
        suite: "f5-classes",
        bound: Duration::from_secs(5),
    },
    Criterion {
        number: 9,
        suite: "zp",
        bound: Duration::from_secs(30),
    },
];

/// Peak resident set size of this process in KiB, from `/proc/self/status`.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn report(number: u32, passed: bool, what: &str, detail: &str) -> bool {
    println!(
        "criterion {number:>2}: {} {what}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

fn run_criterion(c: &Criterion, opts: &SuiteOptions) -> bool {
    let start = Instant::now();
    let result = run_suite(c.suite, opts);
    let elapsed = start.elapsed();
    let in_time = elapsed < c.bound;
    let mut detail = format!("{:.1} s of {} s", elapsed.as_secs_f64(), c.bound.as_secs());
    let passed = match &result {
        Ok(r) => {
            let failed: Vec<&str> = r.failures().map(|f| f.id.as_str()).collect();
            if !failed.is_empty() {
                detail.push_str(&format!("; failed claims {failed:?}"));
            }
            if !r.skipped.is_empty() {
                detail.push_str(&format!("; skipped {:?}", r.skipped));
            }
            r.passed && r.skipped.is_empty()
        }
        Err(e) => {
            detail.push_str(&format!("; error: {e}"));
            false
        }
    };
    let mut memory_ok = true;
    if c.number == 7 {
        match peak_rss_kb() {
            Some(kb) => {
                memory_ok = kb < F4_MEMORY_LIMIT_KB;
                detail.push_str(&format!(
                    "; peak memory {} MiB of {} MiB",
                    kb / 1024,
                    F4_MEMORY_LIMIT_KB / 1024
                ));
            }
            None => detail.push_str("; peak memory unavailable"),
        }
    }
    if let Ok(r) = &result {
        for claim in r.failures() {
            println!(
                "    {} measured {} expected {}",
                claim.id, claim.measured, claim.expected
            );
        }
    }
    report(c.number, passed && in_time && memory_ok, c.suite, &detail)
}

fn canonical_reports(threads: usize, opts: &SuiteOptions) -> Result<Vec<String>, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| {
        DETERMINISM_SUITES
            .iter()
            .map(|s| {
                run_suite(s, opts)
                    .map(|r: SuiteResult| r.canonical_json())
                    .map_err(|e| e.to_string())
            })
            .collect()
    })
}

fn main() -> ExitCode {
    let opts = SuiteOptions {
        deep: true,
        seed: 0,
    };
    let mut all = true;
    for c in &CRITERIA {
        all &= run_criterion(c, &opts);
    }
    let determinism = match (canonical_reports(1, &opts), canonical_reports(8, &opts)) {
        (Ok(one), Ok(eight)) => {
            let differing: Vec<&str> = DETERMINISM_SUITES
                .iter()
                .zip(one.iter().zip(&eight))
                .filter(|(_, (a, b))| a != b)
                .map(|(s, _)| *s)
                .collect();
            let detail = if differing.is_empty() {
                format!("{DETERMINISM_SUITES:?} identical with 1 and 8 threads")
            } else {
                format!("{differing:?} differ between 1 and 8 threads")
            };
            report(10, differing.is_empty(), "determinism", &detail)
        }
        (Err(e), _) | (_, Err(e)) => report(10, false, "determinism", &e),
    };
    all &= determinism;
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
