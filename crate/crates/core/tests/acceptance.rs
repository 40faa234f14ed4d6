//! Acceptance criteria 1-10, one line per criterion. Exact arithmetic
//! throughout; every check is an equality test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use yangbax::report::Verdict;
use yangbax::suite::{criterion, title, JobSpec, ALL_CRITERIA};

fn budget(n: usize) -> Option<Duration> {
    match n {
        1 => Some(Duration::from_secs(10)),
        2 => Some(Duration::from_secs(60)),
        5 => Some(Duration::from_secs(1)),
        7 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let spec = JobSpec::default();
    let mut failed = 0;
    for n in ALL_CRITERIA {
        let start = Instant::now();
        let check = criterion(n, &spec);
        let elapsed = start.elapsed();
        let over = budget(n).filter(|b| elapsed > *b);
        let ok = check.verdict == Verdict::Pass && over.is_none();
        failed += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        println!("acceptance criterion {n:>2} {status} [{:.2?}] {}", elapsed, title(n));
        if !ok {
            println!("    verdict: {}", check.verdict);
            if let Some(b) = over {
                println!("    runtime budget {b:?} exceeded");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", ALL_CRITERIA.len() - failed, ALL_CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
