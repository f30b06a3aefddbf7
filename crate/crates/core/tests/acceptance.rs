//! Runs criteria A1 to A8 and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use mzlab_core::acceptance;
use mzlab_core::Limits;

type Criterion = fn(&Limits) -> mzlab_core::Result<acceptance::CriterionOutcome>;

fn main() -> ExitCode {
    let limits = Limits::default();
    let runs: [(&str, Criterion); 8] = [
        ("A1", acceptance::a1),
        ("A2", |_| acceptance::a2()),
        ("A3", |_| acceptance::a3()),
        ("A4", |_| acceptance::a4()),
        ("A5", acceptance::a5),
        ("A6", acceptance::a6),
        ("A7", acceptance::a7),
        ("A8", |_| acceptance::a8()),
    ];
    let mut ok = true;
    for (id, run) in runs {
        let start = Instant::now();
        match run(&limits) {
            Ok(outcome) => {
                println!("{} [{:.2}s]", outcome.summary_line(), start.elapsed().as_secs_f64());
                for f in &outcome.failures {
                    println!("    {f}");
                }
                ok &= outcome.passed();
            }
            Err(e) => {
                println!("{id} FAIL  error: {e}");
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
