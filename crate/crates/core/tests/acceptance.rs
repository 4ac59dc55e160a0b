//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs the fast suite by default; set `DLP_SUITE=full` for the larger one.

use dlp_core::verify::{run_criterion, Suite, VerifyOptions, CRITERIA};

fn main() {
    let suite = std::env::var("DLP_SUITE").ok().and_then(|s| s.parse().ok()).unwrap_or(Suite::Fast);
    let opts = VerifyOptions::new(suite);
    let mut failed = 0;
    for &(id, _) in CRITERIA.iter() {
        let r = run_criterion(id, &opts);
        println!("{r}");
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
