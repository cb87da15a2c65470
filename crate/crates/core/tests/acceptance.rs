//! Full-scale acceptance run: one line per criterion.
//!
//! Criteria 4 and 6 measure faster convergence than their windows allow (see README, "Known failures").
//! They are reported as FAIL and do not abort the run; anything else failing, or any criterion erroring, does.

use std::process::ExitCode;
use zeno_core::verify::{run_all_with, VerifyConfig};

const KNOWN_FAILURES: [u8; 2] = [4, 6];

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut unexpected = Vec::new();
    let report = run_all_with(&cfg, |c| {
        println!("{}", c.line());
        if c.error.is_some() || (!c.passed && !KNOWN_FAILURES.contains(&c.id)) {
            unexpected.push(c.id);
        }
    });
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!(
        "acceptance: {passed}/{} criteria pass",
        report.criteria.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
