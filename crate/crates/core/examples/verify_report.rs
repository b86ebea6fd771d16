//! Runs the specialization suite and prints the JSON run report.

use std::time::Duration;

use heronion::harness::{cmd_verify, Suite, VerifyArgs};

fn main() -> heronion::Result<()> {
    let args = VerifyArgs { suite: Suite::Specializations, trials: 20, seed: 1, budget: Duration::from_secs(60), timings: false };
    let report = cmd_verify(&args, vec!["verify".into(), "--suite".into(), "specializations".into()])?;
    println!("{}", report.to_json());
    eprint!("{}", report.summary());
    Ok(())
}
