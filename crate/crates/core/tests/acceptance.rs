//! Runs the ten acceptance criteria and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use hopf_pairs::suite::{run_all, Fixtures};

fn main() -> ExitCode {
    let start = Instant::now();
    let fx = match Fixtures::build() {
        Ok(fx) => fx,
        Err(e) => {
            println!("FAIL fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("fixtures built in {:.2?}", start.elapsed());
    let results = run_all(&fx);
    for (o, t) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} {}: {} ({:.2?})", o.id, o.name, o.detail, t);
    }
    let passed = results.iter().filter(|(o, _)| o.pass).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
