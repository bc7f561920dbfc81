//! The randomized property suite at p = 5.

use iwasawa::lemmas::{run_suite, SuiteConfig};

pub fn run_example() -> iwasawa::Result<()> {
    let report = run_suite(&SuiteConfig::new(5, 20, 25, 1))?;
    for prop in &report.properties {
        println!(
            "{:<34} passed {:>3}/{:<3} guarded {:>3}",
            prop.name, prop.passed, prop.trials, prop.guarded_checks
        );
    }
    println!("all passed: {}", report.all_passed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
