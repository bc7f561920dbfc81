//! A random ordinary family, its stabilization and the invariants of the
//! p-adic L-function approximations.

use iwasawa::theta::{random_ordinary_family, verify_ordinary_theorem};
use iwasawa::{unit_root, PAdicRing, StabilizedFamily};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> iwasawa::Result<()> {
    let r = PAdicRing::new(5, 20)?;
    let a_p = r.element(1);
    println!("alpha = {}", unit_root(a_p)?.value());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fam = random_ordinary_family(a_p, 4, &mut rng)?;
    let st = StabilizedFamily::new(&fam)?;
    for n in 1..4 {
        let compatible = st.at(n + 1).project()? == *st.at(n);
        println!("stabilized level {n} -> {} compatible: {compatible}", n + 1);
    }

    let report = verify_ordinary_theorem(&fam)?;
    println!(
        "verdict: {}  stable from: {:?}",
        report.verdict.as_str(),
        report.stable_from
    );
    for row in &report.levels {
        println!(
            "n={} theta: mu={:?} lambda={:?}  L_p: mu={:?} lambda={:?}  {}",
            row.n,
            row.mu_theta,
            row.lambda_theta,
            row.mu_l,
            row.lambda_l,
            row.verdict.as_str()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
