//! Theta elements built from a sharp/flat pair: `lambda(theta_n)` climbs by
//! `q_n` over `lambda(L*)`.

use iwasawa::invariants::make_with_invariants;
use iwasawa::theta::{build_nonordinary_family, verify_nonordinary_theorem, verify_three_term};
use iwasawa::PAdicRing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> iwasawa::Result<()> {
    let r = PAdicRing::new(5, 20)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sharp = make_with_invariants(r, 625, 0, 2, &mut rng)?;
    let flat = make_with_invariants(r, 625, 0, 1, &mut rng)?;

    let fam = build_nonordinary_family(&sharp, &flat, r.zero(), 4)?;
    println!("three-term relation: {:?}", verify_three_term(&fam));

    let report = verify_nonordinary_theorem(&sharp, &flat, r.zero(), 4)?;
    println!("verdict: {}", report.verdict.as_str());
    println!(" n  parity  lambda(theta)  q_n  expected  verdict");
    for row in &report.levels {
        println!(
            "{:>2}  {:<6}  {:>13}  {:>3}  {:>8}  {}",
            row.n,
            row.parity.as_str(),
            row.lambda_theta.map_or("-".into(), |l| l.to_string()),
            row.q_n.unwrap_or(0),
            row.expected_lambda.unwrap_or(0),
            row.verdict.as_str()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
