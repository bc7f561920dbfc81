//! mu and lambda of a few elements of `Lambda_n` and of truncated series.

use iwasawa::lambda::{cyclo_phi_at, omega_pm};
use iwasawa::{invariants, q, FiniteLevelElt, PAdicRing, SeriesElt, Sign};

pub fn run_example() -> iwasawa::Result<()> {
    let r = PAdicRing::new(5, 20)?;

    // p (1 + T) at level 1
    let x = FiniteLevelElt::from_polynomial(r, 1, &[5, 5]);
    println!("p(1+T)           : {}", invariants(&x));

    for n in 1..=3 {
        let phi = cyclo_phi_at(r, n, n)?;
        println!("Phi_{n} at level {n} : {}", phi.invariants());
    }

    // the group basis gives the same mu
    let g = x.to_group_coeffs();
    let min_val = g
        .iter()
        .map(|c| c.valuation())
        .min()
        .unwrap_or(r.precision());
    println!("group-basis mu   : {min_val}");

    let s = SeriesElt::from_signed(r, 30, &[25, 5, 1])?;
    println!("25 + 5T + T^2    : {}", s.invariants()?);
    println!("  at level 1     : {}", s.reduce_to_level(1).invariants());

    for n in 1..=4 {
        let w = omega_pm(r, n, Sign::of_parity(n + 1), 625)?;
        println!("omega_{n}^eps : {}  q_{n} = {}", w.invariants()?, q(5, n));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
