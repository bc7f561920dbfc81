//! Round trip of elements through the JSON fixture format, plus a small
//! experiment report in both output formats.

use iwasawa::encoding::{encode_finite, encode_series, parse_element, Element};
use iwasawa::experiment::{run_nonordinary, ExperimentConfig};
use iwasawa::lambda::cyclo_phi_at;
use iwasawa::{PAdicRing, SeriesElt};

pub fn run_example() -> iwasawa::Result<()> {
    let r = PAdicRing::new(3, 10)?;
    let phi2 = cyclo_phi_at(r, 2, 2)?;
    let text = encode_finite(&phi2);
    println!("{text}");
    if let Element::Finite(x) = parse_element(&text)? {
        println!("Phi_2 from JSON: {}", x.invariants());
    }

    let s = SeriesElt::from_signed(r, 4, &[3, -1])?;
    println!("{}", encode_series(&s));

    let cfg = ExperimentConfig {
        n_max: 3,
        trials: 2,
        a_p: Some(0),
        mu: Some(0),
        lambda: Some(1),
        ..Default::default()
    };
    let report = run_nonordinary(&cfg)?;
    print!("{}", report.to_csv());
    println!("counts: {:?}", report.counts);
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
