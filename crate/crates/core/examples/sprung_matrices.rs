//! The matrices `C_n` and their products `H_n`, compared with the closed
//! form available when `a_p = 0`.

use iwasawa::sprung::{c_matrix, h_matrix, h_matrix_closed_form};
use iwasawa::PAdicRing;

pub fn run_example() -> iwasawa::Result<()> {
    let r = PAdicRing::new(3, 8)?;
    println!("C_1 = {}", c_matrix(1, r.zero())?);
    for n in 1..=3 {
        let h = h_matrix(n, r.zero())?;
        let closed = h_matrix_closed_form(r, n)?;
        println!("H_{n} matches closed form: {}", h == closed);
    }

    let a_p = r.element(3);
    let h = h_matrix(3, a_p)?;
    let closed = h_matrix_closed_form(r, 3)?;
    println!(
        "a_p = 3: H_3 congruent mod p: {}",
        h.congruent_mod_p_power(&closed, 1)
    );
    println!("det H_2 = {}", h_matrix(2, a_p)?.determinant());
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwasawa::Result<()> {
    run_example()
}
