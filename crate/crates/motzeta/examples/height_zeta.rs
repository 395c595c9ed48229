//! The motivic height zeta function: classes of moduli of rational curves
//! on a toric surface, the Hirzebruch closed form, and the rationality
//! check.
//!
//! Run with: cargo run --example height_zeta

use motzeta::curves::{
    height_series, hirzebruch_closed_form, hirzebruch_expected_value,
    hirzebruch_theorem_check,
};
use motzeta::fan;
use motzeta::rational::rat;

fn main() {
    let m = 1usize;
    let f = fan::hirzebruch(m as i64).unwrap();
    let hs = height_series(&f, 10).unwrap();
    println!("height zeta classes for the Hirzebruch surface F_{m}:");
    println!("d | n_Sigma | [U_0,d]                          | at L=2");
    for d in 0..=10 {
        let class = hs.class(d);
        println!(
            "{d:>2} | {:>7} | {:<32} | {}",
            hs.components(d),
            class.to_string(),
            class.eval_rat(&rat(2)).unwrap()
        );
    }

    // closed-form rational function, coefficientwise identical
    let cf = hirzebruch_closed_form(m, 10);
    for d in 0..=10 {
        assert_eq!(hs.class(d), cf.coeff(d));
    }
    println!("\nclosed-form expansion matches coefficientwise");

    // rationality check: multiply by (1+LT)(1+...+L^{m+1}T^{m+1})(1-LT)^2
    let check = hirzebruch_theorem_check(m, 2 * m + 14).unwrap();
    println!(
        "\nprefactored series: polynomial = {}, first offending degree = {:?}",
        check.is_polynomial, check.first_offending
    );
    println!(
        "residual tail is geometric (ratio L^2 per step {}): {}",
        m + 2,
        check.tail_is_geometric
    );
    println!("value at T = L^-1 (filtration limit): {}", check.value_at_l_inv);
    assert_eq!(check.value_at_l_inv, hirzebruch_expected_value());
    println!("          = L^2 (1 - L^-2)^2, independent of m");
}
