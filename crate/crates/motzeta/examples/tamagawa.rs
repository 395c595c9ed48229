//! The motivic Tamagawa constant evaluated two ways: the Euler-product
//! exponential and the Moebius sum.
//!
//! Run with: cargo run --example tamagawa

use motzeta::curves::tamagawa_constant;
use motzeta::fan::{self, alpha_star_exact};
use motzeta::rational::display;

fn main() {
    let l = 4.0;
    println!("Tamagawa constants at L = {l}, truncation 16:");
    println!("{:<14} {:>10} {:>14} {:>14} {:>12}", "fan", "alpha*", "exp path", "mu-sum path", "difference");
    for name in ["p1", "p2", "p3", "p1xp1", "hirzebruch:1", "hirzebruch:2"] {
        let f = fan::builtin(name).unwrap();
        let rep = tamagawa_constant(&f, l, 16).unwrap();
        println!(
            "{:<14} {:>10} {:>14.9} {:>14.9} {:>12.3e}",
            name,
            display(&rep.alpha_star),
            rep.exp_path,
            rep.mu_sum_path,
            rep.difference
        );
    }

    // the Hirzebruch value has a closed form: L^2 (1-L^-2)^2 / (2(m+2))
    for m in 0..=2i64 {
        let f = fan::hirzebruch(m).unwrap();
        let rep = tamagawa_constant(&f, l, 16).unwrap();
        let closed = l * l * (1.0 - l.powi(-2)).powi(2) / (2.0 * (m as f64 + 2.0));
        println!(
            "F_{m}: two-path value {:.9} vs closed form {closed:.9} (alpha* = {})",
            rep.exp_path,
            display(&alpha_star_exact(&f).unwrap())
        );
    }
}
