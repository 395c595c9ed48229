//! Brute-force point counting over prime fields as ground truth for the
//! symbolic classes, under the specialization L -> p.
//!
//! Run with: cargo run --example finite_field_oracle

use motzeta::curves::u0d_class;
use motzeta::fan;
use motzeta::fforacle::{check_ff_euler, closed_points_p1, count_divisor_tuples, count_u0d};
use motzeta::rational::rat;

fn main() {
    // closed points of P^1 of degree n over F_2 and F_3
    println!("closed points of degree n on P^1:");
    for p in [2u64, 3] {
        let counts: Vec<u64> = (1..=6).map(|n| closed_points_p1(p, n)).collect();
        println!("  F_{p}: {counts:?}");
    }

    // moduli counts vs symbolic classes
    let f = fan::builtin("p2").unwrap();
    println!("\nmorphisms P^1 -> P^2 meeting the torus, by anticanonical degree:");
    for d in 0..=6 {
        let class = u0d_class(&f, d).unwrap();
        for p in [2u64, 3] {
            let counted = count_u0d(&f, p, d).unwrap();
            let specialized = class.eval_rat(&rat(p as i64)).unwrap();
            assert_eq!(specialized, rat(counted as i64));
        }
        println!(
            "  d={d}: [U_0,{d}] = {class}  (counts match at q=2 and q=3)"
        );
    }

    // raw divisor-tuple counting against an obstruction set
    let b = f.b_sigma().unwrap();
    let n = count_divisor_tuples(&b, 2, &[1, 1, 1]).unwrap();
    println!("\ntriples of rational points on P^1(F_2) with no common point: {n}");

    // the finite-field Euler product factorizations, coefficient by
    // coefficient
    assert!(check_ff_euler(&b, 2, 4).unwrap());
    assert!(check_ff_euler(&b, 3, 4).unwrap());
    println!("finite-field Euler products over P_B and Q_B verified to total degree 4");
}
