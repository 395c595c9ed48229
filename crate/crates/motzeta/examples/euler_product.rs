//! Motivic Euler products exp(sum_n Psi_n(X) log P(T^n)) computed by two
//! independent algorithms: direct exp/log and the binomial closed form.
//!
//! Run with: cargo run --example euler_product

use motzeta::cellular::CellularClass;
use motzeta::euler::{euler_product, phi_psi, EulerAlgo};
use motzeta::laurent::LaurentPoly;
use motzeta::multiseries::PowerSeriesMulti;

fn main() {
    let trunc = 8usize;
    let psi = phi_psi(&CellularClass::p1(), trunc);

    // P = 1/(1-T): the Euler product over the points of P^1 rebuilds the
    // Kapranov zeta function
    let mut t = PowerSeriesMulti::zero(1, trunc);
    t.set_coeff(vec![1], LaurentPoly::one());
    let geom = PowerSeriesMulti::one(1, trunc).sub(&t).inverse().unwrap();
    let z = euler_product(&psi, &geom, trunc, EulerAlgo::Direct).unwrap();
    println!("Euler product of 1/(1-T) over P^1:");
    for n in 0..=trunc {
        println!("  T^{n}: {}", z.coeff(&[n as u32]));
    }

    // a two-variable P, both algorithms, exact agreement
    let mut p = PowerSeriesMulti::one(2, trunc);
    p.set_coeff(vec![1, 1], LaurentPoly::from_int(-1));
    let direct = euler_product(&psi, &p, trunc, EulerAlgo::Direct).unwrap();
    let closed = euler_product(&psi, &p, trunc, EulerAlgo::ClosedForm).unwrap();
    assert_eq!(direct, closed);
    println!("\nEuler product of 1 - T0*T1 over P^1 (both algorithms agree):");
    println!("  {direct}");
    println!("  (the reciprocal of the zeta function in the variable T0*T1)");
}
