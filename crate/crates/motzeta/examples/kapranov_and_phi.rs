//! Kapranov zeta functions of cellular classes and the Phi/Psi sequences.
//!
//! Run with: cargo run --example kapranov_and_phi

use motzeta::cellular::CellularClass;
use motzeta::euler::{phi_explicit, phi_psi, kapranov_zeta};

fn main() {
    // Z_{P^1}(T) = 1/((1-T)(1-LT)): the T^n coefficient is [P^n]
    let p1 = CellularClass::p1();
    let z = kapranov_zeta(&p1, 6).unwrap();
    println!("Kapranov zeta of P^1 (symmetric power classes):");
    for n in 0..=6 {
        println!("  [Sym^{n} P^1] = {}", z.coeff(n));
    }

    // Phi_n = T d/dT log Z, Psi_n by Moebius inversion over divisors
    let seq = phi_psi(&p1, 6);
    println!("\nPhi_n(P^1) and Psi_n(P^1):");
    for n in 1..=6 {
        println!("  Phi_{n} = {:<14} Psi_{n} = {}", seq.phi(n).to_string(), seq.psi(n));
    }

    // the explicit composition formula recovers Phi_n from the symmetric
    // powers alone
    let phi3 = phi_explicit(z.coeffs(), 3).unwrap();
    println!("\nPhi_3 from the composition formula: {phi3}");
    assert_eq!(&phi3, seq.phi(3));

    // multiplicativity on products of cellular classes
    let p2 = CellularClass::pn(2);
    let prod = p1.product(&p2);
    let sp = phi_psi(&prod, 3);
    println!("\nPhi_2(P^1 x P^2) = {}", sp.phi(2));
    assert_eq!(sp.phi(2), &(phi_psi(&p1, 2).phi(2) * phi_psi(&p2, 2).phi(2)));
    println!("  equals Phi_2(P^1) * Phi_2(P^2) as it must");
}
