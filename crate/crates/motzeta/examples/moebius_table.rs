//! Motivic Moebius tables for P^1 and the classes of divisor tuples with
//! prescribed disjointness, by two independent paths.
//!
//! Run with: cargo run --example moebius_table

use motzeta::fan;
use motzeta::moebius::{
    mobius_table, mu_x_single, partition_closed_form, xb_classes, XbPath,
};
use motzeta::CellularClass;

fn main() {
    // univariate: coefficients of 1/Z_{P^1}
    let mu1 = mu_x_single(&CellularClass::p1(), 4).unwrap();
    println!("mu_{{P^1}}: {:?}", mu1.iter().map(|c| c.to_string()).collect::<Vec<_>>());

    // the Hirzebruch obstruction set: mu factors through the two ray pairs
    let f = fan::builtin("hirzebruch:2").unwrap();
    let b = f.b_sigma().unwrap();
    let mu = mobius_table(&b, 6).unwrap();
    println!("\nmu table for the Hirzebruch obstruction set (nonzero entries, |e| <= 6):");
    print!("{}", mu.to_csv());

    let closed = partition_closed_form(&b, 6).unwrap().unwrap();
    assert_eq!(mu, closed);
    println!("matches the pair-product closed form");

    // classes of divisor tuples: Euler product over Q_B vs convolution
    let via_q = xb_classes(&b, 4, XbPath::EulerQb).unwrap();
    let via_conv = xb_classes(&b, 4, XbPath::Convolution).unwrap();
    assert_eq!(via_q, via_conv);
    println!("\n[(P^1)^B_d] classes to total degree 4 (both paths agree):");
    for (d, c) in via_q.iter() {
        println!("  {d:?}: {c}");
    }
}
