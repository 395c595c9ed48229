//! Fans and their derived combinatorics: validation, the obstruction set
//! B_Sigma, Boolean Moebius values, P_B and Q_B, Picard rank, the degree
//! monoid, and alpha*.
//!
//! Run with: cargo run --example fan_combinatorics

use motzeta::fan::{self, alpha_star, dual_cone_decomposition};
use motzeta::obstruction::mask_to_vec;

fn main() {
    for name in ["p2", "p1xp1", "hirzebruch:2"] {
        let f = fan::builtin(name).unwrap();
        let report = f.validate();
        println!("== {name} ==");
        println!("rays: {:?}", f.rays());
        println!("max cones: {:?}", f.max_cones());
        println!("smooth: {}, complete: {}", report.smooth, report.complete);
        println!("Picard rank: {}", f.pic_rank());

        let b = f.b_sigma().unwrap();
        let bmin: Vec<Vec<u32>> = b
            .bmin()
            .iter()
            .map(|&m| mask_to_vec(m, f.num_rays()))
            .collect();
        println!("B^min: {bmin:?}");
        println!("P_B = {}", b.p_poly());
        println!(
            "valuation of P_B - 1: {}",
            b.valuation_p_minus_one().unwrap()
        );

        // sample Boolean Moebius values, two computation paths
        let full = (1u32 << f.num_rays()) - 1;
        println!(
            "mu0(full) = {} (inversion) = {} (crosscut)",
            b.mu0_inversion(full),
            b.mu0_crosscut(full)
        );

        // degree monoid and alpha*
        for d in 0..=6 {
            let n = f.n_sigma(d);
            if n > 0 {
                println!("n_Sigma({d}) = {n}: {:?}", f.nstar_enumerate(d));
            }
        }
        let dec = dual_cone_decomposition(&f).unwrap();
        println!(
            "dual cone decomposition degrees: {:?}, period {}",
            dec.top_cone_degrees,
            dec.period()
        );
        println!("alpha* = {}", alpha_star(&f).unwrap());
        println!();
    }

    // JSON round trip through the same schema the CLI accepts
    let f = fan::builtin("hirzebruch:1").unwrap();
    let json = f.to_json();
    println!("fan JSON:\n{json}");
    assert_eq!(fan::Fan::from_json(&json).unwrap(), f);
}
