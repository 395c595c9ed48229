#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

//! Exact symbolic computation of motivic height zeta functions of split
//! smooth projective toric varieties over the rational curve.
//!
//! The engine works in the ring of Laurent polynomials in the Lefschetz
//! class `L = [A^1]` with exact rational coefficients. It provides:
//!
//! * Kapranov zeta functions of cellular classes and the associated
//!   point-count sequences `Phi_n` / `Psi_n` ([`euler`]);
//! * motivic Euler products `exp(sum_n Psi_n(X) log P(T^n))` computed by two
//!   independent algorithms ([`euler::euler_product`]);
//! * fans, their obstruction sets `B_Sigma`, Boolean Moebius functions and
//!   the polynomials `P_B`, `Q_B` ([`fan`], [`obstruction`]);
//! * motivic Moebius tables `mu_B` for `X = P^1` and the classes of tuples
//!   of divisors with controlled common zeros ([`moebius`]);
//! * the height zeta series `sum_d [U_{0,d}] T^d`, the Hirzebruch closed
//!   form, and the motivic Tamagawa constant ([`curves`]);
//! * a brute-force finite-field oracle that validates every class by point
//!   counting under the specialization `L -> q` ([`fforacle`]).
//!
//! See the crate examples for runnable tours of each capability, and the
//! `motzeta` binary for a small command-line surface.

pub mod cellular;
pub mod cli;
pub mod curves;
pub mod error;
pub mod euler;
pub mod fan;
pub mod fforacle;
pub mod lattice;
pub mod laurent;
pub mod moebius;
pub mod multiseries;
pub mod obstruction;
pub mod rational;
pub mod series;

pub use cellular::CellularClass;
pub use curves::HeightSeries;
pub use error::{Error, Result};
pub use fan::Fan;
pub use laurent::LaurentPoly;
pub use moebius::MultiDegreeTable;
pub use multiseries::PowerSeriesMulti;
pub use obstruction::ObstructionSet;
pub use rational::Rat;
pub use series::PowerSeries1;
