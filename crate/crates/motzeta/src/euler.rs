//! Kapranov zeta functions, the `Phi_n` / `Psi_n` sequences, and motivic
//! Euler products.
//!
//! For a class `X` the Kapranov zeta function is `Z_X(T) = sum [X^{<n>}] T^n`
//! over symmetric powers. The sequences are tied together by
//!
//! * `sum Phi_n(X) T^n = T d/dT log Z_X(T)`,
//! * `Phi_n(X) = sum_{d|n} d Psi_d(X)`,
//!
//! and the motivic Euler product attached to a series `P` with `P(0) = 1` is
//! `exp(sum_n Psi_n(X) log P(T^n))`. Two independent algorithms compute it:
//! a direct exp/log evaluation and the binomial closed-form expansion over
//! nondecreasing frequency tuples; they must agree coefficientwise.

use crate::cellular::CellularClass;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multiseries::PowerSeriesMulti;
use crate::rational::{self, divisors, moebius_int};
use crate::series::PowerSeries1;

/// The sequences `Phi_1..Phi_N` and `Psi_1..Psi_N` of a class.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiPsiSeq {
    n_max: usize,
    phi: Vec<LaurentPoly>,
    psi: Vec<LaurentPoly>,
}

impl PhiPsiSeq {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Phi_n`, `1 <= n <= N`.
    pub fn phi(&self, n: usize) -> &LaurentPoly {
        assert!((1..=self.n_max).contains(&n));
        &self.phi[n - 1]
    }

    /// `Psi_n`, `1 <= n <= N`.
    pub fn psi(&self, n: usize) -> &LaurentPoly {
        assert!((1..=self.n_max).contains(&n));
        &self.psi[n - 1]
    }

    /// Build directly from a `Psi` sequence (used by randomized tests).
    pub fn from_psi(psi: Vec<LaurentPoly>) -> Self {
        let n_max = psi.len();
        let mut phi = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let mut acc = LaurentPoly::zero();
            for d in divisors(n as u64) {
                acc = &acc + &psi[d as usize - 1].scale(&rational::rat(d as i64));
            }
            phi.push(acc);
        }
        Self { n_max, phi, psi }
    }
}

/// Kapranov motivic zeta function of a cellular class, truncated at `T^D`.
///
/// By multiplicativity under cell decompositions,
/// `Z = prod_i (1 - L^i T)^{-c_i}`; the coefficient of `T^n` is the class of
/// the n-th symmetric power. Negative multiplicities are rejected: use
/// [`kapranov_zeta_virtual`] when the input is deliberately virtual.
pub fn kapranov_zeta(x: &CellularClass, trunc: usize) -> Result<PowerSeries1> {
    if let Some((k, c)) = x.cells().find(|(_, c)| **c < 0) {
        return Err(Error::NegativeMultiplicity { exp: *k, mult: *c });
    }
    Ok(kapranov_zeta_virtual(x, trunc))
}

/// Kapranov zeta of a possibly virtual cellular class.
pub fn kapranov_zeta_virtual(x: &CellularClass, trunc: usize) -> PowerSeries1 {
    let mut z = PowerSeries1::one(trunc);
    for (k, c) in x.cells() {
        let factor = PowerSeries1::one_minus(
            trunc,
            1,
            LaurentPoly::monomial(i64::from(*k), rational::rat(1)),
        );
        let pw = factor.pow(c.unsigned_abs() as u32);
        if *c > 0 {
            z = z.mul(&pw.inverse().expect("unit constant term"));
        } else {
            z = z.mul(&pw);
        }
    }
    z
}

/// `Phi_n` and `Psi_n` for `1 <= n <= n_max`, from the log-derivative of the
/// Kapranov zeta function; `Psi` is recovered by Moebius inversion over
/// divisors.
pub fn phi_psi(x: &CellularClass, n_max: usize) -> PhiPsiSeq {
    assert!(n_max >= 1);
    let z = kapranov_zeta_virtual(x, n_max);
    let lder = z.log_derivative_t().expect("zeta has constant term 1");
    let phi: Vec<LaurentPoly> = (1..=n_max).map(|n| lder.coeff(n).clone()).collect();
    let mut psi = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        // Psi_n = (1/n) sum_{d|n} moebius(n/d) Phi_d
        let mut acc = LaurentPoly::zero();
        for d in divisors(n as u64) {
            let m = moebius_int(n as u64 / d);
            if m != 0 {
                acc = &acc + &phi[d as usize - 1].scale(&rational::rat(m));
            }
        }
        psi.push(acc.scale(&rational::rat_frac(1, n as i64)));
    }
    PhiPsiSeq {
        n_max,
        phi,
        psi,
    }
}

/// `Phi_n` from the symmetric power classes alone:
/// `Phi_n = sum_{k=1}^n (-1)^{k+1} (n/k) sum_{m_1+...+m_k=n} prod [X^{<m_i>}]`
/// with the inner sum over compositions into positive parts. Cross-check
/// path against [`phi_psi`].
pub fn phi_explicit(sym_powers: &[LaurentPoly], n: usize) -> Result<LaurentPoly> {
    if sym_powers.len() < n + 1 {
        return Err(Error::InsufficientClasses {
            need: n + 1,
            got: sym_powers.len(),
        });
    }
    let mut total = LaurentPoly::zero();
    for k in 1..=n {
        // sum over compositions of n into k positive parts of the product
        let mut comp_sum = LaurentPoly::zero();
        let mut parts = vec![0usize; k];
        compositions(n, k, 0, &mut parts, &mut |parts| {
            let mut prod = LaurentPoly::one();
            for &m in parts {
                prod = &prod * &sym_powers[m];
            }
            comp_sum = &comp_sum + &prod;
        });
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let weight = rational::rat_frac(sign * n as i64, k as i64);
        total = &total + &comp_sum.scale(&weight);
    }
    Ok(total)
}

fn compositions(
    n: usize,
    k: usize,
    idx: usize,
    parts: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == 1 {
        parts[idx] = n;
        f(parts);
        return;
    }
    for first in 1..=n - k + 1 {
        parts[idx] = first;
        compositions(n - first, k - 1, idx + 1, parts, f);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerAlgo {
    /// `exp(sum_n Psi_n log P(T^n))` via the series exp/log kernels.
    Direct,
    /// Binomial closed form: product over frequencies `f` of
    /// `sum_c binom(Psi_f, c) (P(T^f) - 1)^c`, the grouped expansion over
    /// nondecreasing tuples.
    ClosedForm,
}

/// Motivic Euler product `exp(sum_{n>=1} Psi_n(X) log P(T_e^n))`, truncated
/// at total degree `trunc`.
///
/// `P` must have constant term 1. The `Psi` sequence must reach
/// `trunc / valuation(P - 1)` so every contributing frequency is available.
pub fn euler_product(
    psi: &PhiPsiSeq,
    p: &PowerSeriesMulti,
    trunc: usize,
    algo: EulerAlgo,
) -> Result<PowerSeriesMulti> {
    if !p.constant_term().is_one() {
        return Err(Error::BadConstantTerm {
            expected: "1".into(),
            found: p.constant_term().to_string(),
        });
    }
    let p = if p.trunc() > trunc { p.truncated(trunc) } else { p.clone() };
    let pm1 = p.sub(&PowerSeriesMulti::one(p.nvars(), p.trunc()));
    let val = match pm1.valuation() {
        // P = 1: the product is 1 at any truncation.
        None => return Ok(PowerSeriesMulti::one(p.nvars(), trunc)),
        Some(v) => v.max(1),
    };
    let n_needed = trunc / val;
    if psi.n_max() < n_needed {
        return Err(Error::InvalidInput(format!(
            "Psi sequence reaches {}, need {} for truncation {} at valuation {}",
            psi.n_max(),
            n_needed,
            trunc,
            val
        )));
    }
    match algo {
        EulerAlgo::Direct => {
            let mut acc = PowerSeriesMulti::zero(p.nvars(), trunc);
            for n in 1..=n_needed.max(1) {
                let pn = p.scale_exponents(n as u32);
                let lg = pn.log()?;
                acc = acc.add(&lg.scale(psi.psi(n)));
            }
            acc.exp()
        }
        EulerAlgo::ClosedForm => {
            let mut out = PowerSeriesMulti::one(p.nvars(), trunc);
            for f in 1..=n_needed.max(1) {
                // (1 + u)^{Psi_f} with u = P(T^f) - 1, val(u) >= f*val
                let u = p
                    .scale_exponents(f as u32)
                    .sub(&PowerSeriesMulti::one(p.nvars(), trunc));
                let c_max = trunc / (f * val);
                let mut factor = PowerSeriesMulti::one(p.nvars(), trunc);
                let mut upow = PowerSeriesMulti::one(p.nvars(), trunc);
                for c in 1..=c_max {
                    upow = upow.mul(&u);
                    let b = psi.psi(f).binomial(c as u32);
                    factor = factor.add(&upow.scale(&b));
                }
                out = out.mul(&factor);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiseries;
    use crate::rational::{rat, rat_frac};

    fn l() -> LaurentPoly {
        LaurentPoly::lefschetz()
    }

    #[test]
    fn kapranov_examples() {
        // P^1: coefficient of T^n is [P^n]
        let z = kapranov_zeta(&CellularClass::p1(), 6).unwrap();
        for n in 0..=6 {
            assert_eq!(z.coeff(n), &LaurentPoly::projective_space(n as u32));
        }
        // A^d: sum L^{nd} T^n
        let z = kapranov_zeta(&CellularClass::affine(3), 5).unwrap();
        for n in 0..=5 {
            assert_eq!(z.coeff(n), &l().pow(3 * n as u32));
        }
        // point: 1/(1-T)
        let z = kapranov_zeta(&CellularClass::point(), 5).unwrap();
        for n in 0..=5 {
            assert_eq!(z.coeff(n), &LaurentPoly::one());
        }
        // virtual input rejected without the explicit entry point
        assert!(kapranov_zeta(&CellularClass::torus(1), 3).is_err());
        let zv = kapranov_zeta_virtual(&CellularClass::torus(1), 3);
        assert_eq!(
            zv.coeff(1),
            &(&l() - &LaurentPoly::one())
        );
    }

    #[test]
    fn phi_psi_p1() {
        let seq = phi_psi(&CellularClass::p1(), 6);
        // Phi_1 = Psi_1 = [X]
        assert_eq!(seq.phi(1), &CellularClass::p1().class_value());
        assert_eq!(seq.psi(1), &CellularClass::p1().class_value());
        // Phi_n(P^1) = 1 + L^n
        for n in 1..=6 {
            assert_eq!(seq.phi(n), &(&LaurentPoly::one() + &l().pow(n as u32)));
        }
        // Psi_2(P^1) = (L^2 - L)/2
        let mut expect = LaurentPoly::zero();
        expect.add_term(2, rat_frac(1, 2));
        expect.add_term(1, rat_frac(-1, 2));
        assert_eq!(seq.psi(2), &expect);
        // Phi_n = sum_{d|n} d Psi_d, exactly
        for n in 1..=6u64 {
            let mut acc = LaurentPoly::zero();
            for d in divisors(n) {
                acc = &acc + &seq.psi(d as usize).scale(&rat(d as i64));
            }
            assert_eq!(&acc, seq.phi(n as usize));
        }
    }

    #[test]
    fn phi_explicit_matches() {
        // P^1, n=2: 2[P^2] - [P^1]^2 = 1 + L^2
        let powers: Vec<LaurentPoly> =
            (0..=4).map(LaurentPoly::projective_space).collect();
        let phi2 = phi_explicit(&powers, 2).unwrap();
        assert_eq!(phi2, &LaurentPoly::one() + &l().pow(2));
        // A^1, n=3: 3L^3 - 3L*L^2 + L^3 = L^3
        let powers: Vec<LaurentPoly> = (0..=3).map(|n| l().pow(n)).collect();
        let phi3 = phi_explicit(&powers, 3).unwrap();
        assert_eq!(phi3, l().pow(3));
        assert_eq!(phi_explicit(&powers, 1).unwrap(), l());
        assert!(phi_explicit(&powers[..2], 3).is_err());
    }

    #[test]
    fn phi_explicit_matches_phi_psi_randomized() {
        // deterministic small sweep over cellular classes
        for (cells, dim) in [
            (vec![(0u32, 1i64)], 0),
            (vec![(0, 2), (1, 1)], 1),
            (vec![(0, 1), (1, 2), (2, 1)], 2),
            (vec![(0, 1), (2, 3)], 2),
        ] {
            let x = CellularClass::new(cells, dim);
            let z = kapranov_zeta(&x, 6).unwrap();
            let seq = phi_psi(&x, 6);
            for n in 1..=6 {
                let via_formula = phi_explicit(z.coeffs(), n).unwrap();
                assert_eq!(&via_formula, seq.phi(n), "n={n}");
            }
        }
    }

    #[test]
    fn filtration_bound() {
        // vdim(Phi_n), vdim(Psi_n) <= n*dim(X)
        for (x, dim) in [
            (CellularClass::p1(), 1i64),
            (CellularClass::pn(3), 3),
            (CellularClass::new(vec![(0, 1), (2, 5)], 2), 2),
        ] {
            let seq = phi_psi(&x, 5);
            for n in 1..=5 {
                assert!(seq.phi(n).vdim().unwrap() <= n as i64 * dim);
                assert!(seq.psi(n).vdim().unwrap() <= n as i64 * dim);
            }
        }
    }

    #[test]
    fn phi_multiplicative_on_products() {
        let x = CellularClass::p1();
        let y = CellularClass::pn(2);
        let xy = x.product(&y);
        let sx = phi_psi(&x, 4);
        let sy = phi_psi(&y, 4);
        let sxy = phi_psi(&xy, 4);
        for n in 1..=4 {
            assert_eq!(sxy.phi(n), &(sx.phi(n) * sy.phi(n)));
        }
    }

    #[test]
    fn euler_product_reconstructs_zeta() {
        // euler_product(Psi(P^1), 1/(1-T)) = Z_{P^1}(T)
        let d = 10;
        let seq = phi_psi(&CellularClass::p1(), d);
        let one = PowerSeriesMulti::one(1, d);
        let mut t = PowerSeriesMulti::zero(1, d);
        t.set_coeff(vec![1], LaurentPoly::one());
        let p = one.sub(&t).inverse().unwrap();
        for algo in [EulerAlgo::Direct, EulerAlgo::ClosedForm] {
            let z = euler_product(&seq, &p, d, algo).unwrap();
            for n in 0..=d {
                assert_eq!(
                    z.coeff(&[n as u32]),
                    LaurentPoly::projective_space(n as u32),
                    "{algo:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn euler_product_trivial_cases() {
        // all Psi_n = 0 -> 1
        let seq = PhiPsiSeq::from_psi(vec![LaurentPoly::zero(); 8]);
        let mut p = PowerSeriesMulti::one(2, 8);
        p.set_coeff(vec![1, 0], l());
        let z = euler_product(&seq, &p, 8, EulerAlgo::Direct).unwrap();
        assert_eq!(z, PowerSeriesMulti::one(2, 8));
        // constant term != 1 rejected
        let bad = PowerSeriesMulti::zero(1, 4);
        assert!(euler_product(&seq, &bad, 4, EulerAlgo::Direct).is_err());
    }

    #[test]
    fn euler_product_reciprocal_zeta() {
        // P = 1 - T1 T2, X = P^1 -> (1 - T1T2)(1 - L T1T2)
        let d = 8;
        let seq = phi_psi(&CellularClass::p1(), d);
        let mut p = PowerSeriesMulti::one(2, d);
        p.set_coeff(vec![1, 1], LaurentPoly::from_int(-1));
        let z = euler_product(&seq, &p, d, EulerAlgo::Direct).unwrap();
        let mut expect = PowerSeriesMulti::one(2, d);
        expect.set_coeff(vec![1, 1], -(&LaurentPoly::one() + &l()));
        expect.set_coeff(vec![2, 2], l());
        assert_eq!(z, expect);
        let z2 = euler_product(&seq, &p, d, EulerAlgo::ClosedForm).unwrap();
        assert_eq!(z2, expect);
    }

    #[test]
    fn algo_agreement_small_sweep() {
        // hand-picked P with valuation 1 and 2, two variables
        let d = 7;
        let x = CellularClass::new(vec![(0, 1), (1, 2)], 1);
        let seq = phi_psi(&x, d);
        for val2 in [false, true] {
            let mut p = PowerSeriesMulti::one(2, d);
            if val2 {
                p.set_coeff(vec![1, 1], l());
                p.set_coeff(vec![0, 2], LaurentPoly::from_int(3));
            } else {
                p.set_coeff(vec![1, 0], &l() - &LaurentPoly::one());
                p.set_coeff(vec![0, 1], LaurentPoly::from_int(2));
                p.set_coeff(vec![2, 1], l().pow(2));
            }
            let a = euler_product(&seq, &p, d, EulerAlgo::Direct).unwrap();
            let b = euler_product(&seq, &p, d, EulerAlgo::ClosedForm).unwrap();
            assert_eq!(a, b);
        }
        let _ = multiseries::total_degree(&[1, 2]);
    }
}
