//! Motivic Moebius tables for `X = P^1`: the function `mu_B` defined by
//! inverting
//!
//! `[(P^1)^B_d] = sum_{d' <= d} mu_B(d') prod_e [P^{d_e - d'_e}]`
//!
//! and the classes `[(P^1)^B_d]` of tuples of effective divisors avoiding
//! the common-zero loci prescribed by `B`. The table is computed by the
//! Euler product over `P_B` (`Z_mu = exp(sum_n Psi_n(P^1) log P_B(T^n))`);
//! the classes come either from the same engine applied to `Q_B` or from
//! convolving the table with products of projective spaces. The two paths
//! must agree coefficientwise, and every `mu` entry must be integral even
//! though the intermediate `Psi` values are genuinely rational — both are
//! enforced, not assumed.

use crate::cellular::CellularClass;
use crate::error::{Error, Result};
use crate::euler::{euler_product, kapranov_zeta, phi_psi, EulerAlgo};
use crate::laurent::LaurentPoly;
use crate::multiseries::{next_vector_bounded, total_degree, PowerSeriesMulti};
use crate::obstruction::ObstructionSet;
use crate::series::PowerSeries1;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Finite map from degree vectors (total degree <= trunc) to classes.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiDegreeTable {
    nvars: usize,
    trunc: usize,
    values: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl MultiDegreeTable {
    pub fn from_series(s: &PowerSeriesMulti) -> Self {
        Self {
            nvars: s.nvars(),
            trunc: s.trunc(),
            values: s.iter().map(|(v, c)| (v.clone(), c.clone())).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn value(&self, d: &[u32]) -> LaurentPoly {
        assert!(total_degree(d) <= self.trunc, "lookup beyond truncation");
        self.values.get(d).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Stored (nonzero) entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.values.iter()
    }

    pub fn is_integral(&self) -> bool {
        self.values.values().all(LaurentPoly::is_integral)
    }

    /// Rows `(d-vector, class text)` as CSV with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let cols: Vec<String> = (0..self.nvars).map(|i| format!("d{i}")).collect();
        let _ = writeln!(out, "{},class", cols.join(","));
        for (v, c) in &self.values {
            let vs: Vec<String> = v.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{},\"{}\"", vs.join(","), c);
        }
        out
    }

    /// Rows `[{ "d": [...], "class": "..." }]`.
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|(v, c)| {
                serde_json::json!({
                    "d": v,
                    "class": c.to_string(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }
}

/// Coefficients of `1/Z_X(T)` up to degree `trunc`: the univariate motivic
/// Moebius function of `X`.
pub fn mu_x_single(x: &CellularClass, trunc: usize) -> Result<Vec<LaurentPoly>> {
    let z = kapranov_zeta(x, trunc)?;
    let inv = z.inverse()?;
    Ok(inv.coeffs().to_vec())
}

fn psi_p1_for(trunc: usize, valuation: usize) -> crate::euler::PhiPsiSeq {
    let n_needed = (trunc / valuation.max(1)).max(1);
    phi_psi(&CellularClass::p1(), n_needed)
}

fn p_poly_padded(b: &ObstructionSet, trunc: usize) -> Result<PowerSeriesMulti> {
    if b.bmin().contains(&0) {
        return Err(Error::InvalidInput(
            "obstruction set contains the empty pattern: every tuple is excluded".into(),
        ));
    }
    let p = b.p_poly();
    let mut padded = PowerSeriesMulti::zero(b.ground_size(), trunc);
    for (v, c) in p.iter() {
        if total_degree(v) <= trunc {
            padded.set_coeff(v.clone(), c.clone());
        }
    }
    Ok(padded)
}

/// The Moebius table `mu_B` for `X = P^1` to total degree `trunc`, from the
/// motivic Euler product over `P_B`. Integrality of every entry is checked.
pub fn mobius_table(b: &ObstructionSet, trunc: usize) -> Result<MultiDegreeTable> {
    let p = p_poly_padded(b, trunc)?;
    let val = b.valuation_p_minus_one().unwrap_or(trunc + 1);
    let psi = psi_p1_for(trunc, val);
    let z_mu = euler_product(&psi, &p, trunc, EulerAlgo::Direct)?;
    let table = MultiDegreeTable::from_series(&z_mu);
    for (v, c) in table.iter() {
        if !c.is_integral() {
            return Err(Error::IntegralityFailure {
                at: format!("{v:?}"),
                value: c.to_string(),
            });
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XbPath {
    /// `Z^B = exp(sum_n Psi_n(P^1) log Q_B(T^n))`.
    EulerQb,
    /// Convolution of the `mu_B` table with products of projective spaces,
    /// the defining inversion read forwards.
    Convolution,
}

/// Classes `[(P^1)^B_d]` for all `d` of total degree <= `trunc`.
pub fn xb_classes(b: &ObstructionSet, trunc: usize, path: XbPath) -> Result<MultiDegreeTable> {
    match path {
        XbPath::EulerQb => {
            let q = b.q_series(trunc);
            let val = q
                .sub(&PowerSeriesMulti::one(b.ground_size(), trunc))
                .valuation()
                .unwrap_or(trunc + 1);
            let psi = psi_p1_for(trunc, val);
            let z = euler_product(&psi, &q, trunc, EulerAlgo::Direct)?;
            Ok(MultiDegreeTable::from_series(&z))
        }
        XbPath::Convolution => {
            let mu = mobius_table(b, trunc)?;
            let e = b.ground_size();
            let mut out = PowerSeriesMulti::zero(e, trunc);
            let mut d = vec![0u32; e];
            loop {
                out.set_coeff(d.clone(), xb_class_at(&mu, &d));
                if !next_vector_bounded(&mut d, trunc) {
                    break;
                }
            }
            Ok(MultiDegreeTable::from_series(&out))
        }
    }
}

/// Single class `[(P^1)^B_d]` by convolution against a Moebius table:
/// `sum_{d' <= d} mu(d') prod_e [P^{d_e - d'_e}]`.
pub fn xb_class_at(mu: &MultiDegreeTable, d: &[u32]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (dp, m) in mu.iter() {
        if dp.iter().zip(d).all(|(a, b)| a <= b) {
            let mut prod = m.clone();
            for (a, b) in dp.iter().zip(d) {
                prod = &prod * &LaurentPoly::projective_space(b - a);
            }
            acc = &acc + &prod;
        }
    }
    acc
}

/// Compute both paths and insist they agree; returns the table.
pub fn xb_classes_checked(b: &ObstructionSet, trunc: usize) -> Result<MultiDegreeTable> {
    let via_q = xb_classes(b, trunc, XbPath::EulerQb)?;
    let via_conv = xb_classes(b, trunc, XbPath::Convolution)?;
    if via_q != via_conv {
        let bad = via_q
            .iter()
            .find(|(v, c)| via_conv.value(v) != **c)
            .map(|(v, _)| v.clone())
            .unwrap_or_default();
        return Err(Error::PathDisagreement {
            at: format!("{bad:?}"),
            lhs: via_q.value(&bad).to_string(),
            rhs: via_conv.value(&bad).to_string(),
        });
    }
    Ok(via_q)
}

/// Closed form of the table when `B^min` is a partition antichain (pairwise
/// disjoint patterns): `mu(d) = prod_gamma mu_{P^1}(c_gamma)` on vectors
/// constant on each part and zero outside, `0` elsewhere. Returns `None`
/// when `B^min` is not of partition shape.
pub fn partition_closed_form(b: &ObstructionSet, trunc: usize) -> Result<Option<MultiDegreeTable>> {
    let parts = b.bmin();
    for (i, &p) in parts.iter().enumerate() {
        for &q in parts.iter().take(i) {
            if p & q != 0 {
                return Ok(None);
            }
        }
    }
    let mu1 = mu_x_single(&CellularClass::p1(), trunc)?;
    let e = b.ground_size();
    let mut out = PowerSeriesMulti::zero(e, trunc);
    // enumerate per-part diagonal degrees
    let mut degrees = vec![0u32; parts.len()];
    loop {
        let mut d = vec![0u32; e];
        for (g, &mask) in parts.iter().enumerate() {
            for i in 0..e {
                if mask >> i & 1 == 1 {
                    d[i] = degrees[g];
                }
            }
        }
        if total_degree(&d) <= trunc {
            let mut val = LaurentPoly::one();
            for &c in &degrees {
                val = &val * &mu1[c as usize];
            }
            out.set_coeff(d, val);
        }
        if !bump(&mut degrees, trunc as u32) {
            break;
        }
    }
    Ok(Some(MultiDegreeTable::from_series(&out)))
}

fn bump(v: &mut [u32], max: u32) -> bool {
    for x in v.iter_mut().rev() {
        if *x < max {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// The zeta side of the defining inversion: check that
/// `[(P^1)^B_d] = sum_{d' <= d} mu(d') prod [P^{d_e-d'_e}]` holds for every
/// `d` in the table (a consistency check wiring the two tables together).
pub fn verify_inversion(
    mu: &MultiDegreeTable,
    xb: &MultiDegreeTable,
    trunc: usize,
) -> Result<()> {
    let e = mu.nvars();
    let mut d = vec![0u32; e];
    loop {
        let lhs = xb.value(&d);
        let rhs = xb_class_at(mu, &d);
        if lhs != rhs {
            return Err(Error::PathDisagreement {
                at: format!("{d:?}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        if !next_vector_bounded(&mut d, trunc) {
            break;
        }
    }
    Ok(())
}

/// `1/Z_{P^1}` coefficients, used widely: `(1, -(1+L), L, 0, 0, ...)`.
pub fn mu_p1(trunc: usize) -> PowerSeries1 {
    let coeffs = mu_x_single(&CellularClass::p1(), trunc).expect("P^1 is honest");
    PowerSeries1::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan;
    use crate::rational::rat;

    fn l() -> LaurentPoly {
        LaurentPoly::lefschetz()
    }

    #[test]
    fn mu_single_examples() {
        // P^1 -> (1, -(1+L), L, 0, ...)
        let mu = mu_x_single(&CellularClass::p1(), 5).unwrap();
        assert_eq!(mu[0], LaurentPoly::one());
        assert_eq!(mu[1], -(&LaurentPoly::one() + &l()));
        assert_eq!(mu[2], l());
        for c in &mu[3..] {
            assert!(c.is_zero());
        }
        // point -> (1, -1, 0, ...)
        let mu = mu_x_single(&CellularClass::point(), 4).unwrap();
        assert_eq!(mu[0], LaurentPoly::one());
        assert_eq!(mu[1], LaurentPoly::from_int(-1));
        assert!(mu[2].is_zero());
        // A^1 -> (1, -L, 0, ...)
        let mu = mu_x_single(&CellularClass::affine(1), 4).unwrap();
        assert_eq!(mu[1], -l());
        assert!(mu[2].is_zero() && mu[3].is_zero());
    }

    #[test]
    fn diagonal_table_for_single_full_pattern() {
        // bmin = {(1,1)}: mu(d,d) = mu_{P^1}(d) on the diagonal, 0 elsewhere
        let b = ObstructionSet::new(2, [0b11]);
        let table = mobius_table(&b, 6).unwrap();
        let mu1 = mu_x_single(&CellularClass::p1(), 6).unwrap();
        let mut d = vec![0u32; 2];
        loop {
            let expect = if d[0] == d[1] {
                mu1[d[0] as usize].clone()
            } else {
                LaurentPoly::zero()
            };
            assert_eq!(table.value(&d), expect, "at {d:?}");
            if !next_vector_bounded(&mut d, 6) {
                break;
            }
        }
        assert_eq!(table.value(&[0, 0]), LaurentPoly::one());
    }

    #[test]
    fn hirzebruch_table_is_pair_product() {
        let fan = fan::hirzebruch(2).unwrap();
        let b = fan.b_sigma().unwrap();
        let table = mobius_table(&b, 8).unwrap();
        let closed = partition_closed_form(&b, 8).unwrap().expect("partition shape");
        assert_eq!(table, closed);
        // spot check: mu(1,1,2,2) = -(1+L) * L
        assert_eq!(table.value(&[1, 1, 2, 2]), &-(&LaurentPoly::one() + &l()) * &l());
    }

    #[test]
    fn xb_paths_agree_and_match_examples() {
        // bmin = {(1,1,1)}, d = (1,1,1): (1+L)^3 - (1+L) = L^3 + 3L^2 + 2L
        let b = ObstructionSet::new(3, [0b111]);
        let xb = xb_classes_checked(&b, 5).unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(3, rat(1));
        expect.add_term(2, rat(3));
        expect.add_term(1, rat(2));
        assert_eq!(xb.value(&[1, 1, 1]), expect);
        // d = 0 -> 1
        assert_eq!(xb.value(&[0, 0, 0]), LaurentPoly::one());
        // P^1 x P^1 obstruction set, d = (1,1,0,0) -> L^2 + L
        let fan = fan::builtin("p1xp1").unwrap();
        let b = fan.b_sigma().unwrap();
        let xb = xb_classes_checked(&b, 4).unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(2, rat(1));
        expect.add_term(1, rat(1));
        assert_eq!(xb.value(&[1, 1, 0, 0]), expect);
    }

    #[test]
    fn inversion_holds() {
        let b = ObstructionSet::new(3, [0b011, 0b101]);
        let mu = mobius_table(&b, 5).unwrap();
        let xb = xb_classes(&b, 5, XbPath::EulerQb).unwrap();
        verify_inversion(&mu, &xb, 5).unwrap();
    }

    #[test]
    fn filtration_decay() {
        // vdim(mu(e)) <= floor(sum e / val(P_B - 1))
        for name in ["p2", "p1xp1", "hirzebruch:2"] {
            let fan = fan::builtin(name).unwrap();
            let b = fan.b_sigma().unwrap();
            let table = mobius_table(&b, 8).unwrap();
            let val = b.valuation_p_minus_one().unwrap();
            for (v, c) in table.iter() {
                if !c.is_zero() {
                    let bound = total_degree(v) / val;
                    assert!(
                        c.vdim().unwrap() <= bound as i64,
                        "{name} at {v:?}: vdim {} > {bound}",
                        c.vdim().unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn integrality_enforced() {
        for name in ["p1", "p2", "p3", "p1xp1", "hirzebruch:1", "hirzebruch:3"] {
            let fan = fan::builtin(name).unwrap();
            let b = fan.b_sigma().unwrap();
            let table = mobius_table(&b, 8).unwrap();
            assert!(table.is_integral());
        }
    }

    #[test]
    fn table_dumps() {
        let b = ObstructionSet::new(2, [0b11]);
        let table = mobius_table(&b, 2).unwrap();
        let csv = table.to_csv();
        assert!(csv.starts_with("d0,d1,class"));
        assert!(csv.contains("1,1,\"-L - 1\""));
        let json = table.to_json();
        assert!(json.contains("\"class\""));
    }
}
