//! Finite-field ground truth: brute-force enumeration of tuples of effective
//! divisors on `P^1` over `F_p` and of morphism counts, validating every
//! motivic class by the specialization `L -> p`.
//!
//! Effective divisors of degree `d` correspond to nonzero binary forms of
//! degree `d` up to scalars; normalizing the first nonzero coefficient to 1
//! puts them in bijection with `P^d(F_p)`. The common-zero-over-the-closure
//! condition reduces to a gcd computation in `F_p[t]` together with a check
//! at the point at infinity, so prime fields suffice and no extension-field
//! arithmetic is needed.

use crate::error::{Error, Result};
use crate::moebius::mobius_table;
use crate::multiseries::{next_vector_bounded, total_degree, PowerSeriesMulti};
use crate::obstruction::ObstructionSet;
use crate::rational::{divisors, moebius_int, rat};
use crate::Fan;

/// Tuple budget for exhaustive enumeration.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// A nonzero binary homogeneous form over `F_p`, normalized so the first
/// nonzero coefficient (lowest power of the first variable) is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFForm {
    p: u64,
    degree: usize,
    /// `coeffs[j]` multiplies `u^j v^{degree-j}`; ascending in `u`.
    coeffs: Vec<u64>,
}

impl FFForm {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput("form is identically zero".into()));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput("coefficient out of range".into()));
        }
        let degree = coeffs.len() - 1;
        let mut f = Self { p, degree, coeffs };
        f.normalize();
        Ok(f)
    }

    fn normalize(&mut self) {
        let first = self.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        let inv = inv_mod(self.coeffs[first], self.p);
        for c in &mut self.coeffs {
            *c = *c * inv % self.p;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dehomogenization `F(t, 1)` as a trimmed coefficient vector
    /// (ascending); empty only for the degenerate degree-0 form, which is
    /// the constant 1 and never happens after normalization.
    pub fn affine_part(&self) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Multiplicity of the zero at `[1:0]`: the number of trailing zero
    /// coefficients.
    pub fn infinity_multiplicity(&self) -> usize {
        self.degree + 1 - self.affine_part().len()
    }
}

/// All normalized forms of degree `d` over `F_p`; there are
/// `(p^{d+1} - 1)/(p - 1)` of them, one per point of `P^d(F_p)`.
pub fn enumerate_forms(p: u64, d: usize) -> Vec<FFForm> {
    let mut out = Vec::new();
    // first nonzero coefficient at position `first`, equal to 1
    for first in 0..=d {
        let tail = d - first;
        let mut suffix = vec![0u64; tail];
        loop {
            let mut coeffs = vec![0u64; first];
            coeffs.push(1);
            coeffs.extend(suffix.iter().copied());
            out.push(FFForm {
                p,
                degree: d,
                coeffs,
            });
            if !bump_base_p(&mut suffix, p) {
                break;
            }
        }
    }
    out
}

fn bump_base_p(v: &mut [u64], p: u64) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < p {
            return true;
        }
        *x = 0;
    }
    false
}

/// Number of points of `P^d(F_p)`.
pub fn projective_count(p: u64, d: usize) -> u128 {
    let mut acc: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..=d {
        acc += pw;
        pw *= p as u128;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn poly_gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let q = r[dr] * lead_inv % p;
        if q != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = (r[idx] + p - q * b[i] % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

/// True if the forms of the group share a projective zero over the algebraic
/// closure: their affine gcd is nonconstant or all vanish at infinity.
fn group_has_common_zero(forms: &[&FFForm], p: u64) -> bool {
    debug_assert!(!forms.is_empty());
    if forms.iter().any(|f| f.degree == 0) {
        return false;
    }
    if forms.iter().all(|f| f.infinity_multiplicity() >= 1) {
        return true;
    }
    let mut g = forms[0].affine_part();
    for f in &forms[1..] {
        if g.len() <= 1 {
            break;
        }
        g = poly_gcd_mod_p(&g, &f.affine_part(), p);
    }
    g.len() > 1
}

/// Count tuples `(C_e)` of effective divisors of degrees `d_e` such that for
/// every minimal pattern of `B` the selected divisors have no common zero
/// over the closure. Exhaustive with early pruning: coordinates are visited
/// in increasing degree order and a pattern is checked as soon as all of its
/// coordinates are assigned.
pub fn count_divisor_tuples(b: &ObstructionSet, p: u64, d: &[u32]) -> Result<u64> {
    assert_eq!(d.len(), b.ground_size());
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let e = d.len();
    let mut required: u128 = 1;
    for &de in d {
        required = required.saturating_mul(projective_count(p, de as usize));
        if required > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                required,
                budget: ENUMERATION_BUDGET,
            });
        }
    }

    // visit smallest-degree coordinates outermost
    let mut order: Vec<usize> = (0..e).collect();
    order.sort_by_key(|&i| d[i]);
    // pattern -> position in `order` after which it is fully assigned
    let mut pattern_ready: Vec<(usize, u32)> = Vec::new();
    for &mask in b.bmin() {
        let last = (0..e).rfind(|&pos| mask >> order[pos] & 1 == 1);
        if let Some(last) = last {
            pattern_ready.push((last, mask));
        }
    }

    let form_lists: Vec<Vec<FFForm>> = d
        .iter()
        .map(|&de| enumerate_forms(p, de as usize))
        .collect();
    let mut chosen: Vec<usize> = vec![0; e];
    let mut count = 0u64;
    dfs_count(
        0,
        &order,
        &form_lists,
        &pattern_ready,
        p,
        &mut chosen,
        &mut count,
    );
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn dfs_count(
    pos: usize,
    order: &[usize],
    form_lists: &[Vec<FFForm>],
    pattern_ready: &[(usize, u32)],
    p: u64,
    chosen: &mut Vec<usize>,
    count: &mut u64,
) {
    if pos == order.len() {
        *count += 1;
        return;
    }
    let coord = order[pos];
    for idx in 0..form_lists[coord].len() {
        chosen[coord] = idx;
        let mut ok = true;
        for &(ready_at, mask) in pattern_ready {
            if ready_at == pos {
                let group: Vec<&FFForm> = (0..chosen.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| &form_lists[i][chosen[i]])
                    .collect();
                if group_has_common_zero(&group, p) {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            dfs_count(pos + 1, order, form_lists, pattern_ready, p, chosen, count);
        }
    }
}

/// `#U_{0,d}(F_p) = (p-1)^dim sum_{d in N_*, |d| = d} count_divisor_tuples`.
pub fn count_u0d(fan: &Fan, p: u64, d: usize) -> Result<u64> {
    let b = fan.b_sigma()?;
    let mut acc = 0u64;
    for dvec in fan.nstar_enumerate(d) {
        acc += count_divisor_tuples(&b, p, &dvec)?;
    }
    let torus = (p - 1).pow(fan.dim() as u32);
    Ok(torus * acc)
}

/// Closed points of degree `n` on `P^1` over `F_p`:
/// `(1/n) sum_{d|n} moebius(n/d) (p^d + 1)`.
pub fn closed_points_p1(p: u64, n: usize) -> u64 {
    assert!(n >= 1);
    let mut acc: i128 = 0;
    for d in divisors(n as u64) {
        let m = moebius_int(n as u64 / d);
        if m != 0 {
            acc += i128::from(m) * ((p as i128).pow(d as u32) + 1);
        }
    }
    (acc / n as i128) as u64
}

/// Verify the finite-field Euler products coefficientwise up to total
/// degree `trunc`:
///
/// * `prod_n P_B(T^n)^{a_n}` equals the Moebius table specialized at
///   `L = p`, and
/// * `prod_n Q_B(T^n)^{a_n}` equals the brute-force tuple counts,
///
/// where `a_n` is the number of closed points of degree `n` on `P^1`.
pub fn check_ff_euler(b: &ObstructionSet, p: u64, trunc: usize) -> Result<bool> {
    let p_poly = {
        let poly = b.p_poly();
        let mut padded = PowerSeriesMulti::zero(b.ground_size(), trunc);
        for (v, c) in poly.iter() {
            if total_degree(v) <= trunc {
                padded.set_coeff(v.clone(), c.clone());
            }
        }
        padded
    };
    let q_series = b.q_series(trunc);

    let mut p_prod = PowerSeriesMulti::one(b.ground_size(), trunc);
    let mut q_prod = PowerSeriesMulti::one(b.ground_size(), trunc);
    let p_val = b.valuation_p_minus_one().unwrap_or(trunc + 1).max(1);
    for n in 1..=trunc {
        let a_n = closed_points_p1(p, n) as u32;
        if n * p_val <= trunc {
            p_prod = p_prod.mul(&p_poly.scale_exponents(n as u32).pow(a_n));
        }
        q_prod = q_prod.mul(&q_series.scale_exponents(n as u32).pow(a_n));
    }

    // P-side vs specialized Moebius table
    let mu = mobius_table(b, trunc)?;
    let q_rat = rat(p as i64);
    let mut d = vec![0u32; b.ground_size()];
    loop {
        let lhs = p_prod.coeff(&d).eval_rat(&q_rat)?;
        let rhs = mu.value(&d).eval_rat(&q_rat)?;
        if lhs != rhs {
            return Err(Error::PathDisagreement {
                at: format!("P-side {d:?}"),
                lhs: crate::rational::display(&lhs),
                rhs: crate::rational::display(&rhs),
            });
        }
        if !next_vector_bounded(&mut d, trunc) {
            break;
        }
    }

    // Q-side vs brute force
    let mut d = vec![0u32; b.ground_size()];
    loop {
        let lhs = q_prod.coeff(&d).eval_rat(&q_rat)?;
        let rhs = rat(count_divisor_tuples(b, p, &d)? as i64);
        if lhs != rhs {
            return Err(Error::PathDisagreement {
                at: format!("Q-side {d:?}"),
                lhs: crate::rational::display(&lhs),
                rhs: crate::rational::display(&rhs),
            });
        }
        if !next_vector_bounded(&mut d, trunc) {
            break;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan;

    #[test]
    fn form_counts() {
        assert_eq!(enumerate_forms(2, 1).len(), 3);
        assert_eq!(enumerate_forms(3, 2).len(), 13);
        assert_eq!(enumerate_forms(2, 0).len(), 1);
        for f in enumerate_forms(3, 2) {
            let refused = FFForm::new(3, f.coeffs.clone()).unwrap();
            assert_eq!(refused, f);
        }
    }

    #[test]
    fn divisor_tuple_counts() {
        // bmin = {(1,1)}, p=2, d=(1,1): ordered pairs of distinct points
        let b = ObstructionSet::new(2, [0b11]);
        assert_eq!(count_divisor_tuples(&b, 2, &[1, 1]).unwrap(), 6);
        // bmin = {(1,1,1)}, p=2, d=(1,1,1): 27 - 3 = 24
        let b3 = ObstructionSet::new(3, [0b111]);
        assert_eq!(count_divisor_tuples(&b3, 2, &[1, 1, 1]).unwrap(), 24);
        // empty degree vector: one (empty) tuple
        assert_eq!(count_divisor_tuples(&b, 2, &[0, 0]).unwrap(), 1);
    }

    #[test]
    fn unconstrained_sum_matches_product_of_projective_spaces() {
        // with B empty every tuple is allowed
        let b = ObstructionSet::new(2, []);
        for (p, d) in [(2u64, [2u32, 1]), (3, [1, 2])] {
            let n = count_divisor_tuples(&b, p, &d).unwrap();
            let expect: u128 =
                projective_count(p, d[0] as usize) * projective_count(p, d[1] as usize);
            assert_eq!(u128::from(n), expect);
        }
    }

    #[test]
    fn u0d_counts() {
        // P^1 fan, p=2, d=2 -> 6 = #PGL_2(F_2)
        let fan = fan::builtin("p1").unwrap();
        assert_eq!(count_u0d(&fan, 2, 2).unwrap(), 6);
        // P^2 fan, p=2, d=3 -> 24
        let fan = fan::builtin("p2").unwrap();
        assert_eq!(count_u0d(&fan, 2, 3).unwrap(), 24);
        // torus points at degree 0
        for name in ["p1", "p2", "p1xp1"] {
            let fan = fan::builtin(name).unwrap();
            for p in [2u64, 3] {
                assert_eq!(
                    count_u0d(&fan, p, 0).unwrap(),
                    (p - 1).pow(fan.dim() as u32)
                );
            }
        }
    }

    #[test]
    fn closed_point_counts() {
        assert_eq!(closed_points_p1(2, 1), 3);
        assert_eq!(closed_points_p1(2, 2), 1);
        assert_eq!(closed_points_p1(3, 2), 3);
        // sum_{d|n} d * a_d = p^n + 1 (points over F_{p^n})
        for p in [2u64, 3, 5] {
            for n in 1..=6usize {
                let mut acc = 0u64;
                for d in divisors(n as u64) {
                    acc += d * closed_points_p1(p, d as usize);
                }
                assert_eq!(acc, p.pow(n as u32) + 1);
            }
        }
    }

    #[test]
    fn euler_products_match() {
        let b = ObstructionSet::new(2, [0b11]);
        assert!(check_ff_euler(&b, 2, 4).unwrap());
        let fan = fan::hirzebruch(1).unwrap();
        let b = fan.b_sigma().unwrap();
        assert!(check_ff_euler(&b, 2, 4).unwrap());
        // empty B: product of zeta functions, all tuples allowed
        let b = ObstructionSet::new(2, []);
        assert!(check_ff_euler(&b, 3, 3).unwrap());
    }

    #[test]
    fn budget_guard() {
        let b = ObstructionSet::new(4, [0b1111]);
        let err = count_divisor_tuples(&b, 31, &[8, 8, 8, 8]).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn specialization_of_xb_classes() {
        use crate::moebius::{xb_classes, XbPath};
        // eval of the symbolic class equals the brute-force count
        let fan = fan::builtin("p1xp1").unwrap();
        let b = fan.b_sigma().unwrap();
        let xb = xb_classes(&b, 4, XbPath::Convolution).unwrap();
        let mut d = vec![0u32; 4];
        loop {
            for p in [2u64, 3] {
                let symbolic = xb.value(&d).eval_rat(&rat(p as i64)).unwrap();
                let counted = count_divisor_tuples(&b, p, &d).unwrap();
                assert_eq!(symbolic, rat(counted as i64), "p={p} d={d:?}");
            }
            if !next_vector_bounded(&mut d, 4) {
                break;
            }
        }
    }
}
