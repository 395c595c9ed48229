//! Truncated power series in finitely many variables `(T_e)` with
//! Laurent-polynomial coefficients, truncated by total degree.
//!
//! The coefficient map is sparse: the fan applications produce series
//! supported on low-dimensional sublattices of `N^E`, and the sparse
//! representation keeps those computations cheap. Same truncation
//! discipline as [`crate::series::PowerSeries1`].

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeriesMulti {
    nvars: usize,
    /// Max retained total degree.
    trunc: usize,
    coeffs: BTreeMap<Vec<u32>, LaurentPoly>,
}

pub fn total_degree(v: &[u32]) -> usize {
    v.iter().map(|&x| x as usize).sum()
}

impl PowerSeriesMulti {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        Self {
            nvars,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, trunc: usize) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.coeffs.insert(vec![0; nvars], LaurentPoly::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, v: &[u32]) -> LaurentPoly {
        assert_eq!(v.len(), self.nvars);
        assert!(
            total_degree(v) <= self.trunc,
            "coefficient at {v:?} beyond truncation {}",
            self.trunc
        );
        self.coeffs.get(v).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Iterate stored `(degree vector, coefficient)` pairs in lexicographic
    /// order. Zero coefficients are never stored.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn set_coeff(&mut self, v: Vec<u32>, c: LaurentPoly) {
        assert_eq!(v.len(), self.nvars);
        if total_degree(&v) > self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, c);
        }
    }

    pub fn add_coeff(&mut self, v: &[u32], c: &LaurentPoly) {
        if c.is_zero() || total_degree(v) > self.trunc {
            return;
        }
        let entry = self
            .coeffs
            .entry(v.to_vec())
            .or_insert_with(LaurentPoly::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(v);
        }
    }

    pub fn constant_term(&self) -> LaurentPoly {
        self.coeffs
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    /// Smallest total degree with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().map(|v| total_degree(v)).min()
    }

    pub fn truncated(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc);
        Self {
            nvars: self.nvars,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(v, _)| total_degree(v) <= trunc)
                .map(|(v, c)| (v.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = self.truncated(trunc);
        for (v, c) in &rhs.coeffs {
            if total_degree(v) <= trunc {
                out.add_coeff(v, c);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.trunc);
        }
        Self {
            nvars: self.nvars,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, x)| (v.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::zero(self.nvars, trunc);
        for (va, ca) in &self.coeffs {
            let da = total_degree(va);
            if da > trunc {
                continue;
            }
            for (vb, cb) in &rhs.coeffs {
                let db = total_degree(vb);
                if da + db > trunc {
                    continue;
                }
                let v: Vec<u32> = va.iter().zip(vb).map(|(a, b)| a + b).collect();
                out.add_coeff(&v, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.trunc);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; constant term must be an invertible Laurent
    /// monomial.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.num_terms() != 1 {
            return Err(Error::NonInvertibleConstantTerm(c0.to_string()));
        }
        let (k, c) = {
            let (k, c) = c0.iter().next().unwrap();
            (*k, c.clone())
        };
        let c0_inv = LaurentPoly::monomial(-k, Rat::one() / c);
        // u = 1 - self/c0; inverse = (sum u^j) / c0
        let mut u = Self::one(self.nvars, self.trunc).sub(&self.scale(&c0_inv));
        u.coeffs.remove(&vec![0; self.nvars]);
        let val = u.valuation().unwrap_or(self.trunc + 1).max(1);
        let mut acc = Self::one(self.nvars, self.trunc);
        let mut power = Self::one(self.nvars, self.trunc);
        for _ in 1..=self.trunc / val {
            power = power.mul(&u);
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `exp` of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "0".into(),
                found: c0.to_string(),
            });
        }
        let val = self.valuation().unwrap_or(self.trunc + 1).max(1);
        let mut out = Self::one(self.nvars, self.trunc);
        let mut power = Self::one(self.nvars, self.trunc);
        for k in 1..=self.trunc / val {
            power = power.mul(self);
            let inv_fact = LaurentPoly::constant(Rat::one() / rational::factorial(k));
            out = out.add(&power.scale(&inv_fact));
        }
        Ok(out)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::BadConstantTerm {
                expected: "1".into(),
                found: c0.to_string(),
            });
        }
        let mut u = self.clone();
        u.coeffs.remove(&vec![0; self.nvars]);
        let val = u.valuation().unwrap_or(self.trunc + 1).max(1);
        let mut out = Self::zero(self.nvars, self.trunc);
        let mut power = Self::one(self.nvars, self.trunc);
        for k in 1..=self.trunc / val {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&LaurentPoly::constant(rational::rat_frac(
                sign, k as i64,
            ))));
        }
        Ok(out)
    }

    /// Substitution `T_e -> T_e^n` for every variable, `n >= 1`, keeping the
    /// ambient truncation. Knowledge of coefficients up to total degree
    /// `trunc` determines the result up to total degree `n*trunc + n - 1`,
    /// so retaining `trunc` is always sound.
    pub fn scale_exponents(&self, n: u32) -> Self {
        assert!(n >= 1);
        let mut out = Self::zero(self.nvars, self.trunc);
        for (v, c) in &self.coeffs {
            let w: Vec<u32> = v.iter().map(|x| x * n).collect();
            if total_degree(&w) <= self.trunc {
                out.coeffs.insert(w, c.clone());
            }
        }
        out
    }

    /// Evaluate all variables at the same rational value `t` and `L` at `x`
    /// exactly, summing the retained terms.
    pub fn eval_all_rat(&self, t: &Rat, x: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (v, c) in &self.coeffs {
            let d = total_degree(v);
            let tp = num::pow::pow(t.clone(), d);
            acc += c.eval_rat(x)? * tp;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for PowerSeriesMulti {
    /// Terms in lexicographic order, variables `T0, T1, ...`; coefficients
    /// that are not `+-1` are parenthesized.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, c) in &self.coeffs {
            let minus_one = c == &LaurentPoly::from_int(-1);
            let is_const = v.iter().all(|&x| x == 0);
            if first {
                first = false;
                if minus_one && !is_const {
                    write!(f, "-")?;
                }
            } else if minus_one && !is_const {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("T{i}")
                    } else {
                        format!("T{i}^{x}")
                    }
                })
                .collect();
            if is_const {
                write!(f, "{c}")?;
            } else if c.is_one() || minus_one {
                write!(f, "{}", mono.join("*"))?;
            } else if c.num_terms() == 1 {
                write!(f, "{c}*{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `prod_e (1 - T_e)^{-1}` truncated at total degree `trunc`: every degree
/// vector with coefficient 1.
pub fn geometric_all(nvars: usize, trunc: usize) -> PowerSeriesMulti {
    let mut out = PowerSeriesMulti::zero(nvars, trunc);
    let mut v = vec![0u32; nvars];
    loop {
        out.coeffs.insert(v.clone(), LaurentPoly::one());
        if !next_vector_bounded(&mut v, trunc) {
            break;
        }
    }
    out
}

/// Advance `v` through all vectors of total degree <= `bound` in
/// lexicographic-ish order; returns false after the last one.
pub fn next_vector_bounded(v: &mut [u32], bound: usize) -> bool {
    let n = v.len();
    for i in (0..n).rev() {
        v[i] += 1;
        if total_degree(v) <= bound {
            return true;
        }
        v[i] = 0;
    }
    false
}
