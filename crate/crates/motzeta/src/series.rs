//! Truncated univariate power series in `T` with Laurent-polynomial
//! coefficients.
//!
//! Truncation is explicit state: a series knows its last retained degree and
//! arithmetic never claims precision beyond the minimum of the operand
//! truncations. Coefficients beyond `trunc` are undefined, not zero.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rat};
use num::One;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries1 {
    /// Last retained degree; `coeffs.len() == trunc + 1`.
    trunc: usize,
    coeffs: Vec<LaurentPoly>,
}

impl PowerSeries1 {
    pub fn zero(trunc: usize) -> Self {
        Self {
            trunc,
            coeffs: vec![LaurentPoly::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty());
        Self {
            trunc: coeffs.len() - 1,
            coeffs,
        }
    }

    /// The monomial `c * T^k`, truncated at `trunc`.
    pub fn monomial(trunc: usize, k: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 - c*T^k`, the basic zeta factor building block.
    pub fn one_minus(trunc: usize, k: usize, c: LaurentPoly) -> Self {
        let mut s = Self::one(trunc);
        if k <= trunc && k > 0 {
            s.coeffs[k] = -c;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        assert!(n <= self.trunc, "coefficient {n} beyond truncation {}", self.trunc);
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: LaurentPoly) {
        assert!(n <= self.trunc);
        self.coeffs[n] = c;
    }

    /// Restrict to a smaller truncation.
    pub fn truncated(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc);
        Self {
            trunc,
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    /// Smallest degree with nonzero coefficient, or `None` if all retained
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::zero(trunc);
        for n in 0..=trunc {
            out.coeffs[n] = &self.coeffs[n] + &rhs.coeffs[n];
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::zero(trunc);
        for n in 0..=trunc {
            out.coeffs[n] = &self.coeffs[n] - &rhs.coeffs[n];
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::zero(trunc);
        for i in 0..=trunc {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=trunc - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                out.coeffs[i + j] = &out.coeffs[i + j] + &prod;
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.trunc);
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

    /// Multiplicative inverse. The constant term must be an invertible
    /// Laurent monomial `c * L^k`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.num_terms() != 1 {
            return Err(Error::NonInvertibleConstantTerm(c0.to_string()));
        }
        let (k, c) = {
            let (k, c) = c0.iter().next().unwrap();
            (*k, c.clone())
        };
        let c0_inv = LaurentPoly::monomial(-k, Rat::one() / c);
        let mut inv = Self::zero(self.trunc);
        inv.coeffs[0] = c0_inv.clone();
        for n in 1..=self.trunc {
            // c0 * inv_n = -(sum_{i=1..n} a_i inv_{n-i})
            let mut acc = LaurentPoly::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &inv.coeffs[n - i]);
            }
            inv.coeffs[n] = &(-&acc) * &c0_inv;
        }
        Ok(inv)
    }

    /// `exp` of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "0".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let mut out = Self::one(self.trunc);
        let mut power = Self::one(self.trunc);
        let val = self.valuation().unwrap_or(self.trunc + 1).max(1);
        let kmax = self.trunc / val;
        for k in 1..=kmax {
            power = power.mul(self);
            let inv_fact =
                LaurentPoly::constant(Rat::one() / rational::factorial(k));
            out = out.add(&power.scale(&inv_fact));
        }
        Ok(out)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm {
                expected: "1".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let mut u = self.clone();
        u.coeffs[0] = LaurentPoly::zero();
        let mut out = Self::zero(self.trunc);
        let mut power = Self::one(self.trunc);
        let val = u.valuation().unwrap_or(self.trunc + 1).max(1);
        let kmax = self.trunc / val;
        for k in 1..=kmax {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = LaurentPoly::constant(rational::rat_frac(sign, k as i64));
            out = out.add(&power.scale(&c));
        }
        Ok(out)
    }

    /// Substitution `T -> c * T^k`, `k >= 1`. The result is known to degree
    /// `k * trunc + k - 1`.
    pub fn compose_scale(&self, c: &LaurentPoly, k: usize) -> Self {
        assert!(k >= 1);
        let new_trunc = k * self.trunc + k - 1;
        let mut out = Self::zero(new_trunc);
        let mut cpow = LaurentPoly::one();
        for (n, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out.coeffs[n * k] = a * &cpow;
            }
            cpow = &cpow * c;
        }
        out
    }

    /// `T d/dT log(self)`: the generating series of the `Phi_n`.
    pub fn log_derivative_t(&self) -> Result<Self> {
        let lg = self.log()?;
        let mut out = Self::zero(self.trunc);
        for n in 0..=self.trunc {
            out.coeffs[n] = lg.coeffs[n].scale(&rational::rat(n as i64));
        }
        Ok(out)
    }

    /// Exact evaluation at `T = L^j` as a Laurent polynomial (a finite sum
    /// over the retained coefficients). Used to specialize a polynomial in
    /// `T` at `T = L^{-1}`.
    pub fn eval_at_lefschetz_pow(&self, j: i64) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (n, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.mul_lefschetz_pow(j * n as i64);
        }
        acc
    }
}
