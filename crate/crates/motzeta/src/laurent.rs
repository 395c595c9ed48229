//! Laurent polynomials in the Lefschetz class `L` with exact rational
//! coefficients.
//!
//! This is the universal value type for Grothendieck-ring classes: `L`,
//! `[P^n] = 1 + L + ... + L^n`, Moebius values, and every class computed by
//! the engine are elements of this ring. The representation is a sparse map
//! from exponent to coefficient; zero coefficients are never stored.

use crate::error::{Error, Result};
use crate::rational::{self, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Sparse Laurent polynomial `sum_i c_i L^i`, `c_i` rational, `i` in `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, rational::rat(1))
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::monomial(1, rational::rat(1))
    }

    /// `c * L^k`. Returns zero if `c` is zero.
    pub fn monomial(k: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rational::rat(n))
    }

    /// `[P^n] = 1 + L + ... + L^n`.
    pub fn projective_space(n: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=i64::from(n) {
            p.add_term(i, rational::rat(1));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `L^k` (zero if absent).
    pub fn coeff(&self, k: i64) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Add `c * L^k` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Top `L`-exponent. The filtration index of a nonzero class `a` is
    /// `-vdim(a)`: `a` lies in `F^m` iff `vdim(a) <= -m`. Zero has no
    /// defined filtration level.
    pub fn vdim(&self) -> Result<i64> {
        self.coeffs
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::ZeroVdim)
    }

    /// Lowest `L`-exponent, if nonzero.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(rational::is_integer)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
        }
    }

    /// Multiply by `L^k` (shift all exponents).
    pub fn mul_lefschetz_pow(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution `L -> x` for rational `x`.
    pub fn eval_rat(&self, x: &Rat) -> Result<Rat> {
        if x.is_zero() {
            if let Some(k) = self.min_exp() {
                if k < 0 {
                    return Err(Error::PoleAtZero(k));
                }
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rat::zero();
        let inv = Rat::one() / x;
        for (k, c) in &self.coeffs {
            let p = if *k >= 0 {
                num::pow::pow(x.clone(), *k as usize)
            } else {
                num::pow::pow(inv.clone(), (-*k) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Floating-point substitution `L -> x`.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            if let Some(k) = self.min_exp() {
                if k < 0 {
                    return Err(Error::PoleAtZero(k));
                }
            }
            return Ok(rational::to_f64(&self.coeff(0)));
        }
        let mut acc = 0.0;
        for (k, c) in &self.coeffs {
            acc += rational::to_f64(c) * x.powi(*k as i32);
        }
        Ok(acc)
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None` when
    /// the division leaves a remainder. Division by zero is `None`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift = self.min_exp().unwrap() - divisor.min_exp().unwrap();
        let (dtop, dlead) = {
            let (k, c) = divisor.coeffs.iter().next_back().unwrap();
            (*k, c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let (rtop, rlead) = {
                let (k, c) = rem.coeffs.iter().next_back().unwrap();
                (*k, c.clone())
            };
            let exp = rtop - dtop;
            if exp < shift {
                return None;
            }
            let term = Self::monomial(exp, rlead / dlead.clone());
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// `binom(x, n) = x (x-1) ... (x-n+1) / n!` in the Q-algebra of Laurent
    /// polynomials.
    pub fn binomial(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..i64::from(n) {
            let factor = self - &Self::from_int(i);
            acc = &acc * &factor;
        }
        acc.scale(&(Rat::one() / rational::factorial(n as usize)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &rhs.coeffs {
                out.add_term(ka + kb, va * vb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Renders as e.g. `L^3 - L`, `1/2*L^2 - 1/2*L`, `L^-2 + 7`, sorted by
/// descending exponent. `parse` accepts the same grammar.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = rational::display(&abs);
            if *k == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{coeff_str}*")?;
                }
                if *k == 1 {
                    write!(f, "L")?;
                } else {
                    write!(f, "L^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut out = LaurentPoly::zero();
        // Split into signed terms on top-level + and -.
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut prev_was_caret_or_start = true;
        for ch in s.chars() {
            match ch {
                '+' | '-' if !prev_was_caret_or_start => {
                    if !cur.trim().is_empty() {
                        terms.push((sign, cur.trim().to_string()));
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                    cur = String::new();
                    prev_was_caret_or_start = true;
                }
                '-' if prev_was_caret_or_start => {
                    // leading minus of a term or exponent
                    cur.push(ch);
                    prev_was_caret_or_start = false;
                }
                '^' => {
                    cur.push(ch);
                    prev_was_caret_or_start = true;
                }
                c if c.is_whitespace() => {}
                _ => {
                    cur.push(ch);
                    prev_was_caret_or_start = false;
                }
            }
        }
        if !cur.trim().is_empty() {
            terms.push((sign, cur.trim().to_string()));
        }
        if terms.is_empty() {
            return Err(Error::Parse(format!("no terms in {s:?}")));
        }
        for (sgn, term) in terms {
            let (coeff, exp) = parse_term(&term)?;
            out.add_term(exp, coeff * rational::rat(sgn));
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Rat, i64)> {
    // term := coeff | Lpart | coeff '*' Lpart; a leading '-' is allowed here
    // (it appears when the whole input starts with a minus).
    let (neg, term) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term),
    };
    let (coeff_str, l_str) = match term.split_once('*') {
        Some((c, l)) => (Some(c), Some(l)),
        None if term.starts_with('L') => (None, Some(term)),
        None => (Some(term), None),
    };
    let coeff = match coeff_str {
        Some(c) => {
            rational::parse(c).ok_or_else(|| Error::Parse(format!("bad coefficient {c:?}")))?
        }
        None => Rat::one(),
    };
    let exp = match l_str {
        None => 0,
        Some("L") => 1,
        Some(l) => {
            let rest = l
                .strip_prefix("L^")
                .ok_or_else(|| Error::Parse(format!("bad L-part {l:?}")))?;
            rest.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent {rest:?}")))?
        }
    };
    let coeff = if neg { -coeff } else { coeff };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};
    use proptest::prelude::*;

    fn l() -> LaurentPoly {
        LaurentPoly::lefschetz()
    }

    #[test]
    fn product_expansions() {
        // (L-1)(1+L) = L^2 - 1
        let a = &l() - &LaurentPoly::one();
        let b = &LaurentPoly::one() + &l();
        let mut expect = LaurentPoly::zero();
        expect.add_term(2, rat(1));
        expect.add_term(0, rat(-1));
        assert_eq!(&a * &b, expect);

        // (1+L+L^2)(L-1) = L^3 - 1
        let c = LaurentPoly::projective_space(2);
        let d = &l() - &LaurentPoly::one();
        let mut expect = LaurentPoly::zero();
        expect.add_term(3, rat(1));
        expect.add_term(0, rat(-1));
        assert_eq!(&c * &d, expect);

        assert_eq!(-LaurentPoly::zero(), LaurentPoly::zero());
    }

    #[test]
    fn vdim_examples() {
        // L^3 - L
        let p = &l().pow(3) - &l();
        assert_eq!(p.vdim().unwrap(), 3);
        assert_eq!(LaurentPoly::from_int(7).vdim().unwrap(), 0);
        let half = LaurentPoly::monomial(2, rat_frac(1, 2));
        let q = &half - &LaurentPoly::monomial(1, rat_frac(1, 2));
        assert_eq!(q.vdim().unwrap(), 2);
        assert!(LaurentPoly::zero().vdim().is_err());
    }

    #[test]
    fn eval_examples() {
        // L^3 - L at 2 -> 6 = #PGL_2(F_2)
        let p = &l().pow(3) - &l();
        assert_eq!(p.eval_rat(&rat(2)).unwrap(), rat(6));
        assert_eq!(l().eval_rat(&rat(5)).unwrap(), rat(5));
        // (1 - L^-2)^2 at 4 -> 225/256
        let q = (&LaurentPoly::one() - &LaurentPoly::monomial(-2, rat(1))).pow(2);
        assert_eq!(q.eval_rat(&rat(4)).unwrap(), rat_frac(225, 256));
        assert!(q.eval_rat(&rat(0)).is_err());
        assert_eq!(p.eval_rat(&rat(0)).unwrap(), rat(0));
    }

    #[test]
    fn binomial_examples() {
        let x = &LaurentPoly::one() + &l();
        assert_eq!(x.binomial(0), LaurentPoly::one());
        // binom(1+L, 2) = (L^2+L)/2
        let mut expect = LaurentPoly::zero();
        expect.add_term(2, rat_frac(1, 2));
        expect.add_term(1, rat_frac(1, 2));
        assert_eq!(x.binomial(2), expect);
        assert_eq!(l().binomial(1), l());
    }

    #[test]
    fn exact_division() {
        // (L^3 - 1) / (L - 1) = L^2 + L + 1
        let num = &l().pow(3) - &LaurentPoly::one();
        let den = &l() - &LaurentPoly::one();
        assert_eq!(num.div_exact(&den).unwrap(), LaurentPoly::projective_space(2));
        // remainder cases
        assert!(l().div_exact(&den).is_none());
        assert!(l().div_exact(&LaurentPoly::zero()).is_none());
        // negative exponents: (L - 2 + L^-1) / (1 - L^-1) = L - 1
        let mut num = LaurentPoly::zero();
        num.add_term(1, rat(1));
        num.add_term(0, rat(-2));
        num.add_term(-1, rat(1));
        let den = &LaurentPoly::one() - &LaurentPoly::monomial(-1, rat(1));
        assert_eq!(num.div_exact(&den).unwrap(), &l() - &LaurentPoly::one());
    }

    #[test]
    fn display_and_parse() {
        let p = &l().pow(3) - &l();
        assert_eq!(p.to_string(), "L^3 - L");
        let q = LaurentPoly::monomial(2, rat_frac(1, 2));
        let q = &q - &LaurentPoly::monomial(1, rat_frac(1, 2));
        assert_eq!(q.to_string(), "1/2*L^2 - 1/2*L");
        // L^2 - 2 + L^-2
        let mut r = LaurentPoly::zero();
        r.add_term(2, rat(1));
        r.add_term(0, rat(-2));
        r.add_term(-2, rat(1));
        assert_eq!(r.to_string(), "L^2 - 2 + L^-2");
        for s in [&p, &q, &r, &LaurentPoly::zero(), &LaurentPoly::from_int(-7)] {
            let round: LaurentPoly = s.to_string().parse().unwrap();
            assert_eq!(&round, s);
        }
        let parsed: LaurentPoly = "-L^2 + 3*L - 1/2".parse().unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(2, rat(-1));
        expect.add_term(1, rat(3));
        expect.add_term(0, rat_frac(-1, 2));
        assert_eq!(parsed, expect);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..=4, -9i64..=9), 0..5).prop_map(|terms| {
            let mut p = LaurentPoly::zero();
            for (k, c) in terms {
                p.add_term(k, rat(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let ab_c = &(&a * &b) * &c;
            let a_bc = &a * &(&b * &c);
            prop_assert_eq!(&ab_c, &a_bc);
            let distr = &a * &(&b + &c);
            let expand = &(&a * &b) + &(&a * &c);
            prop_assert_eq!(&distr, &expand);
            prop_assert_eq!(&(&a + &b), &(&b + &a));
        }

        #[test]
        fn vdim_additive(a in arb_poly(), b in arb_poly()) {
            if !a.is_zero() && !b.is_zero() {
                let prod = &a * &b;
                prop_assert_eq!(
                    prod.vdim().unwrap(),
                    a.vdim().unwrap() + b.vdim().unwrap()
                );
            }
        }

        #[test]
        fn eval_is_ring_morphism(a in arb_poly(), b in arb_poly(), x in 1i64..6) {
            let x = rat(x);
            let lhs = (&a * &b).eval_rat(&x).unwrap();
            let rhs = a.eval_rat(&x).unwrap() * b.eval_rat(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_roundtrip(a in arb_poly()) {
            let s = a.to_string();
            let back: LaurentPoly = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
