//! Obstruction sets `B` in the Boolean lattice `{0,1}^E`, their Moebius
//! function `mu0_B`, and the polynomials `P_B` and `Q_B`.
//!
//! `B` is the up-closure of a minimal antichain `B^min`; `A` is its
//! complement. `mu0_B` is defined by inverting
//! `ind_A(n) = sum_{n' <= n} mu0_B(n')` over the Boolean lattice. Beware
//! the tempting piecewise expression `(-1)^{l_B(n)}` on `B \ {0}`: it
//! disagrees with the defining inversion off joins of minimal elements
//! (e.g. a Hirzebruch pair plus one extra ray, where the inversion gives
//! 0). The correct closed form is the crosscut sum
//! `sum_{S subset B^min, join(S) = n} (-1)^{|S|}`, exposed here as the fast
//! path and checked against the inversion everywhere in tests.

use crate::laurent::LaurentPoly;
use crate::multiseries::{geometric_all, PowerSeriesMulti};
use serde::{Deserialize, Serialize};

/// Element of `{0,1}^E` as a bitmask; bit `e` set means `n_e = 1`.
pub type Mask = u32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionSet {
    ground_size: usize,
    /// Minimal antichain, sorted; `B` is its up-closure.
    bmin: Vec<Mask>,
}

impl ObstructionSet {
    /// Build from an arbitrary family of generators: reduces to the minimal
    /// antichain of the up-closure.
    pub fn new(ground_size: usize, generators: impl IntoIterator<Item = Mask>) -> Self {
        assert!(ground_size <= Mask::BITS as usize);
        let full: Mask = if ground_size == Mask::BITS as usize {
            Mask::MAX
        } else {
            (1 << ground_size) - 1
        };
        let mut gens: Vec<Mask> = generators.into_iter().collect();
        for &g in &gens {
            assert_eq!(g & !full, 0, "generator outside ground set");
        }
        gens.sort_unstable();
        gens.dedup();
        let bmin: Vec<Mask> = gens
            .iter()
            .copied()
            .filter(|&g| !gens.iter().any(|&h| h != g && h & g == h))
            .collect();
        Self { ground_size, bmin }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn bmin(&self) -> &[Mask] {
        &self.bmin
    }

    /// `n` in `B`, i.e. above some minimal element.
    pub fn contains(&self, n: Mask) -> bool {
        self.bmin.iter().any(|&m| n | m == n)
    }

    /// Indicator of the complement `A = {0,1}^E \ B`.
    pub fn ind_a(&self, n: Mask) -> i64 {
        i64::from(!self.contains(n))
    }

    /// `mu0_B(n)` by brute-force Moebius inversion of the defining relation:
    /// `mu0_B(n) = sum_{n' <= n} (-1)^{|n| - |n'|} ind_A(n')`.
    pub fn mu0_inversion(&self, n: Mask) -> i64 {
        let mut acc = 0i64;
        let popcount_n = n.count_ones();
        // iterate all submasks of n, including 0 and n
        let mut sub = n;
        loop {
            let sign = if (popcount_n - sub.count_ones()) % 2 == 0 {
                1
            } else {
                -1
            };
            acc += sign * self.ind_a(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & n;
        }
        acc
    }

    /// `mu0_B(n)` by the crosscut sum over subsets of the minimal antichain
    /// whose join is `n`. Agrees with [`Self::mu0_inversion`] everywhere.
    pub fn mu0_crosscut(&self, n: Mask) -> i64 {
        // only minimal elements below n can participate
        let below: Vec<Mask> = self.bmin.iter().copied().filter(|&m| m & n == m).collect();
        let mut acc = 0i64;
        for s in 0u64..(1u64 << below.len()) {
            let mut join: Mask = 0;
            let mut size = 0u32;
            for (i, &m) in below.iter().enumerate() {
                if s >> i & 1 == 1 {
                    join |= m;
                    size += 1;
                }
            }
            if join == n {
                acc += if size % 2 == 0 { 1 } else { -1 };
            }
        }
        acc
    }

    /// `P_B(T_e) = sum_n mu0_B(n) prod T_e^{n_e}`, an exact polynomial.
    pub fn p_poly(&self) -> PowerSeriesMulti {
        let e = self.ground_size;
        let mut p = PowerSeriesMulti::zero(e, e);
        // crosscut form: sum over subsets of bmin of (-1)^{|S|} T^{join(S)};
        // cheaper than walking all of {0,1}^E and verified against the
        // inversion in tests
        for s in 0u64..(1u64 << self.bmin.len()) {
            let mut join: Mask = 0;
            let mut size = 0u32;
            for (i, &m) in self.bmin.iter().enumerate() {
                if s >> i & 1 == 1 {
                    join |= m;
                    size += 1;
                }
            }
            let v = mask_to_vec(join, e);
            let sign = LaurentPoly::from_int(if size % 2 == 0 { 1 } else { -1 });
            p.add_coeff(&v, &sign);
        }
        p
    }

    /// `Q_B = P_B / prod_e (1 - T_e)` truncated at total degree `trunc`; the
    /// coefficient at `d` is `ind_A(d-tilde)` with `d-tilde` the support
    /// pattern of `d`.
    pub fn q_series(&self, trunc: usize) -> PowerSeriesMulti {
        let p = self.p_poly().truncated(self.ground_size.min(trunc));
        let mut p_padded = PowerSeriesMulti::zero(self.ground_size, trunc);
        for (v, c) in p.iter() {
            p_padded.set_coeff(v.clone(), c.clone());
        }
        p_padded.mul(&geometric_all(self.ground_size, trunc))
    }

    /// Minimum total degree of a nonzero term in `P_B - 1`, i.e. the size of
    /// the smallest minimal element; `None` when `B` is empty.
    pub fn valuation_p_minus_one(&self) -> Option<usize> {
        self.bmin.iter().map(|m| m.count_ones() as usize).min()
    }
}

/// Support pattern of a degree vector, as a mask.
pub fn support_mask(d: &[u32]) -> Mask {
    let mut m: Mask = 0;
    for (i, &x) in d.iter().enumerate() {
        if x > 0 {
            m |= 1 << i;
        }
    }
    m
}

pub fn mask_to_vec(m: Mask, e: usize) -> Vec<u32> {
    (0..e).map(|i| m >> i & 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiseries::next_vector_bounded;

    fn hirzebruch_b() -> ObstructionSet {
        // opposite-ray pairs {0,1} and {2,3}
        ObstructionSet::new(4, [0b0011, 0b1100])
    }

    #[test]
    fn minimal_antichain_reduction() {
        let b = ObstructionSet::new(3, [0b011, 0b111, 0b011]);
        assert_eq!(b.bmin(), &[0b011]);
    }

    #[test]
    fn mu0_base_cases() {
        let b = hirzebruch_b();
        assert_eq!(b.mu0_inversion(0), 1);
        assert_eq!(b.mu0_crosscut(0), 1);
        // full support: +1
        assert_eq!(b.mu0_inversion(0b1111), 1);
        assert_eq!(b.mu0_crosscut(0b1111), 1);
        // one full pair plus one extra ray: inversion gives 0, not the
        // printed piecewise value -1
        assert_eq!(b.mu0_inversion(0b0111), 0);
        assert_eq!(b.mu0_crosscut(0b0111), 0);
        // a single pair: -1
        assert_eq!(b.mu0_inversion(0b0011), -1);
    }

    #[test]
    fn inversion_relation_holds() {
        let b = hirzebruch_b();
        for n in 0u32..16 {
            let mut acc = 0;
            let mut sub = n;
            loop {
                acc += b.mu0_crosscut(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & n;
            }
            assert_eq!(acc, b.ind_a(n));
        }
    }

    #[test]
    fn p_poly_examples() {
        // bmin = {(1,1)}: P_B = 1 - T1 T2
        let b = ObstructionSet::new(2, [0b11]);
        let p = b.p_poly();
        assert_eq!(p.coeff(&[0, 0]), LaurentPoly::one());
        assert_eq!(p.coeff(&[1, 1]), LaurentPoly::from_int(-1));
        assert_eq!(p.num_terms(), 2);

        // Hirzebruch: (1 - T0 T1)(1 - T2 T3)
        let b = hirzebruch_b();
        let p = b.p_poly();
        let mut expect = PowerSeriesMulti::one(4, 4);
        expect.set_coeff(vec![1, 1, 0, 0], LaurentPoly::from_int(-1));
        expect.set_coeff(vec![0, 0, 1, 1], LaurentPoly::from_int(-1));
        expect.set_coeff(vec![1, 1, 1, 1], LaurentPoly::one());
        assert_eq!(p, expect);
        assert_eq!(b.valuation_p_minus_one(), Some(2));
    }

    #[test]
    fn q_series_coefficients_are_ind_a() {
        for b in [
            hirzebruch_b(),
            ObstructionSet::new(3, [0b111]),
            ObstructionSet::new(3, [0b011, 0b101]),
            ObstructionSet::new(2, []),
        ] {
            let q = b.q_series(5);
            let e = b.ground_size();
            let mut v = vec![0u32; e];
            loop {
                assert_eq!(
                    q.coeff(&v),
                    LaurentPoly::from_int(b.ind_a(support_mask(&v))),
                    "at {v:?}"
                );
                if !next_vector_bounded(&mut v, 5) {
                    break;
                }
            }
        }
    }
}
