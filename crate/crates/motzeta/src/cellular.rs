//! Classes of varieties admitting a decomposition into affine cells.
//!
//! A cellular class records how many cells of each dimension the variety
//! has: `[X] = sum_i c_i L^i`. Every variety this crate touches (projective
//! spaces, affine spaces, tori, smooth projective toric varieties) is of
//! this shape, which sidesteps general motives entirely. Negative
//! multiplicities are allowed so that virtual classes such as the torus
//! `[G_m] = L - 1` fit in the same type; operations that require an honest
//! variety reject them unless the caller asserts virtual input.

use crate::laurent::LaurentPoly;
use crate::rational::rat;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularClass {
    /// `L`-exponent -> integer multiplicity; zero multiplicities not stored.
    cells: BTreeMap<u32, i64>,
    /// Declared dimension.
    dim: u32,
}

impl CellularClass {
    /// Build from `(exponent, multiplicity)` pairs and a declared dimension.
    ///
    /// Panics if all multiplicities are nonnegative but the declared
    /// dimension is below the top occupied cell.
    pub fn new(cells: impl IntoIterator<Item = (u32, i64)>, dim: u32) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in cells {
            if c != 0 {
                *map.entry(k).or_insert(0) += c;
            }
        }
        map.retain(|_, c| *c != 0);
        if map.values().all(|c| *c >= 0) {
            if let Some(top) = map.keys().next_back() {
                assert!(
                    dim >= *top,
                    "declared dimension {dim} below top cell {top}"
                );
            }
        }
        Self { cells: map, dim }
    }

    pub fn point() -> Self {
        Self::new([(0, 1)], 0)
    }

    /// Affine space `A^d`.
    pub fn affine(d: u32) -> Self {
        Self::new([(d, 1)], d)
    }

    /// `P^1 = A^0 + A^1`.
    pub fn p1() -> Self {
        Self::new([(0, 1), (1, 1)], 1)
    }

    /// `P^n`.
    pub fn pn(n: u32) -> Self {
        Self::new((0..=n).map(|i| (i, 1)), n)
    }

    /// The split torus `G_m^d` as a virtual cellular class `(L-1)^d`.
    pub fn torus(d: u32) -> Self {
        let poly = (&LaurentPoly::lefschetz() - &LaurentPoly::one()).pow(d);
        Self::from_poly(&poly, d)
    }

    /// Build from an integral Laurent polynomial with nonnegative exponents.
    pub fn from_poly(p: &LaurentPoly, dim: u32) -> Self {
        let cells = p.iter().map(|(k, c)| {
            assert!(*k >= 0, "cellular class needs nonnegative exponents");
            assert!(
                crate::rational::is_integer(c),
                "cellular class needs integer multiplicities"
            );
            let n: i64 = c.numer().try_into().expect("multiplicity fits i64");
            (*k as u32, n)
        });
        Self::new(cells, dim)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn cells(&self) -> impl Iterator<Item = (&u32, &i64)> {
        self.cells.iter()
    }

    pub fn has_negative_cell(&self) -> bool {
        self.cells.values().any(|c| *c < 0)
    }

    /// The class `sum_i c_i L^i` as a Laurent polynomial.
    pub fn class_value(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (k, c) in &self.cells {
            p.add_term(i64::from(*k), rat(*c));
        }
        p
    }

    /// Cell-wise product: the class of `X x Y`, dimensions adding.
    pub fn product(&self, other: &Self) -> Self {
        let mut cells: BTreeMap<u32, i64> = BTreeMap::new();
        for (ka, ca) in &self.cells {
            for (kb, cb) in &other.cells {
                *cells.entry(ka + kb).or_insert(0) += ca * cb;
            }
        }
        Self::new(cells, self.dim + other.dim)
    }
}
