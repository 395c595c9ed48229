//! Integer lattice computations backing the fan module: kernel bases of
//! integer matrices (via Hermite reduction) and unimodular subdivision of
//! two-dimensional rational cones.

use crate::error::{Error, Result};
use crate::rational::gcd_i64;
use num::bigint::BigInt;
use num::{Signed, Zero};

/// Basis of the saturated lattice `{ w in Z^E : sum_a w_a col_a = 0 }` where
/// `cols` are the columns (each of length `r`) of an `r x E` integer matrix.
///
/// Works on the rows `(col_a^T | e_a)` of an `E x (r+E)` matrix: unimodular
/// row reduction to echelon form leaves the kernel as the rows whose first
/// block vanishes.
pub fn integer_kernel_basis(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let e = cols.len();
    let r = if e == 0 { 0 } else { cols[0].len() };
    let width = r + e;
    let mut rows: Vec<Vec<BigInt>> = (0..e)
        .map(|a| {
            let mut row: Vec<BigInt> = cols[a].iter().map(|&x| BigInt::from(x)).collect();
            row.resize(width, BigInt::zero());
            row[r + a] = BigInt::from(1);
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..r {
        // gcd-reduce all rows below pivot_row against each other in this column
        loop {
            let mut nonzero: Vec<usize> = (pivot_row..e)
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // pick the row with smallest absolute value, reduce the others
            nonzero.sort_by_key(|&i| rows[i][col].abs());
            let base = nonzero[0];
            for &i in &nonzero[1..] {
                let q = &rows[i][col] / &rows[base][col];
                if !q.is_zero() {
                    for k in 0..width {
                        let delta = &q * &rows[base][k];
                        rows[i][k] -= delta;
                    }
                }
            }
        }
        if let Some(nz) = (pivot_row..e).find(|&i| !rows[i][col].is_zero()) {
            rows.swap(pivot_row, nz);
            pivot_row += 1;
        }
    }

    let mut basis = Vec::new();
    for row in rows.iter().skip(pivot_row) {
        debug_assert!(row[..r].iter().all(BigInt::is_zero));
        let w: Vec<i64> = row[r..]
            .iter()
            .map(|x| i64::try_from(x).expect("kernel entry fits i64"))
            .collect();
        basis.push(w);
    }
    basis
}

/// Divide out the gcd of the entries; zero vectors stay zero.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

pub fn det2(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Extremal rays of the pointed 2D cone `{ x : b . x >= 0 for all b }`,
/// oriented so that `det(u, v) > 0`.
pub fn cone_extremal_rays_2d(constraints: &[(i64, i64)]) -> Result<((i64, i64), (i64, i64))> {
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    for &(a, b) in constraints {
        if (a, b) == (0, 0) {
            continue;
        }
        for dir in [(-b, a), (b, -a)] {
            let p = primitive(&[dir.0, dir.1]);
            let d = (p[0], p[1]);
            if constraints.iter().all(|&(ca, cb)| ca * d.0 + cb * d.1 >= 0)
                && !candidates.contains(&d)
            {
                candidates.push(d);
            }
        }
    }
    let extremal: Vec<(i64, i64)> = candidates
        .iter()
        .copied()
        .filter(|&d| {
            // an extremal ray is tight on some constraint and not a positive
            // combination of the others; in 2D it suffices that it is not
            // strictly inside, i.e. some constraint vanishes on it
            constraints
                .iter()
                .any(|&(ca, cb)| ca * d.0 + cb * d.1 == 0)
        })
        .collect();
    match extremal.len() {
        2 => {
            let (u, v) = (extremal[0], extremal[1]);
            if det2(u, v) > 0 {
                Ok((u, v))
            } else if det2(u, v) < 0 {
                Ok((v, u))
            } else {
                Err(Error::InvalidInput(
                    "dual effective cone is not pointed".into(),
                ))
            }
        }
        n => Err(Error::InvalidInput(format!(
            "expected 2 extremal rays for a pointed 2D cone, found {n}"
        ))),
    }
}

fn ceil_div(p: i64, n: i64) -> i64 {
    debug_assert!(n > 0);
    p.div_euclid(n) + i64::from(p.rem_euclid(n) != 0)
}

pub type Ray2 = (i64, i64);

/// Subdivide `cone(u, v)` (primitive generators, `det(u,v) > 0`) into
/// unimodular subcones, returned in order from the `u` side to the `v` side.
/// The inserted rays are the boundary lattice points adjacent to each edge.
pub fn unimodular_subdivide(u: Ray2, v: Ray2) -> Result<Vec<(Ray2, Ray2)>> {
    let mut cones = Vec::new();
    let mut u = u;
    loop {
        let n = det2(u, v);
        if n <= 0 {
            return Err(Error::InvalidInput(format!(
                "cone generators not positively oriented: det = {n}"
            )));
        }
        if n == 1 {
            cones.push((u, v));
            return Ok(cones);
        }
        // complete u to a basis (u, ustar), det(u, ustar) = 1
        let (g, s, t) = ext_gcd(u.0, u.1);
        debug_assert_eq!(g, 1, "cone generator not primitive");
        let ustar = (-t, s);
        debug_assert_eq!(det2(u, ustar), 1);
        // v = p*u + n*ustar; the lattice point adjacent to the u-edge is
        // ceil(p/n)*u + ustar
        let p = det2(v, ustar);
        let c = ceil_div(p, n);
        let w = (c * u.0 + ustar.0, c * u.1 + ustar.1);
        debug_assert_eq!(det2(u, w), 1);
        cones.push((u, w));
        u = w;
    }
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}
