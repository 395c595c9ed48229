//! Fans of smooth projective toric varieties and the combinatorics derived
//! from them: validation, the obstruction set `B_Sigma`, Picard rank, the
//! degree monoid `N^{Sigma(1)}_*`, the constant `alpha*`, and `Phi_n` of the
//! toric variety.

use crate::error::{Error, Result};
use crate::lattice;
use crate::laurent::LaurentPoly;
use crate::obstruction::ObstructionSet;
use crate::rational::{gcd_i64, rat, Rat};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A fan given by its rays (primitive integer vectors in `Z^rank`) and
/// maximal cones (sets of ray indices, 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct FanRaw {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = FanRaw::deserialize(deserializer)?;
        Fan::new(raw.rank, raw.rays, raw.max_cones).map_err(serde::de::Error::custom)
    }
}

/// Validation outcome: structural defects are errors at construction time,
/// smoothness and completeness are reported here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub smooth: bool,
    pub complete: bool,
    pub issues: Vec<String>,
}

impl Fan {
    /// Checks the structural invariants: rays pairwise distinct, primitive
    /// and nonzero; cone indices valid and without repeats; the rays of
    /// each maximal cone linearly independent.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::MalformedFan("rank must be positive".into()));
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != rank {
                return Err(Error::MalformedFan(format!(
                    "ray {i} has {} coordinates, expected {rank}",
                    ray.len()
                )));
            }
            let g = ray.iter().fold(0i64, |acc, &x| gcd_i64(acc, x));
            if g == 0 {
                return Err(Error::MalformedFan(format!("ray {i} is zero")));
            }
            if g != 1 {
                return Err(Error::MalformedFan(format!(
                    "ray {i} is not primitive (content {g})"
                )));
            }
            for (j, other) in rays.iter().enumerate().take(i) {
                if other == ray {
                    return Err(Error::MalformedFan(format!("rays {j} and {i} coincide")));
                }
            }
        }
        for (c, cone) in max_cones.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &idx in cone {
                if idx >= rays.len() {
                    return Err(Error::MalformedFan(format!(
                        "cone {c} references ray {idx}, only {} rays",
                        rays.len()
                    )));
                }
                if !seen.insert(idx) {
                    return Err(Error::MalformedFan(format!(
                        "cone {c} repeats ray {idx}"
                    )));
                }
            }
            if cone.len() > rank {
                return Err(Error::MalformedFan(format!(
                    "cone {c} has {} rays in rank {rank}",
                    cone.len()
                )));
            }
            let mat: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i].clone()).collect();
            if integer_rank(&mat, rank) != cone.len() {
                return Err(Error::MalformedFan(format!(
                    "cone {c} has dependent rays {cone:?}"
                )));
            }
        }
        Ok(Self {
            rank,
            rays,
            max_cones,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the toric variety (= the fan rank).
    pub fn dim(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan serializes")
    }

    /// Smoothness and completeness.
    ///
    /// Smooth: the rays of each maximal cone extend to a lattice basis (all
    /// maximal minors of the ray matrix have gcd 1). Complete: every maximal
    /// cone is full-dimensional and each facet (an `(r-1)`-subset of a
    /// maximal cone's rays) lies in exactly two maximal cones. Facet-pairing
    /// is sufficient for the smooth projective inputs this crate targets.
    pub fn validate(&self) -> FanReport {
        let mut issues = Vec::new();
        let mut smooth = true;
        for (c, cone) in self.max_cones.iter().enumerate() {
            let mat: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
            if !is_extendable_to_basis(&mat, self.rank) {
                smooth = false;
                issues.push(format!("cone {c} {:?} is singular", cone));
            }
        }
        let mut complete = true;
        if self.max_cones.is_empty() {
            complete = false;
            issues.push("no maximal cones".into());
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != self.rank {
                complete = false;
                issues.push(format!("cone {c} is not full-dimensional"));
            }
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for cone in &self.max_cones {
            used.extend(cone.iter().copied());
        }
        if used.len() != self.rays.len() {
            complete = false;
            issues.push("some rays appear in no maximal cone".into());
        }
        if complete {
            // facet pairing
            let cone_sets: Vec<BTreeSet<usize>> = self
                .max_cones
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect();
            'outer: for (c, cone) in cone_sets.iter().enumerate() {
                for &drop in cone {
                    let facet: BTreeSet<usize> =
                        cone.iter().copied().filter(|&i| i != drop).collect();
                    let count = cone_sets.iter().filter(|s| facet.is_subset(s)).count();
                    if count != 2 {
                        complete = false;
                        issues.push(format!(
                            "facet {:?} of cone {c} lies in {count} maximal cones",
                            facet
                        ));
                        break 'outer;
                    }
                }
            }
        }
        FanReport {
            smooth,
            complete,
            issues,
        }
    }

    /// All cones of the fan as ray-index sets (faces of the maximal cones;
    /// cones are simplicial so faces are exactly the subsets).
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cone in &self.max_cones {
            let k = cone.len();
            for mask in 0u64..(1 << k) {
                let mut subset: Vec<usize> = (0..k)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| cone[i])
                    .collect();
                subset.sort_unstable();
                seen.insert(subset);
            }
        }
        seen.into_iter().collect()
    }

    /// `rank Pic = #rays - rank` for smooth complete fans.
    pub fn pic_rank(&self) -> usize {
        self.rays.len() - self.rank
    }

    /// The obstruction set `B_Sigma`: `n` lies in `B_Sigma` iff for every
    /// cone there is a ray outside it with `n = 1`; minimal elements are the
    /// minimal hitting sets of the complements of the maximal cones (faces
    /// impose weaker conditions, so maximal cones suffice).
    pub fn b_sigma(&self) -> Result<ObstructionSet> {
        let e = self.rays.len();
        if e > 20 {
            return Err(Error::InvalidInput(format!(
                "{e} rays: hitting-set enumeration capped at 20"
            )));
        }
        let complements: Vec<u32> = self
            .max_cones
            .iter()
            .map(|cone| {
                let mut m: u32 = (1u32 << e) - 1;
                for &i in cone {
                    m &= !(1 << i);
                }
                m
            })
            .collect();
        let mut hitting: Vec<u32> = Vec::new();
        for n in 0u32..(1 << e) {
            if complements.iter().all(|&k| k & n != 0) {
                hitting.push(n);
            }
        }
        Ok(ObstructionSet::new(e, hitting))
    }

    /// All degree vectors `d` in `N^{Sigma(1)}` with `sum d_a ray_a = 0` and
    /// total degree `d`, by pruned depth-first search.
    pub fn nstar_enumerate(&self, total: usize) -> Vec<Vec<u32>> {
        let e = self.rays.len();
        let max_abs: i64 = self
            .rays
            .iter()
            .flat_map(|r| r.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0);
        let mut out = Vec::new();
        let mut current = vec![0u32; e];
        let mut partial = vec![0i64; self.rank];
        self.nstar_dfs(0, total, max_abs, &mut current, &mut partial, &mut out);
        out
    }

    fn nstar_dfs(
        &self,
        idx: usize,
        remaining: usize,
        max_abs: i64,
        current: &mut Vec<u32>,
        partial: &mut Vec<i64>,
        out: &mut Vec<Vec<u32>>,
    ) {
        // prune: remaining coordinates can move each lattice coordinate by at
        // most remaining * max_abs
        let bound = remaining as i64 * max_abs;
        if partial.iter().any(|&s| s.abs() > bound) {
            return;
        }
        if idx == self.rays.len() {
            if remaining == 0 && partial.iter().all(|&s| s == 0) {
                out.push(current.clone());
            }
            return;
        }
        if idx + 1 == self.rays.len() {
            // last coordinate is forced to` remaining`
            let d = remaining;
            for (k, p) in partial.iter_mut().enumerate() {
                *p += d as i64 * self.rays[idx][k];
            }
            current[idx] = d as u32;
            self.nstar_dfs(idx + 1, 0, max_abs, current, partial, out);
            current[idx] = 0;
            for (k, p) in partial.iter_mut().enumerate() {
                *p -= d as i64 * self.rays[idx][k];
            }
            return;
        }
        for d in 0..=remaining {
            for (k, p) in partial.iter_mut().enumerate() {
                *p += d as i64 * self.rays[idx][k];
            }
            current[idx] = d as u32;
            self.nstar_dfs(idx + 1, remaining - d, max_abs, current, partial, out);
            current[idx] = 0;
            for (k, p) in partial.iter_mut().enumerate() {
                *p -= d as i64 * self.rays[idx][k];
            }
        }
    }

    /// `n_Sigma(d)`, the number of degree vectors of total degree `d`.
    pub fn n_sigma(&self, total: usize) -> usize {
        self.nstar_enumerate(total).len()
    }

    /// `Phi_n` of the toric variety by torus-orbit stratification:
    /// `Phi_n(X_Sigma) = sum_{cones} (L^n - 1)^{rank - dim}`. The result is
    /// checked against the Moebius identity
    /// `sum_m mu0(m) L^{-n |m|} = (1 - L^{-n})^{pic} Phi_n L^{-n dim}`
    /// before being returned.
    pub fn phi_toric(&self, n: usize) -> Result<LaurentPoly> {
        assert!(n >= 1);
        let report = self.validate();
        if !report.complete {
            return Err(Error::NotComplete);
        }
        if !report.smooth {
            return Err(Error::NotSmooth);
        }
        let ln = LaurentPoly::monomial(n as i64, rat(1));
        let torus_factor = &ln - &LaurentPoly::one();
        let mut phi = LaurentPoly::zero();
        for cone in self.all_cones() {
            phi = &phi + &torus_factor.pow((self.rank - cone.len()) as u32);
        }

        let b = self.b_sigma()?;
        let e = self.rays.len();
        let mut lhs = LaurentPoly::zero();
        for m in 0u32..(1 << e) {
            let mu = b.mu0_crosscut(m);
            if mu != 0 {
                let exp = -(n as i64) * i64::from(m.count_ones());
                lhs.add_term(exp, rat(mu));
            }
        }
        let one_minus = &LaurentPoly::one() - &LaurentPoly::monomial(-(n as i64), rat(1));
        let rhs = &one_minus.pow(self.pic_rank() as u32)
            * &phi.mul_lefschetz_pow(-(n as i64) * self.rank as i64);
        if lhs != rhs {
            return Err(Error::IdentityFailure(format!(
                "orbit-sum Phi_{n} violates the Moebius identity: {lhs} != {rhs}"
            )));
        }
        Ok(phi)
    }
}

/// Exact or flagged-approximate value of `alpha*`.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaStar {
    Exact(Rat),
    /// Ehrhart-fit estimate, for Picard rank > 2.
    Approximate(f64),
}

impl std::fmt::Display for AlphaStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlphaStar::Exact(r) => write!(f, "{}", crate::rational::display(r)),
            AlphaStar::Approximate(x) => write!(f, "~{x} (approximate)"),
        }
    }
}

/// Unimodular decomposition of the dual effective cone realized inside
/// `N^{Sigma(1)}`, with anticanonical degrees of the generators.
#[derive(Debug, Clone)]
pub struct DualConeDecomposition {
    pub pic_rank: usize,
    /// Degrees `<m_i, L0>` of the primitive generators of each
    /// top-dimensional subcone.
    pub top_cone_degrees: Vec<Vec<i64>>,
    /// Degrees of all ray generators of the subdivision.
    pub ray_degrees: Vec<i64>,
}

impl DualConeDecomposition {
    /// `alpha* = sum over top-dimensional cones of prod 1/<m_i, L0>`.
    pub fn alpha_star(&self) -> Rat {
        let mut acc = Rat::zero();
        for cone in &self.top_cone_degrees {
            let mut term = Rat::one();
            for &c in cone {
                term /= rat(c);
            }
            acc += term;
        }
        acc
    }

    /// lcm of the generator degrees: a period for which `n_Sigma` is
    /// eventually polynomial on arithmetic progressions.
    pub fn period(&self) -> usize {
        self.ray_degrees
            .iter()
            .fold(1i64, |acc, &c| acc / gcd_i64(acc, c) * c) as usize
    }
}

/// Decompose the dual effective cone (realized as the kernel cone
/// `{d in R^E : sum d_a ray_a = 0, d >= 0}`) into unimodular cones.
/// Exact for Picard rank 1 and 2.
pub fn dual_cone_decomposition(fan: &Fan) -> Result<DualConeDecomposition> {
    let pic = fan.pic_rank();
    let cols: Vec<Vec<i64>> = fan.rays().to_vec();
    let basis = lattice::integer_kernel_basis(&cols);
    if basis.len() != pic {
        return Err(Error::MalformedFan(format!(
            "kernel rank {} != Picard rank {pic}",
            basis.len()
        )));
    }
    match pic {
        1 => {
            let w = &basis[0];
            let gen: Vec<i64> = if w.iter().all(|&x| x >= 0) {
                w.clone()
            } else if w.iter().all(|&x| x <= 0) {
                w.iter().map(|&x| -x).collect()
            } else {
                return Err(Error::InvalidInput(
                    "kernel line meets the positive orthant only at 0".into(),
                ));
            };
            let deg: i64 = gen.iter().sum();
            if deg <= 0 {
                return Err(Error::InvalidInput("degenerate dual cone".into()));
            }
            Ok(DualConeDecomposition {
                pic_rank: 1,
                top_cone_degrees: vec![vec![deg]],
                ray_degrees: vec![deg],
            })
        }
        2 => {
            // constraints: row alpha of the E x 2 basis matrix must be >= 0
            let e = fan.num_rays();
            let constraints: Vec<(i64, i64)> =
                (0..e).map(|a| (basis[0][a], basis[1][a])).collect();
            let (u, v) = lattice::cone_extremal_rays_2d(&constraints)?;
            let cones = lattice::unimodular_subdivide(u, v)?;
            let degree = |g: (i64, i64)| -> i64 {
                (0..e).map(|a| g.0 * basis[0][a] + g.1 * basis[1][a]).sum()
            };
            let mut top = Vec::new();
            for &(a, b) in &cones {
                let (da, db) = (degree(a), degree(b));
                if da <= 0 || db <= 0 {
                    return Err(Error::InvalidInput(
                        "anticanonical degree not positive on the dual cone".into(),
                    ));
                }
                top.push(vec![da, db]);
            }
            // ray chain u, w_1, ..., v of the subdivision
            let mut chain: Vec<(i64, i64)> = vec![cones[0].0];
            for &(_, b) in &cones {
                chain.push(b);
            }
            let ray_degrees: Vec<i64> = chain.iter().map(|&g| degree(g)).collect();
            Ok(DualConeDecomposition {
                pic_rank: 2,
                top_cone_degrees: top,
                ray_degrees,
            })
        }
        n => Err(Error::RankTooHigh(n)),
    }
}

/// `alpha*` from the definition: the limit of `(1-t)^{pic} Z_{Ceff,L0}(t)`
/// at `t -> 1`, computed exactly through the unimodular cone decomposition
/// for Picard rank <= 2, and by an Ehrhart fit (flagged approximate) above.
pub fn alpha_star(fan: &Fan) -> Result<AlphaStar> {
    match dual_cone_decomposition(fan) {
        Ok(dec) => Ok(AlphaStar::Exact(dec.alpha_star())),
        Err(Error::RankTooHigh(_)) => {
            let pic = fan.pic_rank();
            let d = 30usize;
            let cumulative: usize = (0..=d).map(|k| fan.n_sigma(k)).sum();
            let mut fact = 1f64;
            for k in 2..=pic {
                fact *= k as f64;
            }
            Ok(AlphaStar::Approximate(
                cumulative as f64 * fact / (d as f64).powi(pic as i32),
            ))
        }
        Err(e) => Err(e),
    }
}

/// Exact `alpha*`; errors for Picard rank > 2.
pub fn alpha_star_exact(fan: &Fan) -> Result<Rat> {
    Ok(dual_cone_decomposition(fan)?.alpha_star())
}

/// Builtin fan registry: `p1`, `p2`, `p3`, `p1xp1`, `hirzebruch:m`.
pub fn builtin(name: &str) -> Result<Fan> {
    if let Some(m) = name.strip_prefix("hirzebruch:") {
        let m: i64 = m
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad Hirzebruch parameter in {name:?}")))?;
        if m < 0 {
            return Err(Error::InvalidInput("hirzebruch parameter must be >= 0".into()));
        }
        return hirzebruch(m);
    }
    match name {
        "p1" => projective_space(1),
        "p2" => projective_space(2),
        "p3" => projective_space(3),
        "p1xp1" => hirzebruch(0),
        _ => Err(Error::InvalidInput(format!(
            "unknown builtin fan {name:?} (try p1, p2, p3, p1xp1, hirzebruch:m)"
        ))),
    }
}

pub const BUILTIN_NAMES: &[&str] = &["p1", "p2", "p3", "p1xp1", "hirzebruch:1", "hirzebruch:2"];

/// The fan of `P^n`: the canonical basis vectors together with minus their
/// sum; maximal cones are all n-subsets of the rays.
pub fn projective_space(n: usize) -> Result<Fan> {
    assert!(n >= 1);
    let mut rays = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        rays.push(e);
    }
    rays.push(vec![-1i64; n]);
    let mut max_cones = Vec::new();
    for skip in 0..=n {
        let cone: Vec<usize> = (0..=n).filter(|&i| i != skip).collect();
        max_cones.push(cone);
    }
    Fan::new(n, rays, max_cones)
}

/// The fan of the m-th Hirzebruch surface: rays `(1,0)`, `(-1,m)`, `(0,1)`,
/// `(0,-1)` with the four cones spanned by circularly adjacent rays.
pub fn hirzebruch(m: i64) -> Result<Fan> {
    Fan::new(
        2,
        vec![vec![1, 0], vec![-1, m], vec![0, 1], vec![0, -1]],
        vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
    )
}

fn integer_rank(mat: &[Vec<i64>], width: usize) -> usize {
    // fraction-free elimination over i128
    let mut m: Vec<Vec<i128>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let mut rank = 0;
    for col in 0..width {
        if rank == rows {
            break;
        }
        if let Some(p) = (rank..rows).find(|&i| m[i][col] != 0) {
            m.swap(rank, p);
            for i in rank + 1..rows {
                if m[i][col] != 0 {
                    let (a, b) = (m[rank][col], m[i][col]);
                    for k in 0..width {
                        m[i][k] = m[i][k] * a - m[rank][k] * b;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// True if the `k` rows extend to a basis of `Z^width`: the gcd of all
/// maximal minors is 1.
fn is_extendable_to_basis(mat: &[Vec<i64>], width: usize) -> bool {
    let k = mat.len();
    if k == 0 {
        return true;
    }
    if k > width {
        return false;
    }
    let mut gcd_minors: i128 = 0;
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor = det_i128(mat, &cols);
        gcd_minors = gcd_i128(gcd_minors, minor);
        if gcd_minors == 1 {
            return true;
        }
        if !next_combination(&mut cols, width) {
            break;
        }
    }
    gcd_minors == 1
}

fn det_i128(mat: &[Vec<i64>], cols: &[usize]) -> i128 {
    let k = cols.len();
    let mut m: Vec<Vec<i128>> = mat
        .iter()
        .map(|row| cols.iter().map(|&c| row[c] as i128).collect())
        .collect();
    // Bareiss
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            if let Some(q) = (p + 1..k).find(|&q| m[q][p] != 0) {
                m.swap(p, q);
                sign = -sign;
            } else {
                return 0;
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
            m[i][p] = 0;
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn next_combination(cols: &mut [usize], n: usize) -> bool {
    let k = cols.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if cols[i] < n - k + i {
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
