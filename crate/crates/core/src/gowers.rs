//! Gowers inner products and uniformity norms, and the exact generalized
//! additive energies `P_k`, `E_k` and `Ẽ_k` of finite sets.
//!
//! The brute-force sums run over parallelotopes `(a, h_1, ..., h_k)`. The
//! base point `a` is taken from the support of the `ε = 0` function and
//! each `h_j` is chosen so that `a + h_j` lies in the support of the
//! function indexed by the `j`-th unit vector. Vertices are added one
//! direction at a time and a branch is cut as soon as a vertex falls off a
//! support, so only nonvanishing products are ever formed.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{AddAssign, Mul};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{GcubeError, Result};
use crate::lattice::{CubeSet, ExactCount, LatticeFunction, LatticePoint};

/// Largest box volume stored densely; sparser layouts fall back to a map.
const DENSE_LIMIT: usize = 1 << 22;

/// `2^k` functions indexed by sign vectors `ε ∈ {0,1}^k`.
///
/// The function for `ε` sits at index `Σ ε_i 2^(i-1)`, so bit `i-1` of the
/// index is `ε_i`.
#[derive(Clone, Debug)]
pub struct GowersSystem {
    k: usize,
    functions: Vec<LatticeFunction>,
}

impl GowersSystem {
    pub fn new(k: usize, functions: Vec<LatticeFunction>) -> Result<Self> {
        if k < 1 {
            return Err(GcubeError::domain("Gowers system needs k >= 1"));
        }
        if functions.len() != 1 << k {
            return Err(GcubeError::domain(format!(
                "Gowers system of order {k} needs {} functions, got {}",
                1usize << k,
                functions.len()
            )));
        }
        let d = functions[0].dim();
        for f in &functions {
            if f.dim() != d {
                return Err(GcubeError::DimensionMismatch {
                    expected: d,
                    found: f.dim(),
                });
            }
        }
        Ok(GowersSystem { k, functions })
    }

    /// The system with every entry equal to `f`.
    pub fn constant(f: &LatticeFunction, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(GcubeError::domain("Gowers system needs k >= 1"));
        }
        GowersSystem::new(k, vec![f.clone(); 1 << k])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn functions(&self) -> &[LatticeFunction] {
        &self.functions
    }

    pub fn dim(&self) -> usize {
        self.functions[0].dim()
    }
}

/// Value lookup for one vertex slot of the enumeration.
enum Store<V> {
    Dense {
        lo: Vec<i64>,
        extent: Vec<usize>,
        data: Vec<Option<V>>,
    },
    Sparse(std::collections::HashMap<Vec<i64>, V>),
}

impl<V: Copy> Store<V> {
    fn build(entries: &[(Vec<i64>, V)], lo: &[i64], hi: &[i64]) -> Self {
        let extent: Vec<usize> = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .collect();
        let volume = extent
            .iter()
            .try_fold(1usize, |acc, &e| acc.checked_mul(e))
            .filter(|&v| v <= DENSE_LIMIT);
        match volume {
            Some(volume) => {
                let mut data = vec![None; volume];
                for (p, v) in entries {
                    let idx = dense_index(p, lo, &extent).expect("support lies in its box");
                    data[idx] = Some(*v);
                }
                Store::Dense {
                    lo: lo.to_vec(),
                    extent,
                    data,
                }
            }
            None => Store::Sparse(entries.iter().cloned().collect()),
        }
    }

    #[inline]
    fn get(&self, p: &[i64]) -> Option<V> {
        match self {
            Store::Dense { lo, extent, data } => dense_index(p, lo, extent).and_then(|i| data[i]),
            Store::Sparse(map) => map.get(p).copied(),
        }
    }
}

#[inline]
fn dense_index(p: &[i64], lo: &[i64], extent: &[usize]) -> Option<usize> {
    let mut idx = 0usize;
    for i in 0..p.len() {
        let off = p[i] - lo[i];
        if off < 0 || off as usize >= extent[i] {
            return None;
        }
        idx = idx * extent[i] + off as usize;
    }
    Some(idx)
}

/// Sum over all parallelotopes of the product of the vertex values.
///
/// `slots[ε]` lists the nonzero values of the function attached to `ε`;
/// values must already carry any conjugation. Per-base-point partial sums
/// are combined in support order, so the result does not depend on the
/// thread count.
fn parallelotope_sum<V>(k: usize, dim: usize, slots: &[Vec<(Vec<i64>, V)>]) -> V
where
    V: Copy + Send + Sync + Zero + One + Mul<Output = V> + AddAssign,
{
    if slots.iter().any(|s| s.is_empty()) {
        return V::zero();
    }
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for slot in slots {
        for (p, _) in slot {
            for i in 0..dim {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
    }
    let stores: Vec<Store<V>> = slots.iter().map(|s| Store::build(s, &lo, &hi)).collect();

    let partials: Vec<V> = slots[0]
        .par_iter()
        .map(|(a, va)| {
            let mut verts = Vec::with_capacity(dim << k);
            verts.extend_from_slice(a);
            let mut acc = V::zero();
            extend_parallelotope(0, k, dim, slots, &stores, &mut verts, *va, &mut acc);
            acc
        })
        .collect();
    let mut total = V::zero();
    for p in partials {
        total += p;
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn extend_parallelotope<V>(
    level: usize,
    k: usize,
    dim: usize,
    slots: &[Vec<(Vec<i64>, V)>],
    stores: &[Store<V>],
    verts: &mut Vec<i64>,
    prod: V,
    acc: &mut V,
) where
    V: Copy + Zero + One + Mul<Output = V> + AddAssign,
{
    if level == k {
        *acc += prod;
        return;
    }
    let bit = 1usize << level;
    let old = bit;
    let mut point = vec![0i64; dim];
    let mut h = vec![0i64; dim];
    for (y, vy) in &slots[bit] {
        for i in 0..dim {
            h[i] = y[i] - verts[i];
        }
        let mut next = prod * *vy;
        verts.extend_from_slice(y);
        let mut alive = true;
        for m in 1..old {
            for i in 0..dim {
                point[i] = verts[m * dim + i] + h[i];
            }
            match stores[m | bit].get(&point) {
                Some(v) => {
                    next = next * v;
                    verts.extend_from_slice(&point);
                }
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if alive {
            extend_parallelotope(level + 1, k, dim, slots, stores, verts, next, acc);
        }
        verts.truncate(old * dim);
    }
}

fn complex_slot(f: &LatticeFunction, conjugate: bool) -> Vec<(Vec<i64>, Complex64)> {
    f.iter()
        .map(|(p, v)| (p.coords().to_vec(), if conjugate { v.conj() } else { *v }))
        .collect()
}

/// `Σ_{a,h} Π_ε C^{|ε|} f_ε(a + ε·h)` with `C` complex conjugation.
pub fn gowers_inner_product(system: &GowersSystem) -> Complex64 {
    let slots: Vec<_> = system
        .functions
        .iter()
        .enumerate()
        .map(|(eps, f)| complex_slot(f, eps.count_ones() % 2 == 1))
        .collect();
    parallelotope_sum(system.k, system.dim(), &slots)
}

/// `‖f‖_{U^k}^{2^k}` by brute force over parallelotopes.
pub fn gowers_norm_pow(f: &LatticeFunction, k: usize) -> Result<f64> {
    let value = gowers_inner_product(&GowersSystem::constant(f, k)?);
    debug_assert!(
        value.im.abs() < 1e-9 * (1.0 + value.norm()),
        "self inner product has imaginary part {}",
        value.im
    );
    Ok(value.re.max(0.0))
}

/// `‖f‖_{U^k}`.
pub fn gowers_norm(f: &LatticeFunction, k: usize) -> Result<f64> {
    Ok(gowers_norm_pow(f, k)?.powf(1.0 / (1u64 << k) as f64))
}

/// `‖f‖_{U^k}^{2^k}` through `‖f‖_{U^{k+1}}^{2^{k+1}} = Σ_h ‖Δ_h f‖_{U^k}^{2^k}`
/// with `Δ_h f = conj(f(·+h)) f(·)` and base case `‖f‖_{U^1}^2 = |Σ f|^2`.
pub fn gowers_norm_recursive(f: &LatticeFunction, k: usize) -> Result<f64> {
    if k < 1 {
        return Err(GcubeError::domain("Gowers norm needs k >= 1"));
    }
    Ok(recursive_pow(f, k))
}

fn recursive_pow(f: &LatticeFunction, k: usize) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    if k == 1 {
        let s: Complex64 = f.iter().map(|(_, v)| *v).sum();
        return s.norm_sqr();
    }
    let support: Vec<&LatticePoint> = f.support().collect();
    let diffs: BTreeSet<LatticePoint> = support
        .iter()
        .flat_map(|x| support.iter().map(move |y| y.sub(x)))
        .collect();
    let terms: Vec<f64> = diffs
        .par_iter()
        .map(|h| {
            let delta = f
                .translate(h)
                .conj()
                .mul(f)
                .expect("same dimension");
            recursive_pow(&delta, k - 1)
        })
        .collect();
    terms.into_iter().sum()
}

/// `P_k(A)`: the number of `(a, h_1, ..., h_k)` with every `a + ε·h` in `A`.
pub fn energy_p(set: &CubeSet, k: usize) -> Result<ExactCount> {
    if k < 1 {
        return Err(GcubeError::domain("energy P_k needs k >= 1"));
    }
    let slot: Vec<(Vec<i64>, Count)> = set
        .iter()
        .map(|p| (p.coords().to_vec(), Count(1)))
        .collect();
    let slots = vec![slot; 1 << k];
    let Count(n) = parallelotope_sum(k, set.dim(), &slots);
    Ok(ExactCount(BigUint::from(n)))
}

/// Additive counter used by the enumeration. Every vertex weighs one, so
/// products stay one and the sum counts tuples.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Count(u128);

impl Zero for Count {
    fn zero() -> Self {
        Count(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for Count {
    type Output = Count;
    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl One for Count {
    fn one() -> Self {
        Count(1)
    }
}

impl Mul for Count {
    type Output = Count;
    fn mul(self, rhs: Count) -> Count {
        Count(self.0 * rhs.0)
    }
}

impl AddAssign for Count {
    fn add_assign(&mut self, rhs: Count) {
        self.0 += rhs.0;
    }
}

/// Representation counts `r(x) = |{(a_1..a_k) ∈ A^k : a_1+...+a_k = x}|`.
fn sumset_counts(set: &CubeSet, k: usize) -> BTreeMap<LatticePoint, BigUint> {
    let mut counts: BTreeMap<LatticePoint, BigUint> = BTreeMap::new();
    counts.insert(LatticePoint::origin(set.dim()), BigUint::one());
    for _ in 0..k {
        let mut next: BTreeMap<LatticePoint, BigUint> = BTreeMap::new();
        for (x, c) in &counts {
            for a in set.iter() {
                *next.entry(x.add(a)).or_default() += c;
            }
        }
        counts = next;
    }
    counts
}

/// `E_k(A)`: 2k-tuples with `a_1+...+a_k = a_{k+1}+...+a_{2k}`, computed as
/// the squared ℓ² norm of the k-fold self-convolution of `1_A`.
pub fn energy_e(set: &CubeSet, k: usize) -> Result<ExactCount> {
    if k < 1 {
        return Err(GcubeError::domain("energy E_k needs k >= 1"));
    }
    let total = sumset_counts(set, k)
        .values()
        .fold(BigUint::zero(), |acc, r| acc + r * r);
    Ok(ExactCount(total))
}

/// `Ẽ_k(A)`: 2k-tuples with `a_1-a_2 = a_3-a_4 = ... = a_{2k-1}-a_{2k}`,
/// computed as `Σ_z r(z)^k` with `r(z) = |{(a,b) ∈ A^2 : a-b = z}|`.
pub fn energy_e_tilde(set: &CubeSet, k: usize) -> Result<ExactCount> {
    if k < 1 {
        return Err(GcubeError::domain("energy Ẽ_k needs k >= 1"));
    }
    let mut diffs: BTreeMap<LatticePoint, u64> = BTreeMap::new();
    for a in set.iter() {
        for b in set.iter() {
            *diffs.entry(a.sub(b)).or_default() += 1;
        }
    }
    let total = diffs
        .values()
        .fold(BigUint::zero(), |acc, &r| acc + BigUint::from(r).pow(k as u32));
    Ok(ExactCount(total))
}

/// `P_k({0, ..., n-1})` without enumeration: a parallelotope with steps `h`
/// spans `s = Σ|h_i|`, leaving `n - s` base points, so the count is
/// `Σ_{s<n} (n-s) N_k(s)` with `N_k(s) = |{h ∈ ℤ^k : Σ|h_i| = s}|`.
pub fn energy_p_interval(n: usize, k: usize) -> Result<ExactCount> {
    if k < 1 {
        return Err(GcubeError::domain("energy P_k needs k >= 1"));
    }
    if n == 0 {
        return Ok(ExactCount(BigUint::zero()));
    }
    let mut shells = vec![BigUint::zero(); n];
    shells[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n];
        for (s, c) in shells.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[s] += c;
            for step in 1..n - s {
                next[s + step] += c * 2u32;
            }
        }
        shells = next;
    }
    let total = shells
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (s, c)| acc + c * (n - s));
    Ok(ExactCount(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn delta_system_has_unit_inner_product() {
        for k in 1..=4 {
            let s = GowersSystem::constant(&LatticeFunction::delta(2), k).unwrap();
            assert_eq!(gowers_inner_product(&s), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn zero_member_kills_the_inner_product() {
        let f = LatticeFunction::from_real_1d(&[1.0, 2.0, 3.0]);
        let mut fs = vec![f; 4];
        fs[2] = LatticeFunction::zero(1);
        let s = GowersSystem::new(2, fs).unwrap();
        assert_eq!(gowers_inner_product(&s), Complex64::zero());
    }

    #[test]
    fn binary_and_ternary_indicators() {
        let bin = LatticeFunction::from_real_1d(&[1.0, 1.0]);
        assert_eq!(gowers_norm_pow(&bin, 2).unwrap(), 6.0);
        assert_eq!(gowers_norm_pow(&bin, 3).unwrap(), 8.0);
        let tern = LatticeFunction::from_real_1d(&[1.0, 1.0, 1.0]);
        assert_eq!(gowers_norm_pow(&tern, 2).unwrap(), 19.0);
        assert_eq!(gowers_norm_recursive(&bin, 2).unwrap(), 6.0);
    }

    #[test]
    fn scaled_delta() {
        let c = Complex64::new(0.6, -0.8) * 1.5;
        let f = LatticeFunction::delta(1).scale(c);
        for k in 1..=3 {
            let expect = c.norm().powi(1 << k);
            assert!(close(gowers_norm_pow(&f, k).unwrap(), expect, 1e-12));
            assert!(close(gowers_norm_recursive(&f, k).unwrap(), expect, 1e-12));
        }
    }

    #[test]
    fn rejects_bad_orders_and_shapes() {
        let f = LatticeFunction::delta(1);
        assert!(gowers_norm_pow(&f, 0).is_err());
        assert!(gowers_norm_recursive(&f, 0).is_err());
        assert!(GowersSystem::new(2, vec![f.clone(); 3]).is_err());
        assert!(GowersSystem::new(1, vec![f, LatticeFunction::delta(2)]).is_err());
    }

    #[test]
    fn energies_of_small_sets() {
        let bin = CubeSet::interval(2).unwrap();
        assert_eq!(energy_p(&bin, 2).unwrap(), 6);
        assert_eq!(energy_e(&bin, 3).unwrap(), 20);
        assert_eq!(energy_e_tilde(&bin, 3).unwrap(), 10);
        let tern = CubeSet::interval(3).unwrap();
        assert_eq!(energy_p(&tern, 2).unwrap(), 19);
        assert_eq!(energy_e(&tern, 2).unwrap(), 19);
        assert_eq!(energy_e_tilde(&tern, 2).unwrap(), 19);
        let empty = CubeSet::from_1d(3, &[]).unwrap();
        assert_eq!(energy_p(&empty, 2).unwrap(), 0);
        let single = CubeSet::from_1d(3, &[1]).unwrap();
        for k in 2..5 {
            assert_eq!(energy_p(&single, k).unwrap(), 1);
            assert_eq!(energy_e(&single, k).unwrap(), 1);
            assert_eq!(energy_e_tilde(&single, k).unwrap(), 1);
        }
    }

    #[test]
    fn binary_square_energy() {
        let sq = CubeSet::full(2, 2).unwrap();
        assert_eq!(energy_p(&sq, 2).unwrap(), 36);
    }

    #[test]
    fn sparse_layout_matches_dense() {
        let far = LatticeFunction::from_entries(
            1,
            [
                (LatticePoint::new(vec![0]), Complex64::new(1.0, 0.0)),
                (LatticePoint::new(vec![5_000_000]), Complex64::new(1.0, 0.0)),
                (LatticePoint::new(vec![10_000_000]), Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(gowers_norm_pow(&far, 2).unwrap(), 19.0);
    }

    #[test]
    fn interval_count_matches_enumeration() {
        for n in 1..=5 {
            let set = CubeSet::interval(n).unwrap();
            for k in 1..=4 {
                assert_eq!(energy_p_interval(n, k).unwrap(), energy_p(&set, k).unwrap());
            }
        }
    }
}
