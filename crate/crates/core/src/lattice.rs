//! Finitely supported functions and finite sets on the integer lattice `Z^d`.
//!
//! Functions are stored sparsely, keyed by lattice point in lexicographic
//! order. Every floating accumulation walks the entries in that order, so
//! results are reproducible bit for bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{GcubeError, Result};

/// A point of `Z^d`. The empty tuple is the single point of `Z^0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finitely supported function `Z^d -> C`.
///
/// Zero values are never stored, so the key set is exactly the support.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction {
    dim: usize,
    entries: BTreeMap<LatticePoint, Complex64>,
}

impl LatticeFunction {
    /// The zero function on `Z^dim`.
    pub fn zero(dim: usize) -> Self {
        LatticeFunction {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a function from `(point, value)` pairs. Later duplicates
    /// overwrite earlier ones and zero values are dropped.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, Complex64)>,
    {
        let mut f = LatticeFunction::zero(dim);
        for (p, v) in entries {
            f.set(p, v)?;
        }
        Ok(f)
    }

    /// One-dimensional function with `values[j]` at the point `j`.
    pub fn from_real_1d(values: &[f64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, v)| (LatticePoint::new(vec![j as i64]), Complex64::new(*v, 0.0)))
            .collect();
        LatticeFunction { dim: 1, entries }
    }

    /// The unit mass at the origin of `Z^dim`.
    pub fn delta(dim: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(LatticePoint::origin(dim), Complex64::new(1.0, 0.0));
        LatticeFunction { dim, entries }
    }

    pub fn indicator(set: &CubeSet) -> Self {
        let entries = set
            .iter()
            .map(|p| (p.clone(), Complex64::new(1.0, 0.0)))
            .collect();
        LatticeFunction {
            dim: set.dim(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &LatticePoint) -> Complex64 {
        self.entries.get(p).copied().unwrap_or_default()
    }

    pub fn set(&mut self, p: LatticePoint, value: Complex64) -> Result<()> {
        if p.dim() != self.dim {
            return Err(GcubeError::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        if value.is_zero() {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, value);
        }
        Ok(())
    }

    /// Entries in lexicographic point order.
    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.keys()
    }

    /// Componentwise `(min, max)` of the support, or `None` for the zero function.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.entries.keys();
        let first = it.next()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in it {
            for (i, &c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some((lo, hi))
    }

    pub fn scale(&self, c: Complex64) -> LatticeFunction {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (p.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        LatticeFunction {
            dim: self.dim,
            entries,
        }
    }

    pub fn conj(&self) -> LatticeFunction {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (p.clone(), v.conj()))
            .collect();
        LatticeFunction {
            dim: self.dim,
            entries,
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &LatticeFunction) -> Result<LatticeFunction> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (p, v) in &other.entries {
            let s = out.get(p) + v;
            out.set(p.clone(), s)?;
        }
        Ok(out)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &LatticeFunction) -> Result<LatticeFunction> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .filter_map(|(p, v)| other.entries.get(p).map(|w| (p.clone(), v * w)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(LatticeFunction {
            dim: self.dim,
            entries,
        })
    }

    /// `x -> f(x + h)`.
    pub fn translate(&self, h: &LatticePoint) -> LatticeFunction {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (p.sub(h), *v))
            .collect();
        LatticeFunction {
            dim: self.dim,
            entries,
        }
    }

    /// `(sum |f(x)|^p)^(1/p)`, or `max |f(x)|` when `p` is infinite.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p > 0.0) {
            return Err(GcubeError::domain(format!(
                "lp exponent must be positive, got {p}"
            )));
        }
        if p.is_infinite() {
            return Ok(self.entries.values().map(|v| v.norm()).fold(0.0, f64::max));
        }
        let sum: f64 = self.entries.values().map(|v| v.norm().powf(p)).sum();
        Ok(sum.powf(1.0 / p))
    }

    /// `(f * g)(x) = sum_y f(x - y) g(y)`.
    pub fn convolve(&self, other: &LatticeFunction) -> Result<LatticeFunction> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (x, fx) in &self.entries {
            for (y, gy) in &other.entries {
                *acc.entry(x.add(y)).or_default() += fx * gy;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(LatticeFunction {
            dim: self.dim,
            entries: acc,
        })
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> LatticeFunction {
        let entries = self
            .entries
            .iter()
            .map(|(p, v)| (p.neg(), *v))
            .collect();
        LatticeFunction {
            dim: self.dim,
            entries,
        }
    }

    /// `(a_1, ..., a_d) -> g(a_1) ... g(a_d)` for a one-dimensional `g`.
    pub fn tensor_power(&self, d: usize) -> Result<LatticeFunction> {
        if self.dim != 1 {
            return Err(GcubeError::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        if d < 1 {
            return Err(GcubeError::domain("tensor power requires d >= 1"));
        }
        let mut cur: Vec<(Vec<i64>, Complex64)> = vec![(Vec::new(), Complex64::new(1.0, 0.0))];
        for _ in 0..d {
            let mut next = Vec::with_capacity(cur.len() * self.len());
            for (coords, v) in &cur {
                for (p, w) in &self.entries {
                    let mut c = coords.clone();
                    c.push(p.coords()[0]);
                    next.push((c, v * w));
                }
            }
            cur = next;
        }
        let entries = cur
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (LatticePoint::new(c), v))
            .collect();
        Ok(LatticeFunction { dim: d, entries })
    }

    fn check_dim(&self, other: &LatticeFunction) -> Result<()> {
        if self.dim != other.dim {
            return Err(GcubeError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

/// A subset of the discrete cube `{0, ..., n-1}^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSet {
    dim: usize,
    side: usize,
    members: BTreeSet<LatticePoint>,
}

impl CubeSet {
    pub fn new<I>(dim: usize, side: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        if side < 1 {
            return Err(GcubeError::domain("cube side must be at least 1"));
        }
        let mut set = BTreeSet::new();
        for p in members {
            if p.dim() != dim {
                return Err(GcubeError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if p.coords().iter().any(|&c| c < 0 || c >= side as i64) {
                return Err(GcubeError::domain(format!(
                    "point {p} lies outside {{0,...,{}}}^{dim}",
                    side - 1
                )));
            }
            set.insert(p);
        }
        Ok(CubeSet {
            dim,
            side,
            members: set,
        })
    }

    /// The whole cube `{0, ..., side-1}^dim`.
    pub fn full(dim: usize, side: usize) -> Result<Self> {
        let mut pts = vec![Vec::new()];
        for _ in 0..dim {
            pts = pts
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    (0..side as i64).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        CubeSet::new(dim, side, pts.into_iter().map(LatticePoint::new))
    }

    /// `{0, ..., n-1}` as a subset of `Z`.
    pub fn interval(n: usize) -> Result<Self> {
        CubeSet::full(1, n)
    }

    /// A one-dimensional set given by its elements.
    pub fn from_1d(side: usize, elements: &[i64]) -> Result<Self> {
        CubeSet::new(1, side, elements.iter().map(|&x| LatticePoint::new(vec![x])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.members.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.members.iter()
    }
}

/// An exact nonnegative count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(pub BigUint);

impl ExactCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for ExactCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
