//! Tuple classes `T_{n,l}`, their distribution vectors `q`, and the
//! normalized one-dimensional objective
//!
//! ```text
//! Φ_t(g) = Σ_j g(j)^t + Σ_{l=1}^{n-1} Σ_{(a,h) ∈ T_{n,l}} C(k,l) Π_ε g(a + ε·h)^{t/2^l}
//! ```
//!
//! over probability vectors `g` on `{0, ..., n-1}`. Every summand equals
//! `c · Π_j g(j)^{t q_j}` where `q` is the law of `a + h_1 X_1 + ... + h_l X_l`,
//! so terms are grouped by identical `q` before any evaluation.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::entropy::binomial_row;
use crate::error::{GcubeError, Result};

/// Tolerance on `Σ g(j) = 1` for simplex vectors.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// One element `(a, h_1, ..., h_l)` of a tuple class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tuple {
    pub a: i64,
    pub h: Vec<i64>,
}

/// `T_{n,l}`: tuples with nonzero `h_i` whose vertices `a + ε·h` all lie in
/// `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleClass {
    pub n: usize,
    pub l: usize,
    pub tuples: Vec<Tuple>,
}

/// `T_{n,1}, ..., T_{n,n-1}`, each sorted lexicographically by `(a, h)`.
pub fn enumerate_tuple_classes(n: usize) -> Result<Vec<TupleClass>> {
    if n < 2 {
        return Err(GcubeError::domain("tuple classes need n >= 2"));
    }
    let span = (n - 1) as i64;
    let mut classes = Vec::with_capacity(n - 1);
    for l in 1..n {
        let mut tuples = Vec::new();
        for h in crate::entropy::bounded_coefficient_vectors(l, span) {
            let low: i64 = h.iter().filter(|&&x| x < 0).sum();
            let high: i64 = h.iter().filter(|&&x| x > 0).sum();
            for a in -low..=span - high {
                tuples.push(Tuple { a, h: h.clone() });
            }
        }
        tuples.sort();
        classes.push(TupleClass { n, l, tuples });
    }
    Ok(classes)
}

/// `q_j = 2^{-l} |{ε ∈ {0,1}^l : a + ε·h = j}|` for `j = 0..n-1`.
pub fn pmf_of_tuple(n: usize, a: i64, h: &[i64]) -> Result<Vec<BigRational>> {
    if h.is_empty() || h.contains(&0) {
        return Err(GcubeError::domain("tuple needs at least one nonzero step and no zeros"));
    }
    let l = h.len();
    if l >= 63 {
        return Err(GcubeError::domain("tuple is too long"));
    }
    let mut counts = vec![0u64; n];
    for eps in 0u64..(1 << l) {
        let v = a + h
            .iter()
            .enumerate()
            .filter(|(i, _)| eps >> i & 1 == 1)
            .map(|(_, x)| x)
            .sum::<i64>();
        if v < 0 || v >= n as i64 {
            return Err(GcubeError::domain(format!(
                "tuple ({a}, {h:?}) leaves {{0,...,{}}}",
                n - 1
            )));
        }
        counts[v as usize] += 1;
    }
    let den = BigInt::from(1u64 << l);
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), den.clone()))
        .collect())
}

/// All summands sharing one distribution vector `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermGroup {
    /// Sum of `C(k,l)` over the member tuples (1 for a diagonal term).
    pub coefficient: BigUint,
    pub q: Vec<BigRational>,
}

/// Grouped summands of `Φ` for fixed `(n, k)`, ordered lexicographically by `q`.
#[derive(Clone, Debug)]
pub struct TermTable {
    n: usize,
    k: usize,
    groups: Vec<TermGroup>,
    coeffs: Vec<f64>,
    /// Per group, the `(j, q_j)` with `q_j > 0`.
    sparse_q: Vec<Vec<(usize, f64)>>,
}

impl TermTable {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(GcubeError::domain("term table needs n >= 2"));
        }
        if k < 1 {
            return Err(GcubeError::domain("term table needs k >= 1"));
        }
        let binom = binomial_row(k);
        let mut by_q: BTreeMap<Vec<BigRational>, BigUint> = BTreeMap::new();
        for j in 0..n {
            let mut q = vec![BigRational::zero(); n];
            q[j] = BigRational::from_integer(1.into());
            *by_q.entry(q).or_default() += 1u32;
        }
        for class in enumerate_tuple_classes(n)? {
            if class.l > k {
                continue;
            }
            for t in &class.tuples {
                let q = pmf_of_tuple(n, t.a, &t.h)?;
                *by_q.entry(q).or_default() += &binom[class.l];
            }
        }
        let groups: Vec<TermGroup> = by_q
            .into_iter()
            .map(|(q, coefficient)| TermGroup { coefficient, q })
            .collect();
        let coeffs = groups
            .iter()
            .map(|g| g.coefficient.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        let sparse_q = groups
            .iter()
            .map(|g| {
                g.q.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.to_f64().expect("dyadic mass")))
                    .collect()
            })
            .collect();
        Ok(TermTable {
            n,
            k,
            groups,
            coeffs,
            sparse_q,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn groups(&self) -> &[TermGroup] {
        &self.groups
    }

    /// `Σ` of all coefficients, i.e. `Φ_t` at the uniform vector scaled by `n^t`.
    pub fn total_coefficient(&self) -> BigUint {
        self.groups.iter().map(|g| &g.coefficient).sum()
    }

    /// `Φ_t(g)` from `ln g`, with `ln 0 = -∞` giving a vanishing term
    /// whenever the matching `q_j` is positive.
    pub fn value_from_logs(&self, t: f64, log_g: &[f64]) -> f64 {
        let mut total = 0.0;
        for (c, q) in self.coeffs.iter().zip(&self.sparse_q) {
            let mut s = 0.0;
            for &(j, qj) in q {
                s += qj * log_g[j];
            }
            total += c * (t * s).exp();
        }
        total
    }

    /// `Φ_t(g)` together with `w_j = g_j ∂Φ/∂g_j = t Σ_groups term · q_j`.
    pub(crate) fn value_and_weights(&self, t: f64, log_g: &[f64], weights: &mut [f64]) -> f64 {
        weights.iter_mut().for_each(|w| *w = 0.0);
        let mut total = 0.0;
        for (c, q) in self.coeffs.iter().zip(&self.sparse_q) {
            let mut s = 0.0;
            for &(j, qj) in q {
                s += qj * log_g[j];
            }
            let term = c * (t * s).exp();
            if term == 0.0 {
                continue;
            }
            total += term;
            for &(j, qj) in q {
                weights[j] += t * term * qj;
            }
        }
        total
    }

    pub fn value(&self, t: f64, g: &SimplexVector) -> f64 {
        let logs: Vec<f64> = g.as_slice().iter().map(|x| x.ln()).collect();
        self.value_from_logs(t, &logs)
    }
}

/// A probability vector on `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    pub fn new(g: Vec<f64>) -> Result<Self> {
        if g.is_empty() {
            return Err(GcubeError::domain("simplex vector must be nonempty"));
        }
        if g.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(GcubeError::domain("simplex entries must be finite and nonnegative"));
        }
        let s: f64 = g.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(GcubeError::domain(format!("simplex entries sum to {s}, not 1")));
        }
        Ok(SimplexVector(g))
    }

    /// Rescales nonnegative weights to unit sum.
    pub fn normalized(weights: &[f64]) -> Result<Self> {
        let s: f64 = weights.iter().sum();
        if !(s > 0.0) || !s.is_finite() {
            return Err(GcubeError::domain("weights must have a positive finite sum"));
        }
        SimplexVector::new(weights.iter().map(|w| w / s).collect())
    }

    pub fn uniform(n: usize) -> Self {
        SimplexVector(vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, j: usize) -> Self {
        let mut g = vec![0.0; n];
        g[j] = 1.0;
        SimplexVector(g)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> SimplexVector {
        SimplexVector(self.0.iter().rev().copied().collect())
    }

    pub fn is_point_mass(&self) -> bool {
        self.0.iter().filter(|&&x| x > 0.0).count() <= 1
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0.0).count()
    }
}

/// `Φ_t(g)` for the cube side `n` and order `k`.
pub fn objective(n: usize, k: usize, t: f64, g: &SimplexVector) -> Result<f64> {
    if !(t > 0.0) {
        return Err(GcubeError::domain(format!("objective needs t > 0, got {t}")));
    }
    if g.len() != n {
        return Err(GcubeError::DimensionMismatch {
            expected: n,
            found: g.len(),
        });
    }
    Ok(TermTable::new(n, k)?.value(t, g))
}

/// The closed-form ternary objective
/// `x^t + y^t + z^t + 2k(√(xy)^t + √(yz)^t + √(xz)^t) + 2k(k-1) x^{t/4} y^{t/2} z^{t/4}`.
pub fn ternary_objective(k: usize, t: f64, x: f64, y: f64, z: f64) -> f64 {
    let k = k as f64;
    let h = t / 2.0;
    let q = t / 4.0;
    x.powf(t)
        + y.powf(t)
        + z.powf(t)
        + 2.0 * k * (x.powf(h) * y.powf(h) + y.powf(h) * z.powf(h) + x.powf(h) * z.powf(h))
        + 2.0 * k * (k - 1.0) * x.powf(q) * y.powf(h) * z.powf(q)
}
