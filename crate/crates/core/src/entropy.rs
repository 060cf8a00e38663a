//! Shannon entropy of finitely supported integer distributions, the
//! binomial entropies `H_m`, signed Bernoulli sums, majorization and
//! Karamata comparisons, plus exhaustive checkers for the entropic
//! Littlewood–Offord inequalities.
//!
//! Distributions of signed sums are exact dyadic rationals. Entropies are
//! evaluated in floating point only at the very end; prefix sums used for
//! majorization stay exact.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{GcubeError, Result};

/// Tolerance on the total mass of a distribution and on float prefix sums.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Probability mass function of an integer random variable: `masses[i]`
/// is the probability of `offset + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pmf {
    offset: i64,
    masses: Vec<BigRational>,
}

impl Pmf {
    /// Validates nonnegativity and total mass, then trims zero masses at
    /// both ends so that the first and last stored masses are nonzero.
    pub fn new(offset: i64, masses: Vec<BigRational>) -> Result<Self> {
        if masses.iter().any(|m| m.is_negative()) {
            return Err(GcubeError::domain("negative probability mass"));
        }
        let total: BigRational = masses.iter().cloned().sum();
        let tol = BigRational::from_float(MASS_TOLERANCE).expect("finite tolerance");
        if (total - BigRational::one()).abs() > tol {
            return Err(GcubeError::domain("masses do not sum to 1"));
        }
        let first = masses.iter().position(|m| !m.is_zero());
        let last = masses.iter().rposition(|m| !m.is_zero());
        match (first, last) {
            (Some(a), Some(b)) => Ok(Pmf {
                offset: offset + a as i64,
                masses: masses[a..=b].to_vec(),
            }),
            _ => Err(GcubeError::domain("distribution has no mass")),
        }
    }

    /// Exact conversion of floating masses.
    pub fn from_f64(offset: i64, masses: &[f64]) -> Result<Self> {
        let exact = masses
            .iter()
            .map(|&m| {
                BigRational::from_float(m)
                    .ok_or_else(|| GcubeError::domain(format!("non-finite mass {m}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Pmf::new(offset, exact)
    }

    pub fn point_mass(at: i64) -> Self {
        Pmf {
            offset: at,
            masses: vec![BigRational::one()],
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.masses
    }

    pub fn masses_f64(&self) -> Vec<f64> {
        self.masses.iter().map(ratio_to_f64).collect()
    }

    pub fn mass_at(&self, z: i64) -> BigRational {
        let i = z - self.offset;
        if i < 0 || i as usize >= self.masses.len() {
            BigRational::zero()
        } else {
            self.masses[i as usize].clone()
        }
    }

    pub fn translate(&self, by: i64) -> Pmf {
        Pmf {
            offset: self.offset + by,
            masses: self.masses.clone(),
        }
    }

    pub fn is_point_mass(&self) -> bool {
        self.masses.len() == 1
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// `log2` of a positive big integer, accurate to a few ulps at any size.
pub(crate) fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small integer").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit integer");
    top.log2() + shift as f64
}

fn log2_ratio(r: &BigRational) -> f64 {
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    log2_big(num) - log2_big(den)
}

/// `-Σ p log2 p` in bits, with `0 log 0 = 0`.
pub fn entropy(p: &Pmf) -> f64 {
    p.masses
        .iter()
        .filter(|m| !m.is_zero())
        .map(|m| {
            let l = log2_ratio(m);
            -l.exp2() * l
        })
        .sum()
}

/// Entropy of a floating probability vector.
pub fn entropy_f64(masses: &[f64]) -> Result<f64> {
    if masses.iter().any(|&m| !(m >= 0.0)) {
        return Err(GcubeError::domain("masses must be nonnegative"));
    }
    let total: f64 = masses.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(GcubeError::domain(format!("masses sum to {total}, not 1")));
    }
    Ok(masses
        .iter()
        .filter(|&&m| m > 0.0)
        .map(|&m| -m * m.log2())
        .sum())
}

/// `C(m, j)` for `j = 0..=m`.
pub fn binomial_row(m: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..m {
        c = c * BigUint::from(m - j) / BigUint::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// `H_m`, the entropy of the symmetric binomial distribution `B(m, 1/2)`.
pub fn binomial_entropy(m: usize) -> f64 {
    binomial_row(m)
        .iter()
        .map(|c| {
            let l = log2_big(c) - m as f64;
            -l.exp2() * l
        })
        .sum()
}

/// Two-sided bound `½ log2(eπm/2) - 1/(4m) < H_m < ½ log2(eπm/2) + 1/(10m)`.
pub fn binomial_entropy_bounds(m: usize) -> Result<(f64, f64)> {
    if m < 1 {
        return Err(GcubeError::domain("binomial entropy bounds need m >= 1"));
    }
    let m = m as f64;
    let centre = 0.5 * (std::f64::consts::E * std::f64::consts::PI * m / 2.0).log2();
    Ok((centre - 1.0 / (4.0 * m), centre + 1.0 / (10.0 * m)))
}

/// Exact distribution of `B(m, 1/2)` on `{0, ..., m}`.
pub fn binomial_pmf(m: usize) -> Pmf {
    let den = BigInt::from(BigUint::one() << m);
    let masses = binomial_row(m)
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), den.clone()))
        .collect();
    Pmf { offset: 0, masses }
}

/// `h_1 X_1 + ... + h_m X_m` with independent fair `{0,1}` variables `X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedBernoulliSum {
    coefficients: Vec<i64>,
}

impl SignedBernoulliSum {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(GcubeError::domain("signed sum needs at least one term"));
        }
        if coefficients.contains(&0) {
            return Err(GcubeError::domain("coefficients must be nonzero"));
        }
        Ok(SignedBernoulliSum { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Whether all coefficients share one absolute value.
    pub fn equal_magnitudes(&self) -> bool {
        let a = self.coefficients[0].abs();
        self.coefficients.iter().all(|h| h.abs() == a)
    }

    /// Outcome counts `|{ε : Σ ε_i h_i = z}|` keyed by `z`.
    pub fn outcome_counts(&self) -> BTreeMap<i64, u64> {
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        counts.insert(0, 1);
        for &h in &self.coefficients {
            let mut next = counts.clone();
            for (&z, &c) in &counts {
                *next.entry(z + h).or_default() += c;
            }
            counts = next;
        }
        counts
    }
}

/// Exact distribution of a signed Bernoulli sum.
pub fn pmf_signed_sum(s: &SignedBernoulliSum) -> Pmf {
    let counts = s.outcome_counts();
    let lo = *counts.keys().next().expect("nonempty");
    let hi = *counts.keys().next_back().expect("nonempty");
    let den = BigInt::from(BigUint::one() << s.len());
    let masses = (lo..=hi)
        .map(|z| {
            BigRational::new(
                BigInt::from(counts.get(&z).copied().unwrap_or(0)),
                den.clone(),
            )
        })
        .collect();
    Pmf { offset: lo, masses }
}

/// The nonzero masses sorted in nonincreasing order.
pub fn decreasing_rearrangement_exact(p: &Pmf) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = p.masses.iter().filter(|m| !m.is_zero()).cloned().collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

pub fn decreasing_rearrangement(p: &Pmf) -> Vec<f64> {
    decreasing_rearrangement_exact(p)
        .iter()
        .map(ratio_to_f64)
        .collect()
}

fn check_nonincreasing<T: PartialOrd>(v: &[T], name: &str) -> Result<()> {
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(GcubeError::domain(format!("{name} is not sorted nonincreasingly")));
    }
    Ok(())
}

/// Whether `x` majorizes `y`; the shorter list is padded with zeros.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    check_nonincreasing(x, "x")?;
    check_nonincreasing(y, "y")?;
    let len = x.len().max(y.len());
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..len {
        sx += x.get(i).copied().unwrap_or(0.0);
        sy += y.get(i).copied().unwrap_or(0.0);
        if sx < sy - MASS_TOLERANCE {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= MASS_TOLERANCE)
}

/// Exact version of [`majorizes`].
pub fn majorizes_exact(x: &[BigRational], y: &[BigRational]) -> Result<bool> {
    check_nonincreasing(x, "x")?;
    check_nonincreasing(y, "y")?;
    let len = x.len().max(y.len());
    let (mut sx, mut sy) = (BigRational::zero(), BigRational::zero());
    for i in 0..len {
        if let Some(v) = x.get(i) {
            sx += v;
        }
        if let Some(v) = y.get(i) {
            sy += v;
        }
        if sx < sy {
            return Ok(false);
        }
    }
    Ok(sx == sy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
    /// Both convex and concave.
    Affine,
    Neither,
}

/// Piecewise-linear function through sample points with increasing abscissae.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(GcubeError::domain("need at least two matching samples"));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(GcubeError::domain("sample abscissae must increase strictly"));
        }
        Ok(SampledFunction { xs, ys })
    }

    fn eval(&self, x: f64) -> Result<f64> {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return Err(GcubeError::domain(format!("{x} outside the sampled range")));
        }
        let i = self.xs.partition_point(|&s| s <= x).clamp(1, n - 1);
        let (x0, x1, y0, y1) = (self.xs[i - 1], self.xs[i], self.ys[i - 1], self.ys[i]);
        Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    fn curvature(&self) -> Curvature {
        let slopes: Vec<f64> = (1..self.xs.len())
            .map(|i| (self.ys[i] - self.ys[i - 1]) / (self.xs[i] - self.xs[i - 1]))
            .collect();
        let eps = 1e-12;
        let up = slopes.windows(2).all(|w| w[1] >= w[0] - eps);
        let down = slopes.windows(2).all(|w| w[1] <= w[0] + eps);
        match (up, down) {
            (true, true) => Curvature::Affine,
            (true, false) => Curvature::Convex,
            (false, true) => Curvature::Concave,
            (false, false) => Curvature::Neither,
        }
    }
}

/// Scalar functions available to [`karamata_compare`].
#[derive(Clone, Debug, PartialEq)]
pub enum Psi {
    /// `t ↦ t²`.
    Square,
    /// `t ↦ -t log2 t`, zero at the origin.
    EntropyTerm,
    Sampled(SampledFunction),
}

impl Psi {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Psi::Square => Ok(t * t),
            Psi::EntropyTerm => {
                if t < 0.0 {
                    Err(GcubeError::domain("-t log t needs t >= 0"))
                } else if t == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(-t * t.log2())
                }
            }
            Psi::Sampled(s) => s.eval(t),
        }
    }

    pub fn curvature(&self) -> Curvature {
        match self {
            Psi::Square => Curvature::Convex,
            Psi::EntropyTerm => Curvature::Concave,
            Psi::Sampled(s) => s.curvature(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KaramataComparison {
    /// `Σ ψ(x_j) - Σ ψ(y_j)`.
    pub difference: f64,
    pub curvature: Curvature,
    /// Sign of `difference` agrees with the curvature of `ψ`.
    pub consistent: bool,
    /// `x` and `y` coincide after zero padding.
    pub equal: bool,
}

/// Compares `Σ ψ(x)` with `Σ ψ(y)` for `x` majorizing `y`.
pub fn karamata_compare(x: &[f64], y: &[f64], psi: &Psi) -> Result<KaramataComparison> {
    if !majorizes(x, y)? {
        return Err(GcubeError::domain("x does not majorize y"));
    }
    let len = x.len().max(y.len());
    let pad = |v: &[f64]| -> Vec<f64> {
        let mut v = v.to_vec();
        v.resize(len, 0.0);
        v
    };
    let (xp, yp) = (pad(x), pad(y));
    let sx: f64 = xp.iter().map(|&t| psi.eval(t)).sum::<Result<f64>>()?;
    let sy: f64 = yp.iter().map(|&t| psi.eval(t)).sum::<Result<f64>>()?;
    let difference = sx - sy;
    let curvature = psi.curvature();
    let slack = 1e-12 * (1.0 + sx.abs().max(sy.abs()));
    let consistent = match curvature {
        Curvature::Convex => difference >= -slack,
        Curvature::Concave => difference <= slack,
        Curvature::Affine => difference.abs() <= slack,
        Curvature::Neither => false,
    };
    let equal = xp == yp;
    Ok(KaramataComparison {
        difference,
        curvature,
        consistent,
        equal,
    })
}

/// Why a coefficient vector failed an exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The binomial rearrangement does not majorize the sum's rearrangement.
    NotMajorized,
    /// Rearrangements coincide exactly when magnitudes differ, or vice versa.
    EqualityCase,
    /// `H(h·X) < H_m`.
    EntropyBelowBinomial,
    /// The entropy comparison is tight where it should be strict, or vice versa.
    EntropyEqualityCase,
    /// `H(h·X)/l < H_{n-1}/(n-1)`.
    RatioBelowTarget,
    RatioEqualityCase,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub coefficients: Vec<i64>,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationRow {
    pub m: usize,
    pub vectors: usize,
    /// Vectors whose rearrangement equals the binomial one.
    pub equal_cases: usize,
    /// Smallest `H(h·X) - H_m` over vectors with unequal magnitudes.
    pub min_strict_gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationReport {
    pub rows: Vec<MajorizationRow>,
    pub counterexamples: Vec<Counterexample>,
}

impl MajorizationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// All vectors in `({±1, ..., ±bound})^m`, in lexicographic order.
pub fn coefficient_vectors(m: usize, bound: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (-bound..=bound).filter(|&v| v != 0).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Exhaustively checks, for every `m ≤ m_max` and every coefficient vector
/// with entries in `{±1, ..., ±h_bound}`, that the rearranged `B(m, 1/2)`
/// distribution majorizes the rearranged distribution of `h·X`, that the
/// two coincide exactly when all `|h_i|` agree, and that
/// `H(h·X) ≥ H_m` with equality in the same cases.
pub fn verify_majorization_lemma(m_max: usize, h_bound: i64) -> Result<MajorizationReport> {
    if m_max < 1 || m_max > 5 || h_bound < 1 || h_bound > 5 {
        return Err(GcubeError::domain(
            "exhaustive majorization check is limited to 1 <= m <= 5 and 1 <= bound <= 5",
        ));
    }
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for m in 1..=m_max {
        let binom = binomial_pmf(m);
        let binom_sorted = decreasing_rearrangement_exact(&binom);
        let h_m = binomial_entropy(m);
        let vectors = coefficient_vectors(m, h_bound);
        let results: Vec<(bool, Option<f64>, Vec<Violation>)> = vectors
            .par_iter()
            .map(|h| {
                let s = SignedBernoulliSum::new(h.clone()).expect("nonzero coefficients");
                let pmf = pmf_signed_sum(&s);
                let sorted = decreasing_rearrangement_exact(&pmf);
                let mut bad = Vec::new();
                if !majorizes_exact(&binom_sorted, &sorted).expect("sorted inputs") {
                    bad.push(Violation::NotMajorized);
                }
                let same = sorted == binom_sorted;
                if same != s.equal_magnitudes() {
                    bad.push(Violation::EqualityCase);
                }
                let gap = entropy(&pmf) - h_m;
                if gap < -MASS_TOLERANCE {
                    bad.push(Violation::EntropyBelowBinomial);
                }
                let tight = gap.abs() <= MASS_TOLERANCE;
                if tight != s.equal_magnitudes() {
                    bad.push(Violation::EntropyEqualityCase);
                }
                (same, (!s.equal_magnitudes()).then_some(gap), bad)
            })
            .collect();
        let mut equal_cases = 0;
        let mut min_strict_gap = f64::INFINITY;
        for (h, (same, gap, bad)) in vectors.iter().zip(results) {
            if same {
                equal_cases += 1;
            }
            if let Some(g) = gap {
                min_strict_gap = min_strict_gap.min(g);
            }
            for violation in bad {
                counterexamples.push(Counterexample {
                    coefficients: h.clone(),
                    violation,
                });
            }
        }
        rows.push(MajorizationRow {
            m,
            vectors: vectors.len(),
            equal_cases,
            min_strict_gap,
        });
    }
    Ok(MajorizationReport {
        rows,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryRow {
    pub l: usize,
    pub vectors: usize,
    /// Smallest `H(h·X)/l` over the row.
    pub min_ratio: f64,
    pub equality_cases: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryReport {
    pub n: usize,
    /// `H_{n-1}/(n-1)`.
    pub target: f64,
    pub rows: Vec<CorollaryRow>,
    pub counterexamples: Vec<Counterexample>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Nonzero integer vectors of length `l` with `Σ|h_i| ≤ budget`.
pub fn bounded_coefficient_vectors(l: usize, budget: i64) -> Vec<Vec<i64>> {
    fn rec(l: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        let remaining = (l - cur.len() - 1) as i64;
        let max_abs = budget - remaining;
        for v in (-max_abs..=max_abs).filter(|&v| v != 0) {
            cur.push(v);
            rec(l, budget - v.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if budget >= l as i64 {
        rec(l, budget, &mut Vec::with_capacity(l), &mut out);
    }
    out
}

/// Checks `H(h·X)/l ≥ H_{n-1}/(n-1)` for every `1 ≤ l ≤ n-1` and every
/// nonzero `h` with `Σ|h_i| ≤ n-1`, with equality exactly when `l = n-1`
/// and every `|h_i| = 1`.
pub fn verify_entropy_corollary(n: usize) -> Result<CorollaryReport> {
    if !(2..=8).contains(&n) {
        return Err(GcubeError::domain("entropy corollary check needs 2 <= n <= 8"));
    }
    let target = binomial_entropy(n - 1) / (n - 1) as f64;
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for l in 1..n {
        let vectors = bounded_coefficient_vectors(l, (n - 1) as i64);
        let mut min_ratio = f64::INFINITY;
        let mut equality_cases = 0;
        for h in &vectors {
            let s = SignedBernoulliSum::new(h.clone()).expect("nonzero coefficients");
            let ratio = entropy(&pmf_signed_sum(&s)) / l as f64;
            min_ratio = min_ratio.min(ratio);
            let tight = (ratio - target).abs() <= MASS_TOLERANCE;
            let should_be_tight = l == n - 1 && h.iter().all(|v| v.abs() == 1);
            if tight {
                equality_cases += 1;
            }
            if ratio < target - MASS_TOLERANCE {
                counterexamples.push(Counterexample {
                    coefficients: h.clone(),
                    violation: Violation::RatioBelowTarget,
                });
            } else if tight != should_be_tight {
                counterexamples.push(Counterexample {
                    coefficients: h.clone(),
                    violation: Violation::RatioEqualityCase,
                });
            }
        }
        rows.push(CorollaryRow {
            l,
            vectors: vectors.len(),
            min_ratio,
            equality_cases,
        });
    }
    Ok(CorollaryReport {
        n,
        target,
        rows,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_entropies_are_exact() {
        assert_eq!(entropy(&Pmf::new(0, vec![q(1, 2), q(1, 2)]).unwrap()), 1.0);
        assert_eq!(
            entropy(&Pmf::new(0, vec![q(1, 4), q(1, 2), q(1, 4)]).unwrap()),
            1.5
        );
        assert_eq!(entropy(&Pmf::point_mass(7)), 0.0);
        assert_eq!(binomial_entropy(1), 1.0);
        assert_eq!(binomial_entropy(2), 1.5);
    }

    #[test]
    fn binomial_entropy_values() {
        let h3 = 3.0 * (4.0 - 3f64.log2()) / 4.0;
        assert!((binomial_entropy(3) - h3).abs() < 1e-14);
        assert!((binomial_entropy(3) - 1.8112781245).abs() < 1e-10);
        assert!((binomial_entropy(4) - 2.0306390622).abs() < 1e-10);
    }

    #[test]
    fn bounds_bracket_small_cases() {
        let (lo, hi) = binomial_entropy_bounds(1).unwrap();
        assert!((lo - 0.7971).abs() < 1e-4 && (hi - 1.1471).abs() < 1e-4);
        assert!(lo < 1.0 && 1.0 < hi);
        let (lo, hi) = binomial_entropy_bounds(2).unwrap();
        assert!(lo < 1.5 && 1.5 < hi);
        let (lo, hi) = binomial_entropy_bounds(1000).unwrap();
        assert!((hi - lo - 7.0 / 20000.0).abs() < 1e-15);
        let h = binomial_entropy(1000);
        assert!(lo < h && h < hi);
        assert!(binomial_entropy_bounds(0).is_err());
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new(0, vec![q(1, 2), q(1, 4)]).is_err());
        assert!(Pmf::new(0, vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(Pmf::new(0, vec![]).is_err());
        let p = Pmf::new(-3, vec![q(0, 1), q(1, 2), q(1, 2), q(0, 1)]).unwrap();
        assert_eq!(p.offset(), -2);
        assert_eq!(p.masses().len(), 2);
        assert!(Pmf::from_f64(0, &[0.1, 0.7, 0.2]).is_ok());
        assert!(entropy_f64(&[0.5, 0.6]).is_err());
    }

    #[test]
    fn signed_sums() {
        let p = pmf_signed_sum(&SignedBernoulliSum::new(vec![1, 1]).unwrap());
        assert_eq!(p, Pmf::new(0, vec![q(1, 4), q(1, 2), q(1, 4)]).unwrap());
        let p = pmf_signed_sum(&SignedBernoulliSum::new(vec![1, 2]).unwrap());
        assert_eq!(p, Pmf::new(0, vec![q(1, 4); 4]).unwrap());
        let p = pmf_signed_sum(&SignedBernoulliSum::new(vec![1, -1]).unwrap());
        assert_eq!(p, Pmf::new(-1, vec![q(1, 4), q(1, 2), q(1, 4)]).unwrap());
        assert!(SignedBernoulliSum::new(vec![1, 0]).is_err());
        assert!(SignedBernoulliSum::new(vec![]).is_err());
    }

    #[test]
    fn rearrangements() {
        let p = Pmf::new(0, vec![q(1, 4), q(1, 2), q(1, 4)]).unwrap();
        assert_eq!(decreasing_rearrangement(&p), vec![0.5, 0.25, 0.25]);
        let u = Pmf::new(0, vec![q(1, 4); 4]).unwrap();
        assert_eq!(decreasing_rearrangement(&u), vec![0.25; 4]);
        let r = Pmf::new(0, vec![q(1, 10), q(7, 10), q(2, 10)]).unwrap();
        assert_eq!(decreasing_rearrangement(&r), vec![0.7, 0.2, 0.1]);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[0.5, 0.25, 0.25], &[0.25; 4]).unwrap());
        assert!(majorizes(&[0.5, 0.25, 0.25], &[0.5, 0.25, 0.25]).unwrap());
        assert!(!majorizes(&[0.4, 0.3, 0.3], &[0.5, 0.3, 0.2]).unwrap());
        assert!(!majorizes(&[0.5, 0.5], &[0.5, 0.25]).unwrap());
        assert!(majorizes(&[0.2, 0.8], &[0.5, 0.5]).is_err());
        assert!(majorizes_exact(&[q(1, 2), q(1, 4), q(1, 4)], &vec![q(1, 4); 4]).unwrap());
        assert!(!majorizes_exact(&vec![q(1, 4); 4], &[q(1, 2), q(1, 4), q(1, 4)]).unwrap());
    }

    #[test]
    fn karamata_examples() {
        let c = karamata_compare(&[1.0, 0.0], &[0.5, 0.5], &Psi::Square).unwrap();
        assert!((c.difference - 0.5).abs() < 1e-15);
        assert!(c.consistent && !c.equal);
        let c = karamata_compare(&[0.5, 0.5], &[0.5, 0.5], &Psi::Square).unwrap();
        assert_eq!(c.difference, 0.0);
        assert!(c.equal);
        let c = karamata_compare(&[0.5, 0.25, 0.25], &[0.25; 4], &Psi::EntropyTerm).unwrap();
        assert!((c.difference - (1.5 - 2.0)).abs() < 1e-15);
        assert!(c.consistent);
        assert!(karamata_compare(&[0.5, 0.5], &[1.0], &Psi::Square).is_err());
    }

    #[test]
    fn sampled_psi() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x * x).collect();
        let psi = Psi::Sampled(SampledFunction::new(xs, ys).unwrap());
        assert_eq!(psi.curvature(), Curvature::Convex);
        let c = karamata_compare(&[0.7, 0.3], &[0.5, 0.5], &psi).unwrap();
        assert!(c.consistent && c.difference > 0.0);
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        let narrow = Psi::Sampled(SampledFunction::new(vec![0.2, 0.8], vec![0.0, 1.0]).unwrap());
        assert!(karamata_compare(&[1.0, 0.0], &[0.5, 0.5], &narrow).is_err());
    }

    #[test]
    fn majorization_lemma_small_runs() {
        let r = verify_majorization_lemma(2, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows[1].vectors, 36);
        assert_eq!(r.rows[0].equal_cases, r.rows[0].vectors);
        // (1,1,2): strictly majorized, rearrangements differ
        let s = SignedBernoulliSum::new(vec![1, 1, 2]).unwrap();
        let a = decreasing_rearrangement_exact(&binomial_pmf(3));
        let b = decreasing_rearrangement_exact(&pmf_signed_sum(&s));
        assert!(majorizes_exact(&a, &b).unwrap());
        assert_ne!(a, b);
        assert!(verify_majorization_lemma(6, 2).is_err());
    }

    #[test]
    fn corollary_examples() {
        let one = entropy(&pmf_signed_sum(&SignedBernoulliSum::new(vec![1]).unwrap()));
        assert!(one > binomial_entropy(2) / 2.0);
        let two = entropy(&pmf_signed_sum(&SignedBernoulliSum::new(vec![1, 1]).unwrap()));
        assert!((two / 2.0 - binomial_entropy(2) / 2.0).abs() < 1e-15);
        let h12 = entropy(&pmf_signed_sum(&SignedBernoulliSum::new(vec![1, 2]).unwrap()));
        assert_eq!(h12 / 2.0, 1.0);
        assert!(1.0 > binomial_entropy(3) / 3.0);
        assert!((binomial_entropy(3) / 3.0 - 0.6038).abs() < 1e-4);
        let r = verify_entropy_corollary(3).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows[1].equality_cases, 4);
        assert!(verify_entropy_corollary(9).is_err());
    }

    #[test]
    fn bounded_vectors_count() {
        // h ∈ {±1, ±2} for l = 1, budget 2
        assert_eq!(bounded_coefficient_vectors(1, 2).len(), 4);
        assert_eq!(bounded_coefficient_vectors(2, 2).len(), 4);
        assert!(bounded_coefficient_vectors(3, 2).is_empty());
    }
}
