//! The sharp exponents `t_{k,n}` and `p_{k,n} = 2^k / t_{k,n}`.
//!
//! `t_{k,n}` is the least `t` with `M(t) = sup_g Φ_t(g) ≤ 1`. Point masses
//! give `Φ_t = 1` for every `t`, so `M(t) ≥ 1` always and the search looks
//! for the `t` where some non-degenerate `g` stops exceeding 1.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GcubeError, Result};
use crate::gowers::energy_p_interval;
use crate::terms::{SimplexVector, TermTable};

/// Values of `Φ` closer than this are treated as equal when picking the argmax.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// `M(t)` counts as exceeding 1 only above `1 + EXCESS_THRESHOLD`, so
/// rounding near a point mass never reads as a violation.
pub const EXCESS_THRESHOLD: f64 = 1e-13;

/// Grid points kept as polishing seeds.
const GRID_SEEDS: usize = 50;

/// Largest grid used once `n ≥ 7`.
const GRID_BUDGET: u128 = 50_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub t_tolerance: f64,
    /// Grid subdivisions for `n ≤ 4`; halved for larger `n`.
    pub inner_grid_resolution: usize,
    pub multistart_count: usize,
    pub polish_iterations: usize,
    pub rng_seed: u64,
    /// Search only `g` with `g(j) = g(n-1-j)`. Faster, but the maximizer
    /// is not known to be symmetric.
    pub symmetric: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            t_tolerance: 1e-9,
            inner_grid_resolution: 64,
            multistart_count: 32,
            polish_iterations: 200,
            rng_seed: 0,
            symmetric: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_tolerance > 0.0 && self.t_tolerance < 1.0) {
            return Err(GcubeError::domain("t_tolerance must lie in (0, 1)"));
        }
        if self.inner_grid_resolution == 0 || self.multistart_count == 0 || self.polish_iterations == 0
        {
            return Err(GcubeError::domain(
                "grid resolution, multistart count and polish iterations must be positive",
            ));
        }
        Ok(())
    }

    /// Subdivisions of the simplex grid used for side `n`.
    pub fn grid_resolution(&self, n: usize) -> usize {
        let base = self.inner_grid_resolution;
        if n <= 4 {
            return base;
        }
        let half = (base / 2).max(1);
        if n <= 6 {
            return half;
        }
        let mut r = half;
        while r > 1 && compositions(r, n) > GRID_BUDGET {
            r -= 1;
        }
        r
    }
}

/// Number of grid points `C(r + n - 1, n - 1)`.
fn compositions(r: usize, n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..n as u128 {
        c = c * (r as u128 + i) / i;
    }
    c
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub k: usize,
    pub n: usize,
    pub t: f64,
    pub p: f64,
    /// `|M(t) - 1|` at the returned `t`.
    pub residual: f64,
    /// Final bisection bracket `[t_lo, t_hi]`.
    pub bracket: [f64; 2],
    pub bracket_width: f64,
    /// A maximizer of `Φ` just below the threshold.
    pub argmax: Vec<f64>,
}

/// Global maximizer of `Φ_t` over the simplex for one `(n, k)`.
pub struct Maximizer {
    table: TermTable,
    cfg: SolverConfig,
    /// Row-major `ln g` of every grid point.
    grid_logs: Vec<f64>,
    grid_points: Vec<Vec<f64>>,
    random_starts: Vec<Vec<f64>>,
    fixed_starts: Vec<Vec<f64>>,
}

impl Maximizer {
    pub fn new(n: usize, k: usize, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let table = TermTable::new(n, k)?;
        let r = cfg.grid_resolution(n);
        let mut grid_points = Vec::new();
        let mut cur = Vec::with_capacity(n);
        simplex_grid(n, r, &mut cur, &mut grid_points);
        if cfg.symmetric {
            grid_points.retain(|g| is_symmetric(g));
        }
        let grid_logs = grid_points
            .iter()
            .flat_map(|g| g.iter().map(|x| x.ln()))
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let random_starts = (0..cfg.multistart_count)
            .map(|_| {
                let mut g: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
                if cfg.symmetric {
                    symmetrize(&mut g);
                }
                let s: f64 = g.iter().sum();
                g.iter_mut().for_each(|x| *x /= s);
                g
            })
            .collect();

        let binom = crate::entropy::binomial_row(n - 1);
        let total = 2f64.powi(n as i32 - 1);
        let fixed_starts = vec![
            vec![1.0 / n as f64; n],
            binom.iter().map(|c| c.to_f64().unwrap() / total).collect(),
        ];
        Ok(Maximizer {
            table,
            cfg: cfg.clone(),
            grid_logs,
            grid_points,
            random_starts,
            fixed_starts,
        })
    }

    pub fn table(&self) -> &TermTable {
        &self.table
    }

    pub fn grid_size(&self) -> usize {
        self.grid_points.len()
    }

    /// A lower estimate of `M(t)` and the point attaining it. `extra` seeds
    /// (for example the previous argmax) are polished alongside the rest.
    pub fn maximize(&self, t: f64, extra: &[Vec<f64>]) -> Result<(f64, SimplexVector)> {
        if !(t > 0.0) {
            return Err(GcubeError::domain(format!("maximization needs t > 0, got {t}")));
        }
        let n = self.table.n();
        let values: Vec<f64> = self
            .grid_logs
            .par_chunks(n)
            .map(|logs| self.table.value_from_logs(t, logs))
            .collect();
        let mut order: Vec<usize> = (0..values.len()).collect();
        let by_value = |a: &usize, b: &usize| values[*b].total_cmp(&values[*a]).then(a.cmp(b));
        if order.len() > GRID_SEEDS {
            order.select_nth_unstable_by(GRID_SEEDS, by_value);
            order.truncate(GRID_SEEDS);
        }
        order.sort_by(by_value);

        let mut seeds: Vec<&[f64]> = order.iter().map(|&i| self.grid_points[i].as_slice()).collect();
        seeds.extend(self.random_starts.iter().map(|g| g.as_slice()));
        seeds.extend(self.fixed_starts.iter().map(|g| g.as_slice()));
        seeds.extend(extra.iter().filter(|g| g.len() == n).map(|g| g.as_slice()));

        let mut candidates: Vec<(f64, Vec<f64>)> = seeds
            .par_iter()
            .map(|g| self.polish(t, g))
            .collect();
        for j in 0..n {
            let mut g = vec![0.0; n];
            g[j] = 1.0;
            candidates.push((1.0, g));
        }
        let (value, g) = pick_best(candidates);
        Ok((value, SimplexVector::new(g)?))
    }

    /// Ascent on the face `supp(g)` in softmax coordinates `g_i ∝ e^{θ_i}`,
    /// with BFGS directions and Armijo backtracking.
    fn polish(&self, t: f64, start: &[f64]) -> (f64, Vec<f64>) {
        let n = start.len();
        let face: Vec<usize> = (0..n).filter(|&j| start[j] > 0.0).collect();
        if face.len() <= 1 {
            let mut g = vec![0.0; n];
            if let Some(&j) = face.first() {
                g[j] = 1.0;
            }
            return (1.0, g);
        }
        let m = face.len();
        let mirror: Option<Vec<usize>> = if self.cfg.symmetric {
            face.iter()
                .map(|&j| face.iter().position(|&i| i == n - 1 - j))
                .collect()
        } else {
            None
        };

        let mut logs = vec![f64::NEG_INFINITY; n];
        let mut weights = vec![0.0; n];
        let mut eval = |theta: &[f64], grad: &mut [f64]| -> f64 {
            let top = theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lse = top + theta.iter().map(|x| (x - top).exp()).sum::<f64>().ln();
            for (i, &j) in face.iter().enumerate() {
                logs[j] = theta[i] - lse;
            }
            let v = self.table.value_and_weights(t, &logs, &mut weights);
            let total: f64 = face.iter().map(|&j| weights[j]).sum();
            for (i, &j) in face.iter().enumerate() {
                grad[i] = weights[j] - logs[j].exp() * total;
            }
            if let Some(mirror) = &mirror {
                let raw = grad.to_vec();
                for i in 0..m {
                    grad[i] = 0.5 * (raw[i] + raw[mirror[i]]);
                }
            }
            v
        };

        let mut theta: Vec<f64> = face.iter().map(|&j| start[j].ln()).collect();
        let mut grad = vec![0.0; m];
        let mut value = eval(&theta, &mut grad);
        let mut h = identity(m);
        let mut trial = vec![0.0; m];
        let mut trial_grad = vec![0.0; m];
        for _ in 0..self.cfg.polish_iterations {
            let gnorm = grad.iter().map(|x| x.abs()).fold(0.0, f64::max);
            if gnorm < 1e-13 * (1.0 + value) {
                break;
            }
            let mut dir = mat_vec(&h, &grad);
            let mut slope = dot(&grad, &dir);
            if !(slope > 0.0) {
                h = identity(m);
                dir = grad.clone();
                slope = dot(&grad, &dir);
            }
            let mut step = 1.0;
            let mut accepted = None;
            while step > 1e-12 {
                for i in 0..m {
                    trial[i] = theta[i] + step * dir[i];
                }
                let v = eval(&trial, &mut trial_grad);
                if v.is_finite() && v >= value + 1e-4 * step * slope {
                    accepted = Some(v);
                    break;
                }
                step *= 0.5;
            }
            let Some(v) = accepted else { break };
            let s: Vec<f64> = (0..m).map(|i| trial[i] - theta[i]).collect();
            // curvature pair for the minimization of -Φ
            let y: Vec<f64> = (0..m).map(|i| grad[i] - trial_grad[i]).collect();
            let sy = dot(&s, &y);
            if sy > 1e-18 {
                bfgs_update(&mut h, &s, &y, sy);
            }
            theta.copy_from_slice(&trial);
            grad.copy_from_slice(&trial_grad);
            let gain = v - value;
            value = v;
            if gain <= 1e-16 * value {
                break;
            }
        }

        let top = theta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = theta.iter().map(|x| (x - top).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut g = vec![0.0; n];
        for (i, &j) in face.iter().enumerate() {
            g[j] = weights[i] / total;
        }
        (value, g)
    }
}

fn identity(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(h: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    h.iter().map(|row| dot(row, v)).collect()
}

/// Inverse-Hessian update `H ← (I - ρsyᵀ) H (I - ρysᵀ) + ρssᵀ`.
fn bfgs_update(h: &mut [Vec<f64>], s: &[f64], y: &[f64], sy: f64) {
    let m = s.len();
    let rho = 1.0 / sy;
    let hy = mat_vec(h, y);
    let yhy = dot(y, &hy);
    for i in 0..m {
        for j in 0..m {
            h[i][j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

fn simplex_grid(n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
    if cur.len() == n - 1 {
        let used: usize = cur.iter().sum();
        let mut g: Vec<f64> = cur.iter().map(|&c| c as f64 / r as f64).collect();
        g.push((r - used) as f64 / r as f64);
        out.push(g);
        return;
    }
    let used: usize = cur.iter().sum();
    for c in 0..=r - used {
        cur.push(c);
        simplex_grid(n, r, cur, out);
        cur.pop();
    }
}

fn is_symmetric(g: &[f64]) -> bool {
    let n = g.len();
    (0..n).all(|j| g[j] == g[n - 1 - j])
}

fn symmetrize(g: &mut [f64]) {
    let n = g.len();
    for j in 0..n / 2 {
        let avg = 0.5 * (g[j] + g[n - 1 - j]);
        g[j] = avg;
        g[n - 1 - j] = avg;
    }
}

fn support_size(g: &[f64]) -> usize {
    g.iter().filter(|&&x| x > TIE_TOLERANCE).count()
}

/// Largest value; within [`TIE_TOLERANCE`] prefer the larger support, then
/// the lexicographically smallest vector.
fn pick_best(candidates: Vec<(f64, Vec<f64>)>) -> (f64, Vec<f64>) {
    let best = candidates
        .iter()
        .map(|(v, _)| *v)
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    candidates
        .into_iter()
        .filter(|(v, _)| *v >= best - TIE_TOLERANCE)
        .min_by(|(_, a), (_, b)| {
            support_size(b).cmp(&support_size(a)).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        })
        .map(|(_, g)| (best, g))
        .expect("point masses are always candidates")
}

/// A lower estimate of `M(t) = sup_g Φ_t(g)` and a maximizer.
pub fn max_objective(n: usize, k: usize, t: f64, cfg: &SolverConfig) -> Result<(f64, SimplexVector)> {
    Maximizer::new(n, k, cfg)?.maximize(t, &[])
}

/// Bisection for `t_{k,n}` on `[1, k+1]`.
pub fn solve_exponent(n: usize, k: usize, cfg: &SolverConfig) -> Result<ExponentPair> {
    if n < 2 || k < 2 {
        return Err(GcubeError::domain("exponent solving needs n >= 2 and k >= 2"));
    }
    let maximizer = Maximizer::new(n, k, cfg)?;
    let mut lo = 1.0;
    let mut hi = (k + 1) as f64;
    let (m_lo, mut arg_lo) = maximizer.maximize(lo, &[])?;
    if !(m_lo > 1.0 + EXCESS_THRESHOLD) {
        return Err(GcubeError::Numeric(format!(
            "bracket check failed: M({lo}) = {m_lo} does not exceed 1"
        )));
    }
    let (m_hi, _) = maximizer.maximize(hi, &[arg_lo.as_slice().to_vec()])?;
    if m_hi > 1.0 + EXCESS_THRESHOLD {
        return Err(GcubeError::Numeric(format!(
            "bracket check failed: M({hi}) = {m_hi} exceeds 1"
        )));
    }
    while hi - lo > cfg.t_tolerance {
        let mid = 0.5 * (lo + hi);
        let (m, arg) = maximizer.maximize(mid, &[arg_lo.as_slice().to_vec()])?;
        if m > 1.0 + EXCESS_THRESHOLD {
            lo = mid;
            arg_lo = arg;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let (m, _) = maximizer.maximize(t, &[arg_lo.as_slice().to_vec()])?;
    let p = 2f64.powi(k as i32) / t;
    Ok(ExponentPair {
        k,
        n,
        t,
        p,
        residual: (m - 1.0).abs(),
        bracket: [lo, hi],
        bracket_width: hi - lo,
        argmax: arg_lo.into_vec(),
    })
}

/// Root of the decreasing function `t ↦ F(t) - 1`, bracketed from above by
/// doubling.
fn decreasing_root(mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) > 1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Err(GcubeError::Numeric("no root below t = 1e6".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The `t` with `Φ_t(g) = 1`. `Φ_t(g)` decreases strictly in `t` for
/// non-degenerate `g`, so this is a lower bound for `t_{k,n}`.
pub fn witness_lower_bound(n: usize, k: usize, g: &SimplexVector) -> Result<f64> {
    if g.len() != n {
        return Err(GcubeError::DimensionMismatch {
            expected: n,
            found: g.len(),
        });
    }
    if g.is_point_mass() {
        return Err(GcubeError::domain("a point mass gives Φ = 1 for every t"));
    }
    let table = TermTable::new(n, k)?;
    let logs: Vec<f64> = g.as_slice().iter().map(|x| x.ln()).collect();
    decreasing_root(|t| table.value_from_logs(t, &logs))
}

/// The least `t` for which `f ≥ 0` on `{0, ..., n-1}` satisfies
/// `‖f‖_{U^k}^{2^k} ≤ ‖f‖_{ℓ^p}^{2^k}` with `p = 2^k / t`. Equivalently the
/// root of `Φ_t(g_t) = 1` for `g_t ∝ f^p`.
pub fn function_witness(n: usize, k: usize, f: &[f64]) -> Result<f64> {
    if f.len() != n {
        return Err(GcubeError::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    if f.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(GcubeError::domain("witness function must be finite and nonnegative"));
    }
    if f.iter().filter(|&&x| x > 0.0).count() < 2 {
        return Err(GcubeError::domain("witness function needs at least two nonzero values"));
    }
    let table = TermTable::new(n, k)?;
    let top = f.iter().cloned().fold(0.0, f64::max);
    let logs: Vec<f64> = f.iter().map(|x| (x / top).ln()).collect();
    let two_k = 2f64.powi(k as i32);
    // LHS is t-free; the right side ‖f‖_p^{2^k} grows with t.
    let lhs = table.value_from_logs(two_k, &logs);
    decreasing_root(|t| {
        let p = two_k / t;
        let norm_p: f64 = logs.iter().map(|l| (p * l).exp()).sum();
        lhs / norm_p.powf(t)
    })
}

/// `f_{M,n}(m) = exp(-4M²(m/n - 1/2)²)` on `{0, ..., n-1}`.
pub fn gaussian_profile(n: usize, m: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(GcubeError::domain("Gaussian profile needs n >= 2"));
    }
    if !(m > 1.0) || !m.is_finite() {
        return Err(GcubeError::domain("Gaussian profile needs M > 1"));
    }
    Ok((0..n)
        .map(|j| {
            let x = j as f64 / n as f64 - 0.5;
            (-4.0 * m * m * x * x).exp()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianWitness {
    pub n: usize,
    pub m: f64,
    pub k: usize,
    pub f: Vec<f64>,
    /// Lower bound on `t_{k,n}`.
    pub t: f64,
}

pub fn gaussian_witness(n: usize, m: f64, k: usize) -> Result<GaussianWitness> {
    let f = gaussian_profile(n, m)?;
    let t = function_witness(n, k, &f)?;
    Ok(GaussianWitness { n, m, k, f, t })
}

/// `log_n P_k({0, ..., n-1}) ≤ t_{k,n} ≤ k + 1`.
pub fn trivial_bounds(n: usize, k: usize) -> Result<(f64, f64)> {
    if n < 2 || k < 1 {
        return Err(GcubeError::domain("trivial bounds need n >= 2 and k >= 1"));
    }
    let count = energy_p_interval(n, k)?.to_f64();
    Ok((count.ln() / (n as f64).ln(), (k + 1) as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPointReport {
    pub k: usize,
    pub t: f64,
    pub grid_points: usize,
    /// Largest `φ(x)` over the grid.
    pub max_value: f64,
    pub max_at: f64,
    /// `φ(1/2)`, which should be exactly 1.
    pub midpoint_value: f64,
}

impl TwoPointReport {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.max_value <= 1.0 + tolerance && (self.midpoint_value - 1.0).abs() <= tolerance
    }
}

/// `φ(x) = x^t + (1-x)^t + 2k (x(1-x))^{t/2}` at `t = log₂(2k+2)`, sampled
/// on `points` equally spaced points of `[0, 1]`.
pub fn two_point_check(k: usize, points: usize) -> Result<TwoPointReport> {
    if k < 1 || points < 2 {
        return Err(GcubeError::domain("two-point check needs k >= 1 and at least 2 points"));
    }
    let t = ((2 * k + 2) as f64).log2();
    let phi = |x: f64| {
        let y = 1.0 - x;
        x.powf(t) + y.powf(t) + 2.0 * k as f64 * (x * y).powf(t / 2.0)
    };
    let mut max_value = f64::NEG_INFINITY;
    let mut max_at = 0.0;
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let v = phi(x);
        if v > max_value {
            max_value = v;
            max_at = x;
        }
    }
    Ok(TwoPointReport {
        k,
        t,
        grid_points: points,
        max_value,
        max_at,
        midpoint_value: phi(0.5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        let cfg = SolverConfig::default();
        assert_eq!(cfg.grid_resolution(3), 64);
        assert_eq!(cfg.grid_resolution(5), 32);
        assert!(compositions(cfg.grid_resolution(10), 10) <= GRID_BUDGET);
        let mut out = Vec::new();
        simplex_grid(3, 4, &mut Vec::new(), &mut out);
        assert_eq!(out.len() as u128, compositions(4, 3));
    }

    #[test]
    fn tie_break_prefers_larger_support() {
        let (_, g) = pick_best(vec![
            (1.0, vec![1.0, 0.0]),
            (1.0 - 1e-14, vec![0.5, 0.5]),
            (1.0, vec![0.0, 1.0]),
        ]);
        assert_eq!(g, vec![0.5, 0.5]);
        let (_, g) = pick_best(vec![(1.0, vec![0.7, 0.3]), (1.0, vec![0.3, 0.7])]);
        assert_eq!(g, vec![0.3, 0.7]);
    }

    #[test]
    fn binary_maximum_sits_at_the_midpoint() {
        let cfg = SolverConfig::default();
        let (v, g) = max_objective(2, 2, 6f64.log2(), &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        assert!((g.as_slice()[0] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn binary_exponents() {
        let cfg = SolverConfig::default();
        for k in [2, 3, 5] {
            let r = solve_exponent(2, k, &cfg).unwrap();
            let expect = ((2 * k + 2) as f64).log2();
            assert!((r.t - expect).abs() < 1e-6, "k={k}: {}", r.t);
            assert!((r.p * r.t - 2f64.powi(k as i32)).abs() < 1e-12 * r.p * r.t);
        }
    }

    #[test]
    fn uniform_ternary_witness() {
        let t = witness_lower_bound(3, 2, &SimplexVector::uniform(3)).unwrap();
        assert!((t - 19f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!(witness_lower_bound(3, 2, &SimplexVector::point_mass(3, 1)).is_err());
    }

    #[test]
    fn interval_function_witness_is_trivial_lower_bound() {
        for n in 2..=5 {
            for k in 2..=4 {
                let t = function_witness(n, k, &vec![1.0; n]).unwrap();
                let (lower, _) = trivial_bounds(n, k).unwrap();
                assert!((t - lower).abs() < 1e-10, "n={n} k={k}: {t} vs {lower}");
            }
        }
    }

    #[test]
    fn gaussian_profile_values() {
        let f = gaussian_profile(2, 2.0).unwrap();
        assert!((f[0] - (-4f64).exp()).abs() < 1e-15);
        assert_eq!(f[1], 1.0);
        assert_eq!(gaussian_profile(4, 3.0).unwrap()[2], 1.0);
        assert!(gaussian_profile(4, 1.0).is_err());
    }

    #[test]
    fn two_point_inequality() {
        for k in 2..=10 {
            let r = two_point_check(k, 10_000).unwrap();
            assert!(r.passed(1e-12), "{r:?}");
        }
    }

    #[test]
    fn config_validation() {
        let cfg = SolverConfig {
            t_tolerance: 0.0,
            ..SolverConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(solve_exponent(1, 2, &SolverConfig::default()).is_err());
    }
}
