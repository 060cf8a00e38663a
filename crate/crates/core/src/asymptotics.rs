//! Closed-form main terms for `t_{k,n}` and their comparison with the solver.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::binomial_entropy;
use crate::error::{GcubeError, Result};
use crate::solver::{solve_exponent, trivial_bounds, SolverConfig};

fn check_kn(k: usize, n: usize) -> Result<()> {
    if k < 2 || n < 2 {
        return Err(GcubeError::domain("formula needs k >= 2 and n >= 2"));
    }
    Ok(())
}

fn log2_factorial(m: usize) -> f64 {
    (2..=m).map(|i| (i as f64).log2()).sum()
}

/// `((n-1) log₂(2k) - log₂(n-1)!) / H_{n-1}`, the large-`k` main term.
pub fn large_k_main_term(k: usize, n: usize) -> Result<f64> {
    check_kn(k, n)?;
    let m = n - 1;
    Ok((m as f64 * (2.0 * k as f64).log2() - log2_factorial(m)) / binomial_entropy(m))
}

/// `(n-1) / H_{n-1}`.
pub fn leading_coefficient(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(GcubeError::domain("leading coefficient needs n >= 2"));
    }
    Ok((n - 1) as f64 / binomial_entropy(n - 1))
}

/// `k+1 - ((k+1) log₂(k+1) - 2k) / (2 log₂ n)`, the large-`n` main term.
pub fn large_n_main_term(k: usize, n: usize) -> Result<f64> {
    check_kn(k, n)?;
    let k1 = (k + 1) as f64;
    Ok(k1 - (k1 * k1.log2() - 2.0 * k as f64) / (2.0 * (n as f64).log2()))
}

/// `C_k = 2^{k/2^k} / (k+1)^{(k+1)/2^{k+1}}` and `2^k log₂ C_k = k - (k+1) log₂(k+1) / 2`.
pub fn eisner_tao_constant(k: usize) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(GcubeError::domain("Eisner-Tao constant needs k >= 2"));
    }
    let kf = k as f64;
    let k1 = kf + 1.0;
    let scaled_log = kf - k1 * k1.log2() / 2.0;
    Ok((2f64.powf(scaled_log / 2f64.powi(k as i32)), scaled_log))
}

/// One row of the table of `(n-1)/H_{n-1}`, with the exact form when known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: usize,
    pub closed_form: &'static str,
    pub value: f64,
}

const CLOSED_FORMS: [&str; 5] = [
    "1",
    "4/3",
    "4/(4-log2(3))",
    "32/(21-3log2(3))",
    "16/(14-3log2(5))",
];

pub fn leading_coefficient_table(n_max: usize) -> Result<Vec<CoefficientRow>> {
    if n_max < 2 {
        return Err(GcubeError::domain("table needs n_max >= 2"));
    }
    (2..=n_max)
        .map(|n| {
            Ok(CoefficientRow {
                n,
                closed_form: CLOSED_FORMS.get(n - 2).copied().unwrap_or(""),
                value: leading_coefficient(n)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub k: usize,
    pub n: usize,
    pub t_solver: f64,
    pub t_formula: f64,
    /// `t_solver - t_formula`.
    pub gap: f64,
    pub lower_main_term: f64,
    pub upper_trivial: f64,
}

/// Solves `t_{k,n}` for each `k` and compares with the main term. Rows come
/// back in ascending `k`.
pub fn asymptotic_sweep(n: usize, ks: &[usize], cfg: &SolverConfig) -> Result<Vec<AsymptoticReport>> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    ks.par_iter()
        .map(|&k| AsymptoticReport::from_solution(n, k, solve_exponent(n, k, cfg)?.t))
        .collect()
}

impl AsymptoticReport {
    /// Compares an already computed `t_{k,n}` with the closed forms.
    pub fn from_solution(n: usize, k: usize, t_solver: f64) -> Result<Self> {
        let t_formula = large_k_main_term(k, n)?;
        Ok(AsymptoticReport {
            k,
            n,
            t_solver,
            t_formula,
            gap: t_solver - t_formula,
            lower_main_term: large_n_main_term(k, n)?,
            upper_trivial: trivial_bounds(n, k)?.1,
        })
    }
}

pub const SWEEP_CSV_HEADER: &str = "k,n,t_solver,t_formula,gap,lower13,upper";

pub fn write_sweep_csv<W: Write>(rows: &[AsymptoticReport], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.k,
            r.n,
            crate::format::json_number(r.t_solver),
            crate::format::json_number(r.t_formula),
            crate::format::json_number(r.gap),
            crate::format::json_number(r.lower_main_term),
            crate::format::json_number(r.upper_trivial),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let expect = [1.0, 4.0 / 3.0, 1.6562889815, 1.9698232317, 2.2745961522];
        let rows = leading_coefficient_table(6).unwrap();
        for (row, e) in rows.iter().zip(expect) {
            assert!((row.value - e).abs() < 1e-9, "n={}: {}", row.n, row.value);
        }
        let l3 = 3f64.log2();
        assert!((rows[2].value - 4.0 / (4.0 - l3)).abs() < 1e-12);
        assert!((rows[3].value - 32.0 / (21.0 - 3.0 * l3)).abs() < 1e-12);
        assert!((rows[4].value - 16.0 / (14.0 - 3.0 * 5f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn ternary_main_term() {
        for k in 2..20 {
            let lhs = large_k_main_term(k, 3).unwrap();
            let rhs = 4.0 / 3.0 * (k as f64).log2() + 2.0 / 3.0;
            assert!((lhs - rhs).abs() < 1e-12);
        }
        assert!((large_k_main_term(3, 2).unwrap() - 6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn large_n_main_term_values() {
        assert!((large_n_main_term(3, 2).unwrap() - 3.0).abs() < 1e-12);
        let v = large_n_main_term(2, 4).unwrap();
        assert!((v - (3.0 - (3.0 * 3f64.log2() - 4.0) / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn eisner_tao() {
        let (c, s) = eisner_tao_constant(2).unwrap();
        assert!((c - 2f64.sqrt() / 3f64.powf(0.375)).abs() < 1e-12);
        assert!((s - (2.0 - 1.5 * 3f64.log2())).abs() < 1e-12);
        // dips from k=2 to k=3, then climbs towards 1
        assert!(eisner_tao_constant(3).unwrap().0 < c);
        let mut prev = 0.0;
        for k in 3..=20 {
            let (c, _) = eisner_tao_constant(k).unwrap();
            assert!(c < 1.0 && c > prev);
            prev = c;
        }
        assert!(1.0 - prev < 1e-3);
    }
}
