mod common;

use gcube::solver::{
    function_witness, gaussian_profile, gaussian_witness, max_objective, solve_exponent, trivial_bounds,
    two_point_check, witness_lower_bound, Maximizer,
};
use gcube::terms::{ternary_objective, SimplexVector, TermTable};
use gcube::{ExponentPair, GcubeError, SolverConfig};
use proptest::prelude::*;

fn solve(n: usize, k: usize) -> ExponentPair {
    solve_exponent(n, k, &SolverConfig::default()).unwrap()
}

/// Plain bisection on a decreasing function crossing 1.
fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn binary_exponents() {
    for k in 2..=8 {
        let r = solve(2, k);
        let expect = ((2 * k + 2) as f64).log2();
        assert!((r.t - expect).abs() < 1e-6, "k={k}: {} vs {expect}", r.t);
        assert!((r.p * r.t - 2f64.powi(k as i32)).abs() < 1e-9);
        assert!(r.residual < 1e-6);
        assert!(r.bracket_width <= 1e-9);
        assert!(r.bracket[0] <= r.t && r.t <= r.bracket[1]);
        assert!((r.argmax[0] - 0.5).abs() < 1e-4, "{:?}", r.argmax);
    }
    assert!((solve(2, 3).t - 3.0).abs() < 1e-6);
}

#[test]
fn ternary_exponent() {
    let r = solve(3, 2);
    assert!((r.t - 2.7207109973).abs() < 1e-6);
    assert!((r.p - 1.4702039297).abs() < 1e-6);
    let g = &r.argmax;
    assert!((g[0] - g[2]).abs() < 1e-4);
    assert!(g.iter().all(|&x| x > 0.0));
}

#[test]
fn ternary_exponent_against_dense_grid() {
    // no grid point beats 1 just above t, and the argmax beats it just below
    let r = solve(3, 2);
    let steps = 600;
    let above = r.t + 1e-6;
    let mut best: f64 = 0.0;
    for i in 0..=steps {
        for j in 0..=steps - i {
            let x = i as f64 / steps as f64;
            let y = j as f64 / steps as f64;
            best = best.max(ternary_objective(2, above, x, y, (1.0 - x - y).max(0.0)));
        }
    }
    assert!(best <= 1.0 + 1e-12, "{best}");
    let g = &r.argmax;
    assert!(ternary_objective(2, r.t - 1e-6, g[0], g[1], g[2]) > 1.0);
}

#[test]
fn witness_examples() {
    let u = witness_lower_bound(3, 2, &SimplexVector::uniform(3)).unwrap();
    assert!((u - 19f64.ln() / 3f64.ln()).abs() < 1e-9);
    let g = SimplexVector::new(vec![0.25, 0.5, 0.25]).unwrap();
    let w = witness_lower_bound(3, 2, &g).unwrap();
    let oracle = bisect(|t| ternary_objective(2, t, 0.25, 0.5, 0.25), 1.0, 3.0);
    assert!((w - oracle).abs() < 1e-12);
    assert!((w - 2.7195461220813276).abs() < 1e-12);
    assert!(w <= solve(3, 2).t + 1e-6);
    assert!(witness_lower_bound(3, 2, &SimplexVector::point_mass(3, 1)).is_err());
    assert!(witness_lower_bound(4, 2, &g).is_err());
}

#[test]
fn function_witness_agrees_with_simplex_witness() {
    // f ∝ g^{1/p} at the root t gives back Φ_t(g) = 1
    let g = [0.25, 0.5, 0.25];
    let t = witness_lower_bound(3, 2, &SimplexVector::new(g.to_vec()).unwrap()).unwrap();
    let f: Vec<f64> = g.iter().map(|x| x.powf(t / 4.0)).collect();
    let tf = function_witness(3, 2, &f).unwrap();
    assert!((tf - t).abs() < 1e-9, "{tf} vs {t}");
    assert!(function_witness(3, 2, &[1.0, 0.0, 0.0]).is_err());
    assert!(function_witness(3, 2, &[1.0, -1.0, 1.0]).is_err());
}

#[test]
fn binomial_witness_is_below_the_solution() {
    // f(j) = (C(n-1,j)/2^{n-1})^{t/2^k}
    for n in 3..=5 {
        let r = solve(n, 2);
        let row: Vec<f64> = gcube::entropy::binomial_row(n - 1)
            .iter()
            .map(|c| c.to_string().parse::<f64>().unwrap() / 2f64.powi(n as i32 - 1))
            .collect();
        let f: Vec<f64> = row.iter().map(|x| x.powf(r.t / 4.0)).collect();
        let w = function_witness(n, 2, &f).unwrap();
        assert!(w <= r.t + 1e-6, "n={n}: {w} > {}", r.t);
        let g = SimplexVector::new(row).unwrap();
        assert!(witness_lower_bound(n, 2, &g).unwrap() <= r.t + 1e-6);
    }
}

#[test]
fn gaussian_witness_bound() {
    let f = gaussian_profile(2, 2.0).unwrap();
    assert!((f[0] - (-4f64).exp()).abs() < 1e-15);
    assert!((f[1] - 1.0).abs() < 1e-15);
    let w = gaussian_witness(10, 3.0, 2).unwrap();
    assert_eq!(w.f.len(), 10);
    let t = solve(10, 2).t;
    assert!(w.t <= t + 1e-6, "{} > {t}", w.t);
    assert!(gaussian_profile(3, 1.0).is_err());
    assert!(gaussian_profile(1, 2.0).is_err());
}

#[test]
fn monotone_in_n_and_k() {
    let mut table = vec![vec![0.0; 5]; 5];
    for n in 2..=4 {
        for k in 2..=4 {
            table[n][k] = solve(n, k).t;
        }
    }
    for k in 2..=4 {
        assert!(table[2][k] <= table[3][k] + 1e-6);
        assert!(table[3][k] <= table[4][k] + 1e-6);
    }
    for n in 2..=4 {
        for k in 2..4 {
            assert!(table[n][k] < table[n][k + 1]);
            assert!(table[n][k + 1] <= table[n][k] + 1.0 + 1e-6);
        }
    }
}

#[test]
fn trivial_bounds_sandwich() {
    for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 2), (5, 2), (3, 6)] {
        let (lo, hi) = trivial_bounds(n, k).unwrap();
        let t = solve(n, k).t;
        assert!(lo <= t + 1e-6 && t <= hi + 1e-6, "n={n} k={k}: {lo} {t} {hi}");
    }
    let (lo, hi) = trivial_bounds(3, 2).unwrap();
    assert!((lo - 19f64.ln() / 3f64.ln()).abs() < 1e-12);
    assert_eq!(hi, 3.0);
    assert!(trivial_bounds(1, 2).is_err());
}

#[test]
fn max_objective_examples() {
    let cfg = SolverConfig::default();
    let (m, _) = max_objective(3, 2, 1.0, &cfg).unwrap();
    assert!(m > 1.0);
    // above the exponent the supremum 1 is attained at the point masses
    let (m, _) = max_objective(3, 2, 3.0, &cfg).unwrap();
    assert!((m - 1.0).abs() <= 1e-12, "{m}");
    let (m, g) = max_objective(2, 2, 6f64.log2(), &cfg).unwrap();
    assert!((m - 1.0).abs() < 1e-12);
    assert_eq!(g.support_size(), 2);
}

#[test]
fn symmetric_search_agrees() {
    let cfg = SolverConfig {
        symmetric: true,
        ..SolverConfig::default()
    };
    let a = solve_exponent(4, 2, &cfg).unwrap();
    let b = solve(4, 2);
    assert!((a.t - b.t).abs() < 1e-6);
}

#[test]
fn seeds_do_not_move_the_answer() {
    let base = solve(3, 3).t;
    for seed in [1, 2, 99] {
        let cfg = SolverConfig {
            rng_seed: seed,
            ..SolverConfig::default()
        };
        assert!((solve_exponent(3, 3, &cfg).unwrap().t - base).abs() < 1e-8);
    }
}

#[test]
fn repeat_runs_are_identical() {
    assert_eq!(solve(4, 3), solve(4, 3));
}

#[test]
fn invalid_requests() {
    let cfg = SolverConfig::default();
    assert!(matches!(solve_exponent(1, 2, &cfg), Err(GcubeError::Domain(_))));
    assert!(matches!(solve_exponent(3, 1, &cfg), Err(GcubeError::Domain(_))));
    let bad = SolverConfig {
        t_tolerance: 0.0,
        ..SolverConfig::default()
    };
    assert!(solve_exponent(3, 2, &bad).is_err());
    let bad = SolverConfig {
        multistart_count: 0,
        ..SolverConfig::default()
    };
    assert!(Maximizer::new(3, 2, &bad).is_err());
}

#[test]
fn two_point_inequality() {
    for k in 2..=10 {
        let r = two_point_check(k, 10_000).unwrap();
        assert!(r.passed(1e-12), "{r:?}");
    }
    assert!(two_point_check(2, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_witness_is_below_the_exponent(w in prop::collection::vec(0.01f64..1.0, 3), k in 2usize..=3) {
        let t = [0.0, 0.0, 2.7207109973, 3.0][k];
        let t = if k == 3 { solve(3, 3).t } else { t };
        let g = SimplexVector::normalized(&w).unwrap();
        prop_assert!(witness_lower_bound(3, k, &g).unwrap() <= t + 1e-6);
    }

    #[test]
    fn maximum_dominates_samples(w in prop::collection::vec(0.0f64..1.0, 4), t in 1.5f64..4.0) {
        prop_assume!(w.iter().sum::<f64>() > 1e-3);
        let g = SimplexVector::normalized(&w).unwrap();
        let table = TermTable::new(4, 2).unwrap();
        let (m, _) = max_objective(4, 2, t, &SolverConfig::default()).unwrap();
        prop_assert!(table.value(t, &g) <= m * (1.0 + 1e-12));
    }
}
