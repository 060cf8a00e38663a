//! Named verification suites run by `gcube verify`.
//!
//! Randomized checks draw from a ChaCha stream seeded by the caller, so a
//! suite run is reproducible bit for bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entropy::{
    binomial_entropy, binomial_entropy_bounds, verify_entropy_corollary, verify_majorization_lemma,
};
use crate::error::{GcubeError, Result};
use crate::gowers::{energy_p_interval, gowers_inner_product, gowers_norm, gowers_norm_pow, GowersSystem};
use crate::lattice::{LatticeFunction, LatticePoint};
use crate::solver::two_point_check;
use crate::terms::{enumerate_tuple_classes, SimplexVector, TermTable};

pub const SUITES: [&str; 7] = ["binary", "terms", "entropy", "majorization", "gcs", "young", "tensor"];

/// Trials per randomized property.
pub const RANDOM_TRIALS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.counterexamples.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
        }
        for ce in &self.counterexamples {
            out.push_str(&format!("counterexample: {ce}\n"));
        }
        out.push_str(&format!(
            "suite {}: {}\n",
            self.suite,
            if self.passed() { "passed" } else { "failed" }
        ));
        out
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "binary" => binary_suite(),
        "terms" => terms_suite(seed),
        "entropy" => entropy_suite(),
        "majorization" => majorization_suite(),
        "gcs" => gcs_suite(seed),
        "young" => young_suite(seed),
        "tensor" => tensor_suite(seed),
        other => Err(GcubeError::domain(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

/// A random complex function on a box of side `1..=width` in `ℤ^dim`.
pub fn random_complex_function(rng: &mut impl Rng, dim: usize, width: usize) -> LatticeFunction {
    random_function(rng, dim, width, true)
}

/// A random nonnegative function on a box of side `1..=width` in `ℤ^dim`.
pub fn random_nonnegative_function(rng: &mut impl Rng, dim: usize, width: usize) -> LatticeFunction {
    random_function(rng, dim, width, false)
}

fn random_function(rng: &mut impl Rng, dim: usize, width: usize, complex: bool) -> LatticeFunction {
    let w = rng.gen_range(1..=width.max(1)) as i64;
    let mut f = LatticeFunction::zero(dim);
    let mut coords = vec![0i64; dim];
    loop {
        if rng.gen_bool(0.75) {
            let v = if complex {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            } else {
                Complex64::new(rng.gen_range(0.0..1.0), 0.0)
            };
            f.set(LatticePoint::new(coords.clone()), v).expect("matching dimension");
        }
        let mut i = 0;
        while i < dim {
            coords[i] += 1;
            if coords[i] < w {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == dim {
            break;
        }
    }
    if f.is_zero() {
        f.set(LatticePoint::origin(dim), Complex64::new(1.0, 0.0))
            .expect("matching dimension");
    }
    f
}

/// A random point of the simplex, sometimes with zero coordinates.
pub fn random_simplex(rng: &mut impl Rng, n: usize) -> SimplexVector {
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.15) {
                0.0
            } else {
                -(1.0 - rng.gen::<f64>()).ln()
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[rng.gen_range(0..n)] = 1.0;
    }
    SimplexVector::normalized(&w).expect("positive weights")
}

fn binary_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("binary");
    for k in 2..=10 {
        let rep = two_point_check(k, 10_000)?;
        r.check(
            format!("two-point inequality k={k}"),
            rep.passed(1e-12),
            format!(
                "t={:.10}, max {:.3e} above 1 at x={}, midpoint deviation {:.1e}",
                rep.t,
                rep.max_value - 1.0,
                rep.max_at,
                rep.midpoint_value - 1.0
            ),
        );
    }
    Ok(r)
}

fn terms_suite(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("terms");
    for k in [2u64, 3, 5] {
        let table = TermTable::new(3, k as usize)?;
        let mut got: Vec<u64> = table
            .groups()
            .iter()
            .map(|g| g.coefficient.to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        got.sort_unstable();
        let mut expect = vec![1, 1, 1, 2 * k, 2 * k, 2 * k, 2 * k * (k - 1)];
        expect.sort_unstable();
        r.check(
            format!("ternary coefficients k={k}"),
            got == expect,
            format!("{got:?}"),
        );
    }
    for n in 2..=7 {
        let classes = enumerate_tuple_classes(n)?;
        let size = classes.last().map_or(0, |c| c.tuples.len());
        r.check(
            format!("|T_{{{n},{}}}| = 2^{}", n - 1, n - 1),
            size == 1 << (n - 1),
            format!("{size}"),
        );
    }
    let mut worst = 0.0f64;
    let mut ok = true;
    for n in 2..=5 {
        for k in 1..=4 {
            let table = TermTable::new(n, k)?;
            let count = energy_p_interval(n, k)?.to_f64();
            ok &= table.total_coefficient() == *energy_p_interval(n, k)?.value();
            for t in [0.7, 1.9, 2.6, 3.4, 5.0] {
                let v = table.value(t, &SimplexVector::uniform(n));
                let expect = count * (n as f64).powf(-t);
                worst = worst.max((v - expect).abs() / expect);
            }
        }
    }
    r.check(
        "uniform value equals P_k(interval) n^-t",
        ok && worst <= 1e-12,
        format!("n<=5, k<=4, worst relative error {worst:.1e}"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tables: Vec<TermTable> = (2..=6)
        .flat_map(|n| (2..=4).map(move |k| (n, k)))
        .map(|(n, k)| TermTable::new(n, k))
        .collect::<Result<_>>()?;
    let mut mono_fail = 0;
    let mut sym_fail = 0;
    for _ in 0..RANDOM_TRIALS {
        let table = &tables[rng.gen_range(0..tables.len())];
        let g = random_simplex(&mut rng, table.n());
        let t1 = rng.gen_range(0.5..6.0);
        let t2 = t1 + rng.gen_range(0.0..2.0);
        let (v1, v2) = (table.value(t1, &g), table.value(t2, &g));
        if v2 > v1 * (1.0 + 1e-12) {
            mono_fail += 1;
            r.counterexamples
                .push(format!("Φ increases in t: n={} g={:?} t={t1}->{t2}", table.n(), g.as_slice()));
        }
        let vr = table.value(t1, &g.reversed());
        if !rel_close(v1, vr, 1e-12) {
            sym_fail += 1;
            r.counterexamples
                .push(format!("Φ not reflection symmetric: n={} g={:?}", table.n(), g.as_slice()));
        }
    }
    r.check(
        "Φ nonincreasing in t",
        mono_fail == 0,
        format!("{RANDOM_TRIALS} trials, {mono_fail} failures"),
    );
    r.check(
        "Φ reflection symmetric",
        sym_fail == 0,
        format!("{RANDOM_TRIALS} trials, {sym_fail} failures"),
    );
    Ok(r)
}

fn entropy_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("entropy");
    r.check(
        "H_1 = 1, H_2 = 3/2",
        binomial_entropy(1) == 1.0 && binomial_entropy(2) == 1.5,
        format!("{} {}", binomial_entropy(1), binomial_entropy(2)),
    );
    let mut bounds_ok = true;
    let mut ratio_ok = true;
    let mut min_margin = f64::INFINITY;
    let mut prev = f64::INFINITY;
    for m in 1..=1000 {
        let h = binomial_entropy(m);
        let (lo, hi) = binomial_entropy_bounds(m)?;
        if !(lo < h && h < hi) {
            bounds_ok = false;
            r.counterexamples.push(format!("H_{m} = {h} outside ({lo}, {hi})"));
        }
        let ratio = h / m as f64;
        if !(ratio < prev) {
            ratio_ok = false;
            r.counterexamples.push(format!("H_{m}/{m} does not decrease"));
        }
        min_margin = min_margin.min(prev - ratio);
        prev = ratio;
    }
    r.check("H_m strictly inside its two-sided bound", bounds_ok, "m <= 1000");
    r.check(
        "H_m/m strictly decreasing",
        ratio_ok,
        format!("m <= 1000, smallest step {min_margin:.3e}"),
    );
    let expect = [1.0, 4.0 / 3.0, 1.6562889815, 1.9698232317, 2.2745961522];
    let rows = crate::asymptotics::leading_coefficient_table(6)?;
    let worst = rows
        .iter()
        .zip(expect)
        .map(|(row, e)| (row.value - e).abs())
        .fold(0.0, f64::max);
    r.check(
        "(n-1)/H_{n-1} table",
        worst <= 1e-9,
        format!("n = 2..6, worst deviation {worst:.1e}"),
    );
    for n in 2..=8 {
        let rep = verify_entropy_corollary(n)?;
        let vectors: usize = rep.rows.iter().map(|row| row.vectors).sum();
        r.check(
            format!("normalized entropy bound n={n}"),
            rep.passed(),
            format!("{vectors} coefficient vectors"),
        );
        r.counterexamples
            .extend(rep.counterexamples.iter().map(|c| format!("{c:?}")));
    }
    Ok(r)
}

fn majorization_suite() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("majorization");
    let rep = verify_majorization_lemma(5, 5)?;
    for row in &rep.rows {
        let gap = if row.min_strict_gap.is_finite() {
            format!("{:.3e}", row.min_strict_gap)
        } else {
            "n/a".to_string()
        };
        r.check(
            format!("binomial majorizes signed sums m={}", row.m),
            !rep.counterexamples.iter().any(|c| c.coefficients.len() == row.m),
            format!(
                "{} vectors, {} equality cases, smallest strict entropy gap {gap}",
                row.vectors, row.equal_cases
            ),
        );
    }
    r.counterexamples
        .extend(rep.counterexamples.iter().map(|c| format!("{c:?}")));
    Ok(r)
}

fn gcs_suite(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("gcs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gcs_fail = 0;
    let mut tri_fail = 0;
    let mut crit_fail = 0;
    for trial in 0..RANDOM_TRIALS {
        let k = if trial % 2 == 0 { 2 } else { 3 };
        let dim = 1;
        let fs: Vec<LatticeFunction> = (0..1 << k)
            .map(|_| random_complex_function(&mut rng, dim, 4))
            .collect();
        let bound: f64 = fs
            .iter()
            .map(|f| gowers_norm(f, k))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .product();
        let lhs = gowers_inner_product(&GowersSystem::new(k, fs)?).norm();
        if lhs > bound * (1.0 + 1e-9) + 1e-300 {
            gcs_fail += 1;
            r.counterexamples
                .push(format!("Gowers-Cauchy-Schwarz trial {trial}: {lhs} > {bound}"));
        }

        let f1 = random_complex_function(&mut rng, dim, 4);
        let f2 = random_complex_function(&mut rng, dim, 4);
        let sum = gowers_norm(&f1.add(&f2)?, k)?;
        let rhs = gowers_norm(&f1, k)? + gowers_norm(&f2, k)?;
        if sum > rhs * (1.0 + 1e-9) {
            tri_fail += 1;
            r.counterexamples
                .push(format!("triangle trial {trial}: {sum} > {rhs}"));
        }

        let f = random_nonnegative_function(&mut rng, dim, 5);
        let p = 2f64.powi(k as i32) / (k + 1) as f64;
        let (u, l) = (gowers_norm(&f, k)?, f.lp_norm(p)?);
        if u > l * (1.0 + 1e-9) {
            crit_fail += 1;
            r.counterexamples
                .push(format!("critical exponent trial {trial}: {u} > {l}"));
        }
    }
    r.check(
        "Gowers-Cauchy-Schwarz",
        gcs_fail == 0,
        format!("{RANDOM_TRIALS} systems, k in {{2,3}}, {gcs_fail} failures"),
    );
    r.check(
        "U^k triangle inequality",
        tri_fail == 0,
        format!("{RANDOM_TRIALS} pairs, {tri_fail} failures"),
    );
    r.check(
        "U^k norm below l^p norm at p = 2^k/(k+1)",
        crit_fail == 0,
        format!("{RANDOM_TRIALS} functions, {crit_fail} failures"),
    );
    Ok(r)
}

/// A random Young triple `(p, q, r)` with `1/p + 1/q = 1 + 1/r`.
pub fn random_young_exponents(rng: &mut impl Rng) -> (f64, f64, f64) {
    let inv = |x: f64| if x == 0.0 { f64::INFINITY } else { 1.0 / x };
    loop {
        let a: f64 = if rng.gen_bool(0.1) { 1.0 } else { rng.gen() };
        let b: f64 = if rng.gen_bool(0.1) { 0.0 } else { rng.gen() };
        let c = a + b - 1.0;
        if c >= 0.0 {
            return (inv(a), inv(b), inv(c));
        }
    }
}

fn young_suite(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("young");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = 0;
    let mut reflect_fails = 0;
    for trial in 0..RANDOM_TRIALS {
        let dim = rng.gen_range(1..=2);
        let f = random_complex_function(&mut rng, dim, 5);
        let g = random_complex_function(&mut rng, dim, 5);
        let (p, q, s) = random_young_exponents(&mut rng);
        let lhs = f.convolve(&g)?.lp_norm(s)?;
        let rhs = f.lp_norm(p)? * g.lp_norm(q)?;
        if lhs > rhs * (1.0 + 1e-12) {
            fails += 1;
            r.counterexamples
                .push(format!("Young trial {trial}: p={p} q={q} r={s}: {lhs} > {rhs}"));
        }
        let (a, b) = (f.reflect().lp_norm(p)?, f.lp_norm(p)?);
        if !rel_close(a, b, 1e-12) {
            reflect_fails += 1;
        }
    }
    r.check(
        "Young's convolution inequality",
        fails == 0,
        format!("{RANDOM_TRIALS} trials, {fails} failures"),
    );
    r.check(
        "reflection preserves l^p norms",
        reflect_fails == 0,
        format!("{RANDOM_TRIALS} trials, {reflect_fails} failures"),
    );
    Ok(r)
}

fn tensor_suite(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("tensor");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lp_fails = 0;
    let mut u_fails = 0;
    for trial in 0..RANDOM_TRIALS {
        let g = random_complex_function(&mut rng, 1, 3);
        let d = rng.gen_range(1..=4);
        let p = rng.gen_range(0.5..4.0);
        let a = g.tensor_power(d)?.lp_norm(p)?;
        let b = g.lp_norm(p)?.powi(d as i32);
        if !rel_close(a, b, 1e-10) {
            lp_fails += 1;
            r.counterexamples
                .push(format!("l^p tensor trial {trial}: d={d} p={p}: {a} vs {b}"));
        }
        let k = if trial % 2 == 0 { 2 } else { 3 };
        let d = if k == 2 { rng.gen_range(1..=3) } else { rng.gen_range(1..=2) };
        let a = gowers_norm_pow(&g.tensor_power(d)?, k)?;
        let b = gowers_norm_pow(&g, k)?.powi(d as i32);
        if !rel_close(a, b, 1e-9) {
            u_fails += 1;
            r.counterexamples
                .push(format!("U^{k} tensor trial {trial}: d={d}: {a} vs {b}"));
        }
    }
    r.check(
        "l^p norm of tensor powers",
        lp_fails == 0,
        format!("{RANDOM_TRIALS} trials, d <= 4, {lp_fails} failures"),
    );
    r.check(
        "U^k norm of tensor powers",
        u_fails == 0,
        format!("{RANDOM_TRIALS} trials, d <= 3, {u_fails} failures"),
    );
    Ok(r)
}
