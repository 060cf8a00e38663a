use gcube::asymptotics::{
    asymptotic_sweep, eisner_tao_constant, large_k_main_term, large_n_main_term, leading_coefficient,
    leading_coefficient_table, write_sweep_csv, AsymptoticReport, SWEEP_CSV_HEADER,
};
use gcube::entropy::{binomial_entropy, binomial_entropy_bounds};
use gcube::SolverConfig;

#[test]
fn coefficient_table() {
    let rows = leading_coefficient_table(6).unwrap();
    assert_eq!(rows.len(), 5);
    let expect = [1.0, 1.3333333333, 1.6562889815, 1.9698232317, 2.2745961522];
    for (row, e) in rows.iter().zip(expect) {
        assert!((row.value - e).abs() < 1e-9, "n={}", row.n);
        assert!(!row.closed_form.is_empty());
    }
    assert_eq!(rows[1].closed_form, "4/3");
    assert_eq!(leading_coefficient_table(8).unwrap()[6].closed_form, "");
    assert!(leading_coefficient_table(1).is_err());
}

#[test]
fn coefficient_lies_inside_entropy_bounds() {
    for n in 2..=64 {
        let (lo, hi) = binomial_entropy_bounds(n - 1).unwrap();
        let m = (n - 1) as f64;
        let c = leading_coefficient(n).unwrap();
        assert!(m / hi < c && c < m / lo, "n={n}");
        assert!((c - m / binomial_entropy(n - 1)).abs() < 1e-15);
    }
}

#[test]
fn coefficient_grows_with_n() {
    let mut prev = 0.0;
    for n in 2..=200 {
        let c = leading_coefficient(n).unwrap();
        assert!(c > prev);
        prev = c;
    }
}

#[test]
fn main_terms() {
    for k in 2..=12 {
        let kf = k as f64;
        assert!((large_k_main_term(k, 2).unwrap() - (2.0 * kf).log2()).abs() < 1e-12);
        assert!((large_k_main_term(k, 3).unwrap() - (4.0 / 3.0 * kf.log2() + 2.0 / 3.0)).abs() < 1e-12);
        // the large-n term never exceeds the trivial upper bound
        for n in 2..=20 {
            assert!(large_n_main_term(k, n).unwrap() <= kf + 1.0);
        }
    }
    assert!(large_k_main_term(1, 3).is_err());
    assert!(large_n_main_term(2, 1).is_err());
}

#[test]
fn eisner_tao_values() {
    let (c2, s2) = eisner_tao_constant(2).unwrap();
    assert!((c2 - 2f64.sqrt() / 3f64.powf(3.0 / 8.0)).abs() < 1e-12);
    assert!((4.0 * c2.log2() - s2).abs() < 1e-12);
    for k in 2..=30 {
        let (c, s) = eisner_tao_constant(k).unwrap();
        assert!(c < 1.0);
        // C_k is close to 1, so rescaling log2 C_k amplifies rounding by 2^k
        let scale = 2f64.powi(k as i32);
        assert!((scale * c.log2() - s).abs() < 1e-15 * scale + 1e-12);
    }
    assert!(eisner_tao_constant(1).is_err());
}

#[test]
fn binary_gap_is_exact() {
    let rows = asymptotic_sweep(2, &[2, 3, 5, 8], &SolverConfig::default()).unwrap();
    for r in &rows {
        let expect = (1.0 + 1.0 / r.k as f64).log2();
        assert!((r.gap - expect).abs() < 1e-9, "k={}: {}", r.k, r.gap);
        assert!(r.t_solver <= r.upper_trivial);
    }
    assert_eq!(rows.iter().map(|r| r.k).collect::<Vec<_>>(), vec![2, 3, 5, 8]);
}

#[test]
fn ternary_gap_shrinks() {
    let rows = asymptotic_sweep(3, &[2, 4, 8, 16], &SolverConfig::default()).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].gap.abs() <= w[0].gap.abs() + 1e-6);
    }
}

#[test]
fn csv_layout() {
    let row = AsymptoticReport::from_solution(2, 2, 6f64.log2()).unwrap();
    let mut out = Vec::new();
    write_sweep_csv(&[row], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_CSV_HEADER);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), 7);
    assert_eq!(&fields[..2], &["2", "2"]);
    let gap: f64 = fields[4].parse().unwrap();
    assert!((gap - 1.5f64.log2()).abs() < 1e-15);
    assert_eq!(fields[6], "3");
}
