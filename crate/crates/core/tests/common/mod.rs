//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gcube::{CubeSet, LatticeFunction, LatticePoint};
use num_complex::Complex64;

/// Every point of the box `[lo, hi]` (inclusive) in `ℤ^d`.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            for x in *l..=*h {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `Σ_{a,h} Π_ε C^{|ε|} f(a + ε·h)` with `a` over the bounding box and
/// every `h_i` over the full difference box, no pruning.
pub fn naive_gowers(f: &LatticeFunction, k: usize) -> Complex64 {
    let Some((lo, hi)) = f.bounding_box() else {
        return Complex64::new(0.0, 0.0);
    };
    let d = f.dim();
    let width: Vec<i64> = lo.iter().zip(&hi).map(|(l, h)| h - l).collect();
    let neg: Vec<i64> = width.iter().map(|w| -w).collect();
    let bases = box_points(&lo, &hi);
    let steps = box_points(&neg, &width);
    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; k];
    for a in &bases {
        idx.iter_mut().for_each(|i| *i = 0);
        loop {
            let mut prod = Complex64::new(1.0, 0.0);
            for eps in 0..1usize << k {
                let mut p = a.clone();
                for (i, &hi_idx) in idx.iter().enumerate() {
                    if eps >> i & 1 == 1 {
                        for c in 0..d {
                            p[c] += steps[hi_idx][c];
                        }
                    }
                }
                let v = f.get(&LatticePoint::new(p));
                prod *= if eps.count_ones() % 2 == 1 { v.conj() } else { v };
                if prod == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
            total += prod;
            let mut i = 0;
            while i < k {
                idx[i] += 1;
                if idx[i] < steps.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    total
}

/// All `m`-tuples of members of `A`.
fn tuples(set: &CubeSet, m: usize) -> Vec<Vec<Vec<i64>>> {
    let members: Vec<Vec<i64>> = set.iter().map(|p| p.coords().to_vec()).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &out {
            for a in &members {
                let mut u: Vec<Vec<i64>> = t.clone();
                u.push(a.clone());
                next.push(u);
            }
        }
        out = next;
    }
    out
}

fn vsum(vs: &[Vec<i64>], d: usize) -> Vec<i64> {
    let mut s = vec![0; d];
    for v in vs {
        for i in 0..d {
            s[i] += v[i];
        }
    }
    s
}

/// `E_k` by enumerating all `2k`-tuples.
pub fn naive_energy_e(set: &CubeSet, k: usize) -> u64 {
    let d = set.dim();
    tuples(set, 2 * k)
        .iter()
        .filter(|t| vsum(&t[..k], d) == vsum(&t[k..], d))
        .count() as u64
}

/// `Ẽ_k` by enumerating all `2k`-tuples.
pub fn naive_energy_e_tilde(set: &CubeSet, k: usize) -> u64 {
    let d = set.dim();
    tuples(set, 2 * k)
        .iter()
        .filter(|t| {
            let diffs: BTreeSet<Vec<i64>> = (0..k)
                .map(|i| (0..d).map(|c| t[2 * i][c] - t[2 * i + 1][c]).collect())
                .collect();
            diffs.len() == 1
        })
        .count() as u64
}

/// `P_k` by checking every `(a, h)` with `a` in the set and `h` in the
/// difference box.
pub fn naive_energy_p(set: &CubeSet, k: usize) -> u64 {
    let d = set.dim();
    let n = set.side() as i64;
    let steps = box_points(&vec![-(n - 1); d], &vec![n - 1; d]);
    let mut count = 0;
    for a in set.iter() {
        let mut idx = vec![0usize; k];
        loop {
            let ok = (0..1usize << k).all(|eps| {
                let mut p = a.coords().to_vec();
                for (i, &j) in idx.iter().enumerate() {
                    if eps >> i & 1 == 1 {
                        for c in 0..d {
                            p[c] += steps[j][c];
                        }
                    }
                }
                set.contains(&LatticePoint::new(p))
            });
            if ok {
                count += 1;
            }
            let mut i = 0;
            while i < k {
                idx[i] += 1;
                if idx[i] < steps.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    count
}

/// All subsets of `{0, ..., n-1}` as 1-D cube sets.
pub fn subsets_1d(n: usize) -> Vec<CubeSet> {
    (0u32..1 << n)
        .map(|mask| {
            let members: Vec<i64> = (0..n as i64).filter(|i| mask >> i & 1 == 1).collect();
            CubeSet::from_1d(n, &members).unwrap()
        })
        .collect()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}
