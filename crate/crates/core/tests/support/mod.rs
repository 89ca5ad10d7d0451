#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trikit::SimplicialComplex;

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Invariant factors by plain elimination: the first nonzero entry is moved
/// to the pivot, its row and column are cleared with unimodular 2×2 Bezout
/// steps, and the resulting diagonal is normalised with gcd/lcm swaps.
pub fn naive_invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a = big_rows(rows);
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = (t..m).cartesian_product(t..n).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                if a[i][t].is_multiple_of(&a[t][t]) {
                    let f = &a[i][t] / &a[t][t];
                    for j in 0..n {
                        let sub = &f * &a[t][j];
                        a[i][j] -= sub;
                    }
                    continue;
                }
                let e = a[t][t].extended_gcd(&a[i][t]);
                let (p, q) = (&a[t][t] / &e.gcd, &a[i][t] / &e.gcd);
                for j in 0..n {
                    let (u, v) = (a[t][j].clone(), a[i][j].clone());
                    a[t][j] = &e.x * &u + &e.y * &v;
                    a[i][j] = &p * &v - &q * &u;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                if a[t][j].is_multiple_of(&a[t][t]) {
                    let f = &a[t][j] / &a[t][t];
                    for row in a.iter_mut() {
                        let sub = &f * &row[t];
                        row[j] -= sub;
                    }
                    continue;
                }
                let e = a[t][t].extended_gcd(&a[t][j]);
                let (p, q) = (&a[t][t] / &e.gcd, &a[t][j] / &e.gcd);
                for row in a.iter_mut() {
                    let (u, v) = (row[t].clone(), row[j].clone());
                    row[t] = &e.x * &u + &e.y * &v;
                    row[j] = &p * &v - &q * &u;
                }
            }
            if (t + 1..m).all(|i| a[i][t].is_zero()) && (t + 1..n).all(|j| a[t][j].is_zero()) {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    // (a, b) -> (gcd, lcm) until every entry divides the next
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Invariant factors from determinantal divisors: d_k is the gcd of all
/// k×k minors and s_k = d_k / d_(k-1). Only for small matrices.
pub fn determinantal_invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let a = big_rows(rows);
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=m.min(n) {
        let mut g = BigInt::zero();
        for rs in (0..m).combinations(k) {
            for cs in (0..n).combinations(k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    // bias toward low rank and zeros now and then
    let sparse = rng.gen_bool(0.3);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| if sparse && rng.gen_bool(0.5) { 0 } else { rng.gen_range(-bound..=bound) })
                .collect()
        })
        .collect()
}

/// Random complex on vertices `0..n` given by a few random facets of size
/// at most `max_size`.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize, facets: usize, max_size: usize) -> SimplicialComplex {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut lists: Vec<Vec<String>> = Vec::new();
    // make sure every vertex occurs
    for v in &names {
        lists.push(vec![v.clone()]);
    }
    for _ in 0..facets {
        let size = rng.gen_range(1..=max_size.min(n));
        let mut pick: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            pick.swap(i, j);
        }
        let mut f: Vec<usize> = pick[..size].to_vec();
        f.sort_unstable();
        lists.push(f.iter().map(|&i| names[i].clone()).collect());
    }
    let labels: std::sync::Arc<[String]> = names.into();
    let simplices = lists
        .iter()
        .map(|l| trikit::Simplex::new(l.iter().map(|s| s.parse::<usize>().unwrap())).unwrap())
        .collect();
    SimplicialComplex::from_simplices(labels, simplices)
}

/// Prints the acceptance line and fails the test on a miss.
pub fn report(name: &str, ok: bool, detail: &str) {
    println!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}
