//! Oracles shared by the integration tests. They are deliberately naive so
//! they do not share code paths with the library.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use divclass::linalg::IntMatrix;

/// Germs with convenient, nondegenerate Newton boundary, with hand-derived
/// `(rho, delta)`.
pub const GERM_SUITE: &[(&str, &str, u64, u64)] = &[
    ("A1", "y^2 - x^2", 2, 1),
    ("A2", "y^2 - x^3", 1, 1),
    ("A3", "y^2 - x^4", 2, 2),
    ("A4", "y^2 - x^5", 1, 2),
    ("A5", "y^2 - x^6", 2, 3),
    ("A6", "y^2 - x^7", 1, 3),
    ("A7", "y^2 - x^8", 2, 4),
    ("A8", "y^2 - x^9", 1, 4),
    ("D4", "x^2*y - y^3 + x^4", 3, 3),
    ("D5", "x^2*y + y^4 + x^4", 2, 3),
    ("D6", "x^2*y + y^5 + x^4", 3, 4),
    ("E6", "x^3 + y^4", 1, 3),
    ("E7", "x^3 + x*y^3 + y^5", 2, 4),
    ("E8", "x^3 + y^5", 1, 4),
    ("tacnode, irrational tangents", "y^2 - 3*x^4", 2, 2),
    ("ordinary double point", "x^2 - y^2 + x^3", 2, 1),
    ("ordinary triple point", "x^3 - y^3", 3, 3),
    ("ordinary triple point, irrational", "x^3 - 2*y^3", 3, 3),
    ("ordinary quadruple point", "x^4 - y^4", 4, 6),
    (
        "ordinary quintuple point, rational lines",
        "x*(x - y)*(x - 2*y)*(x - 3*y)*(x - 4*y) + y^6",
        5,
        10,
    ),
    ("ordinary quintuple point, one irrational quartic", "x^5 - y^5", 5, 10),
    ("two cusps", "x^4 - y^6", 2, 8),
    ("three cusps", "x^6 - y^9", 3, 21),
    ("E12 type", "y^3 - x^7", 1, 6),
    ("transverse cusps", "x^5 - x^2*y^2 - x^3*y^3 + y^5", 2, 6),
    ("T(2,5,5)", "x^2*y^2 + x^5 + y^5", 2, 6),
    ("nodal cubic", "y^2 - x^3 - x^2", 2, 1),
];

/// Naive cofactor determinant over `i128`.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det_i128(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k` = gcd of all `k x k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    (1..=rows.min(cols))
        .map(|k| {
            let mut g: i128 = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect())
                        .collect();
                    g = g.gcd(&det_i128(&minor));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors `d_k / d_(k-1)` over the nonzero determinantal divisors.
pub fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<i128> {
    let d = determinantal_divisors(a);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for dk in d {
        if dk == 0 {
            break;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// Order of `Z^m / (column span)` by enumerating the image of the columns in
/// `(Z/N)^m`, where `N` kills the quotient. `None` if the search space
/// exceeds `cap` or the quotient is infinite.
pub fn brute_force_cokernel_order(a: &[Vec<i64>], cap: u64) -> Option<u64> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let d = determinantal_divisors(a);
    let top = *d.get(m.checked_sub(1)?)?;
    if m > n || top == 0 {
        return None;
    }
    let modulus = top.unsigned_abs() as u64;
    let space = (modulus as u128).checked_pow(m as u32)?;
    if space > cap as u128 {
        return None;
    }
    let gens: Vec<Vec<u64>> = (0..n)
        .map(|c| (0..m).map(|r| a[r][c].rem_euclid(modulus as i64) as u64).collect())
        .collect();
    let start = vec![0u64; m];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(x, y)| (x + y) % modulus).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    Some((space / seen.len() as u128) as u64)
}

pub fn to_bigint_matrix(a: &[Vec<i64>]) -> IntMatrix {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    IntMatrix::from_rows(cols, a)
}

pub fn is_unit(d: &BigInt) -> bool {
    d.abs() == BigInt::from(1)
}

pub fn nonzero(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().filter(|x| !x.is_zero()).cloned().collect()
}
