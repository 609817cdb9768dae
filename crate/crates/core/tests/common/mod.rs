//! A second, deliberately naive implementation of `S_{A_n}` used to
//! cross-check the library: small-integer `c_beta` from nested loops,
//! recursive subset generation and rational Gaussian elimination.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn binom(a: i128, b: i128) -> i128 {
    if b < 0 || b > a {
        return 0;
    }
    let mut r = 1i128;
    for i in 0..b {
        r = r * (a - i) / (i + 1);
    }
    r
}

/// `Lambda_{t,n}` sorted by degree, then lexicographically.
pub fn lambda(t: usize, n: i128) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let mut cur = vec![0i128; t];
    loop {
        let deg: i128 = cur.iter().sum();
        if deg >= 1 && deg <= n {
            out.push(cur.clone());
        }
        let mut i = t;
        loop {
            if i == 0 {
                out.sort_by_key(|v| (v.iter().sum::<i128>(), v.clone()));
                return out;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn an(n: i128, b: &[i128]) -> (i128, i128) {
    (b[0] + b[1] + n * b[2], b[1] + (n + 1) * b[2])
}

pub fn bar(n: i128, x: i128, y: i128) -> Vec<i128> {
    lambda(2, n).iter().map(|a| binom(x, a[0]) * binom(y, a[1])).collect()
}

pub fn c_vec(n: i128, b: &[i128]) -> Vec<i128> {
    let dim = lambda(2, n).len();
    let mut acc = vec![0i128; dim];
    for g0 in 0..=b[0] {
        for g1 in 0..=b[1] {
            for g2 in 0..=b[2] {
                let gap = (b[0] - g0) + (b[1] - g1) + (b[2] - g2);
                let sign = if gap % 2 == 0 { 1 } else { -1 };
                let coeff = sign * binom(b[0], g0) * binom(b[1], g1) * binom(b[2], g2);
                let (x, y) = an(n, &[g0, g1, g2]);
                for (s, v) in acc.iter_mut().zip(bar(n, x, y)) {
                    *s += coeff * v;
                }
            }
        }
    }
    acc
}

pub fn rational_rank_full(rows: &[Vec<i128>]) -> bool {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, p);
        let inv = BigRational::one() / m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * &inv;
            for c in col..n {
                let sub = f.clone() * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    true
}

fn subsets(k: usize, start: usize, total: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..total {
        if total - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(k, i + 1, total, cur, f);
        cur.pop();
    }
}

pub struct NaiveOracle {
    pub candidates: u64,
    pub members: u64,
    /// `m_J -> number of J`.
    pub points: BTreeMap<(i64, i64), u64>,
}

pub fn naive_oracle(n: i128) -> NaiveOracle {
    let l3 = lambda(3, n);
    let k = lambda(2, n).len();
    let cs: Vec<Vec<i128>> = l3.iter().map(|b| c_vec(n, b)).collect();
    let imgs: Vec<(i128, i128)> = l3.iter().map(|b| an(n, b)).collect();
    let mut out = NaiveOracle {
        candidates: 0,
        members: 0,
        points: BTreeMap::new(),
    };
    subsets(k, 0, l3.len(), &mut Vec::new(), &mut |s| {
        out.candidates += 1;
        let rows: Vec<Vec<i128>> = s.iter().map(|&i| cs[i].clone()).collect();
        if rational_rank_full(&rows) {
            out.members += 1;
            let m = s
                .iter()
                .fold((0i128, 0i128), |a, &i| (a.0 + imgs[i].0, a.1 + imgs[i].1));
            *out.points.entry((m.0 as i64, m.1 as i64)).or_default() += 1;
        }
    });
    out
}

/// `min <v, m>` and its minimizers over a point map.
pub fn naive_ord(points: &BTreeMap<(i64, i64), u64>, v: (i64, i64)) -> (i64, Vec<(i64, i64)>) {
    let val = points.keys().map(|p| v.0 * p.0 + v.1 * p.1).min().expect("nonempty");
    let mins = points
        .keys()
        .filter(|p| v.0 * p.0 + v.1 * p.1 == val)
        .copied()
        .collect();
    (val, mins)
}
