//! Instance checks of the binomial identities and span lemmas behind the
//! staircase bases, plus seeded sweeps that collect them into certificates.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::eta::{enumerate_omega, staircase, EtaSequence};
use crate::exactlinalg::{determinant, rank, BigIntMatrix};
use crate::multiindex::{binomial, BarLift};

/// `C(a, b)` for integer `a` and `b`: zero for `b < 0`, and
/// `(-1)^b C(b - a - 1, b)` for negative `a`.
pub fn gbinom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a >= 0 {
        return binomial(a as u64, b as u64);
    }
    let v = binomial((b - a - 1) as u64, b as u64);
    if b % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The four product/convolution identities for one triple:
///
/// 1. `C(n,m) C(m,p) = C(n,p) C(n-p,m-p)`
/// 2. `sum_j (-1)^j C(n-j,m) C(p,j) = C(n-p,m-p)`, and `= C(n-p,n-m)` when `p <= n`
/// 3. `sum_j C(n,m-j) C(p,j) = C(n+p,m)`
/// 4. `sum_j C(n-p,m-j) C(p,j) = C(n,m)`
///
/// Binomials with negative arguments follow [`gbinom`].
pub fn check_riordan(n: u64, m: u64, p: u64) -> bool {
    let (n, m, p) = (n as i64, m as i64, p as i64);
    let c = gbinom;
    let one = c(n, m) * c(m, p) == c(n, p) * c(n - p, m - p);

    let s2: BigInt = (0..=p)
        .map(|j| {
            let t = c(n - j, m) * c(p, j);
            if j % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum();
    let two = s2 == c(n - p, m - p) && (p > n || c(n - p, m - p) == c(n - p, n - m));

    let three = (0..=p).map(|j| c(n, m - j) * c(p, j)).sum::<BigInt>() == c(n + p, m);
    let four = (0..=p).map(|j| c(n - p, m - j) * c(p, j)).sum::<BigInt>() == c(n, m);
    one && two && three && four
}

/// `det (C(c_i, j))_{0 <= i,j <= l} != 0` for `0 < c_0 < ... < c_l`.
pub fn check_vandermonde_matrix(c: &[u64]) -> Result<bool> {
    if c.is_empty() || c[0] == 0 || c.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("need 0 < c_0 < c_1 < ... < c_l"));
    }
    let l = c.len() as u64;
    let rows = c.iter().map(|&ci| (0..l).map(|j| binomial(ci, j)).collect()).collect();
    Ok(!determinant(&BigIntMatrix::from_rows(rows)?)?.is_zero())
}

/// `bar(m,m) = sum_{j=1}^n C(m,j) w_j` with `w_j = sum_{i=1}^j (-1)^{j-i} C(j,i) bar(i,i)`.
pub fn check_diagonal_span(n: u32, m: u64) -> Result<bool> {
    let lift = BarLift::new(n)?;
    let diag: Vec<Vec<BigInt>> = (1..=u64::from(n)).map(|i| lift.lift(i, i)).collect();
    let mut rhs = vec![BigInt::zero(); lift.dim()];
    for j in 1..=u64::from(n) {
        let cm = binomial(m, j);
        if cm.is_zero() {
            continue;
        }
        for i in 1..=j {
            let coeff = &cm * binomial(j, i);
            let coeff = if (j - i) % 2 == 1 { -coeff } else { coeff };
            for (acc, x) in rhs.iter_mut().zip(&diag[i as usize - 1]) {
                *acc += &coeff * x;
            }
        }
    }
    Ok(rhs == lift.lift(m, m))
}

/// `sum_{i=0}^l (-1)^i C(l,i) sum_{j=0}^{n-l+1} (-1)^{n-l+1+j} C(n-l+1,j) bar(a+r+j, r+i+j) = 0`,
/// or the same with the two coordinates of every lifted point swapped.
pub fn check_vanishing_sum(n: u32, a: u64, r: u64, l: u32, transposed: bool) -> Result<bool> {
    if l == 0 || l > n {
        return Err(invalid(format!("l = {l} is outside 1..={n}")));
    }
    let lift = BarLift::new(n)?;
    let (l, h) = (u64::from(l), u64::from(n - l + 1));
    let mut acc = vec![BigInt::zero(); lift.dim()];
    for i in 0..=l {
        for j in 0..=h {
            let coeff = binomial(l, i) * binomial(h, j);
            let negative = (i + h + j) % 2 == 1;
            let (x, y) = (a + r + j, r + i + j);
            let bar = if transposed { lift.lift(y, x) } else { lift.lift(x, y) };
            for (s, b) in acc.iter_mut().zip(bar) {
                if negative {
                    *s -= &coeff * b;
                } else {
                    *s += &coeff * b;
                }
            }
        }
    }
    Ok(acc.iter().all(Zero::is_zero))
}

/// Whether shifting `T_{1,eta}, ..., T_{l,eta}` along the diagonal by
/// `shifts` preserves the span of the lifted points of `T_0 ∪ ... ∪ T_l`.
pub fn check_translation_span(n: u32, eta: &EtaSequence, l: u32, shifts: &[u32]) -> Result<bool> {
    if l == 0 || l > n {
        return Err(invalid(format!("l = {l} is outside 1..={n}")));
    }
    if shifts.len() != l as usize {
        return Err(Error::LengthMismatch {
            expected: l as usize,
            actual: shifts.len(),
        });
    }
    let st = staircase(n, eta)?;
    let lift = BarLift::new(n)?;
    let plain: Vec<Vec<BigInt>> = st.segments[..=l as usize]
        .iter()
        .flatten()
        .map(|v| lift.lift_index(v))
        .collect();
    let mut moved: Vec<Vec<BigInt>> = st.segments[0].iter().map(|v| lift.lift_index(v)).collect();
    for (seg, &s) in st.segments[1..=l as usize].iter().zip(shifts) {
        let s = u64::from(s);
        moved.extend(
            seg.iter()
                .map(|v| lift.lift(u64::from(v.get(0)) + s, u64::from(v.get(1)) + s)),
        );
    }
    let r_plain = rank(&BigIntMatrix::from_rows(plain.clone())?);
    let r_moved = rank(&BigIntMatrix::from_rows(moved.clone())?);
    let mut both = plain;
    both.extend(moved);
    let r_both = rank(&BigIntMatrix::from_rows(both)?);
    Ok(r_plain == r_moved && r_moved == r_both)
}

/// Bounds for [`run_sweeps`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    /// `n, m, p <= riordan_max`.
    pub riordan_max: u64,
    /// `c ⊆ {1..=vandermonde_max_value}`.
    pub vandermonde_max_value: u64,
    pub vandermonde_max_len: usize,
    /// `n <= diagonal_max_n`, `m <= 3n`.
    pub diagonal_max_n: u32,
    pub vanishing_max_n: u32,
    pub vanishing_max_a: u64,
    pub vanishing_max_r: u64,
    pub translation_max_n: u32,
    /// Random shift vectors per `(eta, l)`; entries are drawn from `0..=3n`.
    pub translation_samples: u32,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            riordan_max: 12,
            vandermonde_max_value: 10,
            vandermonde_max_len: 5,
            diagonal_max_n: 5,
            vanishing_max_n: 5,
            vanishing_max_a: 4,
            vanishing_max_r: 4,
            translation_max_n: 4,
            translation_samples: 3,
            seed: DEFAULT_SEED,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCertificate {
    pub config: SweepConfig,
    pub suites: Vec<SuiteResult>,
}

impl IdentityCertificate {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

fn suite<T: Send + Sync + std::fmt::Debug>(
    name: &str,
    cases: Vec<T>,
    check: impl Fn(&T) -> Result<bool> + Sync,
) -> SuiteResult {
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|c| match check(c) {
            Ok(true) => None,
            Ok(false) => Some(format!("{c:?}")),
            Err(e) => Some(format!("{c:?}: {e}")),
        })
        .collect();
    SuiteResult {
        name: name.to_string(),
        checked: cases.len() as u64,
        failures,
    }
}

fn increasing_subsets(max: u64, max_len: usize) -> Vec<Vec<u64>> {
    fn go(start: u64, max: u64, max_len: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for x in start..=max {
            cur.push(x);
            go(x + 1, max, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max, max_len, &mut Vec::new(), &mut out);
    out
}

pub fn riordan_suite(cfg: &SweepConfig) -> SuiteResult {
    let b = cfg.riordan_max;
    let cases: Vec<(u64, u64, u64)> = (0..=b)
        .flat_map(|n| (0..=b).flat_map(move |m| (0..=b).map(move |p| (n, m, p))))
        .collect();
    suite("riordan", cases, |&(n, m, p)| Ok(check_riordan(n, m, p)))
}

pub fn vandermonde_suite(cfg: &SweepConfig) -> SuiteResult {
    let cases = increasing_subsets(cfg.vandermonde_max_value, cfg.vandermonde_max_len);
    suite("binomial_vandermonde", cases, |c| check_vandermonde_matrix(c))
}

pub fn diagonal_suite(cfg: &SweepConfig) -> SuiteResult {
    let cases: Vec<(u32, u64)> = (1..=cfg.diagonal_max_n)
        .flat_map(|n| (0..=3 * u64::from(n)).map(move |m| (n, m)))
        .collect();
    suite("diagonal_span", cases, |&(n, m)| check_diagonal_span(n, m))
}

pub fn vanishing_suite(cfg: &SweepConfig) -> SuiteResult {
    let mut cases = Vec::new();
    for n in 1..=cfg.vanishing_max_n {
        for l in 1..=n {
            for a in 0..=cfg.vanishing_max_a {
                for r in 0..=cfg.vanishing_max_r {
                    for t in [false, true] {
                        cases.push((n, a, r, l, t));
                    }
                }
            }
        }
    }
    suite("vanishing_sum", cases, |&(n, a, r, l, t)| {
        check_vanishing_sum(n, a, r, l, t)
    })
}

pub fn translation_suite(cfg: &SweepConfig) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cases = Vec::new();
    for n in 1..=cfg.translation_max_n {
        for eta in enumerate_omega(n)? {
            for l in 1..=n {
                cases.push((n, eta.clone(), l, vec![0; l as usize]));
                for _ in 0..cfg.translation_samples {
                    let shifts = (0..l).map(|_| rng.gen_range(0..=3 * n)).collect();
                    cases.push((n, eta.clone(), l, shifts));
                }
            }
        }
    }
    Ok(suite("translation_span", cases, |(n, eta, l, s)| {
        check_translation_span(*n, eta, *l, s)
    }))
}

pub fn run_sweeps(cfg: &SweepConfig) -> Result<IdentityCertificate> {
    Ok(IdentityCertificate {
        config: cfg.clone(),
        suites: vec![
            riordan_suite(cfg),
            vandermonde_suite(cfg),
            diagonal_suite(cfg),
            vanishing_suite(cfg),
            translation_suite(cfg)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(gbinom(5, 2), BigInt::from(10));
        assert_eq!(gbinom(2, 5), BigInt::zero());
        assert_eq!(gbinom(-1, 3), BigInt::from(-1));
        assert_eq!(gbinom(-2, 2), BigInt::from(3));
        assert_eq!(gbinom(3, -1), BigInt::zero());
    }

    #[test]
    fn riordan_examples() {
        assert!(check_riordan(5, 3, 2));
        assert!(check_riordan(0, 0, 0));
        assert!(check_riordan(4, 2, 3));
    }

    #[test]
    fn vandermonde_examples() {
        assert!(check_vandermonde_matrix(&[1, 2]).unwrap());
        assert!(check_vandermonde_matrix(&[1, 2, 3]).unwrap());
        assert!(check_vandermonde_matrix(&[2, 5, 9, 14]).unwrap());
        assert!(check_vandermonde_matrix(&[2, 2]).is_err());
        assert!(check_vandermonde_matrix(&[0, 2]).is_err());
        assert!(check_vandermonde_matrix(&[]).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert!(check_diagonal_span(3, 2).unwrap());
        assert!(check_diagonal_span(1, 1).unwrap());
        assert!(check_diagonal_span(4, 9).unwrap());
    }

    #[test]
    fn vanishing_examples() {
        assert!(check_vanishing_sum(2, 1, 0, 1, false).unwrap());
        assert!(check_vanishing_sum(3, 0, 2, 2, false).unwrap());
        assert!(check_vanishing_sum(3, 2, 1, 3, true).unwrap());
        assert!(check_vanishing_sum(3, 2, 1, 0, true).is_err());
        assert!(check_vanishing_sum(3, 2, 1, 4, true).is_err());
    }

    #[test]
    fn vanishing_sum_needs_the_full_difference() {
        // One fewer difference in j leaves a nonzero vector.
        let lift = BarLift::new(2).unwrap();
        let mut acc = vec![BigInt::zero(); lift.dim()];
        for i in 0..=1u64 {
            for j in 0..=1u64 {
                let sign = if (i + j) % 2 == 1 { -1 } else { 1 };
                let coeff = BigInt::from(sign) * binomial(1, i) * binomial(1, j);
                for (s, b) in acc.iter_mut().zip(lift.lift(1 + j, i + j)) {
                    *s += &coeff * b;
                }
            }
        }
        assert!(acc.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn translation_examples() {
        let e2: EtaSequence = "1,0,2".parse().unwrap();
        assert!(check_translation_span(2, &e2, 1, &[0]).unwrap());
        assert!(check_translation_span(2, &e2, 1, &[3]).unwrap());
        let e3: EtaSequence = "1,0,1,2".parse().unwrap();
        assert!(check_translation_span(3, &e3, 2, &[2, 5]).unwrap());
        assert!(check_translation_span(3, &e3, 2, &[2]).is_err());
    }

    #[test]
    fn subsets_enumeration() {
        let s = increasing_subsets(3, 2);
        assert_eq!(s, vec![vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]);
    }
}
