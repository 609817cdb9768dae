//! Exact linear algebra over `Z` for matrices of binomial-sized entries.
//!
//! Determinants use Bareiss fraction-free elimination: every division is
//! exact, so intermediate entries stay minors of the input and never leave
//! the integers. Rank uses the same elimination with column skipping.
//!
//! [`determinant_is_nonzero`] may first reduce modulo a few word-sized
//! primes. A nonzero residue certifies a nonzero determinant; if every
//! residue vanishes the exact elimination decides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Stack row vectors. All rows must have the same length; an empty row
    /// list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::from(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Same matrix with rows taken in the order given by `perm`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: perm.len(),
            });
        }
        let rows = perm.iter().map(|&i| self.row(i).to_vec()).collect();
        let mut m = Self::from_rows(rows)?;
        m.cols = self.cols;
        Ok(m)
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &BigIntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut a = m.to_rows();
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = pivot * &row[j] - &row[k] * &pivot_row[j];
                row[j] = v.div_exact(&prev);
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

trait DivExact {
    fn div_exact(self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(self, d: &BigInt) -> BigInt {
        debug_assert!((&self % d).is_zero(), "Bareiss division must be exact");
        self / d
    }
}

/// Rank over `Q`, by fraction-free row echelon form.
pub fn rank(m: &BigIntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let v = pivot * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v.div_exact(&prev);
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Whether `v` is a rational combination of `basis`.
pub fn in_span(v: &[BigInt], basis: &[Vec<BigInt>]) -> Result<bool> {
    if let Some(b) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            actual: b.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let base = BigIntMatrix::from_rows(basis.to_vec())?;
    let mut with_v = basis.to_vec();
    with_v.push(v.to_vec());
    let ext = BigIntMatrix::from_rows(with_v)?;
    Ok(rank(&base) == rank(&ext))
}

/// Primes just below `2^62`, used by the modular filter.
pub const FILTER_PRIMES: [u64; 3] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
];

/// Determinant modulo a prime `p < 2^63`.
pub fn determinant_mod(m: &BigIntMatrix, p: u64) -> Result<u64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits u64"))
                .collect()
        })
        .collect();
    Ok(det_mod_in_place(&mut a, p))
}

/// Gaussian elimination over `GF(p)`. Consumes the matrix contents.
pub fn det_mod_in_place(a: &mut [Vec<u64>], p: u64) -> u64 {
    let n = a.len();
    let mut det: u64 = 1;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = p - det;
        }
        let pivot = a[k][k];
        det = mul_mod(det, pivot, p);
        let inv = pow_mod(pivot, p - 2, p);
        let (top, bottom) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k..n {
                let sub = mul_mod(f, prow[j], p);
                row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
            }
        }
    }
    det % p
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// `det(m) != 0`, decided exactly.
///
/// With `fast_filter` set, residues modulo [`FILTER_PRIMES`] are tried first;
/// any nonzero residue proves the determinant nonzero. All-zero residues fall
/// through to [`determinant`].
pub fn determinant_is_nonzero(m: &BigIntMatrix, fast_filter: bool) -> Result<bool> {
    if fast_filter {
        for &p in &FILTER_PRIMES {
            if determinant_mod(m, p)? != 0 {
                return Ok(true);
            }
        }
    }
    Ok(!determinant(m)?.is_zero())
}

/// `|det|`, convenient for order-independent comparisons.
pub fn abs_determinant(m: &BigIntMatrix) -> Result<BigInt> {
    determinant(m).map(|d| d.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> BigIntMatrix {
        BigIntMatrix::from_i64_rows(rows).unwrap()
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&m(&[&[1, 0], &[1, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[1, 1], &[1, 2]])).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn pivoting_needed() {
        let a = m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(determinant(&a).unwrap(), BigInt::from(-1));
        let b = m(&[&[0, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        // cofactor expansion along the first row
        let expect = -2 * (4 * 10 - 6 * 7) + 3 * (4 * 8 - 5 * 7);
        assert_eq!(determinant(&b).unwrap(), BigInt::from(expect));
    }

    #[test]
    fn non_square_rejected() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(determinant(&a), Err(Error::NotSquare { .. })));
        assert!(determinant_mod(&a, 7).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&BigIntMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&BigIntMatrix::identity(5)), 5);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0, 0, 1], &[0, 0, 2, 0]])), 2);
    }

    #[test]
    fn span_membership() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert!(in_span(&basis[0], &basis).unwrap());
        assert!(in_span(&v(&[0, 0, 0]), &basis).unwrap());
        assert!(in_span(&v(&[2, 3, 5]), &basis).unwrap());
        assert!(!in_span(&v(&[0, 0, 1]), &basis).unwrap());
        assert!(in_span(&v(&[1, 2]), &basis).is_err());
    }

    #[test]
    fn modular_agrees_with_exact() {
        let a = m(&[&[3, -7, 11], &[5, 2, -1], &[4, 0, 9]]);
        let d = determinant(&a).unwrap();
        for &p in &FILTER_PRIMES {
            let r = d.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            assert_eq!(determinant_mod(&a, p).unwrap(), r);
        }
        assert!(determinant_is_nonzero(&a, true).unwrap());
        let singular = m(&[&[1, 2], &[3, 6]]);
        assert!(!determinant_is_nonzero(&singular, true).unwrap());
        assert!(!determinant_is_nonzero(&singular, false).unwrap());
    }

    #[test]
    fn filter_cannot_fake_a_zero() {
        // det = p, which vanishes modulo the first filter prime only
        let p = FILTER_PRIMES[0] as i64;
        let a = m(&[&[p, 0], &[0, 1]]);
        assert!(determinant_is_nonzero(&a, true).unwrap());
        let q = BigInt::from(FILTER_PRIMES[0]) * BigInt::from(FILTER_PRIMES[1]) * BigInt::from(FILTER_PRIMES[2]);
        let b = BigIntMatrix::from_rows(vec![
            vec![q.clone(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(1)],
        ])
        .unwrap();
        assert!(determinant_is_nonzero(&b, true).unwrap());
    }
}
