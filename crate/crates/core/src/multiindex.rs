//! Multi-indices in `N^t`, the sets `Lambda_{t,n}`, binomial products, the
//! bar lift `v -> (C(v, alpha))_{alpha in Lambda_{2,n}}` and the matrix
//! `A_n = [[1, 1, n], [0, 1, n+1]]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Largest supported multi-index length.
pub const MAX_DIM: usize = 3;

/// An element of `N^t` for `1 <= t <= 3`.
///
/// Ordering is graded lexicographic: first by degree `|beta|`, then plain
/// lexicographic on the coordinate tuple. Only indices of equal length are
/// meant to be compared.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    coords: [u32; MAX_DIM],
    len: u8,
}

impl MultiIndex {
    pub fn new(coords: &[u32]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(invalid(format!(
                "multi-index length must be in 1..={MAX_DIM}, got {}",
                coords.len()
            )));
        }
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self {
            coords: c,
            len: coords.len() as u8,
        })
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Self {
            coords: [a, b, 0],
            len: 2,
        }
    }

    pub fn triple(a: u32, b: u32, c: u32) -> Self {
        Self {
            coords: [a, b, c],
            len: 3,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords[..self.len()]
    }

    /// `pi_i`, zero-based.
    pub fn get(&self, i: usize) -> u32 {
        self.coords()[i]
    }

    pub fn degree(&self) -> u64 {
        self.coords().iter().map(|&c| u64::from(c)).sum()
    }

    /// Componentwise `self <= other`.
    ///
    /// Panics on a length mismatch.
    pub fn leq(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "multi-index length mismatch");
        self.coords().iter().zip(other.coords()).all(|(a, b)| a <= b)
    }

    /// `prod_i C(pi_i(self), pi_i(gamma))`.
    pub fn binom_product(&self, gamma: &Self) -> BigInt {
        assert_eq!(self.len, gamma.len, "multi-index length mismatch");
        let mut acc = BigInt::one();
        for (&b, &g) in self.coords().iter().zip(gamma.coords()) {
            if g > b {
                return BigInt::zero();
            }
            acc *= binomial(u64::from(b), u64::from(g));
        }
        acc
    }

    /// `self - other`; must only be called when `other.leq(self)`.
    pub fn sub_dominated(&self, other: &Self) -> Self {
        assert!(other.leq(self), "subtraction underflow: {other} > {self}");
        let mut out = *self;
        for i in 0..self.len() {
            out.coords[i] -= other.coords[i];
        }
        out
    }

    /// All `gamma` with `0 <= gamma <= self`, in graded-lex order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex {
            coords: [0; MAX_DIM],
            len: self.len,
        }];
        for i in 0..self.len() {
            let mut next = Vec::with_capacity(out.len() * (self.coords[i] as usize + 1));
            for g in &out {
                for v in 0..=self.coords[i] {
                    let mut h = *g;
                    h.coords[i] = v;
                    next.push(h);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.coords().cmp(other.coords()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        MultiIndex::new(&v).map_err(D::Error::custom)
    }
}

/// A point of `Z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dot(&self, other: &Self) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(&self, other: &Self) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Divide out the gcd of the coordinates. The zero vector is returned as is.
    pub fn primitive(&self) -> Self {
        let g = num_integer::gcd(self.x, self.y);
        if g == 0 {
            *self
        } else {
            Self::new(self.x / g, self.y / g)
        }
    }

    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(self.x, self.y) == 1
    }

    /// The point as an element of `N^2`, if both coordinates are nonnegative.
    pub fn to_natural(&self) -> Option<MultiIndex> {
        let x = u32::try_from(self.x).ok()?;
        let y = u32::try_from(self.y).ok()?;
        Some(MultiIndex::pair(x, y))
    }
}

impl From<MultiIndex> for LatticePoint {
    fn from(v: MultiIndex) -> Self {
        assert_eq!(v.len(), 2, "only pairs convert to lattice points");
        Self::new(i64::from(v.get(0)), i64::from(v.get(1)))
    }
}

impl Add for LatticePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Self::new(x, y))
    }
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `lambda_{t,n} = C(n+t, n) - 1`.
pub fn lambda_size(t: u32, n: u32) -> BigInt {
    binomial(u64::from(n) + u64::from(t), u64::from(n)) - 1
}

/// `Lambda_{t,n}` in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaSet {
    pub t: u32,
    pub n: u32,
    pub elements: Vec<MultiIndex>,
}

impl LambdaSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, beta: &MultiIndex) -> Option<usize> {
        self.elements.binary_search(beta).ok()
    }

    pub fn contains(&self, beta: &MultiIndex) -> bool {
        self.index_of(beta).is_some()
    }
}

/// All `beta in N^t` with `1 <= |beta| <= n`, graded-lex.
pub fn enumerate_lambda(t: u32, n: u32) -> Result<LambdaSet> {
    if t == 0 || n == 0 {
        return Err(invalid(format!(
            "Lambda_{{t,n}} needs t >= 1 and n >= 1 (t={t}, n={n})"
        )));
    }
    if t as usize > MAX_DIM {
        return Err(invalid(format!("t = {t} exceeds the supported dimension {MAX_DIM}")));
    }
    let mut elements = Vec::new();
    for deg in 1..=n {
        let mut cur = vec![0u32; t as usize];
        compositions_with_zeros(deg, 0, &mut cur, &mut |c| {
            elements.push(MultiIndex::new(c).expect("length checked"))
        });
    }
    elements.sort();
    Ok(LambdaSet { t, n, elements })
}

fn compositions_with_zeros(rest: u32, pos: usize, cur: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        f(cur);
        return;
    }
    for v in 0..=rest {
        cur[pos] = v;
        compositions_with_zeros(rest - v, pos + 1, cur, f);
    }
}

/// Evaluates bar lifts against a fixed `Lambda_{2,n}`.
#[derive(Clone, Debug)]
pub struct BarLift {
    lambda: LambdaSet,
}

impl BarLift {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self {
            lambda: enumerate_lambda(2, n)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.lambda.n
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &LambdaSet {
        &self.lambda
    }

    /// `(C(x, a) * C(y, b))_{(a,b) in Lambda_{2,n}}`.
    pub fn lift(&self, x: u64, y: u64) -> Vec<BigInt> {
        let n = u64::from(self.lambda.n);
        let cx: Vec<BigInt> = (0..=n).map(|a| binomial(x, a)).collect();
        let cy: Vec<BigInt> = (0..=n).map(|b| binomial(y, b)).collect();
        self.lambda
            .elements
            .iter()
            .map(|alpha| &cx[alpha.get(0) as usize] * &cy[alpha.get(1) as usize])
            .collect()
    }

    pub fn lift_index(&self, v: &MultiIndex) -> Vec<BigInt> {
        assert_eq!(v.len(), 2, "bar lift takes a pair");
        self.lift(u64::from(v.get(0)), u64::from(v.get(1)))
    }

    /// Lift of a lattice point with nonnegative coordinates.
    pub fn lift_point(&self, p: &LatticePoint) -> Result<Vec<BigInt>> {
        if p.x < 0 || p.y < 0 {
            return Err(invalid(format!("bar lift needs a point of N^2, got {p}")));
        }
        Ok(self.lift(p.x as u64, p.y as u64))
    }
}

/// `v-bar` for `v in N^2`, indexed by `enumerate_lambda(2, n)`.
pub fn bar_lift(v: &MultiIndex, n: u32) -> Result<Vec<BigInt>> {
    if v.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            actual: v.len(),
        });
    }
    Ok(BarLift::new(n)?.lift_index(v))
}

/// `A_n * beta = (b1 + b2 + n*b3, b2 + (n+1)*b3)`.
pub fn apply_an(n: u32, beta: &MultiIndex) -> LatticePoint {
    assert_eq!(beta.len(), 3, "A_n acts on N^3");
    let n = i64::from(n);
    let [b1, b2, b3] = [0, 1, 2].map(|i| i64::from(beta.get(i)));
    LatticePoint::new(b1 + b2 + n * b3, b2 + (n + 1) * b3)
}

/// `m_J = sum_{beta in J} A_n beta`.
pub fn m_of(n: u32, j: &[MultiIndex]) -> Result<LatticePoint> {
    if j.is_empty() {
        return Err(invalid("m_J is undefined for an empty J"));
    }
    if let Some(b) = j.iter().find(|b| b.len() != 3) {
        return Err(Error::LengthMismatch {
            expected: 3,
            actual: b.len(),
        });
    }
    Ok(j.iter().fold(LatticePoint::default(), |acc, b| acc + apply_an(n, b)))
}
