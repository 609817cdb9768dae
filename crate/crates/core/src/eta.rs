//! Parity-tagged compositions `eta = (z, d_0 = 0, d_1, ..., d_r)` of `n`,
//! the staircase sets `T_eta` they encode, the diagonally shifted sets
//! `T'_eta`, and the index sets `J_eta` with `A_n J_eta = T'_eta`.
//!
//! Indices mirror the usual notation: `d[0]` is the leading zero, blocks are
//! numbered `1..=r`, base vectors `v_{j,eta}` are numbered `1..=n`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::multiindex::{apply_an, enumerate_lambda, BarLift, LatticePoint, MultiIndex};

/// An element of `Omega`: parity bit `z` plus a composition of `n`, stored
/// with the leading `d_0 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaSequence {
    z: u8,
    d: Vec<u32>,
}

impl EtaSequence {
    /// `d` includes the leading zero.
    pub fn new(z: u8, d: Vec<u32>) -> Result<Self> {
        if z > 1 {
            return Err(invalid(format!("z must be 0 or 1, got {z}")));
        }
        if d.len() < 2 || d[0] != 0 {
            return Err(invalid("eta needs d_0 = 0 followed by at least one part"));
        }
        if d[1..].contains(&0) {
            return Err(invalid("parts d_1..d_r must be positive"));
        }
        Ok(Self { z, d })
    }

    /// Build from the parity bit and the parts `d_1..d_r`.
    pub fn from_parts(z: u8, parts: &[u32]) -> Result<Self> {
        let mut d = Vec::with_capacity(parts.len() + 1);
        d.push(0);
        d.extend_from_slice(parts);
        Self::new(z, d)
    }

    pub fn z(&self) -> u8 {
        self.z
    }

    /// `d_0, d_1, ..., d_r`.
    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn parts(&self) -> &[u32] {
        &self.d[1..]
    }

    /// Number of blocks `r`.
    pub fn r(&self) -> usize {
        self.d.len() - 1
    }

    pub fn n(&self) -> u32 {
        self.d.iter().sum()
    }

    fn check_n(&self, n: u32) -> Result<()> {
        if self.n() != n {
            return Err(invalid(format!("{self} is a composition of {}, not of {n}", self.n())));
        }
        Ok(())
    }

    /// Block `t` and offset `c` with `d_0 + .. + d_{t-1} < j = d_0 + .. + d_{t-1} + c`,
    /// `0 < c <= d_t`.
    pub fn block_of(&self, j: u32) -> (usize, u32) {
        assert!(j >= 1 && j <= self.n(), "index {j} outside 1..={}", self.n());
        let mut prefix = 0;
        for t in 1..self.d.len() {
            if j <= prefix + self.d[t] {
                return (t, j - prefix);
            }
            prefix += self.d[t];
        }
        unreachable!("j <= n")
    }

    /// `sum_{i < t, i odd} d_i`.
    pub fn odd_sum_below(&self, t: usize) -> u32 {
        self.d[..t].iter().skip(1).step_by(2).sum()
    }

    /// `sum_{i < t, i even} d_i`.
    pub fn even_sum_below(&self, t: usize) -> u32 {
        self.d[..t].iter().step_by(2).sum()
    }

    /// The string form `z,d_0,d_1,...,d_r`.
    pub fn to_seq_string(&self) -> String {
        std::iter::once(self.z as u32)
            .chain(self.d.iter().copied())
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for EtaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_seq_string())
    }
}

impl fmt::Debug for EtaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `z,d_0,d_1,...` as well as `z,d_1,...`; a `0` right after `z` can
/// only be `d_0`.
impl FromStr for EtaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let nums = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| invalid(format!("bad sequence entry {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let (&z, rest) = nums.split_first().ok_or_else(|| invalid("empty sequence"))?;
        let z = u8::try_from(z).map_err(|_| invalid(format!("z must be 0 or 1, got {z}")))?;
        match rest.first() {
            Some(0) => Self::new(z, rest.to_vec()),
            _ => Self::from_parts(z, rest),
        }
    }
}

impl Serialize for EtaSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<u32> = std::iter::once(self.z as u32).chain(self.d.iter().copied()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EtaSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        let (&z, rest) = v.split_first().ok_or_else(|| D::Error::custom("empty sequence"))?;
        let z = u8::try_from(z).map_err(D::Error::custom)?;
        EtaSequence::new(z, rest.to_vec()).map_err(D::Error::custom)
    }
}

/// All of `Omega` for `n`: `z = 0` first, then compositions in lex order.
pub fn enumerate_omega(n: u32) -> Result<Vec<EtaSequence>> {
    if n == 0 {
        return Err(invalid("Omega is defined for n >= 1"));
    }
    let mut comps = Vec::new();
    let mut cur = Vec::new();
    compositions(n, &mut cur, &mut comps);
    let mut out = Vec::with_capacity(2 * comps.len());
    for z in 0..=1u8 {
        for c in &comps {
            out.push(EtaSequence::from_parts(z, c)?);
        }
    }
    Ok(out)
}

fn compositions(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for first in 1..=rest {
        cur.push(first);
        compositions(rest - first, cur, out);
        cur.pop();
    }
}

/// `v_{1,eta}, ..., v_{n,eta}`, each on a coordinate axis.
pub fn base_vectors(n: u32, eta: &EtaSequence) -> Result<Vec<MultiIndex>> {
    eta.check_n(n)?;
    Ok((1..=n).map(|j| base_vector(eta, j)).collect())
}

fn base_vector(eta: &EtaSequence, j: u32) -> MultiIndex {
    let (t, c) = eta.block_of(j);
    let odd = t % 2 == 1;
    match (eta.z, odd) {
        (1, true) => MultiIndex::pair(eta.odd_sum_below(t) + c, 0),
        (1, false) => MultiIndex::pair(0, eta.even_sum_below(t) + c),
        (_, true) => MultiIndex::pair(0, eta.odd_sum_below(t) + c),
        (_, false) => MultiIndex::pair(eta.even_sum_below(t) + c, 0),
    }
}

/// `T_eta` split into its diagonal segments `T_{0,eta}, ..., T_{n,eta}`.
#[derive(Clone, Debug, Serialize)]
pub struct StaircaseData {
    pub n: u32,
    pub eta: EtaSequence,
    /// `v_{1,eta}..v_{n,eta}`.
    pub base_vectors: Vec<MultiIndex>,
    /// `segments[j] = T_{j,eta}`; `segments[0]` is the main diagonal.
    pub segments: Vec<Vec<MultiIndex>>,
    #[serde(skip)]
    members: HashSet<MultiIndex>,
}

impl StaircaseData {
    /// Points of `T_eta`, segment by segment.
    pub fn points(&self) -> impl Iterator<Item = &MultiIndex> {
        self.segments.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &MultiIndex) -> bool {
        self.members.contains(v)
    }
}

fn diagonal_segment(start: MultiIndex, len: u32, shift: u32) -> Vec<MultiIndex> {
    (0..len)
        .map(|p| MultiIndex::pair(start.get(0) + p + shift, start.get(1) + p + shift))
        .collect()
}

pub fn staircase(n: u32, eta: &EtaSequence) -> Result<StaircaseData> {
    let base = base_vectors(n, eta)?;
    let mut segments = Vec::with_capacity(n as usize + 1);
    segments.push(diagonal_segment(MultiIndex::pair(1, 1), n, 0));
    for (j, v) in (1..=n).zip(&base) {
        segments.push(diagonal_segment(*v, n - j + 1, 0));
    }
    let members = segments.iter().flatten().copied().collect();
    Ok(StaircaseData {
        n,
        eta: eta.clone(),
        base_vectors: base,
        segments,
        members,
    })
}

/// `T'_eta = T_{0,eta} ∪ ⋃_i (T_{i,eta} + r_{i,eta})` with `r_{i,eta} = n * pi_2(v_{i,eta})`.
#[derive(Clone, Debug, Serialize)]
pub struct TranslatedStaircase {
    pub n: u32,
    pub eta: EtaSequence,
    /// `r_{1,eta}..r_{n,eta}`.
    pub shifts: Vec<u32>,
    /// `segments[0] = T_{0,eta}`, `segments[i] = T_{i,eta} + r_{i,eta}`.
    pub segments: Vec<Vec<MultiIndex>>,
}

impl TranslatedStaircase {
    pub fn points(&self) -> impl Iterator<Item = &MultiIndex> {
        self.segments.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn translated_staircase(n: u32, eta: &EtaSequence) -> Result<TranslatedStaircase> {
    let base = base_vectors(n, eta)?;
    let shifts: Vec<u32> = base.iter().map(|v| n * v.get(1)).collect();
    let mut segments = Vec::with_capacity(n as usize + 1);
    segments.push(diagonal_segment(MultiIndex::pair(1, 1), n, 0));
    for ((j, v), &r) in (1..=n).zip(&base).zip(&shifts) {
        segments.push(diagonal_segment(*v, n - j + 1, r));
    }
    Ok(TranslatedStaircase {
        n,
        eta: eta.clone(),
        shifts,
        segments,
    })
}

/// Preimage in `Lambda_{3,n}` of a point of `T'_eta` under `A_n`.
///
/// `(t,t) -> (0,t,0)`, `(q+s, s) -> (q,s,0)`, `(nq+s, (n+1)q+s) -> (0,s,q)`.
pub fn preimage(n: u32, v: &MultiIndex) -> Result<MultiIndex> {
    let (x, y) = (v.get(0), v.get(1));
    let beta = if x == y {
        MultiIndex::triple(0, x, 0)
    } else if x > y {
        MultiIndex::triple(x - y, y, 0)
    } else {
        let q = y - x;
        let s = x
            .checked_sub(n * q)
            .ok_or_else(|| Error::Internal(format!("{v} has no preimage under A_{n}")))?;
        MultiIndex::triple(0, s, q)
    };
    if beta.degree() == 0 || beta.degree() > u64::from(n) {
        return Err(Error::Internal(format!(
            "preimage {beta} of {v} lies outside Lambda_{{3,{n}}}"
        )));
    }
    if apply_an(n, &beta) != LatticePoint::from(*v) {
        return Err(Error::Internal(format!("A_{n} {beta} != {v}")));
    }
    Ok(beta)
}

/// `J_eta`, sorted graded-lex.
pub fn j_of_eta(n: u32, eta: &EtaSequence) -> Result<Vec<MultiIndex>> {
    let tp = translated_staircase(n, eta)?;
    let mut j = tp.points().map(|v| preimage(n, v)).collect::<Result<Vec<_>>>()?;
    j.sort();
    let before = j.len();
    j.dedup();
    if j.len() != before {
        return Err(Error::Internal(format!("J_eta for {eta} has repeated elements")));
    }
    Ok(j)
}

/// Rows `v-bar` for the given points.
pub fn bar_rows<'a>(lift: &BarLift, points: impl IntoIterator<Item = &'a MultiIndex>) -> Vec<Vec<num_bigint::BigInt>> {
    points.into_iter().map(|v| lift.lift_index(v)).collect()
}

/// Violations of the basic staircase properties: injective lift, segment
/// sizes, axis bounds, coordinate bounds, prefix saturation of the axes and
/// the prefix description of `{v_i}_{i <= j}`. Empty means all hold.
pub fn check_staircase_properties(n: u32, eta: &EtaSequence) -> Result<Vec<String>> {
    let st = staircase(n, eta)?;
    let lift = BarLift::new(n)?;
    let lambda = lift.dim();
    let mut bad = Vec::new();

    // (1) distinct points with coordinates <= 2n^2 have distinct lifts
    let side = 2 * n * n;
    let mut seen = HashSet::new();
    for a in 0..=side {
        for b in 0..=side {
            if !seen.insert(lift.lift(u64::from(a), u64::from(b))) {
                bad.push(format!("bar lift not injective at ({a},{b})"));
            }
        }
    }

    // (2)
    if st.segments[0].len() != n as usize {
        bad.push(format!("|T_0| = {} != {n}", st.segments[0].len()));
    }
    for j in 1..=n as usize {
        if st.segments[j].len() != n as usize - j + 1 {
            bad.push(format!("|T_{j}| = {}", st.segments[j].len()));
        }
    }
    let distinct: HashSet<_> = st.points().collect();
    if st.len() != lambda || distinct.len() != lambda {
        bad.push(format!(
            "|T_eta| = {} (distinct {}) != {lambda}",
            st.len(),
            distinct.len()
        ));
    }
    let lifts: HashSet<_> = st.points().map(|v| lift.lift_index(v)).collect();
    if lifts.len() != lambda {
        bad.push("lifted T_eta has repeats".into());
    }

    for (j, v) in (1..=n).zip(&st.base_vectors) {
        // (3)
        let (x, y) = (v.get(0), v.get(1));
        let on_axis = (x == 0) != (y == 0);
        if !on_axis || x.max(y) > j {
            bad.push(format!("v_{j} = {v} is not an axis vector of height <= {j}"));
        }
        // (5)
        let prefix: HashSet<MultiIndex> = st.base_vectors[..j as usize - 1].iter().copied().collect();
        for q in 1..x.max(y) {
            let w = if x == 0 {
                MultiIndex::pair(0, q)
            } else {
                MultiIndex::pair(q, 0)
            };
            if !prefix.contains(&w) {
                bad.push(format!("v_{j} = {v} but {w} does not occur earlier"));
            }
        }
        // (6)
        let upto: BTreeSet<MultiIndex> = st.base_vectors[..j as usize].iter().copied().collect();
        let (ly, lx) = if x == 0 { (y, j - y) } else { (j - x, x) };
        let expect: BTreeSet<MultiIndex> = (1..=ly)
            .map(|t| MultiIndex::pair(0, t))
            .chain((1..=lx).map(|s| MultiIndex::pair(s, 0)))
            .collect();
        if upto != expect || upto.len() != j as usize {
            bad.push(format!("prefix {{v_1..v_{j}}} is not axis-saturated"));
        }
    }

    // (4)
    for v in st.points() {
        if v.get(0) > n || v.get(1) > n {
            bad.push(format!("{v} in T_eta exceeds {n}"));
        }
    }
    Ok(bad)
}

/// Violations of the monotonicity of diagonal endpoints for same-axis base
/// vectors: for `l < j` on the x-axis, `pi_1(v_j + (n-j)(1,1)) <= pi_1(v_l + (n-l)(1,1))`,
/// with equality exactly when `l` and `j` lie in the same block; likewise on
/// the y-axis with `pi_2`.
pub fn check_endpoint_monotonicity(n: u32, eta: &EtaSequence) -> Result<Vec<String>> {
    let base = base_vectors(n, eta)?;
    let mut bad = Vec::new();
    for l in 1..=n {
        for j in l + 1..=n {
            let (vl, vj) = (base[l as usize - 1], base[j as usize - 1]);
            let axis = if vl.get(1) == 0 && vj.get(1) == 0 {
                0
            } else if vl.get(0) == 0 && vj.get(0) == 0 {
                1
            } else {
                continue;
            };
            let end_l = vl.get(axis) + (n - l);
            let end_j = vj.get(axis) + (n - j);
            let same_block = eta.block_of(l).0 == eta.block_of(j).0;
            if end_j > end_l || (end_j == end_l) != same_block {
                bad.push(format!(
                    "endpoints of v_{l} = {vl} and v_{j} = {vj}: {end_l} vs {end_j} (same block: {same_block})"
                ));
            }
        }
    }
    Ok(bad)
}

/// `|Lambda_{2,n}|` as a `usize`.
pub fn lambda2(n: u32) -> Result<usize> {
    Ok(enumerate_lambda(2, n)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> EtaSequence {
        "1,0,1,1,1,1,2".parse().unwrap()
    }

    fn pairs(v: &[(u32, u32)]) -> Vec<MultiIndex> {
        v.iter().map(|&(a, b)| MultiIndex::pair(a, b)).collect()
    }

    #[test]
    fn omega_enumeration() {
        let o1 = enumerate_omega(1).unwrap();
        assert_eq!(o1.len(), 2);
        assert_eq!(o1[0].to_seq_string(), "0,0,1");
        assert_eq!(o1[1].to_seq_string(), "1,0,1");
        assert_eq!(enumerate_omega(3).unwrap().len(), 8);
        assert!(enumerate_omega(6).unwrap().contains(&worked()));
        assert!(enumerate_omega(0).is_err());
    }

    #[test]
    fn sequence_validation_and_parsing() {
        assert!(EtaSequence::new(2, vec![0, 1]).is_err());
        assert!(EtaSequence::new(1, vec![1, 1]).is_err());
        assert!(EtaSequence::new(1, vec![0, 0, 1]).is_err());
        assert!(EtaSequence::new(1, vec![0]).is_err());
        let a: EtaSequence = "1,1,1,1,1,2".parse().unwrap();
        assert_eq!(a, worked());
        let b: EtaSequence = "(1,0,1,1,1,1,2)".parse().unwrap();
        assert_eq!(b, worked());
        assert_eq!(worked().n(), 6);
        assert_eq!(worked().r(), 5);
        assert!("x,1".parse::<EtaSequence>().is_err());
        let json = serde_json::to_string(&worked()).unwrap();
        assert_eq!(json, "[1,0,1,1,1,1,2]");
        assert_eq!(serde_json::from_str::<EtaSequence>(&json).unwrap(), worked());
    }

    #[test]
    fn worked_example_base_vectors() {
        let base = base_vectors(6, &worked()).unwrap();
        assert_eq!(base, pairs(&[(1, 0), (0, 1), (2, 0), (0, 2), (3, 0), (4, 0)]));
        assert_eq!(base[2], MultiIndex::pair(2, 0));
        let one = EtaSequence::from_parts(0, &[1]).unwrap();
        assert_eq!(base_vectors(1, &one).unwrap(), pairs(&[(0, 1)]));
        assert!(base_vectors(5, &worked()).is_err());
    }

    #[test]
    fn worked_example_staircase() {
        let st = staircase(6, &worked()).unwrap();
        assert_eq!(st.segments[3], pairs(&[(2, 0), (3, 1), (4, 2), (5, 3)]));
        assert_eq!(st.len(), 27);
        assert!(st.contains(&MultiIndex::pair(5, 3)));
        for eta in enumerate_omega(1).unwrap() {
            assert_eq!(staircase(1, &eta).unwrap().segments[0], pairs(&[(1, 1)]));
        }
        let e = EtaSequence::from_parts(1, &[2]).unwrap();
        assert_eq!(staircase(2, &e).unwrap().len(), lambda2(2).unwrap());
    }

    #[test]
    fn worked_example_translation() {
        let tp = translated_staircase(6, &worked()).unwrap();
        assert_eq!(tp.shifts, vec![0, 6, 0, 12, 0, 0]);
        assert_eq!(tp.segments[2], pairs(&[(6, 7), (7, 8), (8, 9), (9, 10), (10, 11)]));
        assert_eq!(tp.segments[4], pairs(&[(12, 14), (13, 15), (14, 16)]));
        assert_eq!(tp.len(), 27);
        let one = EtaSequence::from_parts(0, &[1]).unwrap();
        let t1 = translated_staircase(1, &one).unwrap();
        let got: BTreeSet<_> = t1.points().copied().collect();
        assert_eq!(got, pairs(&[(1, 1), (1, 2)]).into_iter().collect());
    }

    #[test]
    fn j_eta_examples() {
        let a = EtaSequence::from_parts(1, &[1]).unwrap();
        let ja = j_of_eta(1, &a).unwrap();
        assert_eq!(ja, vec![MultiIndex::triple(0, 1, 0), MultiIndex::triple(1, 0, 0)]);
        assert_eq!(crate::multiindex::m_of(1, &ja).unwrap(), LatticePoint::new(2, 1));

        let b = EtaSequence::from_parts(0, &[1]).unwrap();
        let jb = j_of_eta(1, &b).unwrap();
        assert_eq!(jb, vec![MultiIndex::triple(0, 0, 1), MultiIndex::triple(0, 1, 0)]);
        assert_eq!(crate::multiindex::m_of(1, &jb).unwrap(), LatticePoint::new(2, 3));

        assert_eq!(
            preimage(6, &MultiIndex::pair(12, 14)).unwrap(),
            MultiIndex::triple(0, 0, 2)
        );
        let j6 = j_of_eta(6, &worked()).unwrap();
        assert!(j6.contains(&MultiIndex::triple(0, 0, 2)));
        assert_eq!(j6.len(), 27);
    }

    #[test]
    fn preimage_rejects_points_off_the_image() {
        // (1,3) would need s = 1 - 2*2 < 0
        assert!(matches!(preimage(2, &MultiIndex::pair(1, 3)), Err(Error::Internal(_))));
        // degree too large
        assert!(preimage(1, &MultiIndex::pair(2, 2)).is_err());
    }

    #[test]
    fn structural_checks_pass_on_worked_example() {
        assert!(check_staircase_properties(6, &worked()).unwrap().is_empty());
        assert!(check_endpoint_monotonicity(6, &worked()).unwrap().is_empty());
    }
}
