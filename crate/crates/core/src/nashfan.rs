//! Jacobian-minor matrices `L_J^c`, membership in `S_{A_n}`, the order
//! function of a point set and the fan of its linearity domains on
//! `sigma_n = cone{(0,1), (n+1,-n)}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::eta::{enumerate_omega, j_of_eta, EtaSequence};
use crate::exactlinalg::{determinant, determinant_is_nonzero, BigIntMatrix};
use crate::multiindex::{apply_an, enumerate_lambda, m_of, BarLift, LatticePoint, MultiIndex};

/// `c_beta = sum_{gamma <= beta} (-1)^{|beta - gamma|} C(beta, gamma) bar(A_n gamma)`.
pub fn c_vector(n: u32, beta: &MultiIndex) -> Result<Vec<BigInt>> {
    let lift = BarLift::new(n)?;
    c_vector_with(&lift, beta)
}

pub(crate) fn c_vector_with(lift: &BarLift, beta: &MultiIndex) -> Result<Vec<BigInt>> {
    let n = lift.n();
    if beta.len() != 3 || beta.degree() == 0 || beta.degree() > u64::from(n) {
        return Err(invalid(format!("{beta} is not in Lambda_{{3,{n}}}")));
    }
    let mut acc = vec![BigInt::zero(); lift.dim()];
    for gamma in beta.lower_set() {
        if gamma.degree() == 0 {
            continue;
        }
        let coeff = beta.binom_product(&gamma);
        let coeff = if (beta.degree() - gamma.degree()) % 2 == 1 {
            -coeff
        } else {
            coeff
        };
        let bar = lift.lift_point(&apply_an(n, &gamma))?;
        for (a, b) in acc.iter_mut().zip(bar) {
            *a += &coeff * b;
        }
    }
    Ok(acc)
}

/// `c_beta` for every `beta in Lambda_{3,n}`, in graded-lex order.
pub fn c_vector_table(n: u32) -> Result<Vec<(MultiIndex, Vec<BigInt>)>> {
    let lift = BarLift::new(n)?;
    enumerate_lambda(3, n)?
        .elements
        .into_iter()
        .map(|b| Ok((b, c_vector_with(&lift, &b)?)))
        .collect()
}

fn canonical_j(n: u32, j: &[MultiIndex], expected: usize) -> Result<Vec<MultiIndex>> {
    if j.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: j.len(),
        });
    }
    let mut sorted = j.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("J has repeated elements"));
    }
    if let Some(b) = sorted
        .iter()
        .find(|b| b.len() != 3 || b.degree() == 0 || b.degree() > u64::from(n))
    {
        return Err(invalid(format!("{b} is not in Lambda_{{3,{n}}}")));
    }
    Ok(sorted)
}

/// `L_J^c` with rows `c_beta` for `beta in J`, graded-lex.
pub fn l_matrix(n: u32, j: &[MultiIndex]) -> Result<BigIntMatrix> {
    let lift = BarLift::new(n)?;
    let j = canonical_j(n, j, lift.dim())?;
    let rows = j.iter().map(|b| c_vector_with(&lift, b)).collect::<Result<Vec<_>>>()?;
    BigIntMatrix::from_rows(rows)
}

/// `det L_J^c` (rows in graded-lex order).
pub fn l_determinant(n: u32, j: &[MultiIndex]) -> Result<BigInt> {
    determinant(&l_matrix(n, j)?)
}

/// `J in S_{A_n}`.
pub fn is_in_s(n: u32, j: &[MultiIndex]) -> Result<bool> {
    determinant_is_nonzero(&l_matrix(n, j)?, true)
}

/// The cone `sigma_n` and its dual generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaCone {
    pub n: u32,
}

impl SigmaCone {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("sigma_n needs n >= 1"));
        }
        Ok(Self { n })
    }

    /// `(0,1)` and `(n+1,-n)`.
    pub fn generators(&self) -> [LatticePoint; 2] {
        let n = i64::from(self.n);
        [LatticePoint::new(0, 1), LatticePoint::new(n + 1, -n)]
    }

    /// `(1,0)` and `(n,n+1)`.
    pub fn dual_generators(&self) -> [LatticePoint; 2] {
        let n = i64::from(self.n);
        [LatticePoint::new(1, 0), LatticePoint::new(n, n + 1)]
    }

    pub fn contains(&self, v: &LatticePoint) -> bool {
        self.dual_generators().iter().all(|u| u.dot(v) >= 0)
    }

    pub fn contains_interior(&self, v: &LatticePoint) -> bool {
        self.dual_generators().iter().all(|u| u.dot(v) > 0)
    }
}

/// Angular order inside `sigma_n`, starting at `(0,1)` and turning clockwise.
fn angular_cmp(u: &LatticePoint, w: &LatticePoint) -> Ordering {
    u.cross(w).cmp(&0)
}

/// Where a point of the cloud came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `m = m_{J_eta}`.
    Eta(EtaSequence),
    /// Number of subsets `J in S_{A_n}` with this `m_J`.
    Subsets(u64),
}

/// A deduplicated point set with witnesses per point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointCloud {
    pub n: u32,
    points: BTreeMap<LatticePoint, Vec<Witness>>,
}

#[derive(Serialize, Deserialize)]
struct PointEntry {
    m: LatticePoint,
    witnesses: Vec<Witness>,
}

#[derive(Serialize, Deserialize)]
struct PointCloudRepr {
    n: u32,
    points: Vec<PointEntry>,
}

impl Serialize for PointCloud {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointCloudRepr {
            n: self.n,
            points: self
                .points
                .iter()
                .map(|(m, w)| PointEntry {
                    m: *m,
                    witnesses: w.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointCloud {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PointCloudRepr::deserialize(d)?;
        let mut cloud = PointCloud::new(repr.n);
        for e in repr.points {
            cloud.insert_all(e.m, e.witnesses);
        }
        Ok(cloud)
    }
}

impl PointCloud {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            points: BTreeMap::new(),
        }
    }

    pub fn from_points(n: u32, points: impl IntoIterator<Item = LatticePoint>) -> Self {
        let mut c = Self::new(n);
        for p in points {
            c.insert_all(p, Vec::new());
        }
        c
    }

    /// Adds a witness; subset counts for the same point are summed.
    pub fn insert(&mut self, m: LatticePoint, w: Witness) {
        let list = self.points.entry(m).or_default();
        match w {
            Witness::Subsets(c) => {
                if let Some(Witness::Subsets(old)) = list.iter_mut().find(|x| matches!(x, Witness::Subsets(_))) {
                    *old += c;
                } else {
                    list.push(Witness::Subsets(c));
                }
            }
            eta @ Witness::Eta(_) => {
                if !list.contains(&eta) {
                    list.push(eta);
                }
            }
        }
        list.sort();
    }

    fn insert_all(&mut self, m: LatticePoint, ws: Vec<Witness>) {
        self.points.entry(m).or_default();
        for w in ws {
            self.insert(m, w);
        }
    }

    pub fn merge(&mut self, other: PointCloud) {
        for (m, ws) in other.points {
            self.insert_all(m, ws);
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in increasing `(x, y)` order.
    pub fn points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.keys()
    }

    pub fn contains(&self, m: &LatticePoint) -> bool {
        self.points.contains_key(m)
    }

    pub fn witnesses(&self, m: &LatticePoint) -> &[Witness] {
        self.points.get(m).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Value of the order function and the points attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdValue {
    pub value: i64,
    /// Sorted.
    pub minimizers: Vec<LatticePoint>,
}

/// `min_{m in points} <v, m>` with all minimizers.
pub fn ord_value(points: &PointCloud, v: &LatticePoint) -> Result<OrdValue> {
    let value = points
        .points()
        .map(|p| v.dot(p))
        .min()
        .ok_or_else(|| invalid("order function of an empty point set"))?;
    let minimizers = points.points().filter(|p| v.dot(p) == value).copied().collect();
    Ok(OrdValue { value, minimizers })
}

/// A maximal cone of a [`Fan2D`] between two consecutive rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCone {
    /// Indices into `Fan2D::rays`.
    pub rays: [usize; 2],
    /// The point minimizing `<v, .>` on the interior of the cone.
    pub m: Option<LatticePoint>,
    pub witnesses: Vec<Witness>,
}

/// A subdivision of `sigma_n` by rays ordered clockwise from `(0,1)` to `(n+1,-n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan2D {
    pub n: u32,
    pub rays: Vec<LatticePoint>,
    pub cones: Vec<FanCone>,
    /// The points the fan was computed from, sorted.
    pub points: Vec<LatticePoint>,
}

impl Fan2D {
    /// Fan with the given interior rays and untagged cones.
    pub fn from_interior_rays(n: u32, interior: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let sigma = SigmaCone::new(n)?;
        let [first, last] = sigma.generators();
        let mut rays = vec![first];
        let mut inner: Vec<LatticePoint> = interior.into_iter().map(|r| r.primitive()).collect();
        if let Some(r) = inner.iter().find(|r| !sigma.contains_interior(r)) {
            return Err(invalid(format!("ray {r} is not in the interior of sigma_{n}")));
        }
        inner.sort_by(angular_cmp);
        inner.dedup();
        rays.extend(inner);
        rays.push(last);
        let cones = (0..rays.len() - 1)
            .map(|i| FanCone {
                rays: [i, i + 1],
                m: None,
                witnesses: Vec::new(),
            })
            .collect();
        Ok(Self {
            n,
            rays,
            cones,
            points: Vec::new(),
        })
    }

    pub fn contains_ray(&self, r: &LatticePoint) -> bool {
        let r = r.primitive();
        self.rays.contains(&r)
    }

    /// Checks the structural invariants; returns the violations.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let Ok(sigma) = SigmaCone::new(self.n) else {
            return vec!["n must be positive".into()];
        };
        let [first, last] = sigma.generators();
        if self.rays.first() != Some(&first) || self.rays.last() != Some(&last) {
            bad.push("rays must start at (0,1) and end at (n+1,-n)".into());
        }
        for r in &self.rays {
            if !r.is_primitive() || !sigma.contains(r) {
                bad.push(format!("ray {r} is not a primitive vector of sigma_{}", self.n));
            }
        }
        for w in self.rays.windows(2) {
            if angular_cmp(&w[0], &w[1]) != Ordering::Less {
                bad.push(format!("rays {} and {} are out of order", w[0], w[1]));
            }
        }
        if self.cones.len() + 1 != self.rays.len() {
            bad.push("cone count must be one less than ray count".into());
        }
        for (i, c) in self.cones.iter().enumerate() {
            if c.rays != [i, i + 1] {
                bad.push(format!("cone {i} does not span consecutive rays"));
            }
        }
        for w in self.cones.windows(2) {
            if w[0].m.is_some() && w[0].m == w[1].m {
                bad.push("adjacent cones carry the same tag".into());
            }
        }
        bad
    }
}

/// Convex hull vertices in counter-clockwise order, collinear points dropped.
fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let turn = |o: &LatticePoint, a: &LatticePoint, b: &LatticePoint| (*a - *o).cross(&(*b - *o));
    let mut lower: Vec<LatticePoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// The fan of linearity domains of `v -> ord_value(points, v)` on `sigma_n`.
///
/// Interior rays are the primitive inner normals of hull edges that point
/// into the interior of `sigma_n`; those are exactly the bounded edges of
/// `conv(points) + sigma_n^dual`. Each cone is tagged with its unique
/// minimizer.
pub fn newton_fan(points: &PointCloud) -> Result<Fan2D> {
    if points.is_empty() {
        return Err(invalid("newton fan of an empty point set"));
    }
    let n = points.n;
    let sigma = SigmaCone::new(n)?;
    let pts: Vec<LatticePoint> = points.points().copied().collect();
    let hull = convex_hull(&pts);
    let mut interior = BTreeSet::new();
    if hull.len() >= 2 {
        let edges = if hull.len() == 2 { 2 } else { hull.len() };
        for i in 0..edges {
            let (p, q) = (hull[i], hull[(i + 1) % hull.len()]);
            let e = q - p;
            let normal = LatticePoint::new(-e.y, e.x).primitive();
            if sigma.contains_interior(&normal) {
                interior.insert(normal);
            }
        }
    }
    let mut fan = Fan2D::from_interior_rays(n, interior)?;
    for cone in &mut fan.cones {
        let probe = fan.rays[cone.rays[0]] + fan.rays[cone.rays[1]];
        let ord = ord_value(points, &probe)?;
        let [m] = ord.minimizers[..] else {
            return Err(Error::Internal(format!(
                "cone between {} and {} has {} minimizers",
                fan.rays[cone.rays[0]],
                fan.rays[cone.rays[1]],
                ord.minimizers.len()
            )));
        };
        cone.m = Some(m);
        cone.witnesses = points.witnesses(&m).to_vec();
    }
    fan.points = pts;
    Ok(fan)
}

/// `{ m_{J_eta} : eta in Omega }` with the sequences as witnesses.
pub fn family_points(n: u32) -> Result<PointCloud> {
    let omega = enumerate_omega(n)?;
    let ms = omega
        .par_iter()
        .map(|eta| Ok((m_of(n, &j_of_eta(n, eta)?)?, eta.clone())))
        .collect::<Result<Vec<_>>>()?;
    let mut cloud = PointCloud::new(n);
    for (m, eta) in ms {
        cloud.insert(m, Witness::Eta(eta));
    }
    Ok(cloud)
}

/// `sigma_n` subdivided by `(k, 1-k)` for `k = 1..=n`.
pub fn minimal_resolution_fan(n: u32) -> Result<Fan2D> {
    Fan2D::from_interior_rays(n, (1..=i64::from(n)).map(|k| LatticePoint::new(k, 1 - k)))
}

/// Whether `(k, 1-k)` separates two linearity domains of the order function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayPresence {
    pub k: u32,
    pub direction: LatticePoint,
    pub present: bool,
    pub ord: OrdValue,
    /// Lex-smallest and lex-largest minimizers when `present`.
    pub witnesses: Option<[LatticePoint; 2]>,
}

pub fn ray_present(points: &PointCloud, k: u32) -> Result<RayPresence> {
    if k == 0 || k > points.n {
        return Err(invalid(format!("k = {k} is outside 1..={}", points.n)));
    }
    let direction = LatticePoint::new(i64::from(k), 1 - i64::from(k));
    let ord = ord_value(points, &direction)?;
    let present = ord.minimizers.len() >= 2;
    let witnesses = present.then(|| [ord.minimizers[0], *ord.minimizers.last().expect("nonempty")]);
    Ok(RayPresence {
        k,
        direction,
        present,
        ord,
        witnesses,
    })
}

/// Every ray of `coarse` is a ray of `fine` and every cone of `fine` lies in
/// a cone of `coarse`.
pub fn refines(fine: &Fan2D, coarse: &Fan2D) -> Result<bool> {
    if fine.n != coarse.n {
        return Err(invalid(format!(
            "fans live on different cones (n = {} and n = {})",
            fine.n, coarse.n
        )));
    }
    if !coarse.rays.iter().all(|r| fine.rays.contains(r)) {
        return Ok(false);
    }
    let inside = |c: &FanCone, d: &FanCone| {
        let (a, b) = (&coarse.rays[d.rays[0]], &coarse.rays[d.rays[1]]);
        let (u, w) = (&fine.rays[c.rays[0]], &fine.rays[c.rays[1]]);
        angular_cmp(a, u) != Ordering::Greater && angular_cmp(w, b) != Ordering::Greater
    };
    Ok(fine.cones.iter().all(|c| coarse.cones.iter().any(|d| inside(c, d))))
}
