//! The functionals `f_k = <(k, 1-k), .>`, the greedy sequences `eta_k`
//! minimizing them, the twin sequence with the same value, and instance
//! checks of the inequalities that make `eta_k` minimal.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::eta::{enumerate_omega, j_of_eta, staircase, translated_staircase, EtaSequence};
use crate::multiindex::{apply_an, m_of, LatticePoint, MultiIndex};
use crate::nashfan::is_in_s;

/// `k x + (1 - k) y`.
pub fn f_k(k: u32, v: &LatticePoint) -> i64 {
    let k = i64::from(k);
    k * v.x + (1 - k) * v.y
}

fn f_pair(k: u32, v: &MultiIndex) -> i64 {
    f_k(k, &LatticePoint::from(*v))
}

/// The direction `(k, 1-k)` for `1 <= k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionK {
    pub n: u32,
    pub k: u32,
    pub vector: LatticePoint,
}

impl DirectionK {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(invalid(format!("k = {k} is outside 1..={n}")));
        }
        Ok(Self {
            n,
            k,
            vector: LatticePoint::new(i64::from(k), 1 - i64::from(k)),
        })
    }
}

/// One step of the greedy construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaKStep {
    pub l: usize,
    /// `sum_{j <= l-1, j even} d_j`.
    pub even_sum: u32,
    /// `sum_{j <= l-1, j odd} d_j`.
    pub odd_sum: u32,
    pub t: u64,
    pub s: u32,
    /// `n - sum_{j < l} d_j`.
    pub remaining: u32,
    pub d: u32,
}

/// `eta_k` together with every intermediate value of its construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaKTrace {
    pub n: u32,
    pub k: u32,
    /// `f_k((1,0))`.
    pub f_x: i64,
    /// `f_k((n,n+1))`.
    pub f_diag: i64,
    pub z: u8,
    pub steps: Vec<EtaKStep>,
    pub eta: EtaSequence,
}

pub fn build_eta_k(n: u32, k: u32) -> Result<EtaSequence> {
    Ok(trace_eta_k(n, k)?.eta)
}

pub fn trace_eta_k(n: u32, k: u32) -> Result<EtaKTrace> {
    DirectionK::new(n, k)?;
    // f_k((1,0)) = k and f_k((n,n+1)) = n+1-k, both positive.
    let a = u64::from(k);
    let b = u64::from(n + 1 - k);
    let z: u8 = if a <= b { 1 } else { 0 };
    let mut d = vec![0u32];
    let mut steps = Vec::new();
    let mut total = 0u32;
    while total < n {
        let l = d.len();
        let even_sum: u32 = d.iter().step_by(2).sum();
        let odd_sum: u32 = d.iter().skip(1).step_by(2).sum();
        let odd = l % 2 == 1;
        let (base, num, den) = match (z, odd) {
            (1, true) => (even_sum, b, a),
            (1, false) => (odd_sum, a, b),
            (_, true) => (even_sum, a, b),
            (_, false) => (odd_sum, b, a),
        };
        let t = (u64::from(base) + 1) * num / den;
        let s = match (l, odd) {
            (1, _) => 0,
            (_, true) => odd_sum,
            (_, false) => even_sum,
        };
        let remaining = n - total;
        let gap = t as i64 - i64::from(s);
        if gap <= 0 {
            return Err(Error::Internal(format!(
                "eta_k construction for n={n}, k={k} stalled at block {l} (t={t}, s={s})"
            )));
        }
        let dl = remaining.min(u32::try_from(gap).unwrap_or(u32::MAX));
        steps.push(EtaKStep {
            l,
            even_sum,
            odd_sum,
            t,
            s,
            remaining,
            d: dl,
        });
        d.push(dl);
        total += dl;
    }
    Ok(EtaKTrace {
        n,
        k,
        f_x: k as i64,
        f_diag: i64::from(n + 1 - k),
        z,
        steps,
        eta: EtaSequence::new(z, d)?,
    })
}

/// The split of the last block of `eta_k` into `d_r - 1, 1`.
///
/// `None` for `n = 1`, where `eta_k` has a single part equal to 1 and the
/// split does not exist. For `n >= 2` a last part below 2 is an internal
/// error.
pub fn twin_eta(n: u32, k: u32) -> Result<Option<EtaSequence>> {
    let eta = build_eta_k(n, k)?;
    if n == 1 {
        return Ok(None);
    }
    let parts = eta.parts();
    let last = *parts.last().expect("at least one part");
    if last < 2 {
        return Err(Error::Internal(format!("last part of {eta} is {last}, cannot split")));
    }
    let mut split = parts.to_vec();
    *split.last_mut().expect("nonempty") = last - 1;
    split.push(1);
    Ok(Some(EtaSequence::from_parts(eta.z(), &split)?))
}

/// How the twin sequence was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinSource {
    SplitLastBlock,
    OmegaSearch,
    NotFound,
}

/// Result of checking one direction `(k, 1-k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaKReport {
    pub n: u32,
    pub k: u32,
    pub direction: LatticePoint,
    pub trace: EtaKTrace,
    pub eta_k: EtaSequence,
    pub twin: Option<EtaSequence>,
    pub twin_source: TwinSource,
    pub m_k: LatticePoint,
    pub m_twin: Option<LatticePoint>,
    pub f_value: i64,
    pub f_twin: Option<i64>,
    /// Minimum of `f_k(m_{J_eta})` over all of `Omega`.
    pub family_min_value: i64,
    pub eta_k_in_s: bool,
    pub twin_in_s: bool,
    pub distinct_m: bool,
    pub equal_f: bool,
    pub family_min: bool,
}

impl EtaKReport {
    pub fn passed(&self) -> bool {
        self.eta_k_in_s && self.twin_in_s && self.distinct_m && self.equal_f && self.family_min
    }
}

/// `m_{J_eta}` for every `eta in Omega`, in Omega order.
pub fn family_table(n: u32) -> Result<Vec<(EtaSequence, LatticePoint)>> {
    enumerate_omega(n)?
        .into_par_iter()
        .map(|eta| {
            let m = m_of(n, &j_of_eta(n, &eta)?)?;
            Ok((eta, m))
        })
        .collect()
}

pub fn verify_main(n: u32, k: u32) -> Result<EtaKReport> {
    DirectionK::new(n, k)?;
    verify_with_family(n, k, &family_table(n)?)
}

/// [`verify_main`] for every `k`, sharing one pass over `Omega`.
pub fn verify_all(n: u32) -> Result<Vec<EtaKReport>> {
    DirectionK::new(n, 1)?;
    let family = family_table(n)?;
    (1..=n)
        .into_par_iter()
        .map(|k| verify_with_family(n, k, &family))
        .collect()
}

/// Checks for one `k` given `m_{J_eta}` for all of `Omega`.
pub fn verify_with_family(n: u32, k: u32, family: &[(EtaSequence, LatticePoint)]) -> Result<EtaKReport> {
    let dir = DirectionK::new(n, k)?;
    let trace = trace_eta_k(n, k)?;
    let eta_k = trace.eta.clone();
    let j_k = j_of_eta(n, &eta_k)?;
    let m_k = m_of(n, &j_k)?;
    let f_value = f_k(k, &m_k);

    let (twin, twin_source) = match twin_eta(n, k)? {
        Some(t) => (Some(t), TwinSource::SplitLastBlock),
        None => {
            let found = family
                .iter()
                .find(|(eta, m)| *eta != eta_k && *m != m_k && f_k(k, m) == f_value)
                .map(|(eta, _)| eta.clone());
            let src = if found.is_some() {
                TwinSource::OmegaSearch
            } else {
                TwinSource::NotFound
            };
            (found, src)
        }
    };
    let (m_twin, twin_in_s) = match &twin {
        Some(t) => {
            let j = j_of_eta(n, t)?;
            (Some(m_of(n, &j)?), is_in_s(n, &j)?)
        }
        None => (None, false),
    };
    let f_twin = m_twin.map(|m| f_k(k, &m));
    let family_min_value = family
        .iter()
        .map(|(_, m)| f_k(k, m))
        .min()
        .ok_or_else(|| invalid("empty family"))?;

    Ok(EtaKReport {
        n,
        k,
        direction: dir.vector,
        eta_k_in_s: is_in_s(n, &j_k)?,
        twin_in_s,
        distinct_m: m_twin.is_some_and(|m| m != m_k),
        equal_f: f_twin == Some(f_value),
        family_min: f_value <= family_min_value,
        trace,
        eta_k,
        twin,
        twin_source,
        m_k,
        m_twin,
        f_value,
        f_twin,
        family_min_value,
    })
}

/// `g(i) = f_k(v_i + r_i (1,1))` for `i = 1..=n`.
fn shifted_values(n: u32, k: u32, eta: &EtaSequence) -> Result<Vec<i64>> {
    let tp = translated_staircase(n, eta)?;
    let st = staircase(n, eta)?;
    Ok(st
        .base_vectors
        .iter()
        .zip(&tp.shifts)
        .map(|(v, &r)| f_pair(k, v) + i64::from(r))
        .collect())
}

/// Violations of the block bounds and monotonicity of `g(i) = f_k(v_i + r_i (1,1))`
/// along `eta_k`, plus the shape of the last base vector.
pub fn check_eta_k_properties(n: u32, k: u32) -> Result<Vec<String>> {
    let eta = build_eta_k(n, k)?;
    let g = shifted_values(n, k, &eta)?;
    let d = eta.d();
    let ni = i64::from(n);
    let x_unit = |c: u32| f_k(k, &LatticePoint::new(i64::from(c), 0));
    let diag = |c: u32| f_k(k, &(i64::from(c) * LatticePoint::new(ni, ni + 1)));
    let mut bad = Vec::new();

    // (2)
    for i in 1..=n {
        let (l, _) = eta.block_of(i);
        let even: u32 = d[..=l].iter().step_by(2).sum();
        let odd: u32 = d[..=l].iter().skip(1).step_by(2).sum();
        let bound = match (eta.z(), l % 2 == 1) {
            (1, true) => diag(even + 1),
            (1, false) => x_unit(odd + 1),
            (_, true) => x_unit(even + 1),
            (_, false) => diag(odd + 1),
        };
        if g[i as usize - 1] > bound {
            bad.push(format!("block bound fails at i={i}: {} > {bound}", g[i as usize - 1]));
        }
    }
    for i in 1..n as usize {
        // (3) and (4); (3) is the same-block instance of (4).
        if g[i - 1] > g[i] {
            let same = eta.block_of(i as u32).0 == eta.block_of(i as u32 + 1).0;
            let item = if same { "within a block" } else { "across blocks" };
            bad.push(format!("g not monotone {item} at i={i}: {} > {}", g[i - 1], g[i]));
        }
    }
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            if g[a] > g[b] {
                bad.push(format!("g({}) > g({})", a + 1, b + 1));
            }
        }
    }
    // (5)
    for l in 3..=n as usize {
        if g[l - 1] == g[l - 2] && g[l - 1] < g[l - 3] + 2 {
            bad.push(format!("tie at l={l} without a gap of 2 below"));
        }
    }
    // last base vector
    let last = *staircase(n, &eta)?.base_vectors.last().expect("n >= 1");
    if last != MultiIndex::pair(0, k) && last != MultiIndex::pair(n - k + 1, 0) {
        bad.push(format!("v_n = {last} is neither (0,{k}) nor ({},0)", n - k + 1));
    }
    Ok(bad)
}

/// Violations of the three comparison lemmas on `sample`:
/// monotonicity of `f_k o A_n` under `<=`; `f_k(A_n beta) >= max f_k(T'_{eta_k})`
/// for `beta` whose image is not an upward diagonal shift of a point of
/// `T'_{eta_k}`; and, past the end of each shifted segment, domination of
/// everything before it.
pub fn check_bound_lemmas(n: u32, k: u32, sample: &[MultiIndex]) -> Result<Vec<String>> {
    let eta = build_eta_k(n, k)?;
    let tp = translated_staircase(n, &eta)?;
    let st = staircase(n, &eta)?;
    let mut bad = Vec::new();

    let values: Vec<(MultiIndex, LatticePoint, i64)> = sample
        .iter()
        .map(|b| {
            if b.len() != 3 {
                return Err(invalid(format!("{b} is not in N^3")));
            }
            let p = apply_an(n, b);
            Ok((*b, p, f_k(k, &p)))
        })
        .collect::<Result<_>>()?;

    for (b, _, fb) in &values {
        for (c, _, fc) in &values {
            if c != b && c.leq(b) && fc > fb {
                bad.push(format!("f_k(A {c}) = {fc} > f_k(A {b}) = {fb} although {c} <= {b}"));
            }
        }
    }

    let tp_points: Vec<LatticePoint> = tp.points().map(|v| LatticePoint::from(*v)).collect();
    let max_t = tp_points.iter().map(|v| f_k(k, v)).max().expect("T' is nonempty");
    for (b, p, fb) in &values {
        let shifted = tp_points.iter().any(|v| {
            let w = *p - *v;
            w.x == w.y && w.x >= 0
        });
        if !shifted && *fb < max_t {
            bad.push(format!("f_k(A {b}) = {fb} below max over T' = {max_t}"));
        }
    }

    let mut prefix_max = tp.segments[0]
        .iter()
        .map(|v| f_pair(k, v))
        .max()
        .expect("T_0 is nonempty");
    for l in 1..=n as usize {
        let seg_max = tp.segments[l]
            .iter()
            .map(|v| f_pair(k, v))
            .max()
            .expect("nonempty segment");
        prefix_max = prefix_max.max(seg_max);
        let v = LatticePoint::from(st.base_vectors[l - 1]);
        let q0 = i64::from(n) - l as i64 + 1 + i64::from(tp.shifts[l - 1]);
        for q in q0..=q0 + 2 * i64::from(n) {
            let fv = f_k(k, &(v + q * LatticePoint::new(1, 1)));
            if fv < prefix_max {
                bad.push(format!("v_{l} + {q}(1,1) has f_k = {fv} < {prefix_max}"));
            }
        }
    }
    Ok(bad)
}

/// Intermediate values keyed for reporting: `t_l`, `s_l`, `d_l`.
pub fn trace_table(trace: &EtaKTrace) -> BTreeMap<String, u64> {
    let mut out = BTreeMap::new();
    for s in &trace.steps {
        out.insert(format!("t{}", s.l), s.t);
        out.insert(format!("s{}", s.l), u64::from(s.s));
        out.insert(format!("d{}", s.l), u64::from(s.d));
    }
    out
}
