//! Exhaustive enumeration of `S_{A_n}` for small `n`: every
//! `lambda_{2,n}`-subset of `Lambda_{3,n}` is tested, the points `m_J` are
//! collected with subset counts, and the resulting fan is reconciled with
//! the `eta_k` construction.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{enumerate_omega, j_of_eta};
use crate::etak::{f_k, family_table, verify_with_family};
use crate::exactlinalg::{det_mod_in_place, determinant, BigIntMatrix, FILTER_PRIMES};
use crate::multiindex::{apply_an, binomial, m_of, LatticePoint, MultiIndex};
use crate::nashfan::{
    c_vector_table, is_in_s, minimal_resolution_fan, newton_fan, ord_value, refines, Fan2D, PointCloud, Witness,
};

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_MAX_N: u32 = 3;

const CHUNK: usize = 4096;

/// `C(lambda_{3,n}, lambda_{2,n})`.
pub fn candidate_count(n: u32) -> BigInt {
    let l3 = binomial(u64::from(n) + 3, 3) - 1u32;
    let l2 = binomial(u64::from(n) + 2, 2) - 1u32;
    binomial(l3.to_u64().expect("small"), l2.to_u64().expect("small"))
}

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Run even when `n > DEFAULT_MAX_N`.
    pub override_cost: bool,
    /// Directory for cached results.
    pub cache_dir: Option<PathBuf>,
}

fn check_cost(n: u32, opts: &OracleOptions) -> Result<()> {
    if n == 0 {
        return Err(crate::error::invalid("n must be positive"));
    }
    if n > DEFAULT_MAX_N && !opts.override_cost {
        let size = (binomial(u64::from(n) + 2, 2) - 1u32).to_usize().expect("small");
        return Err(Error::CostRefused {
            n,
            candidates: candidate_count(n).to_string(),
            size,
        });
    }
    Ok(())
}

/// Precomputed rows for the membership test.
struct Table {
    n: u32,
    lambda3: Vec<MultiIndex>,
    rows: Vec<Vec<BigInt>>,
    residues: Vec<Vec<Vec<u64>>>,
    images: Vec<LatticePoint>,
}

impl Table {
    fn new(n: u32) -> Result<Self> {
        let (lambda3, rows): (Vec<_>, Vec<_>) = c_vector_table(n)?.into_iter().unzip();
        let residues = FILTER_PRIMES
            .iter()
            .map(|&p| {
                let pb = BigInt::from(p);
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits"))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let images = lambda3.iter().map(|b| apply_an(n, b)).collect();
        Ok(Self {
            n,
            lambda3,
            rows,
            residues,
            images,
        })
    }

    fn is_member(&self, combo: &[usize]) -> Result<bool> {
        for (pi, &p) in FILTER_PRIMES.iter().enumerate() {
            let mut a: Vec<Vec<u64>> = combo.iter().map(|&i| self.residues[pi][i].clone()).collect();
            if det_mod_in_place(&mut a, p) != 0 {
                return Ok(true);
            }
        }
        let m = BigIntMatrix::from_rows(combo.iter().map(|&i| self.rows[i].clone()).collect())?;
        Ok(!determinant(&m)?.is_zero())
    }

    fn m(&self, combo: &[usize]) -> LatticePoint {
        combo
            .iter()
            .fold(LatticePoint::default(), |acc, &i| acc + self.images[i])
    }
}

/// Advances a `k`-combination of `0..total` in colex order.
fn next_colex(c: &mut [usize], total: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { total };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, x) in c[..i].iter_mut().enumerate() {
                *x = j;
            }
            return true;
        }
    }
    false
}

/// Calls `f(J, m_J)` for every `J in S_{A_n}`; `f` may run on several threads.
/// Returns the number of candidates tested.
pub fn for_each_member(n: u32, opts: &OracleOptions, f: impl Fn(&[MultiIndex], LatticePoint) + Sync) -> Result<u64> {
    check_cost(n, opts)?;
    let table = Table::new(n)?;
    scan(&table, |combo, m| {
        let j: Vec<MultiIndex> = combo.iter().map(|&i| table.lambda3[i]).collect();
        f(&j, m);
    })
}

fn scan(table: &Table, f: impl Fn(&[usize], LatticePoint) + Sync) -> Result<u64> {
    let total = table.lambda3.len();
    let k = table.rows[0].len();
    let mut combo: Vec<usize> = (0..k).collect();
    let mut tested = 0u64;
    let mut more = k <= total;
    while more {
        let mut chunk = Vec::with_capacity(CHUNK);
        while more && chunk.len() < CHUNK {
            chunk.push(combo.clone());
            more = next_colex(&mut combo, total);
        }
        tested += chunk.len() as u64;
        chunk.par_iter().try_for_each(|c| -> Result<()> {
            if table.is_member(c)? {
                f(c, table.m(c));
            }
            Ok(())
        })?;
    }
    Ok(tested)
}

/// The full point set `I_n` with subset counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub n: u32,
    pub candidates: u64,
    pub members: u64,
    pub cloud: PointCloud,
}

#[derive(Serialize, Deserialize)]
struct CachedPoint {
    m: LatticePoint,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: u32,
    version: String,
    candidates: u64,
    members: u64,
    points: Vec<CachedPoint>,
}

pub fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("oracle-n{n}-v{}.json", env!("CARGO_PKG_VERSION")))
}

fn load_cache(path: &Path, n: u32) -> Option<OracleResult> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.n != n || file.version != env!("CARGO_PKG_VERSION") {
        return None;
    }
    let mut cloud = PointCloud::new(n);
    for p in file.points {
        cloud.insert(p.m, Witness::Subsets(p.count));
    }
    Some(OracleResult {
        n,
        candidates: file.candidates,
        members: file.members,
        cloud,
    })
}

fn store_cache(path: &Path, r: &OracleResult) -> Result<()> {
    let points = r
        .cloud
        .points()
        .map(|m| CachedPoint {
            m: *m,
            count: r
                .cloud
                .witnesses(m)
                .iter()
                .map(|w| match w {
                    Witness::Subsets(c) => *c,
                    Witness::Eta(_) => 0,
                })
                .sum(),
        })
        .collect();
    let file = CacheFile {
        n: r.n,
        version: env!("CARGO_PKG_VERSION").to_string(),
        candidates: r.candidates,
        members: r.members,
        points,
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Enumerates `S_{A_n}` (or reads the cache) and returns `I_n`.
pub fn enumerate_s(n: u32, opts: &OracleOptions) -> Result<OracleResult> {
    check_cost(n, opts)?;
    let cache = opts.cache_dir.as_deref().map(|d| cache_path(d, n));
    if let Some(hit) = cache.as_deref().and_then(|p| load_cache(p, n)) {
        return Ok(hit);
    }
    let table = Table::new(n)?;
    let counts = std::sync::Mutex::new(BTreeMap::<LatticePoint, u64>::new());
    let candidates = scan(&table, |_, m| {
        *counts.lock().expect("collector poisoned").entry(m).or_default() += 1;
    })?;
    let counts = counts.into_inner().expect("collector poisoned");
    let members = counts.values().sum();
    let mut cloud = PointCloud::new(n);
    for (m, c) in counts {
        cloud.insert(m, Witness::Subsets(c));
    }
    let result = OracleResult {
        n: table.n,
        candidates,
        members,
        cloud,
    };
    if let Some(p) = cache {
        store_cache(&p, &result)?;
    }
    Ok(result)
}

pub fn oracle_fan(n: u32, opts: &OracleOptions) -> Result<Fan2D> {
    newton_fan(&enumerate_s(n, opts)?.cloud)
}

/// Oracle-side view of one direction `(k, 1-k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionCheck {
    pub k: u32,
    pub ord: i64,
    pub minimizers: Vec<LatticePoint>,
    pub m_k: LatticePoint,
    pub f_m_k: i64,
    pub m_twin: Option<LatticePoint>,
    pub ord_matches: bool,
    pub has_two_minimizers: bool,
    pub contains_m_k: bool,
    pub contains_twin: bool,
    pub ray_in_fan: bool,
}

impl DirectionCheck {
    pub fn passed(&self) -> bool {
        self.ord_matches && self.has_two_minimizers && self.contains_m_k && self.contains_twin && self.ray_in_fan
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: u32,
    pub candidates: u64,
    pub members: u64,
    pub points: usize,
    pub directions: Vec<DirectionCheck>,
    /// Every `m_{J_eta}` occurs in `I_n` and every `J_eta` is in `S_{A_n}`.
    pub family_in_oracle: bool,
    pub refines_minimal_resolution: bool,
    pub fan: Fan2D,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.family_in_oracle && self.refines_minimal_resolution && self.directions.iter().all(DirectionCheck::passed)
    }
}

pub fn cross_check(n: u32, opts: &OracleOptions) -> Result<CrossCheckReport> {
    let oracle = enumerate_s(n, opts)?;
    cross_check_result(&oracle)
}

/// [`cross_check`] on an already computed oracle result.
pub fn cross_check_result(oracle: &OracleResult) -> Result<CrossCheckReport> {
    let n = oracle.n;
    let cloud = &oracle.cloud;
    let fan = newton_fan(cloud)?;
    let family = family_table(n)?;

    let mut directions = Vec::new();
    for k in 1..=n {
        let report = verify_with_family(n, k, &family)?;
        let dir = LatticePoint::new(i64::from(k), 1 - i64::from(k));
        let ord = ord_value(cloud, &dir)?;
        directions.push(DirectionCheck {
            k,
            ord: ord.value,
            f_m_k: f_k(k, &report.m_k),
            m_k: report.m_k,
            m_twin: report.m_twin,
            ord_matches: ord.value == report.f_value,
            has_two_minimizers: ord.minimizers.len() >= 2,
            contains_m_k: ord.minimizers.contains(&report.m_k),
            contains_twin: report.m_twin.is_some_and(|m| ord.minimizers.contains(&m)),
            ray_in_fan: fan.contains_ray(&dir),
            minimizers: ord.minimizers,
        });
    }

    let mut family_in_oracle = true;
    for eta in enumerate_omega(n)? {
        let j = j_of_eta(n, &eta)?;
        if !cloud.contains(&m_of(n, &j)?) || !is_in_s(n, &j)? {
            family_in_oracle = false;
        }
    }

    Ok(CrossCheckReport {
        n,
        candidates: oracle.candidates,
        members: oracle.members,
        points: cloud.len(),
        refines_minimal_resolution: refines(&fan, &minimal_resolution_fan(n)?)?,
        directions,
        family_in_oracle,
        fan,
    })
}
