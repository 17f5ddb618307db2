//! Orbit enumeration on projective points and `(c, d)` measurement.
//!
//! Over GF(3) in dimension ≤ 32 points are bit-packed (`u64` keys) and
//! generators are applied through lookup tables; images are computed in
//! parallel chunks and inserted sequentially, so the discovered order (and
//! every derived number) does not depend on the thread count. Other fields
//! use a plain `Vec<Elem>` engine.

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::field::Elem;
use crate::geometry::{canonical_vectors, PointType, QuadraticSpace, Sign};
use crate::gf3::{PackedMat, MAX_PACKED_DIM, P3};
use crate::groups::MatrixGroup;
use crate::higman::{CdPair, EqVerdicts};
use crate::linalg::{dot, normalize_projective, vec_mat, Mat};

/// Default orbit cap (3·10⁷ points).
pub const DEFAULT_ORBIT_CAP: usize = 30_000_000;
const CHUNK: usize = 1 << 14;

/// Thread pool sized by `RANK3_THREADS` (default: all cores).
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let n = std::env::var("RANK3_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
    })
}

/// Storage for an orbit of projective points.
#[derive(Clone, Debug)]
enum Points {
    Packed { order: Vec<u64>, set: FxHashSet<u64> },
    Generic { order: Vec<Vec<Elem>>, index: FxHashMap<Vec<Elem>, usize> },
}

/// An orbit of projective points in discovery order (the start point first).
#[derive(Clone, Debug)]
pub struct Orbit {
    dim: usize,
    points: Points,
    field: crate::field::FiniteField,
    /// Number of generator images computed.
    pub images: u64,
}

impl Orbit {
    pub fn len(&self) -> usize {
        match &self.points {
            Points::Packed { order, .. } => order.len(),
            Points::Generic { order, .. } => order.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Membership of the point `⟨v⟩`.
    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        normalize_projective(&mut w, &self.field);
        match &self.points {
            Points::Packed { set, .. } => set.contains(&P3::from_coords(&w).key()),
            Points::Generic { index, .. } => index.contains_key(&w),
        }
    }

    /// The `i`-th point (canonical representative).
    pub fn get(&self, i: usize) -> Vec<Elem> {
        match &self.points {
            Points::Packed { order, .. } => P3::from_key(order[i]).to_coords(self.dim),
            Points::Generic { order, .. } => order[i].clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Packed keys, when the packed engine was used.
    pub fn packed_keys(&self) -> Option<&[u64]> {
        match &self.points {
            Points::Packed { order, .. } => Some(order),
            Points::Generic { .. } => None,
        }
    }

    /// `#{⟨y⟩ ∈ orbit : y ≠ x, f(y, x) = 0}` for the form with Gram matrix `gram`.
    pub fn count_perpendicular(&self, gram: &Mat, x: &[Elem]) -> usize {
        let f = &self.field;
        let pol = vec_mat(x, gram, f);
        let mut xc = x.to_vec();
        normalize_projective(&mut xc, f);
        match &self.points {
            Points::Packed { order, .. } => {
                let pp = P3::from_coords(&pol);
                let xk = P3::from_coords(&xc).key();
                pool().install(|| order.par_iter().filter(|&&k| k != xk && P3::from_key(k).dot(pp) == 0).count())
            }
            Points::Generic { order, .. } => order.iter().filter(|y| **y != xc && dot(y, &pol, f) == 0).count(),
        }
    }

    /// Checks closure under every generator for every `step`-th member.
    pub fn is_closed_under(&self, group: &MatrixGroup, step: usize) -> bool {
        let f = group.field();
        (0..self.len()).step_by(step.max(1)).all(|i| {
            let v = self.get(i);
            group.gens().iter().all(|g| self.contains(&vec_mat(&v, g, f)))
        })
    }
}

fn packable(group: &MatrixGroup) -> bool {
    group.field().order() == 3 && group.dim() <= MAX_PACKED_DIM
}

/// Drops identity generators, repeats, and inverses of earlier generators
/// (the orbit of a finite group is closed under the remaining ones).
fn useful_generators(group: &MatrixGroup) -> Vec<Mat> {
    let f = group.field();
    let mut kept: Vec<Mat> = Vec::new();
    for g in group.gens() {
        if g.is_identity() || kept.iter().any(|h| h == g || h.mul(g, f).is_identity()) {
            continue;
        }
        kept.push(g.clone());
    }
    kept
}

/// Orbit of `⟨start⟩` with the default cap.
pub fn orbit(group: &MatrixGroup, start: &[Elem]) -> Result<Orbit, GroupError> {
    orbit_with_cap(group, start, DEFAULT_ORBIT_CAP)
}

pub fn orbit_with_cap(group: &MatrixGroup, start: &[Elem], cap: usize) -> Result<Orbit, GroupError> {
    if start.len() != group.dim() {
        return Err(GroupError::Dimension { group: group.dim(), got: start.len() });
    }
    if start.iter().all(|&x| x == 0) {
        return Err(GroupError::ZeroStart);
    }
    let gens = useful_generators(group);
    if packable(group) {
        packed_orbit(group, &gens, start, cap)
    } else {
        generic_orbit(group, &gens, start, cap)
    }
}

fn packed_orbit(group: &MatrixGroup, gens: &[Mat], start: &[Elem], cap: usize) -> Result<Orbit, GroupError> {
    let tables: Vec<PackedMat> = gens.iter().map(PackedMat::new).collect();
    let s = P3::from_coords(start).canonical().key();
    let mut set: FxHashSet<u64> = FxHashSet::default();
    set.insert(s);
    let mut order = vec![s];
    let mut head = 0;
    let mut images = 0u64;
    let pool = pool();
    while head < order.len() {
        let end = (head + CHUNK).min(order.len());
        let batch = &order[head..end];
        let imgs: Vec<u64> = pool.install(|| {
            batch
                .par_iter()
                .flat_map_iter(|&k| {
                    let v = P3::from_key(k);
                    tables.iter().map(move |t| t.apply(v).canonical().key())
                })
                .collect()
        });
        images += imgs.len() as u64;
        for k in imgs {
            if set.insert(k) {
                if order.len() >= cap {
                    return Err(GroupError::OrbitCap { cap });
                }
                order.push(k);
            }
        }
        head = end;
    }
    Ok(Orbit { dim: group.dim(), points: Points::Packed { order, set }, field: group.field().clone(), images })
}

fn generic_orbit(group: &MatrixGroup, gens: &[Mat], start: &[Elem], cap: usize) -> Result<Orbit, GroupError> {
    let f = group.field();
    let mut s = start.to_vec();
    normalize_projective(&mut s, f);
    let mut index: FxHashMap<Vec<Elem>, usize> = FxHashMap::default();
    index.insert(s.clone(), 0);
    let mut order = vec![s];
    let mut head = 0;
    let mut images = 0u64;
    while head < order.len() {
        for g in gens {
            let mut w = vec_mat(&order[head], g, f);
            normalize_projective(&mut w, f);
            images += 1;
            if !index.contains_key(&w) {
                if order.len() >= cap {
                    return Err(GroupError::OrbitCap { cap });
                }
                index.insert(w.clone(), order.len());
                order.push(w);
            }
        }
        head += 1;
    }
    Ok(Orbit { dim: group.dim(), points: Points::Generic { order, index }, field: f.clone(), images })
}

/// Counters attached to a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OrbitStats {
    pub visited: u64,
    pub images: u64,
    pub seconds: f64,
}

/// Orbit of a base point with its `(c, d)` data and equation verdicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub base: Vec<Elem>,
    /// Type of the base point; `None` in even dimension.
    pub xi: Option<Sign>,
    pub orbit_size: u64,
    pub c: u64,
    pub d: u64,
    /// Present for GF(3) spaces of odd dimension `2m+1 ≥ 5`.
    pub m: Option<u32>,
    pub verdicts: Option<EqVerdicts>,
    pub stats: OrbitStats,
}

impl OrbitReport {
    /// `(c, d)` with the base-point type (odd dimension only).
    pub fn cd(&self) -> Option<CdPair> {
        self.xi.map(|xi| CdPair::new(self.c as i64, self.d as i64, xi))
    }
}

/// Type of a non-singular base point: `Some(sign)` in odd dimension,
/// `None` in even dimension.
pub fn base_type(space: &QuadraticSpace, v: &[Elem]) -> Result<Option<Sign>, GroupError> {
    if v.iter().all(|&x| x == 0) {
        return Err(GroupError::ZeroStart);
    }
    let g = space.q(v);
    if g == 0 {
        return Err(GroupError::SingularBase);
    }
    Ok(space.type_for_norm(g)?.sign())
}

/// `(c, d)` of an already computed orbit through `x`.
pub fn report_for_orbit(
    space: &QuadraticSpace,
    orbit: &Orbit,
    x: &[Elem],
    seconds: f64,
) -> Result<OrbitReport, GroupError> {
    let xi = base_type(space, x)?;
    let d = orbit.count_perpendicular(space.gram(), x) as u64;
    let size = orbit.len() as u64;
    let c = size - 1 - d;
    let n = space.dim();
    let m = (space.field().order() == 3 && n % 2 == 1 && n >= 5).then_some((n / 2) as u32);
    let verdicts = match (m, xi) {
        (Some(m), Some(xi)) => Some(EqVerdicts::compute(m, CdPair::new(c as i64, d as i64, xi)).expect("m ≥ 2")),
        _ => None,
    };
    let mut base = x.to_vec();
    normalize_projective(&mut base, space.field());
    Ok(OrbitReport {
        base,
        xi,
        orbit_size: size,
        c,
        d,
        m,
        verdicts,
        stats: OrbitStats { visited: size, images: orbit.images, seconds },
    })
}

/// Orbit of `⟨start⟩` under a form-preserving group, with `(c, d)`.
pub fn cd_parameters(space: &QuadraticSpace, group: &MatrixGroup, start: &[Elem]) -> Result<OrbitReport, GroupError> {
    cd_parameters_with_cap(space, group, start, DEFAULT_ORBIT_CAP)
}

pub fn cd_parameters_with_cap(
    space: &QuadraticSpace,
    group: &MatrixGroup,
    start: &[Elem],
    cap: usize,
) -> Result<OrbitReport, GroupError> {
    if group.dim() != space.dim() {
        return Err(GroupError::Dimension { group: group.dim(), got: space.dim() });
    }
    base_type(space, start)?;
    let t0 = Instant::now();
    let o = orbit_with_cap(group, start, cap)?;
    report_for_orbit(space, &o, start, t0.elapsed().as_secs_f64())
}

/// Partitions `𝔈_ξ(V)` into orbits, each reported with `(c, d)`, in the order
/// their first point appears in canonical enumeration.
pub fn orbits_on_type(space: &QuadraticSpace, group: &MatrixGroup, xi: Sign) -> Result<Vec<OrbitReport>, GroupError> {
    let f = space.field();
    let want = PointType::from_sign(xi);
    let norm_ok: Vec<bool> =
        f.elements().map(|g| g != 0 && space.type_for_norm(g).map(|t| t == want).unwrap_or(false)).collect();
    let total = {
        let q = f.order() as u64;
        let m = (space.dim() / 2) as u32;
        (q.pow(m) * (q.pow(m) as i64 + xi.as_i64()) as u64 / 2) as usize
    };
    let mut reports = Vec::new();
    let mut covered = 0usize;
    let mut found: Vec<Orbit> = Vec::new();
    for v in canonical_vectors(space.dim(), f) {
        if covered == total {
            break;
        }
        if !norm_ok[space.q(&v) as usize] || found.iter().any(|o| o.contains(&v)) {
            continue;
        }
        let t0 = Instant::now();
        let o = orbit(group, &v)?;
        covered += o.len();
        reports.push(report_for_orbit(space, &o, &v, t0.elapsed().as_secs_f64())?);
        found.push(o);
    }
    Ok(reports)
}

/// Orbit partition of an explicit point list, in list order. Returns the
/// orbit sizes and a representative of each.
pub fn orbit_partition(group: &MatrixGroup, points: &[Vec<Elem>]) -> Result<Vec<(Vec<Elem>, usize)>, GroupError> {
    let mut found: Vec<Orbit> = Vec::new();
    let mut out = Vec::new();
    for v in points {
        if found.iter().any(|o| o.contains(v)) {
            continue;
        }
        let o = orbit(group, v)?;
        out.push((o.get(0), o.len()));
        found.push(o);
    }
    Ok(out)
}
