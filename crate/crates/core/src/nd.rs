//! Basis families: the flat quantities attached to a candidate basis, the
//! forbidden regions they define, the four-condition membership verifier,
//! and the greedy chain growers that build bases point by point.

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::Carrier;
use crate::determined::{homogenized, points_on_curve, vanishing_space};
use crate::error::{Error, Result};
use crate::linalg::{affine_dim, rank_of_rows};
use crate::point::PlanePoint;
use crate::scalar::binom;
use crate::veronese::{lift_all, lifted_dim, monomial_vector};
use crate::AffineFlat;

fn c2(k: u32) -> i64 {
    binom(k as usize + 2, 2) as i64
}

/// Size `C(d+2,2) - 3` of a basis at degree `d`.
pub fn basis_size(d: u32) -> usize {
    binom(d as usize + 2, 2) - 3
}

/// A candidate basis: indices into the configuration and the points themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCandidate {
    pub d: u32,
    pub indices: Vec<usize>,
    pub points: Vec<PlanePoint>,
}

impl BasisCandidate {
    pub fn from_indices(a: &[PlanePoint], indices: Vec<usize>, d: u32) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= a.len()) {
            return Err(Error::invalid(format!("basis index {i} out of range")));
        }
        if indices.iter().unique().count() != indices.len() {
            return Err(Error::invalid("basis has repeated indices"));
        }
        let points = indices.iter().map(|&i| a[i].clone()).collect();
        Ok(BasisCandidate { d, indices, points })
    }
}

fn lift_flat(pts: &[PlanePoint], e: u32) -> AffineFlat {
    AffineFlat::span(lifted_dim(e), &lift_all(pts, e)).expect("lifts have the lifted dimension")
}

fn in_pullback(flat: &AffineFlat, e: u32, p: &PlanePoint) -> bool {
    flat.contains(&monomial_vector(&p.x, &p.y, e)).expect("lifts have the lifted dimension")
}

/// The quantities attached to a basis `B`, a subset `D` of it and a degree
/// `e` in `[1, d-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdQuantities {
    pub e: u32,
    pub d: u32,
    /// Indices into `B` of the points of `D`.
    pub subset: Vec<usize>,
    #[serde(skip)]
    pub v_e: AffineFlat,
    #[serde(skip)]
    pub w_e: AffineFlat,
    pub dim_v: isize,
    pub dim_w: isize,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: usize,
    pub mu: i64,
    pub tau: i64,
}

impl NdQuantities {
    pub fn guard_value(&self) -> i64 {
        self.mu.max(self.tau)
    }
}

/// Computes the flats `V_e(D)`, `W_e(B, D)` and the integers derived from them.
pub fn nd_quantities(b: &[PlanePoint], subset: &[usize], e: u32, d: u32) -> Result<NdQuantities> {
    if e < 1 || e >= d {
        return Err(Error::invalid(format!("e = {e} must lie in [1, {}]", d.saturating_sub(1))));
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= b.len()) {
        return Err(Error::invalid(format!("subset index {i} out of range")));
    }
    let dpts: Vec<PlanePoint> = subset.iter().map(|&i| b[i].clone()).collect();
    let v_e = lift_flat(&dpts, e);
    let (inside, outside): (Vec<&PlanePoint>, Vec<&PlanePoint>) = b.iter().partition(|p| in_pullback(&v_e, e, p));
    let rest: Vec<PlanePoint> = outside.into_iter().cloned().collect();
    let w_e = lift_flat(&rest, d - e);
    let gamma = inside.len();
    let alpha = c2(e) - 2 - v_e.dim() as i64;
    let beta = c2(d - e) - 3 - w_e.dim() as i64;
    let mu = if alpha < 0 { 0 } else { alpha + gamma as i64 + c2(d - e) };
    let threshold = c2(d) - c2(d - e) - 1;
    let tau = if alpha.min(beta) < 0 || gamma as i64 > threshold {
        0
    } else if gamma as i64 == threshold {
        alpha + beta + b.len() as i64 + 2
    } else {
        alpha + beta + b.len() as i64 + 3
    };
    Ok(NdQuantities { e, d, subset: subset.to_vec(), dim_v: v_e.dim(), dim_w: w_e.dim(), v_e, w_e, alpha, beta, gamma, mu, tau })
}

/// The region `U_e(B, D)`: the pullback of `V_d(B)`, plus the pullback of
/// `V_e(D)` when `alpha >= 0`, plus the pullback of `W_e(B, D)` when also
/// `beta >= 0`.
#[derive(Clone, Debug)]
pub struct ForbiddenRegion {
    parts: Vec<(AffineFlat, u32)>,
}

impl ForbiddenRegion {
    pub fn new(b: &[PlanePoint], q: &NdQuantities) -> Self {
        let mut parts = vec![(lift_flat(b, q.d), q.d)];
        if q.alpha >= 0 {
            parts.push((q.v_e.clone(), q.e));
            if q.beta >= 0 {
                parts.push((q.w_e.clone(), q.d - q.e));
            }
        }
        ForbiddenRegion { parts }
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.parts.iter().any(|(f, deg)| in_pullback(f, *deg, p))
    }
}

pub fn forbidden_region_membership(b: &[PlanePoint], subset: &[usize], e: u32, d: u32, pt: &PlanePoint) -> Result<bool> {
    let q = nd_quantities(b, subset, e, d)?;
    Ok(ForbiddenRegion::new(b, &q).contains(pt))
}

/// First violated basis condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdFailure {
    pub condition: String,
    pub e: Option<u32>,
    /// Indices into `B` of the curve section.
    pub section: Vec<usize>,
    pub measured: i64,
    pub threshold: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdVerdict {
    pub holds: bool,
    pub failure: Option<NdFailure>,
}

/// Whether some curve of degree at most `e` meets `b` exactly in `section`.
pub fn section_is_realizable(b: &[PlanePoint], section: &[usize], e: u32) -> bool {
    let on: Vec<PlanePoint> = section.iter().map(|&i| b[i].clone()).collect();
    let space = vanishing_space(&on, e);
    if space.is_empty() {
        return false;
    }
    (0..b.len()).filter(|i| !section.contains(i)).all(|i| {
        let z = homogenized(&lift_all(std::slice::from_ref(&b[i]), e)).remove(0);
        space.iter().any(|v| !crate::linalg::dot(v, &z).is_zero())
    })
}

fn check_section(b: &[PlanePoint], section: &[usize], e: u32, d: u32) -> Option<NdFailure> {
    if !section_is_realizable(b, section, e) {
        return None;
    }
    let k = section.len() as i64;
    let threshold = c2(d) - c2(d - e);
    let fail = |condition: &str, measured: i64, bound: i64| NdFailure {
        condition: condition.into(),
        e: Some(e),
        section: section.to_vec(),
        measured,
        threshold: bound,
    };
    if k >= threshold {
        return Some(fail("ii", k, threshold));
    }
    let rest: Vec<Vec<_>> = (0..b.len())
        .filter(|i| !section.contains(i))
        .map(|i| monomial_vector(&b[i].x, &b[i].y, d - e))
        .collect();
    let dim = affine_dim(&rest) as i64;
    let target = c2(d - e) - 3;
    if k == threshold - 1 && dim != target {
        return Some(fail("iii", dim, target));
    }
    if k < threshold - 1 && dim <= target {
        return Some(fail("iv", dim, target));
    }
    None
}

/// Checks the four basis conditions for `b` inside `a` at degree `d`.
pub fn nd_verify(a: &[PlanePoint], b: &[PlanePoint], d: u32) -> Result<NdVerdict> {
    if d < 2 {
        return Err(Error::invalid("basis conditions need d >= 2"));
    }
    if b.len() != basis_size(d) {
        return Err(Error::invalid(format!("basis must have {} points, found {}", basis_size(d), b.len())));
    }
    if b.iter().unique().count() != b.len() {
        return Err(Error::invalid("basis has repeated points"));
    }
    if let Some(p) = b.iter().find(|p| !a.contains(p)) {
        return Err(Error::invalid(format!("basis point {p} is not in the configuration")));
    }
    let dim = affine_dim(&lift_all(b, d)) as i64;
    if dim != c2(d) - 4 {
        let failure = NdFailure { condition: "i".into(), e: None, section: Vec::new(), measured: dim, threshold: c2(d) - 4 };
        return Ok(NdVerdict { holds: false, failure: Some(failure) });
    }
    let mut jobs: Vec<(u32, Vec<usize>)> = Vec::new();
    for e in 1..d {
        for k in (0..=b.len()).rev() {
            jobs.extend((0..b.len()).combinations(k).map(|s| (e, s)));
        }
    }
    let failure = jobs.par_iter().find_map_first(|(e, s)| check_section(b, s, *e, d));
    Ok(NdVerdict { holds: failure.is_none(), failure })
}

/// How the grower orders candidate points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CandidateOrder {
    Natural,
    Permutation(Vec<usize>),
    Seeded(u64),
}

impl CandidateOrder {
    fn apply(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            CandidateOrder::Natural => Ok((0..n).collect()),
            CandidateOrder::Permutation(p) => {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(Error::invalid("candidate order is not a permutation of the configuration"));
                }
                Ok(p.clone())
            }
            CandidateOrder::Seeded(seed) => {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                Ok(v)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub step: usize,
    pub basis_size: usize,
    pub active_pairs: usize,
    pub added: Option<usize>,
    pub max_guard: i64,
}

/// A pair `(e, D)` at some chain step where `max(tau, mu) >= C(d+2,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardViolation {
    pub step: usize,
    pub e: u32,
    /// Indices into the configuration of the points of `D`.
    pub subset: Vec<usize>,
    pub tau: i64,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockedStep {
    pub step: usize,
    pub basis_size: usize,
    pub candidates_examined: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub d: u32,
    /// Indices into the configuration, in the order they were added.
    pub chain: Vec<usize>,
    pub basis: Option<BasisCandidate>,
    pub steps: Vec<ChainStep>,
    pub guard_checked_from: usize,
    pub guard_violations: Vec<GuardViolation>,
    pub blocked: Option<BlockedStep>,
    pub verdict: Option<NdVerdict>,
}

impl ChainReport {
    pub fn succeeded(&self) -> bool {
        self.basis.is_some()
    }

    pub fn guard_holds(&self) -> bool {
        self.guard_violations.is_empty()
    }

    pub fn verified(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.holds)
    }
}

struct ActivePair {
    quantities: NdQuantities,
    region: ForbiddenRegion,
}

/// Pairs `(e, D)` whose forbidden region does not swallow the carrier; all
/// pairs when there is no carrier.
fn active_pairs(b: &[PlanePoint], d: u32, probes: Option<&[PlanePoint]>) -> Vec<ActivePair> {
    let jobs: Vec<(u32, Vec<usize>)> = (1..d)
        .flat_map(|e| (0..=b.len()).flat_map(move |k| (0..b.len()).combinations(k).map(move |s| (e, s))))
        .collect();
    jobs.into_par_iter()
        .filter_map(|(e, s)| {
            let quantities = nd_quantities(b, &s, e, d).expect("valid degree range");
            let region = ForbiddenRegion::new(b, &quantities);
            let active = probes.is_none_or(|pts| pts.iter().any(|p| !region.contains(p)));
            active.then_some(ActivePair { quantities, region })
        })
        .collect()
}

/// Grows a basis greedily: each new point is the first candidate, in the
/// given order, outside every active forbidden region of the current set.
///
/// Without a carrier, `b0` must be empty and candidates come from all of
/// `a`. With a carrier `c0` of degree `d - f`, `b0` must have `C(f+2,2)`
/// points off `c0`, lie on no curve of degree at most `f`, and candidates
/// come from `a` on `c0`; a pair `(e, D)` is active when one of `2d^2 + 1`
/// sample points of `c0` avoids its region.
pub fn grow_nd_chain(
    a: &[PlanePoint],
    b0: &[usize],
    c0: Option<&Carrier>,
    d: u32,
    order: &CandidateOrder,
) -> Result<ChainReport> {
    if d < 2 {
        return Err(Error::invalid("basis growth needs d >= 2"));
    }
    if a.iter().unique().count() != a.len() {
        return Err(Error::invalid("configuration has repeated points"));
    }
    if let Some(&i) = b0.iter().find(|&&i| i >= a.len()) {
        return Err(Error::invalid(format!("start index {i} out of range")));
    }
    let order = order.apply(a.len())?;
    let probes: Option<Vec<PlanePoint>> = match c0 {
        None => {
            if !b0.is_empty() {
                return Err(Error::precondition("without a carrier the chain starts from the empty set", "B0 is nonempty"));
            }
            None
        }
        Some(carrier) => {
            let deg = carrier.degree();
            if deg < 1 || deg > d {
                return Err(Error::precondition("carrier degree lies in [1, d]", format!("carrier degree {deg}")));
            }
            let f = d - deg;
            let need = binom(f as usize + 2, 2);
            if b0.len() != need {
                return Err(Error::precondition("|B0| = C(f+2,2) with f = d - deg C0", format!("|B0| = {}, expected {need}", b0.len())));
            }
            if b0.iter().any(|&i| carrier.contains(&a[i])) {
                return Err(Error::precondition("B0 is disjoint from C0", "a start point lies on the carrier"));
            }
            if f >= 1 && points_on_curve(&b0.iter().map(|&i| a[i].clone()).collect::<Vec<_>>(), f)?.contained {
                return Err(Error::precondition("B0 is not contained in any curve of degree at most f", format!("f = {f}")));
            }
            Some(carrier.sample(2 * (d * d) as usize + 1))
        }
    };
    let target = basis_size(d);
    let full = c2(d);
    let guard_from = if c0.is_none() { 1 } else { 0 };
    let mut chain: Vec<usize> = b0.to_vec();
    let mut report = ChainReport {
        d,
        chain: Vec::new(),
        basis: None,
        steps: Vec::new(),
        guard_checked_from: guard_from,
        guard_violations: Vec::new(),
        blocked: None,
        verdict: None,
    };
    let mut step = 0usize;
    loop {
        let current: Vec<PlanePoint> = chain.iter().map(|&i| a[i].clone()).collect();
        let pairs = active_pairs(&current, d, probes.as_deref());
        let max_guard = pairs.iter().map(|p| p.quantities.guard_value()).max().unwrap_or(0);
        if step >= guard_from {
            for p in pairs.iter().filter(|p| p.quantities.guard_value() >= full) {
                report.guard_violations.push(GuardViolation {
                    step,
                    e: p.quantities.e,
                    subset: p.quantities.subset.iter().map(|&j| chain[j]).collect(),
                    tau: p.quantities.tau,
                    mu: p.quantities.mu,
                });
            }
        }
        let mut record = ChainStep { step, basis_size: chain.len(), active_pairs: pairs.len(), added: None, max_guard };
        if chain.len() >= target {
            report.steps.push(record);
            break;
        }
        let pool = order.iter().copied().filter(|&i| !chain.contains(&i)).filter(|&i| c0.is_none_or(|c| c.contains(&a[i])));
        let mut examined = 0;
        let mut chosen = None;
        for i in pool {
            examined += 1;
            if !pairs.iter().any(|p| p.region.contains(&a[i])) {
                chosen = Some(i);
                break;
            }
        }
        match chosen {
            Some(i) => {
                record.added = Some(i);
                report.steps.push(record);
                chain.push(i);
                step += 1;
            }
            None => {
                report.steps.push(record);
                report.blocked = Some(BlockedStep { step: step + 1, basis_size: chain.len(), candidates_examined: examined });
                break;
            }
        }
    }
    report.chain = chain.clone();
    if report.blocked.is_none() {
        let basis = BasisCandidate::from_indices(a, chain, d)?;
        report.verdict = Some(nd_verify(a, &basis.points, d)?);
        report.basis = Some(basis);
    }
    Ok(report)
}

/// Number of `C(e+2,2)`-subsets of `a` lying on no curve of degree at most `e`.
pub fn count_spanning_subsets(a: &[PlanePoint], e: u32) -> Result<usize> {
    if e == 0 {
        return Ok(a.len());
    }
    if points_on_curve(a, e)?.contained {
        return Err(Error::precondition(
            "A is not contained in any curve of degree at most e",
            format!("configuration lies on a degree-<={e} curve"),
        ));
    }
    let k = binom(e as usize + 2, 2);
    let rows = homogenized(&lift_all(a, e));
    let count = (0..a.len())
        .combinations(k)
        .par_bridge()
        .filter(|s| {
            let sub: Vec<_> = s.iter().map(|&i| rows[i].clone()).collect();
            rank_of_rows(k, &sub) == k
        })
        .count();
    if count << (k - 1) < a.len() {
        return Err(Error::property(
            "spanning subsets number at least |A| / 2^(C(e+2,2)-1)",
            format!("{count} spanning subsets for |A| = {}", a.len()),
        ));
    }
    Ok(count)
}
