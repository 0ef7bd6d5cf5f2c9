//! Projection of the lifted space from the flat spanned by a basis, and the
//! pipeline that turns ordinary lines of the projected image into ordinary
//! curves of the original configuration.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{BivariatePolynomial, PlaneCurve};
use crate::determined::{
    curves_from_forms, points_on_curve, polynomial_from_augmented, vanishing_space, DeterminedCurve,
    DeterminedCurveSet,
};
use crate::error::{Error, Result};
use crate::linalg::{dot, rank_of_rows};
use crate::nd::{basis_size, nd_verify};
use crate::point::{rational_to_string, PlanePoint};
use crate::scalar::binom;
use crate::veronese::{lift_all, lifted_dim, monomial_vector, tau, HyperplaneForm};
use crate::{AffineFlat, ExactScalar};

fn normalize(mut v: Vec<ExactScalar>) -> Option<Vec<ExactScalar>> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    for c in v.iter_mut() {
        *c = c.clone() / lead.clone();
    }
    Some(v)
}

fn serialize_coords<S: serde::Serializer>(v: &[ExactScalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(rational_to_string).collect::<Vec<_>>().serialize(s)
}

/// A point of projective space, stored with its first nonzero coordinate
/// equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint {
    #[serde(serialize_with = "serialize_coords")]
    coords: Vec<ExactScalar>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<ExactScalar>) -> Result<Self> {
        normalize(coords)
            .map(|coords| ProjectivePoint { coords })
            .ok_or_else(|| Error::invalid("projective point needs a nonzero coordinate"))
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }
}

/// A line of the projective plane given by `l0 X0 + l1 X1 + l2 X2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectiveLine {
    #[serde(serialize_with = "serialize_coords")]
    coords: Vec<ExactScalar>,
}

impl ProjectiveLine {
    /// The line through two distinct points of the projective plane.
    pub fn through(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<Self> {
        let (a, b) = (p.coords(), q.coords());
        if a.len() != 3 || b.len() != 3 {
            return Err(Error::invalid("lines are defined in the projective plane only"));
        }
        let cross = vec![
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ];
        normalize(cross)
            .map(|coords| ProjectiveLine { coords })
            .ok_or_else(|| Error::invalid("a line needs two distinct points"))
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        dot(&self.coords, p.coords()).is_zero()
    }
}

/// Projection of `Q^N` from a flat `F`: a point `z` outside `F` goes to the
/// values of the equations of `F` at `(1, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperprojectionMap {
    center: AffineFlat,
    forms: Vec<Vec<ExactScalar>>,
}

impl HyperprojectionMap {
    pub fn new(center: AffineFlat) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::invalid("projection center must be nonempty"));
        }
        let forms = center.equations();
        if forms.is_empty() {
            return Err(Error::invalid("projection center must be a proper flat"));
        }
        Ok(HyperprojectionMap { center, forms })
    }

    /// Projection from the flat spanned by the degree-`d` lifts of `b`, which
    /// must have codimension 3.
    pub fn for_basis(b: &[PlanePoint], d: u32) -> Result<Self> {
        let n = lifted_dim(d);
        let center = AffineFlat::span(n, &lift_all(b, d))?;
        if center.dim() != n as isize - 3 {
            return Err(Error::invalid(format!("basis spans a flat of dimension {}, expected {}", center.dim(), n - 3)));
        }
        Self::new(center)
    }

    pub fn center(&self) -> &AffineFlat {
        &self.center
    }

    pub fn forms(&self) -> &[Vec<ExactScalar>] {
        &self.forms
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    fn values(&self, z: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut h = Vec::with_capacity(z.len() + 1);
        h.push(ExactScalar::one());
        h.extend(z.iter().cloned());
        self.forms.iter().map(|f| dot(f, &h)).collect()
    }

    /// The hyperplane through the center whose image is the line `l`.
    pub fn pullback(&self, l: &ProjectiveLine) -> Result<HyperplaneForm> {
        if l.coords().len() != self.forms.len() {
            return Err(Error::DimensionMismatch { expected: self.forms.len(), found: l.coords().len() });
        }
        let mut acc = vec![ExactScalar::zero(); self.center.ambient_dim() + 1];
        for (c, f) in l.coords().iter().zip(&self.forms) {
            for (a, v) in acc.iter_mut().zip(f) {
                *a = a.clone() + c.clone() * v.clone();
            }
        }
        HyperplaneForm::from_augmented(acc)
    }
}

pub fn hyperproject(map: &HyperprojectionMap, z: &[ExactScalar]) -> Result<ProjectivePoint> {
    if map.center.contains(z)? {
        return Err(Error::invalid("point lies in the projection center"));
    }
    ProjectivePoint::new(map.values(z))
}

/// A curve of degree `e` meeting the basis in exactly
/// `C(d+2,2) - C(d-e+2,2) - 1` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCurve {
    pub e: u32,
    pub curve: PlaneCurve,
    /// Indices into the basis of the points on the curve.
    pub section: Vec<usize>,
}

fn catalog_bound(d: u32) -> Option<u128> {
    let exp = 1u32.checked_shl(d + 2)?;
    1u128.checked_shl(exp)
}

/// The exceptional curves of a basis `b` of `a`, for every `e` in `[1, d-1]`.
pub fn exceptional_catalog(a: &[PlanePoint], b: &[PlanePoint], d: u32) -> Result<Vec<ExceptionalCurve>> {
    let verdict = nd_verify(a, b, d)?;
    if !verdict.holds {
        return Err(Error::precondition("B satisfies the basis conditions", format!("{:?}", verdict.failure)));
    }
    let full = binom(d as usize + 2, 2);
    let mut out: Vec<ExceptionalCurve> = Vec::new();
    let mut seen = BTreeSet::new();
    for e in 1..d {
        let k = full - binom((d - e) as usize + 2, 2) - 1;
        let mut per_e = 0u128;
        for s in (0..b.len()).combinations(k) {
            let on: Vec<PlanePoint> = s.iter().map(|&i| b[i].clone()).collect();
            let space = vanishing_space(&on, e);
            if space.len() != 1 || space[0][1..].iter().all(|c| c.is_zero()) {
                continue;
            }
            let p = polynomial_from_augmented(&space[0])?;
            let curve = PlaneCurve::new(p)?;
            let section: Vec<usize> = (0..b.len()).filter(|&i| curve.contains(&b[i])).collect();
            if section != s {
                continue;
            }
            per_e += 1;
            if seen.insert(curve.radical().clone()) {
                out.push(ExceptionalCurve { e, curve, section });
            }
        }
        if catalog_bound(d).is_some_and(|bound| per_e >= bound) {
            return Err(Error::property(
                "fewer than 2^(2^(d+2)) exceptional curves per degree",
                format!("{per_e} curves at e = {e}"),
            ));
        }
    }
    Ok(out)
}

/// The flat spanned by the degree-`d` lifts of `curve ∪ b`, cut out by the
/// products of the curve's radical with the polynomials vanishing on the
/// basis points off the curve.
fn curve_union_flat(curve: &PlaneCurve, b: &[PlanePoint], d: u32) -> Result<AffineFlat> {
    let rad = curve.radical();
    let e = rad.degree().unwrap_or(0);
    let off: Vec<PlanePoint> = b.iter().filter(|p| !curve.contains(p)).cloned().collect();
    let mut eqs = Vec::new();
    for r in vanishing_space(&off, d - e) {
        let r = if r.iter().skip(1).all(|c| c.is_zero()) {
            BivariatePolynomial::constant(r[0].clone())
        } else {
            polynomial_from_augmented(&r)?
        };
        let h = tau(&(rad * &r), d)?;
        eqs.push(h.augmented());
    }
    AffineFlat::from_equations(lifted_dim(d), &eqs)
}

/// An exceptional curve together with the flat of `curve ∪ B` and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedException {
    pub curve: ExceptionalCurve,
    pub flat: AffineFlat,
    pub image: ProjectivePoint,
}

/// A line with no tolerances: chosen so that no projected point lies on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    #[serde(serialize_with = "serialize_coords")]
    pub line_at_infinity: Vec<ExactScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub d_a: usize,
    pub e_a: usize,
    pub s: usize,
    pub t: usize,
    pub delta: usize,
    pub n: usize,
    pub emitted: usize,
    pub lines: usize,
    pub image_collinear: bool,
    /// `d^2 - delta - |D_A|`, which is nonnegative whenever the fiber bound holds.
    pub fiber_slack: i64,
}

#[derive(Clone, Debug)]
pub struct ProjectionPipelineState {
    pub d: u32,
    pub a: Vec<PlanePoint>,
    pub b: Vec<PlanePoint>,
    pub map: HyperprojectionMap,
    pub d_a: Vec<usize>,
    pub exceptional: Vec<ProjectedException>,
    pub e_a: Vec<usize>,
    /// Distinct images of `A \ E_A`, each with its fiber of indices into `A`.
    pub s: Vec<(ProjectivePoint, Vec<usize>)>,
    pub t: Vec<ProjectivePoint>,
    pub delta: usize,
    pub chart: Chart,
}

impl ProjectionPipelineState {
    pub fn n(&self) -> usize {
        2 * self.delta + self.d_a.len()
    }

    pub fn image_points(&self) -> Vec<ProjectivePoint> {
        self.s.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn image_collinear(&self) -> bool {
        let rows: Vec<Vec<ExactScalar>> = self.s.iter().map(|(p, _)| p.coords().to_vec()).collect();
        rank_of_rows(3, &rows) < 3
    }

    pub fn trace(&self, emitted: usize, lines: usize) -> PipelineTrace {
        PipelineTrace {
            d_a: self.d_a.len(),
            e_a: self.e_a.len(),
            s: self.s.len(),
            t: self.t.len(),
            delta: self.delta,
            n: self.n(),
            emitted,
            lines,
            image_collinear: self.image_collinear(),
            fiber_slack: (self.d * self.d) as i64 - self.delta as i64 - self.d_a.len() as i64,
        }
    }
}

fn choose_chart(pts: &[&ProjectivePoint]) -> Result<Chart> {
    let fixed = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]];
    let sweep = (2..).map(|k: i64| [1, k, k * k]);
    for l in fixed.into_iter().chain(sweep).take(pts.len() * 2 + fixed.len() + 1) {
        let l: Vec<ExactScalar> = l.iter().map(|&c| ExactScalar::from_integer(c.into())).collect();
        if pts.iter().all(|p| !dot(&l, p.coords()).is_zero()) {
            return Ok(Chart { line_at_infinity: l });
        }
    }
    Err(Error::property("some chart avoids every projected point", format!("{} points", pts.len())))
}

/// Projects `A` from the flat of a basis `B`, separating the points that land
/// on exceptional images from the rest.
pub fn build_pipeline(a: &[PlanePoint], b: &[PlanePoint], d: u32) -> Result<ProjectionPipelineState> {
    if b.len() != basis_size(d) {
        return Err(Error::invalid(format!("basis must have {} points, found {}", basis_size(d), b.len())));
    }
    let containment = points_on_curve(a, d)?;
    if containment.contained {
        return Err(Error::precondition(
            "A is not contained in any curve of degree at most d",
            format!("configuration lies on a degree-<={d} curve"),
        ));
    }
    let catalog = exceptional_catalog(a, b, d)?;
    let map = HyperprojectionMap::for_basis(b, d)?;
    let lifted = lift_all(a, d);
    let n_amb = lifted_dim(d);
    let d_a: Vec<usize> = (0..a.len()).filter(|&i| map.center.contains(&lifted[i]).expect("lifted dimension")).collect();
    if let Some(p) = b.iter().find(|p| !d_a.iter().any(|&i| &a[i] == *p)) {
        return Err(Error::property("the basis projects into the center", format!("{p} is outside")));
    }

    let mut exceptional = Vec::new();
    for ex in catalog {
        let flat = curve_union_flat(&ex.curve, b, d)?;
        if !map.center.is_subset_of(&flat)? {
            return Err(Error::property("the flat of C ∪ B contains the center", ex.curve.to_string()));
        }
        let base = flat.basepoint().expect("flat contains the basis").to_vec();
        let mut probes = vec![base.clone()];
        for dir in flat.directions() {
            probes.push(base.iter().zip(dir).map(|(x, y)| x.clone() + y.clone()).collect());
        }
        let on_curve = (0..a.len()).filter(|i| !d_a.contains(i) && ex.curve.contains(&a[*i]));
        probes.extend(on_curve.map(|i| lifted[i].clone()));
        let images: BTreeSet<ProjectivePoint> = probes
            .iter()
            .filter(|z| !map.center.contains(z).expect("lifted dimension"))
            .map(|z| hyperproject(&map, z))
            .collect::<Result<_>>()?;
        if images.len() != 1 {
            return Err(Error::property(
                "an exceptional curve projects to a single point",
                format!("{} has {} images", ex.curve, images.len()),
            ));
        }
        let image = images.into_iter().next().expect("one image");
        exceptional.push(ProjectedException { curve: ex, flat, image });
    }

    let e_a: Vec<usize> = (0..a.len())
        .filter(|&i| d_a.contains(&i) || exceptional.iter().any(|x| x.flat.contains(&lifted[i]).expect("lifted dimension")))
        .collect();
    let t: Vec<ProjectivePoint> = exceptional.iter().map(|x| x.image.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut fibers: BTreeMap<ProjectivePoint, Vec<usize>> = BTreeMap::new();
    for i in (0..a.len()).filter(|i| !e_a.contains(i)) {
        let img = hyperproject(&map, &lifted[i])?;
        if t.contains(&img) {
            return Err(Error::property("points off the exceptional set avoid the exceptional images", format!("{}", a[i])));
        }
        fibers.entry(img).or_default().push(i);
    }
    let delta = fibers.values().map(Vec::len).max().unwrap_or(0);
    if delta + d_a.len() > (d * d) as usize {
        return Err(Error::property(
            "fibers satisfy delta + |D_A| <= d^2",
            format!("delta = {delta}, |D_A| = {}", d_a.len()),
        ));
    }
    let s: Vec<(ProjectivePoint, Vec<usize>)> = fibers.into_iter().collect();
    let all: Vec<&ProjectivePoint> = s.iter().map(|(p, _)| p).chain(&t).collect();
    let chart = choose_chart(&all)?;
    debug_assert_eq!(n_amb, map.center.ambient_dim());
    Ok(ProjectionPipelineState { d, a: a.to_vec(), b: b.to_vec(), map, d_a, exceptional, e_a, s, t, delta, chart })
}

/// Lines through exactly two points of `s` and no point of `t`.
pub fn two_point_lines(s: &[ProjectivePoint], t: &[ProjectivePoint]) -> Result<Vec<ProjectiveLine>> {
    let pairs: Vec<(usize, usize)> = (0..s.len()).tuple_combinations().collect();
    let found: BTreeSet<ProjectiveLine> = pairs
        .into_par_iter()
        .map(|(i, j)| ProjectiveLine::through(&s[i], &s[j]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|l| s.iter().filter(|p| l.contains(p)).count() == 2 && !t.iter().any(|p| l.contains(p)))
        .collect();
    Ok(found.into_iter().collect())
}

/// Output of the projection pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct BasisCurves {
    pub curves: DeterminedCurveSet,
    pub lines: Vec<ProjectiveLine>,
    pub trace: PipelineTrace,
}

/// Ordinary curves through `B` obtained by pulling back the ordinary lines of
/// the projected configuration.
pub fn curves_from_basis(a: &[PlanePoint], b: &[PlanePoint], d: u32) -> Result<BasisCurves> {
    let state = build_pipeline(a, b, d)?;
    let n = state.n();
    if state.image_collinear() {
        return Ok(BasisCurves {
            curves: DeterminedCurveSet { d, n: Some(n), curves: Vec::new() },
            lines: Vec::new(),
            trace: state.trace(0, 0),
        });
    }
    let lines = two_point_lines(&state.image_points(), &state.t)?;
    let forms: Vec<HyperplaneForm> = lines.par_iter().map(|l| state.map.pullback(l)).collect::<Result<_>>()?;
    if forms.iter().collect::<BTreeSet<_>>().len() != forms.len() {
        return Err(Error::property("distinct lines pull back to distinct hyperplanes", format!("{} lines", lines.len())));
    }
    let curves: Vec<DeterminedCurve> = curves_from_forms(forms, d, a)?;
    for c in &curves {
        if let Some(p) = b.iter().find(|p| !c.curve.contains(p)) {
            return Err(Error::property("every pulled-back curve contains B", format!("{} misses {p}", c.curve)));
        }
        if c.incidence.len() > n {
            return Err(Error::property(
                "pulled-back curves meet A in at most 2 delta + |D_A| points",
                format!("{} meets A in {} points, n = {n}", c.curve, c.incidence.len()),
            ));
        }
    }
    let trace = state.trace(curves.len(), lines.len());
    Ok(BasisCurves { curves: DeterminedCurveSet { d, n: Some(n), curves }, lines, trace })
}

/// The projected image of a single plane point, if it is off the center.
pub fn project_point(map: &HyperprojectionMap, p: &PlanePoint, d: u32) -> Result<ProjectivePoint> {
    hyperproject(map, &monomial_vector(&p.x, &p.y, d))
}
