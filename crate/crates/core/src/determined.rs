//! Point configurations, the curves they determine, ordinary curves,
//! curve richness and regularity.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bipoly::{BivariatePolynomial, PlaneCurve};
use crate::error::{Error, Result};
use crate::linalg::nullspace_of_rows;
use crate::point::PlanePoint;
use crate::veronese::{lift_all, lifted_dim, tau_inverse, HyperplaneForm};
use crate::ExactScalar;

/// A finite set of distinct plane points with their degree-`d` lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<PlanePoint>,
    d: u32,
    lifted: Vec<Vec<ExactScalar>>,
}

/// On-disk form `{"d": 2, "points": [["0","0"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub d: u32,
    pub points: Vec<PlanePoint>,
}

impl PointConfiguration {
    pub fn new(points: Vec<PlanePoint>, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::invalid(format!("duplicate point {p}")));
            }
        }
        let lifted = lift_all(&points, d);
        Ok(PointConfiguration { points, d, lifted })
    }

    pub fn from_file(file: ConfigurationFile) -> Result<Self> {
        Self::new(file.points, file.d)
    }

    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile { d: self.d, points: self.points.clone() }
    }

    pub fn with_degree(&self, d: u32) -> Result<Self> {
        Self::new(self.points.clone(), d)
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lifted(&self) -> &[Vec<ExactScalar>] {
        &self.lifted
    }

    pub fn index_of(&self, p: &PlanePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn subset(&self, indices: &[usize]) -> Vec<PlanePoint> {
        indices.iter().map(|&i| self.points[i].clone()).collect()
    }
}

/// Rows `(1, z)` for each lifted point `z`.
pub(crate) fn homogenized(lifted: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    lifted
        .iter()
        .map(|z| {
            let mut r = Vec::with_capacity(z.len() + 1);
            r.push(ExactScalar::one());
            r.extend(z.iter().cloned());
            r
        })
        .collect()
}

/// Basis of the polynomials of degree at most `e` vanishing on `pts`, as
/// coefficient vectors `(constant, lifted coordinates...)`.
pub fn vanishing_space(pts: &[PlanePoint], e: u32) -> Vec<Vec<ExactScalar>> {
    let rows = homogenized(&lift_all(pts, e));
    nullspace_of_rows(lifted_dim(e) + 1, &rows)
}

pub(crate) fn polynomial_from_augmented(v: &[ExactScalar]) -> Result<BivariatePolynomial> {
    HyperplaneForm::from_augmented(v.to_vec())?.polynomial()
}

/// Result of testing whether a point set lies on a curve of degree at most `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveContainment {
    pub contained: bool,
    pub witness: Option<BivariatePolynomial>,
}

pub fn contained_in_curve(a: &PointConfiguration, e: u32) -> Result<CurveContainment> {
    points_on_curve(a.points(), e)
}

pub fn points_on_curve(pts: &[PlanePoint], e: u32) -> Result<CurveContainment> {
    if e == 0 {
        return Err(Error::invalid("curve degree must be at least 1"));
    }
    let witness = vanishing_space(pts, e)
        .into_iter()
        .find(|v| v[1..].iter().any(|c| !c.is_zero()))
        .map(|v| polynomial_from_augmented(&v).map(|p| p.canonical()))
        .transpose()?;
    Ok(CurveContainment { contained: witness.is_some(), witness })
}

/// All hyperplanes spanned by `size`-subsets of `lifted` (each a point of
/// `Q^dim`), keyed by their normalized form.
pub fn spanned_hyperplanes(lifted: &[Vec<ExactScalar>], dim: usize) -> BTreeSet<HyperplaneForm> {
    let rows = homogenized(lifted);
    (0..rows.len())
        .combinations(dim)
        .par_bridge()
        .filter_map(|combo| {
            let sub: Vec<Vec<ExactScalar>> = combo.iter().map(|&i| rows[i].clone()).collect();
            let ns = nullspace_of_rows(dim + 1, &sub);
            if ns.len() == 1 {
                HyperplaneForm::from_augmented(ns.into_iter().next().expect("one vector")).ok()
            } else {
                None
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// A determined curve with the indices of the points of `A` on it and the
/// spanned hyperplanes that pull back to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminedCurve {
    pub curve: PlaneCurve,
    pub incidence: Vec<usize>,
    pub hyperplanes: Vec<HyperplaneForm>,
}

#[derive(Serialize)]
struct CurveRecord<'a> {
    polynomial: &'a BivariatePolynomial,
    incidence: &'a [usize],
    hyperplane_count: usize,
}

impl Serialize for DeterminedCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRecord {
            polynomial: self.curve.radical(),
            incidence: &self.incidence,
            hyperplane_count: self.hyperplanes.len(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminedCurveSet {
    pub d: u32,
    pub n: Option<usize>,
    pub curves: Vec<DeterminedCurve>,
}

impl DeterminedCurveSet {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn radicals(&self) -> BTreeSet<BivariatePolynomial> {
        self.curves.iter().map(|c| c.curve.radical().clone()).collect()
    }

    pub fn contains_curve(&self, c: &PlaneCurve) -> bool {
        self.curves.iter().any(|k| &k.curve == c)
    }
}

pub(crate) fn incidence_of(curve: &PlaneCurve, pts: &[PlanePoint]) -> Vec<usize> {
    pts.iter().enumerate().filter(|(_, p)| curve.contains(p)).map(|(i, _)| i).collect()
}

/// Groups hyperplane forms by the radical of their curves, keeping the order
/// of first appearance.
pub(crate) fn curves_from_forms<I>(forms: I, d: u32, pts: &[PlanePoint]) -> Result<Vec<DeterminedCurve>>
where
    I: IntoIterator<Item = HyperplaneForm>,
{
    let mut out: Vec<DeterminedCurve> = Vec::new();
    let mut by_radical: HashMap<BivariatePolynomial, usize> = HashMap::new();
    for h in forms {
        let curve = tau_inverse(&h, d)?;
        match by_radical.get(curve.radical()) {
            Some(&i) => out[i].hyperplanes.push(h),
            None => {
                by_radical.insert(curve.radical().clone(), out.len());
                let incidence = incidence_of(&curve, pts);
                out.push(DeterminedCurve { curve, incidence, hyperplanes: vec![h] });
            }
        }
    }
    let cap = (d as usize).pow(d);
    for c in &out {
        if c.hyperplanes.len() > cap {
            return Err(Error::property(
                "at most d^d hyperplanes per curve",
                format!("{} has {} hyperplanes, bound {cap}", c.curve, c.hyperplanes.len()),
            ));
        }
    }
    Ok(out)
}

/// Every curve of degree `d` determined by `A`, obtained from the
/// hyperplanes spanned by the lifted points.
pub fn enumerate_determined(a: &PointConfiguration) -> Result<DeterminedCurveSet> {
    let d = a.d();
    let containment = contained_in_curve(a, d)?;
    if containment.contained {
        return Err(Error::precondition(
            "A is not contained in any curve of degree at most d",
            format!(
                "configuration lies on a degree-<={d} curve: {}",
                containment.witness.map(|w| w.to_string()).unwrap_or_default()
            ),
        ));
    }
    let n = lifted_dim(d);
    let forms = spanned_hyperplanes(a.lifted(), n);
    let curves = curves_from_forms(forms, d, a.points())?;
    for c in &curves {
        if c.incidence.len() < n {
            return Err(Error::property(
                "determined curves meet A in at least C(d+2,2)-1 points",
                format!("{} meets A in {} points", c.curve, c.incidence.len()),
            ));
        }
    }
    Ok(DeterminedCurveSet { d, n: None, curves })
}

/// Determined curves meeting `A` in at most `n` points.
pub fn ordinary_curves(a: &PointConfiguration, n: usize) -> Result<DeterminedCurveSet> {
    if n < lifted_dim(a.d()) {
        return Ok(DeterminedCurveSet { d: a.d(), n: Some(n), curves: Vec::new() });
    }
    let mut set = enumerate_determined(a)?;
    set.curves.retain(|c| c.incidence.len() <= n);
    set.n = Some(n);
    Ok(set)
}

/// Largest number of points of `A` on a single curve of degree at most `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Richness {
    pub size: usize,
    pub witness: Vec<usize>,
}

pub fn max_curve_richness(a: &PointConfiguration, e: u32) -> Result<Richness> {
    if points_on_curve(a.points(), e)?.contained {
        return Ok(Richness { size: a.len(), witness: (0..a.len()).collect() });
    }
    let forms = spanned_hyperplanes(&lift_all(a.points(), e), lifted_dim(e));
    let mut best = Richness { size: 0, witness: Vec::new() };
    for h in forms {
        let curve = tau_inverse(&h, e)?;
        let inc = incidence_of(&curve, a.points());
        if inc.len() > best.size {
            best = Richness { size: inc.len(), witness: inc };
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: ExactScalar,
    #[serde(serialize_with = "ser_rational")]
    pub threshold: ExactScalar,
    pub witness: Vec<usize>,
}

fn ser_rational<S: serde::Serializer>(q: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `1 / 2^(2^(3d+8))`, the regularity threshold used when none is given.
pub fn default_regularity_threshold(d: u32) -> ExactScalar {
    let exponent = 1usize << (3 * d as usize + 8);
    ExactScalar::new(BigInt::one(), BigInt::one() << exponent)
}

/// Compares the largest fraction of `A` on one curve of degree at most `d`
/// against `threshold`.
pub fn regularity_report(a: &PointConfiguration, d: u32, threshold: Option<ExactScalar>) -> Result<RegularityReport> {
    let threshold = threshold.unwrap_or_else(|| default_regularity_threshold(d));
    if threshold <= ExactScalar::zero() {
        return Err(Error::invalid("regularity threshold must be positive"));
    }
    if a.is_empty() {
        return Err(Error::invalid("regularity of an empty configuration"));
    }
    let r = max_curve_richness(a, d)?;
    let ratio = ExactScalar::new(BigInt::from(r.size), BigInt::from(a.len()));
    Ok(RegularityReport { is_regular: ratio <= threshold, ratio, threshold, witness: r.witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::points;
    use crate::scalar::frac;

    fn cfg(c: &[(i64, i64)], d: u32) -> PointConfiguration {
        PointConfiguration::new(points(c), d).unwrap()
    }

    /// Lines through pairs of points, deduplicated, by direct cross products.
    fn pair_lines(c: &[(i64, i64)]) -> BTreeSet<BivariatePolynomial> {
        let mut out = BTreeSet::new();
        for (i, p) in c.iter().enumerate() {
            for q in &c[i + 1..] {
                let a = q.1 - p.1;
                let b = p.0 - q.0;
                let k = -(a * p.0 + b * p.1);
                out.insert(BivariatePolynomial::line(crate::scalar::rat(a), crate::scalar::rat(b), crate::scalar::rat(k)).canonical());
            }
        }
        out
    }

    const SQUARE: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];
    const THREE_ON_AXIS: [(i64, i64); 4] = [(0, 0), (1, 0), (2, 0), (0, 1)];

    #[test]
    fn rejects_duplicates() {
        assert!(PointConfiguration::new(points(&[(0, 0), (0, 0)]), 1).is_err());
    }

    #[test]
    fn containment_examples() {
        let c = contained_in_curve(&cfg(&[(0, 0), (1, 1), (2, 2)], 1), 1).unwrap();
        assert!(c.contained);
        assert_eq!(c.witness.unwrap(), "y - x".parse().unwrap());
        assert!(!contained_in_curve(&cfg(&SQUARE, 1), 1).unwrap().contained);
        assert!(contained_in_curve(&cfg(&[(0, 0), (5, 1), (2, 7), (3, 3), (1, 9)], 2), 2).unwrap().contained);
    }

    #[test]
    fn determined_lines_of_square() {
        let set = enumerate_determined(&cfg(&SQUARE, 1)).unwrap();
        assert_eq!(set.len(), 6);
        assert!(set.curves.iter().all(|c| c.incidence.len() == 2));
        assert_eq!(set.radicals(), pair_lines(&SQUARE));
    }

    #[test]
    fn determined_lines_with_three_collinear() {
        let set = enumerate_determined(&cfg(&THREE_ON_AXIS, 1)).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(set.curves.iter().filter(|c| c.incidence.len() == 3).count(), 1);
        assert_eq!(set.radicals(), pair_lines(&THREE_ON_AXIS));
        assert!(enumerate_determined(&cfg(&[(0, 0), (1, 1), (2, 2)], 1)).is_err());
    }

    #[test]
    fn ordinary_examples() {
        assert_eq!(ordinary_curves(&cfg(&SQUARE, 1), 2).unwrap().len(), 6);
        assert_eq!(ordinary_curves(&cfg(&THREE_ON_AXIS, 1), 2).unwrap().len(), 3);
        assert!(ordinary_curves(&cfg(&SQUARE, 2), 4).unwrap().is_empty());
    }

    #[test]
    fn richness_examples() {
        assert_eq!(max_curve_richness(&cfg(&SQUARE, 1), 1).unwrap().size, 2);
        let r = max_curve_richness(&cfg(&THREE_ON_AXIS, 1), 1).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(r.witness, vec![0, 1, 2]);
        assert_eq!(max_curve_richness(&cfg(&[(0, 0), (3, 1)], 1), 1).unwrap().size, 2);
    }

    #[test]
    fn regularity_examples() {
        let r = regularity_report(&cfg(&SQUARE, 1), 1, None).unwrap();
        assert!(!r.is_regular);
        let r = regularity_report(&cfg(&SQUARE, 1), 1, Some(frac(3, 4))).unwrap();
        assert!(r.is_regular);
        assert_eq!(r.ratio, frac(1, 2));
        let r = regularity_report(&cfg(&THREE_ON_AXIS, 1), 1, Some(frac(1, 2))).unwrap();
        assert!(!r.is_regular);
        assert_eq!(r.ratio, frac(3, 4));
    }

    #[test]
    fn conics_through_six_points() {
        let a = cfg(&[(0, 0), (1, 0), (0, 1), (2, 3), (3, 1), (-1, 2)], 2);
        let set = enumerate_determined(&a).unwrap();
        assert_eq!(set.len(), 6);
        assert!(set.curves.iter().all(|c| c.incidence.len() == 5));
    }
}
