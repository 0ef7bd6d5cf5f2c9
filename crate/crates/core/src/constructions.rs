//! Generators for extremal configurations and for seeded test inputs.
//!
//! Every generator is deterministic in its seed and returns the points
//! together with a provenance block listing the checks that were run on the
//! output.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::carrier::Carrier;
use crate::determined::{
    homogenized, ordinary_curves, points_on_curve, ConfigurationFile, DeterminedCurveSet, PointConfiguration,
};
use crate::error::{Error, Result};
use crate::linalg::rank_of_rows;
use crate::point::PlanePoint;
use crate::scalar::binom;
use crate::veronese::{lift_all, lifted_dim, monomial_vector};
use crate::{AffineFlat, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeKind {
    LineHeavy,
    CarrierGeneral,
    RandomGeneral,
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub kind: RecipeKind,
    pub d: u32,
    pub n: Option<usize>,
    pub m: usize,
    pub carrier: Option<Carrier>,
    pub seed: u64,
}

/// A named check run on a generated configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Certificate {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), holds, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub recipe: ConstructionRecipe,
    pub seed: u64,
    pub certificates: Vec<Certificate>,
}

/// A generated configuration, with the indices of its distinguished parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub configuration: PointConfiguration,
    /// Points on the carrier curve or line.
    pub on_carrier: Vec<usize>,
    /// Points off the carrier.
    pub off_carrier: Vec<usize>,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct ConstructionFile<'a> {
    d: u32,
    points: &'a [PlanePoint],
    provenance: &'a Provenance,
}

impl Serialize for Construction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConstructionFile { d: self.configuration.d(), points: self.configuration.points(), provenance: &self.provenance }
            .serialize(s)
    }
}

impl Construction {
    pub fn points(&self) -> &[PlanePoint] {
        self.configuration.points()
    }

    pub fn to_file(&self) -> ConfigurationFile {
        self.configuration.to_file()
    }

    pub fn certified(&self) -> bool {
        self.provenance.certificates.iter().all(|c| c.holds)
    }
}

fn random_int(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    rng.gen_range(-r..=r)
}

/// Incidence bound `(3d^2 - 3d + 4) / 2` of the line-heavy construction.
pub fn line_heavy_incidence(d: u32) -> usize {
    let d = d as usize;
    (3 * d * d - 3 * d + 4) / 2
}

/// `C(d+1,2)` points off a line `L` on no curve of degree `d - 1`, plus
/// `m - C(d+1,2)` points on `L`.
///
/// The line is `y = 0`; off-line points are resampled until the rank
/// certificate holds.
pub fn construct_line_heavy(d: u32, m: usize, seed: u64) -> Result<Construction> {
    if d < 2 {
        return Err(Error::precondition("d > 1", format!("d = {d}")));
    }
    let du = d as usize;
    let lower = (3 * du * du - 3 * du + 4).max(du * du + 4 * du);
    if 2 * m <= lower {
        return Err(Error::precondition(
            "m > max((3d^2-3d+4)/2, (d^2+4d)/2)",
            format!("m = {m}, bound = {}/2", lower),
        ));
    }
    let k = binom(du + 1, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = 3 * k as i64 + 3;
    let mut attempts = 0;
    let off = loop {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::invalid("rejection budget exhausted for off-line points"));
        }
        let mut pts: BTreeSet<PlanePoint> = BTreeSet::new();
        while pts.len() < k {
            let y = random_int(&mut rng, range);
            if y != 0 {
                pts.insert(PlanePoint::int(random_int(&mut rng, range), y));
            }
        }
        let pts: Vec<PlanePoint> = pts.into_iter().collect();
        if !points_on_curve(&pts, d - 1)?.contained {
            break pts;
        }
    };
    let mut xs: BTreeSet<i64> = BTreeSet::new();
    let line_range = 2 * m as i64 + 2;
    while xs.len() < m - k {
        xs.insert(random_int(&mut rng, line_range));
    }
    let mut pts = off;
    pts.extend(xs.into_iter().map(|x| PlanePoint::int(x, 0)));
    let configuration = PointConfiguration::new(pts, d)?;
    let on_carrier: Vec<usize> = (k..m).collect();
    let off_carrier: Vec<usize> = (0..k).collect();
    let not_contained = !points_on_curve(configuration.points(), d)?.contained;
    let certificates = vec![
        Certificate::new("off-line points on no curve of degree d-1", true, format!("{attempts} sample(s)")),
        Certificate::new("A on no curve of degree <= d", not_contained, ""),
    ];
    let recipe = ConstructionRecipe { kind: RecipeKind::LineHeavy, d, n: None, m, carrier: None, seed };
    Ok(Construction { configuration, on_carrier, off_carrier, provenance: Provenance { recipe, seed, certificates } })
}

/// `m - 1` points on `carrier` whose lifts are in general position among
/// subsets of dimension below `C(d+2,2) - 2`, plus one point off it.
pub fn construct_carrier_general(d: u32, n: usize, m: usize, carrier: &Carrier, seed: u64) -> Result<Construction> {
    let full = binom(d as usize + 2, 2);
    if n + 1 < full {
        return Err(Error::precondition("n >= C(d+2,2) - 1", format!("n = {n}, d = {d}")));
    }
    if m + full <= 2 * n + 1 {
        return Err(Error::precondition("m > 2n + 1 - C(d+2,2)", format!("m = {m}, n = {n}, d = {d}")));
    }
    if carrier.degree() != d {
        return Err(Error::precondition("carrier has degree d", format!("carrier degree {}", carrier.degree())));
    }
    let dim = lifted_dim(d);
    let cap = full - 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<PlanePoint> = Vec::new();
    let mut lifts: Vec<Vec<ExactScalar>> = Vec::new();
    let mut rejected = 0usize;
    let budget = 10_000usize;
    while chosen.len() < m - 1 {
        if rejected > budget {
            return Err(Error::invalid(format!("parameter sweep exhausted after {budget} rejections")));
        }
        let t = ExactScalar::new(random_int(&mut rng, 6).into(), rng.gen_range(1i64..=3).into());
        let Some(p) = carrier.point_at(&t) else {
            rejected += 1;
            continue;
        };
        if chosen.contains(&p) {
            rejected += 1;
            continue;
        }
        let z = monomial_vector(&p.x, &p.y, d);
        let size = lifts.len().min(cap);
        let blocked = (0..lifts.len()).combinations(size).any(|s| {
            let sub: Vec<Vec<ExactScalar>> = s.iter().map(|&i| lifts[i].clone()).collect();
            AffineFlat::span(dim, &sub).and_then(|f| f.contains(&z)).unwrap_or(true)
        });
        if blocked {
            rejected += 1;
            continue;
        }
        chosen.push(p);
        lifts.push(z);
    }
    let a0 = (0i64..)
        .flat_map(|k| [PlanePoint::int(0, k + 1), PlanePoint::int(k + 1, 0), PlanePoint::int(-k - 1, k + 1)])
        .find(|p| !carrier.contains(p) && !chosen.contains(p))
        .expect("some lattice point is off the carrier");
    let mut pts = vec![a0];
    pts.extend(chosen);
    let configuration = PointConfiguration::new(pts, d)?;
    let not_contained = !points_on_curve(configuration.points(), d)?.contained;
    let certificates = vec![
        Certificate::new("carrier lifts avoid every low-dimensional flat of earlier lifts", true, format!("{rejected} rejected parameter(s)")),
        Certificate::new("A on no curve of degree <= d", not_contained, ""),
    ];
    let recipe = ConstructionRecipe { kind: RecipeKind::CarrierGeneral, d, n: Some(n), m, carrier: Some(carrier.clone()), seed };
    Ok(Construction {
        configuration,
        on_carrier: (1..m).collect(),
        off_carrier: vec![0],
        provenance: Provenance { recipe, seed, certificates },
    })
}

/// Genericity requested from a random sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "level", content = "degree")]
pub enum Genericity {
    Unrestricted,
    /// The whole set lies on no curve of degree at most `e`.
    NotOnCurve(u32),
    /// For every `k <= e`, no `C(k+2,2)` points lie on a curve of degree at most `k`.
    General(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SampleKind {
    Grid { width: usize, height: usize },
    Random { count: usize, range: i64, genericity: Genericity },
}

fn violates_general(pts: &[PlanePoint], newest: usize, e: u32) -> bool {
    (1..=e).any(|k| {
        let size = binom(k as usize + 2, 2);
        let rows = homogenized(&lift_all(pts, k));
        let others: Vec<usize> = (0..pts.len()).filter(|&i| i != newest).collect();
        if others.len() + 1 < size {
            return false;
        }
        others.into_iter().combinations(size - 1).any(|mut s| {
            s.push(newest);
            let sub: Vec<Vec<ExactScalar>> = s.iter().map(|&i| rows[i].clone()).collect();
            rank_of_rows(size, &sub) < size
        })
    })
}

/// Seeded point sets for experiments; `d` is the degree recorded on the output.
pub fn sample_configuration(kind: SampleKind, d: u32, seed: u64) -> Result<Construction> {
    let (pts, certificates, m) = match kind {
        SampleKind::Grid { width, height } => {
            let pts: Vec<PlanePoint> =
                (0..width as i64).cartesian_product(0..height as i64).map(|(x, y)| PlanePoint::int(x, y)).collect();
            (pts, Vec::new(), width * height)
        }
        SampleKind::Random { count, range, genericity } => {
            if range < 1 || ((2 * range + 1) as u128).pow(2) < count as u128 {
                return Err(Error::invalid(format!("range {range} is too small for {count} points")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let budget = 20_000usize;
            let mut rejected = 0usize;
            let pts = loop {
                let mut pts: Vec<PlanePoint> = Vec::with_capacity(count);
                while pts.len() < count {
                    if rejected > budget {
                        return Err(Error::invalid(format!("rejection budget of {budget} samples exceeded")));
                    }
                    let p = PlanePoint::int(random_int(&mut rng, range), random_int(&mut rng, range));
                    if pts.contains(&p) {
                        rejected += 1;
                        continue;
                    }
                    pts.push(p);
                    if let Genericity::General(e) = genericity {
                        if violates_general(&pts, pts.len() - 1, e) {
                            pts.pop();
                            rejected += 1;
                        }
                    }
                }
                match genericity {
                    Genericity::NotOnCurve(e) if points_on_curve(&pts, e)?.contained => rejected += 1,
                    _ => break pts,
                }
            };
            let certificates = match genericity {
                Genericity::Unrestricted => Vec::new(),
                Genericity::NotOnCurve(e) => {
                    vec![Certificate::new("A on no curve of degree <= e", !points_on_curve(&pts, e)?.contained, format!("e = {e}"))]
                }
                Genericity::General(e) => {
                    let holds = !(0..pts.len()).any(|i| violates_general(&pts[..=i], i, e));
                    vec![Certificate::new("no C(k+2,2) points on a curve of degree <= k, k <= e", holds, format!("e = {e}"))]
                }
            };
            (pts, certificates, count)
        }
    };
    let configuration = PointConfiguration::new(pts, d)?;
    let recipe_kind = if matches!(kind, SampleKind::Grid { .. }) { RecipeKind::Grid } else { RecipeKind::RandomGeneral };
    let recipe = ConstructionRecipe { kind: recipe_kind, d, n: None, m, carrier: None, seed };
    Ok(Construction {
        configuration,
        on_carrier: Vec::new(),
        off_carrier: (0..m).collect(),
        provenance: Provenance { recipe, seed, certificates },
    })
}

/// Whether distinct curves meet the indexed subset of `A` in distinct sets.
pub fn traces_injective(curves: &DeterminedCurveSet, subset: &[usize]) -> bool {
    let traces: Vec<Vec<usize>> =
        curves.curves.iter().map(|c| c.incidence.iter().copied().filter(|i| subset.contains(i)).collect()).collect();
    traces.iter().collect::<BTreeSet<_>>().len() == traces.len()
}

/// Checks on a line-heavy construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineHeavyReport {
    pub not_on_curve: bool,
    pub n: usize,
    pub ordinary_count: usize,
    pub bound: usize,
    pub traces_injective: bool,
}

impl LineHeavyReport {
    pub fn holds(&self) -> bool {
        self.not_on_curve && self.ordinary_count <= self.bound && self.traces_injective
    }
}

pub fn verify_line_heavy(c: &Construction) -> Result<LineHeavyReport> {
    let d = c.configuration.d();
    let n = line_heavy_incidence(d);
    let ordinary = ordinary_curves(&c.configuration, n)?;
    Ok(LineHeavyReport {
        not_on_curve: !points_on_curve(c.points(), d)?.contained,
        n,
        ordinary_count: ordinary.len(),
        bound: binom(c.on_carrier.len(), d as usize),
        traces_injective: traces_injective(&ordinary, &c.on_carrier),
    })
}

/// Checks on a carrier-general construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarrierGeneralReport {
    pub not_on_curve: bool,
    pub subsets_checked: usize,
    /// An `n`-subset on more than one curve of degree `d`, if any.
    pub ambiguous_subset: Option<Vec<usize>>,
    pub ordinary_n: usize,
    pub ordinary_count: usize,
    pub bound: usize,
    pub traces_injective: bool,
}

impl CarrierGeneralReport {
    pub fn holds(&self) -> bool {
        self.not_on_curve && self.ambiguous_subset.is_none() && self.ordinary_count <= self.bound && self.traces_injective
    }
}

pub fn verify_carrier_general(c: &Construction, n: usize) -> Result<CarrierGeneralReport> {
    use rayon::prelude::*;
    let d = c.configuration.d();
    let full = binom(d as usize + 2, 2);
    let size = c.points().len();
    let rows = homogenized(c.configuration.lifted());
    let cols = lifted_dim(d) + 1;
    let subsets: Vec<Vec<usize>> = (0..size).combinations(n).collect();
    let ambiguous_subset = subsets
        .par_iter()
        .find_first(|s| {
            let sub: Vec<Vec<ExactScalar>> = s.iter().map(|&i| rows[i].clone()).collect();
            cols - rank_of_rows(cols, &sub) > 1
        })
        .cloned();
    let ordinary_n = (2 * n + 1).saturating_sub(full);
    let ordinary = ordinary_curves(&c.configuration, ordinary_n)?;
    Ok(CarrierGeneralReport {
        not_on_curve: !points_on_curve(c.points(), d)?.contained,
        subsets_checked: subsets.len(),
        ambiguous_subset,
        ordinary_n,
        ordinary_count: ordinary.len(),
        bound: binom(size - 1, full - 2),
        traces_injective: traces_injective(&ordinary, &c.on_carrier),
    })
}

/// The curve `y = x^d` used as the default carrier.
pub fn default_carrier(d: u32) -> Result<Carrier> {
    Carrier::power_graph(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_heavy_examples() {
        let c = construct_line_heavy(2, 7, 1).unwrap();
        assert_eq!(c.points().len(), 7);
        assert_eq!(c.on_carrier.len(), 4);
        assert!(c.certified());
        assert!(construct_line_heavy(1, 7, 1).is_err());
        assert!(construct_line_heavy(2, 6, 1).is_err());
        assert_eq!(construct_line_heavy(2, 8, 5).unwrap(), construct_line_heavy(2, 8, 5).unwrap());
        let r = verify_line_heavy(&c).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn carrier_general_hypotheses() {
        let carrier = default_carrier(3).unwrap();
        assert!(construct_carrier_general(3, 8, 10, &carrier, 0).is_err());
        assert!(construct_carrier_general(3, 9, 8, &carrier, 0).is_err());
        assert!(construct_carrier_general(2, 9, 10, &carrier, 0).is_err());
    }

    #[test]
    fn carrier_general_small() {
        let carrier = default_carrier(2).unwrap();
        let c = construct_carrier_general(2, 5, 7, &carrier, 3).unwrap();
        assert!(c.certified());
        let r = verify_carrier_general(&c, 5).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn carrier_is_ordinary_at_the_smallest_size() {
        let carrier = default_carrier(2).unwrap();
        let c = construct_carrier_general(2, 5, 6, &carrier, 3).unwrap();
        let r = verify_carrier_general(&c, 5).unwrap();
        assert_eq!((r.ordinary_count, r.bound), (6, 5));
        let ordinary = ordinary_curves(&c.configuration, 5).unwrap();
        assert!(ordinary.contains_curve(&carrier.curve()));
    }

    #[test]
    fn grid_and_random_samples() {
        let g = sample_configuration(SampleKind::Grid { width: 3, height: 3 }, 1, 0).unwrap();
        assert_eq!(g.points().len(), 9);
        assert!(g.points().contains(&PlanePoint::int(2, 2)));
        let kind = SampleKind::Random { count: 8, range: 10, genericity: Genericity::General(1) };
        let a = sample_configuration(kind, 2, 42).unwrap();
        assert_eq!(a, sample_configuration(kind, 2, 42).unwrap());
        assert!(a.certified());
        let on_line = (0..8).tuple_combinations().any(|(i, j, k)| {
            let rows = homogenized(&lift_all(&[a.points()[i].clone(), a.points()[j].clone(), a.points()[k].clone()], 1));
            rank_of_rows(3, &rows) < 3
        });
        assert!(!on_line);
        let tiny = SampleKind::Random { count: 20, range: 1, genericity: Genericity::Unrestricted };
        assert!(sample_configuration(tiny, 1, 0).is_err());
    }
}
