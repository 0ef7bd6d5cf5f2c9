//! The Veronese lift of plane points and the correspondence between
//! polynomials of degree at most `d` and hyperplanes of the lifted space.

use num_traits::Zero;
use serde::Serialize;

use crate::bipoly::{BivariatePolynomial, PlaneCurve};
use crate::error::{Error, Result};
use crate::point::{rational_to_string, PlanePoint};
use crate::scalar::{binom, rat, ExactField};
use crate::ExactScalar;

/// The exponents `(n, m)` with `1 <= n + m <= d`, in the global order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseIndex {
    d: u32,
    indices: Vec<(u32, u32)>,
}

impl VeroneseIndex {
    pub fn new(d: u32) -> Self {
        let mut indices = Vec::with_capacity(binom(d as usize + 2, 2).saturating_sub(1));
        for k in 1..=d {
            for n in (0..=k).rev() {
                indices.push((n, k - n));
            }
        }
        VeroneseIndex { d, indices }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[(u32, u32)] {
        &self.indices
    }

    pub fn position(&self, n: u32, m: u32) -> Option<usize> {
        let k = n + m;
        if k == 0 || k > self.d {
            return None;
        }
        let before = binom(k as usize + 1, 2) - 1;
        Some(before + (k - n) as usize)
    }
}

/// Dimension `C(d+2,2) - 1` of the degree-`d` lifted space.
pub fn lifted_dim(d: u32) -> usize {
    binom(d as usize + 2, 2) - 1
}

/// All monomials `x^n y^m` with `1 <= n + m <= d` in the global order.
pub fn monomial_vector<T: ExactField>(x: &T, y: &T, d: u32) -> Vec<T> {
    let mut xp = vec![T::one()];
    let mut yp = vec![T::one()];
    for i in 1..=d as usize {
        xp.push(xp[i - 1].clone() * x.clone());
        yp.push(yp[i - 1].clone() * y.clone());
    }
    let mut out = Vec::with_capacity(lifted_dim(d));
    for k in 1..=d as usize {
        for n in (0..=k).rev() {
            out.push(xp[n].clone() * yp[k - n].clone());
        }
    }
    out
}

/// A plane point together with its degree-`d` Veronese image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPoint {
    pub source: PlanePoint,
    pub coords: Vec<ExactScalar>,
}

pub fn lift(pt: &PlanePoint, d: u32) -> LiftedPoint {
    LiftedPoint { source: pt.clone(), coords: monomial_vector(&pt.x, &pt.y, d) }
}

pub fn lift_all(pts: &[PlanePoint], d: u32) -> Vec<Vec<ExactScalar>> {
    pts.iter().map(|p| monomial_vector(&p.x, &p.y, d)).collect()
}

/// The affine hyperplane `constant + coefficients · z = 0`, scaled so the
/// first nonzero entry of `(constant, coefficients)` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplaneForm {
    constant: ExactScalar,
    coefficients: Vec<ExactScalar>,
}

impl HyperplaneForm {
    pub fn new(constant: ExactScalar, coefficients: Vec<ExactScalar>) -> Result<Self> {
        let mut v = Vec::with_capacity(coefficients.len() + 1);
        v.push(constant);
        v.extend(coefficients);
        Self::from_augmented(v)
    }

    /// Builds a form from `(constant, c_1, ..., c_N)`.
    pub fn from_augmented(mut v: Vec<ExactScalar>) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::invalid("hyperplane form needs at least one coordinate"));
        }
        if v[1..].iter().all(|c| c.is_zero()) {
            return Err(Error::invalid("hyperplane form has no non-constant coefficient"));
        }
        let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero");
        for c in v.iter_mut() {
            *c = c.clone() / lead.clone();
        }
        let constant = v.remove(0);
        Ok(HyperplaneForm { constant, coefficients: v })
    }

    pub fn constant(&self) -> &ExactScalar {
        &self.constant
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coefficients
    }

    pub fn ambient_dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn augmented(&self) -> Vec<ExactScalar> {
        let mut v = vec![self.constant.clone()];
        v.extend(self.coefficients.iter().cloned());
        v
    }

    pub fn evaluate(&self, z: &[ExactScalar]) -> ExactScalar {
        self.coefficients.iter().zip(z).fold(self.constant.clone(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    pub fn contains(&self, z: &[ExactScalar]) -> bool {
        self.evaluate(z).is_zero()
    }

    /// The polynomial `constant + sum c_(n,m) x^n y^m` for the degree `d`
    /// matching the form's length.
    pub fn polynomial(&self) -> Result<BivariatePolynomial> {
        let d = degree_for_dim(self.coefficients.len())?;
        let idx = VeroneseIndex::new(d);
        let mut terms = vec![((0, 0), self.constant.clone())];
        terms.extend(idx.indices().iter().zip(&self.coefficients).map(|(&k, c)| (k, c.clone())));
        Ok(BivariatePolynomial::from_terms(terms))
    }
}

impl Serialize for HyperplaneForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.augmented().iter().map(rational_to_string).collect();
        v.serialize(s)
    }
}

fn degree_for_dim(n: usize) -> Result<u32> {
    (1..=64u32)
        .find(|&d| lifted_dim(d) == n)
        .ok_or_else(|| Error::invalid(format!("{n} is not a lifted-space dimension")))
}

/// The hyperplane of the degree-`d` lifted space corresponding to `p`.
pub fn tau(p: &BivariatePolynomial, d: u32) -> Result<HyperplaneForm> {
    let deg = p.degree().ok_or_else(|| Error::invalid("zero polynomial has no hyperplane"))?;
    if deg == 0 {
        return Err(Error::invalid("constant polynomial has no hyperplane"));
    }
    if deg > d {
        return Err(Error::invalid(format!("degree {deg} exceeds {d}")));
    }
    let idx = VeroneseIndex::new(d);
    let coeffs = idx.indices().iter().map(|&(n, m)| p.coefficient(n, m)).collect();
    HyperplaneForm::new(p.coefficient(0, 0), coeffs)
}

/// The curve read off a hyperplane form of the degree-`d` lifted space.
pub fn tau_inverse(h: &HyperplaneForm, d: u32) -> Result<PlaneCurve> {
    if h.ambient_dim() != lifted_dim(d) {
        return Err(Error::DimensionMismatch { expected: lifted_dim(d), found: h.ambient_dim() });
    }
    PlaneCurve::new(h.polynomial()?)
}

/// Multiplies `p` by a power of a vertical line `x - c` missing every point
/// of `avoid`, so the product has degree exactly `d` and vanishes on the
/// same points of `avoid` as `p`.
pub fn pad_degree(p: &BivariatePolynomial, d: u32, avoid: &[PlanePoint]) -> Result<BivariatePolynomial> {
    let deg = p.degree().ok_or_else(|| Error::invalid("zero polynomial cannot be padded"))?;
    if deg > d {
        return Err(Error::invalid(format!("degree {deg} exceeds {d}")));
    }
    if deg == d {
        return Ok(p.clone());
    }
    let mut c = 0i64;
    while avoid.iter().any(|a| a.x == rat(c)) {
        c += 1;
    }
    let line = BivariatePolynomial::line(rat(1), rat(0), rat(-c));
    Ok(p * &line.pow(d - deg))
}
