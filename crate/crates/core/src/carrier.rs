//! Curves with an explicit rational parametrization, used when exact points
//! on a curve must be produced on demand.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::bipoly::{BivariatePolynomial, PlaneCurve};
use crate::error::{Error, Result};
use crate::point::PlanePoint;
use crate::ExactScalar;

/// An irreducible curve from a catalog whose rational points are easy to list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Carrier {
    /// The line through `base` with direction `(dx, dy)`.
    Line { base: PlanePoint, direction: PlanePoint },
    /// The graph `y = x^k`.
    PowerGraph { k: u32 },
    /// The conic `polynomial = 0` through the rational point `base`,
    /// parametrized by the slopes of lines through `base`.
    Conic { polynomial: BivariatePolynomial, base: PlanePoint },
}

impl Carrier {
    pub fn line(base: PlanePoint, direction: PlanePoint) -> Result<Self> {
        if direction.x.is_zero() && direction.y.is_zero() {
            return Err(Error::invalid("line direction must be nonzero"));
        }
        Ok(Carrier::Line { base, direction })
    }

    pub fn power_graph(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("power graph needs k >= 1"));
        }
        Ok(Carrier::PowerGraph { k })
    }

    /// A conic through `base`; irreducibility is trusted, not verified.
    pub fn conic(polynomial: BivariatePolynomial, base: PlanePoint) -> Result<Self> {
        if polynomial.degree() != Some(2) {
            return Err(Error::invalid("conic carrier needs a degree-2 polynomial"));
        }
        if !polynomial.vanishes_at(&base) {
            return Err(Error::invalid("conic base point is not on the conic"));
        }
        Ok(Carrier::Conic { polynomial, base })
    }

    pub fn polynomial(&self) -> BivariatePolynomial {
        match self {
            Carrier::Line { base, direction } => {
                let (a, b) = (direction.y.clone(), -direction.x.clone());
                let c = -(a.clone() * base.x.clone() + b.clone() * base.y.clone());
                BivariatePolynomial::line(a, b, c).canonical()
            }
            Carrier::PowerGraph { k } => (&BivariatePolynomial::y() - &BivariatePolynomial::x().pow(*k)).canonical(),
            Carrier::Conic { polynomial, .. } => polynomial.canonical(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Carrier::Line { .. } => 1,
            Carrier::PowerGraph { k } => *k,
            Carrier::Conic { .. } => 2,
        }
    }

    pub fn curve(&self) -> PlaneCurve {
        PlaneCurve::new(self.polynomial()).expect("carrier polynomials have positive degree")
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.polynomial().vanishes_at(p)
    }

    /// The point with parameter `t`, when the parametrization is defined there.
    pub fn point_at(&self, t: &ExactScalar) -> Option<PlanePoint> {
        match self {
            Carrier::Line { base, direction } => Some(PlanePoint::new(
                base.x.clone() + t.clone() * direction.x.clone(),
                base.y.clone() + t.clone() * direction.y.clone(),
            )),
            Carrier::PowerGraph { k } => Some(PlanePoint::new(t.clone(), num_traits::pow(t.clone(), *k as usize))),
            Carrier::Conic { polynomial, base } => {
                let q2 = polynomial.coefficient(2, 0)
                    + polynomial.coefficient(1, 1) * t.clone()
                    + polynomial.coefficient(0, 2) * t.clone() * t.clone();
                if q2.is_zero() {
                    return None;
                }
                let grad = polynomial.derivative_x().evaluate(base) + polynomial.derivative_y().evaluate(base) * t.clone();
                let lambda = -grad / q2;
                Some(PlanePoint::new(base.x.clone() + lambda.clone(), base.y.clone() + lambda * t.clone()))
            }
        }
    }

    /// The first `count` distinct points along the parameter sweep
    /// `0, 1, -1, 2, -2, 1/2, -1/2, ...`.
    pub fn sample(&self, count: usize) -> Vec<PlanePoint> {
        let mut out: Vec<PlanePoint> = Vec::with_capacity(count);
        for t in parameter_sweep() {
            if out.len() == count {
                break;
            }
            if let Some(p) = self.point_at(&t) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// All rationals ordered by height `max(|p|, q)`, then by `q`, then `|p|`,
/// positive before negative.
pub fn parameter_sweep() -> impl Iterator<Item = ExactScalar> {
    std::iter::once(ExactScalar::zero()).chain((1i64..).flat_map(|h| {
        let mut level = Vec::new();
        for q in 1..=h {
            for p in 1..=h {
                if p.max(q) == h && p.gcd(&q) == 1 {
                    let v = ExactScalar::new(BigInt::from(p), BigInt::from(q));
                    level.push(v.clone());
                    level.push(-v);
                }
            }
        }
        level
    }))
}
