//! Slow, independent re-derivations used to cross-check the main
//! algorithms.
//!
//! Nothing here goes through hyperplane forms or flats. Curves are handled as
//! vanishing spaces of polynomials evaluated at points, and curve sections
//! are realized by explicit witness polynomials.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bipoly::{squarefree_radical, BivariatePolynomial};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_of_rows, rank_of_rows};
use crate::point::PlanePoint;
use crate::scalar::rat;
use crate::ExactScalar;

/// One comparison between an oracle value and the main implementation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub instance: String,
    pub quantity: String,
    pub oracle_value: String,
    pub main_value: String,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(instance: impl Into<String>, quantity: impl Into<String>, oracle: String, main: String) -> Self {
        let agree = oracle == main;
        OracleReport { instance: instance.into(), quantity: quantity.into(), oracle_value: oracle, main_value: main, agree }
    }
}

/// Exponents of all monomials of degree at most `d`, constant first.
fn exponents(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 0..=d {
        for m in 0..=(d - n) {
            out.push((n, m));
        }
    }
    out
}

fn power(q: &ExactScalar, k: u32) -> ExactScalar {
    (0..k).fold(rat(1), |acc, _| acc * q.clone())
}

fn evaluation_row(p: &PlanePoint, exps: &[(u32, u32)]) -> Vec<ExactScalar> {
    exps.iter().map(|&(n, m)| power(&p.x, n) * power(&p.y, m)).collect()
}

fn evaluation_matrix(pts: &[PlanePoint], exps: &[(u32, u32)]) -> Vec<Vec<ExactScalar>> {
    pts.iter().map(|p| evaluation_row(p, exps)).collect()
}

fn to_polynomial(v: &[ExactScalar], exps: &[(u32, u32)]) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(exps.iter().zip(v).map(|(&k, c)| (k, c.clone())))
}

/// Polynomials of degree at most `d` vanishing on `pts`.
fn vanishing_polys(pts: &[PlanePoint], d: u32) -> Vec<BivariatePolynomial> {
    let exps = exponents(d);
    nullspace_of_rows(exps.len(), &evaluation_matrix(pts, &exps)).iter().map(|v| to_polynomial(v, &exps)).collect()
}

fn pad_to(p: &BivariatePolynomial, d: u32, avoid: &[PlanePoint]) -> BivariatePolynomial {
    let deg = p.degree().unwrap_or(0);
    let mut c = 0i64;
    while avoid.iter().any(|a| a.x == rat(c)) {
        c += 1;
    }
    let line = BivariatePolynomial::line(rat(1), rat(0), rat(-c));
    p * &line.pow(d - deg)
}

fn section(p: &BivariatePolynomial, pts: &[PlanePoint]) -> Vec<usize> {
    pts.iter().enumerate().filter(|(_, a)| p.vanishes_at(a)).map(|(i, _)| i).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Radicals of the curves of degree `d` determined by `a`, by checking the
/// definition on every candidate curve through a subset of `a`.
pub fn oracle_determined(a: &[PlanePoint], d: u32) -> Result<BTreeSet<BivariatePolynomial>> {
    if d == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    if vanishing_polys(a, d).iter().any(|p| !p.is_constant()) {
        return Err(Error::precondition(
            "A is not contained in any curve of degree at most d",
            "configuration lies on a degree-<=d curve",
        ));
    }
    let monomial_count = exponents(d).len();
    let mut determined = BTreeSet::new();
    let mut examined = BTreeSet::new();
    for s in subsets(a.len()) {
        if monomial_count.saturating_sub(s.len()) >= 2 {
            continue;
        }
        let pts: Vec<PlanePoint> = s.iter().map(|&i| a[i].clone()).collect();
        for v in vanishing_polys(&pts, d) {
            if v.is_constant() {
                continue;
            }
            let candidate = pad_to(&v, d, a);
            let radical = squarefree_radical(&candidate)?;
            if !examined.insert(radical.clone()) {
                continue;
            }
            let meet = section(&candidate, a);
            let meet_pts: Vec<PlanePoint> = meet.iter().map(|&i| a[i].clone()).collect();
            let space = vanishing_polys(&meet_pts, d);
            if space.len() == 1 {
                determined.insert(radical);
            } else {
                find_competitor(&space, &radical, &meet, d, a)?;
            }
        }
    }
    Ok(determined)
}

/// Finds a degree-`d` curve, different from the candidate, whose section of
/// `a` contains the candidate's section.
fn find_competitor(
    space: &[BivariatePolynomial],
    radical: &BivariatePolynomial,
    meet: &[usize],
    d: u32,
    a: &[PlanePoint],
) -> Result<()> {
    let mut tries: Vec<BivariatePolynomial> = space.to_vec();
    for t in 1..=4i64 {
        tries.push(&space[0] + &space[1].scale(&rat(t)));
    }
    for q in tries {
        if q.is_constant() {
            continue;
        }
        let padded = pad_to(&q, d, a);
        let contains = meet.iter().all(|&i| padded.vanishes_at(&a[i]));
        if contains && padded.degree() == Some(d) && &squarefree_radical(&padded)? != radical {
            return Ok(());
        }
    }
    Err(Error::property("a multi-dimensional vanishing space yields a competing curve", format!("no competitor found for {radical}")))
}

fn affine_dimension(pts: &[PlanePoint], d: u32) -> isize {
    rank_of_rows(exponents(d).len(), &evaluation_matrix(pts, &exponents(d))) as isize - 1
}

fn choose2(k: u32) -> usize {
    ((k + 2) * (k + 1) / 2) as usize
}

/// Finds `p` of degree at most `e` vanishing on `s` and at no point of `rest`.
fn realize_section(basis: &[BivariatePolynomial], rest: &[PlanePoint]) -> Option<BivariatePolynomial> {
    let bound = (rest.len() + 1) * basis.len() + 1;
    for t in 0..=bound as i64 {
        let mut p = BivariatePolynomial::zero();
        let mut weight = rat(1);
        for v in basis {
            p = &p + &v.scale(&weight);
            weight *= rat(t);
        }
        if !p.is_constant() && rest.iter().all(|b| !p.vanishes_at(b)) {
            return Some(p);
        }
    }
    None
}

/// Checks the four basis conditions for `b` at degree `d` by realizing every
/// possible curve section of `b` with an explicit polynomial.
pub fn oracle_nd(a: &[PlanePoint], b: &[PlanePoint], d: u32) -> Result<bool> {
    if d < 2 {
        return Err(Error::invalid("basis conditions need d >= 2"));
    }
    let full = choose2(d);
    if b.len() + 3 != full {
        return Err(Error::invalid(format!("basis must have {} points, found {}", full - 3, b.len())));
    }
    if b.iter().any(|p| !a.contains(p)) {
        return Err(Error::invalid("basis is not a subset of the configuration"));
    }
    if b.iter().collect::<BTreeSet<_>>().len() != b.len() {
        return Err(Error::invalid("basis has repeated points"));
    }
    if affine_dimension(b, d) != full as isize - 4 {
        return Ok(false);
    }
    for e in 1..d {
        let threshold = full - choose2(d - e);
        let co = choose2(d - e) as isize;
        for s in subsets(b.len()) {
            let on: Vec<PlanePoint> = s.iter().map(|&i| b[i].clone()).collect();
            let off: Vec<PlanePoint> = (0..b.len()).filter(|i| !s.contains(i)).map(|i| b[i].clone()).collect();
            let basis = vanishing_polys(&on, e);
            if basis.is_empty() {
                continue;
            }
            let Some(witness) = realize_section(&basis, &off) else { continue };
            if section(&witness, b) != s {
                return Err(Error::property("witness realizes the requested section", format!("section {s:?}")));
            }
            let k = s.len();
            if k >= threshold {
                return Ok(false);
            }
            let rest_dim = affine_dimension(&off, d - e);
            if k + 1 == threshold && rest_dim != co - 3 {
                return Ok(false);
            }
            if k + 1 < threshold && rest_dim <= co - 3 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::points;

    #[test]
    fn determined_lines_of_square() {
        let a = points(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(oracle_determined(&a, 1).unwrap().len(), 6);
        assert!(oracle_determined(&points(&[(0, 0), (1, 1), (3, 3)]), 1).is_err());
    }

    #[test]
    fn nd_examples() {
        let a = points(&[(0, 0), (1, 0), (0, 1), (2, 0), (5, 7)]);
        assert!(oracle_nd(&a, &points(&[(0, 0), (1, 0), (0, 1)]), 2).unwrap());
        assert!(!oracle_nd(&a, &points(&[(0, 0), (1, 0), (2, 0)]), 2).unwrap());
        assert!(oracle_nd(&a, &points(&[(0, 0), (1, 0)]), 2).is_err());
    }

    #[test]
    fn report_agreement() {
        assert!(OracleReport::new("i", "q", "1".into(), "1".into()).agree);
        assert!(!OracleReport::new("i", "q", "1".into(), "2".into()).agree);
    }
}
