//! Bivariate polynomials over the rationals and plane curves identified by
//! their squarefree radical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::PlanePoint;
use crate::scalar::{parse_rational, rat};
use crate::ExactScalar;

/// Exponent pair `(n, m)` for the monomial `x^n y^m`.
///
/// Ordered by total degree, then by decreasing power of `x`, which is the
/// global coordinate order used by the Veronese lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub n: u32,
    pub m: u32,
}

impl Monomial {
    pub fn new(n: u32, m: u32) -> Self {
        Monomial { n, m }
    }

    pub fn degree(self) -> u32 {
        self.n + self.m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(other.n.cmp(&self.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `x` and `y` with exact rational coefficients and no
/// stored zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: ExactScalar, n: u32, m: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(n, m), c);
        p
    }

    pub fn x() -> Self {
        Self::term(rat(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(rat(1), 0, 1)
    }

    /// The line `a x + b y + c`.
    pub fn line(a: ExactScalar, b: ExactScalar, c: ExactScalar) -> Self {
        let mut p = Self::constant(c);
        p.add_term(Monomial::new(1, 0), a);
        p.add_term(Monomial::new(0, 1), b);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), ExactScalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((n, m), c) in terms {
            p.add_term(Monomial::new(n, m), c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(ExactScalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &ExactScalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, n: u32, m: u32) -> ExactScalar {
        self.terms.get(&Monomial::new(n, m)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|k| k.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.m).max()
    }

    fn leading(&self) -> Option<(Monomial, &ExactScalar)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    pub fn evaluate(&self, pt: &PlanePoint) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (mono, c) in &self.terms {
            acc += c.clone() * pow(&pt.x, mono.n) * pow(&pt.y, mono.m);
        }
        acc
    }

    pub fn vanishes_at(&self, pt: &PlanePoint) -> bool {
        self.evaluate(pt).is_zero()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial { terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(rat(1)), |acc, _| &acc * self)
    }

    pub fn derivative_x(&self) -> Self {
        let mut p = Self::zero();
        for (mono, c) in &self.terms {
            if mono.n > 0 {
                p.add_term(Monomial::new(mono.n - 1, mono.m), c.clone() * rat(mono.n as i64));
            }
        }
        p
    }

    pub fn derivative_y(&self) -> Self {
        let mut p = Self::zero();
        for (mono, c) in &self.terms {
            if mono.m > 0 {
                p.add_term(Monomial::new(mono.n, mono.m - 1), c.clone() * rat(mono.m as i64));
            }
        }
        p
    }

    /// Primitive integer representative with positive leading coefficient.
    /// Nonzero constants become `1`; zero stays zero.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c * ExactScalar::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let (_, lead) = self.leading().expect("nonzero");
        let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
        let factor = ExactScalar::new(l * sign, g);
        self.scale(&factor)
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let Some((lm_g, lc_g)) = divisor.leading() else {
            return Err(Error::invalid("division by the zero polynomial"));
        };
        let lc_g = lc_g.clone();
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading() {
            if lm_r.n < lm_g.n || lm_r.m < lm_g.m {
                return Err(Error::invalid("polynomial division is not exact"));
            }
            let t = Self::term(lc_r.clone() / lc_g.clone(), lm_r.n - lm_g.n, lm_r.m - lm_g.m);
            r = &r - &(&t * divisor);
            q = &q + &t;
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_ok()
    }
}

fn pow(base: &ExactScalar, k: u32) -> ExactScalar {
    num_traits::pow(base.clone(), k as usize)
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = self.clone();
        for (k, v) in &rhs.terms {
            p.add_term(*k, v.clone());
        }
        p
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = self.clone();
        for (k, v) in &rhs.terms {
            p.add_term(*k, -v.clone());
        }
        p
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                p.add_term(Monomial::new(a.n + b.n, a.m + b.m), ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut items: Vec<(&Monomial, &ExactScalar)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.n.cmp(&a.0.n)));
        for (i, (mono, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || mono.degree() == 0 {
                factors.push(abs.to_string());
            }
            match mono.n {
                0 => {}
                1 => factors.push("x".into()),
                k => factors.push(format!("x^{k}")),
            }
            match mono.m {
                0 => {}
                1 => factors.push("y".into()),
                k => factors.push(format!("y^{k}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    /// Parses sums of terms such as `3/2*x^2*y - x + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Self::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with('^') {
                chunks.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        chunks.push((negative, current));
        for (neg, chunk) in chunks {
            let mut coeff = rat(1);
            let (mut n, mut m) = (0u32, 0u32);
            for factor in chunk.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e: u32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (b, e)
                    }
                    None => (factor, 1),
                };
                match base {
                    "x" => n += exp,
                    "y" => m += exp,
                    "" => return Err(Error::Parse(format!("empty factor in {s:?}"))),
                    num => coeff *= pow(&parse_rational(num)?, exp),
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(Monomial::new(n, m), coeff);
        }
        Ok(p)
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Univariate polynomials in `x`, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq)]
struct Uni(Vec<ExactScalar>);

impl Uni {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn one() -> Self {
        Uni(vec![rat(1)])
    }

    fn lead(&self) -> &ExactScalar {
        self.0.last().expect("nonzero")
    }

    fn mul(&self, o: &Uni) -> Uni {
        if self.is_zero() || o.is_zero() {
            return Uni(Vec::new());
        }
        let mut r = vec![ExactScalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a.clone() * b.clone();
            }
        }
        Uni(r).trim()
    }

    fn sub(&self, o: &Uni) -> Uni {
        let n = self.0.len().max(o.0.len());
        let z = ExactScalar::zero();
        Uni((0..n).map(|i| self.0.get(i).unwrap_or(&z).clone() - o.0.get(i).unwrap_or(&z).clone()).collect()).trim()
    }

    fn divrem(&self, d: &Uni) -> (Uni, Uni) {
        let mut r = self.clone();
        let mut q = vec![ExactScalar::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let c = r.lead().clone() / d.lead().clone();
            for (i, v) in d.0.iter().enumerate() {
                r.0[i + shift] -= c.clone() * v.clone();
            }
            q[shift] = c;
            r = r.trim();
        }
        (Uni(q).trim(), r)
    }

    fn monic(self) -> Uni {
        if self.is_zero() {
            return self;
        }
        let l = self.lead().clone();
        Uni(self.0.into_iter().map(|c| c / l.clone()).collect())
    }

    fn gcd(a: &Uni, b: &Uni) -> Uni {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Polynomial in `y` whose coefficients are polynomials in `x`.
type YPoly = Vec<Uni>;

fn to_ypoly(p: &BivariatePolynomial) -> YPoly {
    let dy = p.degree_in_y().unwrap_or(0) as usize;
    let dx = p.terms.keys().map(|k| k.n).max().unwrap_or(0) as usize;
    let mut v = vec![Uni(vec![ExactScalar::zero(); dx + 1]); dy + 1];
    for (k, c) in &p.terms {
        v[k.m as usize].0[k.n as usize] = c.clone();
    }
    trim_y(v.into_iter().map(Uni::trim).collect())
}

fn from_ypoly(v: &YPoly) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::zero();
    for (m, u) in v.iter().enumerate() {
        for (n, c) in u.0.iter().enumerate() {
            p.add_term(Monomial::new(n as u32, m as u32), c.clone());
        }
    }
    p
}

fn trim_y(mut v: YPoly) -> YPoly {
    while v.last().is_some_and(Uni::is_zero) {
        v.pop();
    }
    v
}

fn ycontent(v: &YPoly) -> Uni {
    v.iter().fold(Uni(Vec::new()), |acc, u| Uni::gcd(&acc, u))
}

fn yprimitive(v: &YPoly) -> YPoly {
    let c = ycontent(v);
    v.iter().map(|u| u.divrem(&c).0).collect()
}

fn yprem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: YPoly = r.iter().map(|u| u.mul(&lc)).collect();
        for (i, u) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&u.mul(&lr));
        }
        r = trim_y(next);
    }
    r
}

fn gcd_allowing_zero(p: &BivariatePolynomial, q: &BivariatePolynomial) -> BivariatePolynomial {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    let (pp, qq) = (to_ypoly(p), to_ypoly(q));
    let content = Uni::gcd(&ycontent(&pp), &ycontent(&qq));
    let (mut a, mut b) = (yprimitive(&pp), yprimitive(&qq));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let g = loop {
        if b.len() <= 1 {
            break vec![Uni::one()];
        }
        let r = yprem(&a, &b);
        if r.is_empty() {
            break yprimitive(&b);
        }
        a = b;
        b = yprimitive(&r);
    };
    let g: YPoly = g.iter().map(|u| u.mul(&content)).collect();
    from_ypoly(&g).canonical()
}

/// Greatest common divisor in `Q[x, y]`, canonicalized. A constant result
/// (`1`) means the inputs share no component.
pub fn poly_gcd(p: &BivariatePolynomial, q: &BivariatePolynomial) -> Result<BivariatePolynomial> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::invalid("gcd of the zero polynomial"));
    }
    Ok(gcd_allowing_zero(p, q))
}

/// `p / gcd(p, p_x, p_y)`, canonicalized.
pub fn squarefree_radical(p: &BivariatePolynomial) -> Result<BivariatePolynomial> {
    if p.is_constant() {
        return Err(Error::invalid("radical of a constant polynomial"));
    }
    let g = gcd_allowing_zero(&gcd_allowing_zero(p, &p.derivative_x()), &p.derivative_y());
    Ok(p.div_exact(&g)?.canonical())
}

/// Number of exponent vectors `(m_1, ..., m_k)` of positive integers with
/// `sum m_i * deg_i <= d`, i.e. the number of polynomial classes of degree at
/// most `d` sharing a zero set whose components have the given degrees.
pub fn sigma_fiber_count(component_degrees: &[u32], d: u32) -> Result<u64> {
    if component_degrees.is_empty() {
        return Err(Error::invalid("empty component degree list"));
    }
    if d == 0 || component_degrees.contains(&0) {
        return Err(Error::invalid("degrees must be positive"));
    }
    fn count(degs: &[u32], budget: i64) -> u64 {
        match degs.split_first() {
            None => 1,
            Some((&g, rest)) => {
                let mut total = 0;
                let mut m = 1i64;
                while m * g as i64 <= budget {
                    total += count(rest, budget - m * g as i64);
                    m += 1;
                }
                total
            }
        }
    }
    let c = count(component_degrees, d as i64);
    let cap = (d as u64).pow(d);
    if c > cap {
        return Err(Error::property("fiber count bounded by d^d", format!("count {c} exceeds {cap}")));
    }
    Ok(c)
}

/// A plane curve: the zero set of a polynomial of positive degree,
/// identified by the canonical radical of that polynomial.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    representative: BivariatePolynomial,
    radical: BivariatePolynomial,
}

impl PlaneCurve {
    pub fn new(p: BivariatePolynomial) -> Result<Self> {
        let radical = squarefree_radical(&p)?;
        Ok(PlaneCurve { representative: p.canonical(), radical })
    }

    pub fn representative(&self) -> &BivariatePolynomial {
        &self.representative
    }

    pub fn radical(&self) -> &BivariatePolynomial {
        &self.radical
    }

    pub fn degree(&self) -> u32 {
        self.representative.degree().unwrap_or(0)
    }

    pub fn contains(&self, pt: &PlanePoint) -> bool {
        self.radical.vanishes_at(pt)
    }
}

impl PartialEq for PlaneCurve {
    fn eq(&self, other: &Self) -> bool {
        self.radical == other.radical
    }
}

impl Eq for PlaneCurve {}

impl Hash for PlaneCurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.radical.hash(state);
    }
}

impl PartialOrd for PlaneCurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlaneCurve {
    fn cmp(&self, other: &Self) -> Ordering {
        self.radical.cmp(&other.radical)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({})", self.radical)
    }
}

impl Serialize for PlaneCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.radical.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::PlanePoint;

    fn p(s: &str) -> BivariatePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("3/2*x^2*y - x + 1").to_string(), "3/2*x^2*y - x + 1");
        assert_eq!(p("-x - y").to_string(), "-x - y");
        assert_eq!(p("y^2 + x*y + x^2").to_string(), "x^2 + x*y + y^2");
        assert_eq!(p("2*3*x"), p("6*x"));
        assert_eq!(p("0"), BivariatePolynomial::zero());
        assert!("x +".parse::<BivariatePolynomial>().is_err());
        assert!("1/0*x".parse::<BivariatePolynomial>().is_err());
        assert!("z".parse::<BivariatePolynomial>().is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x + y - 1").evaluate(&PlanePoint::int(1, 0)), rat(0));
        assert_eq!(p("x^2 + y^2").evaluate(&PlanePoint::int(0, 0)), rat(0));
        assert_eq!(p("x*y").evaluate(&PlanePoint::int(2, 3)), rat(6));
    }

    #[test]
    fn canonical_is_primitive_and_sign_normalized() {
        assert_eq!(p("-2*y - 4*x + 6").canonical(), p("2*x + y - 3"));
        assert_eq!(p("1/2*x + 1/3").canonical(), p("3*x + 2"));
        assert_eq!(p("-5").canonical(), p("1"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("x^2 + x*y"), &p("x*y - x")).unwrap(), p("x"));
        assert_eq!(poly_gcd(&p("x + y"), &p("x - y")).unwrap(), p("1"));
        let a = p("x + y").pow(2);
        let b = &p("x + y") * &p("x - 1");
        assert_eq!(poly_gcd(&a, &b).unwrap(), p("x + y"));
        assert!(poly_gcd(&p("0"), &p("x")).is_err());
    }

    #[test]
    fn gcd_with_univariate_content() {
        let a = &p("x - 2") * &p("y^2 - x");
        let b = &p("x - 2") * &p("y + x");
        assert_eq!(poly_gcd(&a, &b).unwrap(), p("x - 2"));
        let c = &p("x*y - 1") * &p("x + 3");
        let e = &p("x*y - 1") * &p("y - 5");
        assert_eq!(poly_gcd(&c, &e).unwrap(), p("x*y - 1"));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(squarefree_radical(&p("x + y").pow(2)).unwrap(), p("x + y"));
        assert_eq!(squarefree_radical(&p("x^2*y")).unwrap(), p("x*y"));
        assert_eq!(squarefree_radical(&p("x + y - 1")).unwrap(), p("x + y - 1"));
        assert!(squarefree_radical(&p("3")).is_err());
        let cubic = &p("y - x^2").pow(2) * &p("x - 1");
        assert_eq!(squarefree_radical(&cubic).unwrap(), (&p("y - x^2") * &p("x - 1")).canonical());
    }

    #[test]
    fn exact_division() {
        let a = &p("x + 2*y") * &p("x^2 - y + 3");
        assert_eq!(a.div_exact(&p("x + 2*y")).unwrap(), p("x^2 - y + 3"));
        assert!(p("x^2 + 1").div_exact(&p("x")).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_fiber_count(&[1], 2).unwrap(), 2);
        assert_eq!(sigma_fiber_count(&[1, 1], 3).unwrap(), 3);
        assert_eq!(sigma_fiber_count(&[2], 3).unwrap(), 1);
        assert!(sigma_fiber_count(&[], 3).is_err());
    }

    #[test]
    fn curves_compare_by_radical() {
        let a = PlaneCurve::new(p("x + y").pow(2)).unwrap();
        let b = PlaneCurve::new(p("-3*x - 3*y")).unwrap();
        assert_eq!(a, b);
        assert!(PlaneCurve::new(p("7")).is_err());
    }
}
