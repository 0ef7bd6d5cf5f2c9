use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field of characteristic zero usable by the linear-algebra core.
pub trait ExactField:
    Clone + Debug + Display + Eq + Ord + Hash + Num + Signed + Send + Sync + 'static
{
    /// Rescales a row by a nonzero constant so that its entries become
    /// integral. The default leaves the row untouched.
    fn clear_denominators(_row: &mut [Self]) {}
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Debug + Display + Integer + Signed + Hash + Send + Sync + 'static,
{
    fn clear_denominators(row: &mut [Self]) {
        let mut l = T::one();
        for v in row.iter() {
            if !v.is_zero() {
                l = l.lcm(v.denom());
            }
        }
        if !l.is_one() {
            let s = Ratio::from_integer(l);
            for v in row.iter_mut() {
                *v = v.clone() * s.clone();
            }
        }
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(BigRational::from_integer)
            .map_err(|_| Error::Parse(format!("bad rational {t:?}")))
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient C(n, k) for small arguments.
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn clears_denominators_up_to_scale() {
        let mut row = vec![frac(1, 2), frac(2, 3), rat(0)];
        BigRational::clear_denominators(&mut row);
        assert_eq!(row, vec![rat(3), rat(4), rat(0)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(12, 9), 220);
    }
}
