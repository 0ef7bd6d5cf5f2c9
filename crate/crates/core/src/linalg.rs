//! Exact dense linear algebra and affine flats over an [`ExactField`].
//!
//! Rank uses fraction-free elimination. Nullspaces and flats are returned in
//! reduced echelon form, so equal subspaces always compare equal.

use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// A rectangular matrix stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
}

impl<T: ExactField> DenseMatrix<T> {
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
        }
        Ok(DenseMatrix { cols, rows })
    }

    pub fn zeros(nrows: usize, cols: usize) -> Self {
        DenseMatrix { cols, rows: vec![vec![T::zero(); cols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.cols, &self.rows)
    }

    pub fn nullspace(&self) -> Vec<Vec<T>> {
        nullspace_of_rows(self.cols, &self.rows)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(self.rows.iter().map(|r| dot(r, v)).collect())
    }
}

pub fn rank<T: ExactField>(m: &DenseMatrix<T>) -> usize {
    m.rank()
}

pub fn nullspace<T: ExactField>(m: &DenseMatrix<T>) -> Vec<Vec<T>> {
    m.nullspace()
}

pub fn dot<T: ExactField>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn sub<T: ExactField>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

/// Rank of the matrix whose rows are `rows`, each of length `cols`.
pub fn rank_of_rows<T: ExactField>(cols: usize, rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    for r in m.iter_mut() {
        T::clear_denominators(r);
    }
    let n = m.len();
    let mut r = 0;
    let mut prev = T::one();
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let pivot = m[r][c].clone();
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for (x, y) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *x = (x.clone() * pivot.clone() - lead.clone() * y.clone()) / prev.clone();
            }
            row[c] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
pub fn rref<T: ExactField>(cols: usize, rows: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let n = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = T::one() / m[r][c].clone();
        for x in m[r][c..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical basis of the right nullspace: the reduced echelon basis of the
/// solution space, so the first nonzero entry of every vector is 1.
pub fn nullspace_of_rows<T: ExactField>(cols: usize, rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let (r, pivots) = rref(cols, rows);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); cols];
        v[f] = T::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        basis.push(v);
    }
    rref(cols, &basis).0
}

/// Affine dimension of a point list: rank of the homogenized matrix minus one.
pub fn affine_dim<T: ExactField>(points: &[Vec<T>]) -> isize {
    let Some(first) = points.first() else { return -1 };
    let rows: Vec<Vec<T>> = points.iter().skip(1).map(|p| sub(p, first)).collect();
    rank_of_rows(first.len(), &rows) as isize
}

/// An affine subspace of `T^n`, possibly empty.
///
/// The direction basis is kept in reduced echelon form and the basepoint is
/// reduced against it, so two flats are equal iff they are the same set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat<T> {
    ambient_dim: usize,
    basepoint: Option<Vec<T>>,
    directions: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: ExactField> Flat<T> {
    pub fn empty(ambient_dim: usize) -> Self {
        Flat { ambient_dim, basepoint: None, directions: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Self::from_parts(vec![T::zero(); ambient_dim], DenseMatrix::<T>::identity(ambient_dim).rows)
    }

    fn from_parts(base: Vec<T>, dirs: Vec<Vec<T>>) -> Self {
        let n = base.len();
        let (directions, pivots) = rref(n, &dirs);
        let mut flat = Flat { ambient_dim: n, basepoint: None, directions, pivots };
        flat.basepoint = Some(flat.reduce(&base));
        flat
    }

    /// Smallest flat containing every point of `points`.
    pub fn span(ambient_dim: usize, points: &[Vec<T>]) -> Result<Self> {
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.len() });
            }
        }
        let Some(first) = points.first() else { return Ok(Self::empty(ambient_dim)) };
        let dirs = points.iter().skip(1).map(|p| sub(p, first)).collect();
        Ok(Self::from_parts(first.clone(), dirs))
    }

    /// The solution set of `c[0] + c[1] z_1 + ... + c[n] z_n = 0` over all
    /// rows `c` of `equations`.
    pub fn from_equations(ambient_dim: usize, equations: &[Vec<T>]) -> Result<Self> {
        let mut aug = Vec::with_capacity(equations.len());
        for eq in equations {
            if eq.len() != ambient_dim + 1 {
                return Err(Error::DimensionMismatch { expected: ambient_dim + 1, found: eq.len() });
            }
            let mut row: Vec<T> = eq[1..].to_vec();
            row.push(-eq[0].clone());
            aug.push(row);
        }
        let (r, pivots) = rref(ambient_dim + 1, &aug);
        if pivots.last() == Some(&ambient_dim) {
            return Ok(Self::empty(ambient_dim));
        }
        let mut base = vec![T::zero(); ambient_dim];
        for (row, &p) in r.iter().zip(&pivots) {
            base[p] = row[ambient_dim].clone();
        }
        let coeffs: Vec<Vec<T>> = r.iter().map(|row| row[..ambient_dim].to_vec()).collect();
        let dirs = nullspace_of_rows(ambient_dim, &coeffs);
        Ok(Self::from_parts(base, dirs))
    }

    fn reduce(&self, z: &[T]) -> Vec<T> {
        let mut v = z.to_vec();
        for (row, &p) in self.directions.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        v
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> isize {
        if self.basepoint.is_none() {
            -1
        } else {
            self.directions.len() as isize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.basepoint.is_none()
    }

    pub fn basepoint(&self) -> Option<&[T]> {
        self.basepoint.as_deref()
    }

    pub fn directions(&self) -> &[Vec<T>] {
        &self.directions
    }

    pub fn contains(&self, z: &[T]) -> Result<bool> {
        if z.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: z.len() });
        }
        let Some(base) = &self.basepoint else { return Ok(false) };
        let diff = sub(z, base);
        Ok(self.reduce(&diff).iter().all(|v| v.is_zero()))
    }

    /// A basis of the affine equations `c0 + c·z = 0` cutting out the flat,
    /// in reduced echelon form. The empty flat yields the single equation `1 = 0`.
    pub fn equations(&self) -> Vec<Vec<T>> {
        let n = self.ambient_dim;
        let Some(base) = &self.basepoint else {
            let mut e = vec![T::zero(); n + 1];
            e[0] = T::one();
            return vec![e];
        };
        let mut rows = Vec::with_capacity(self.directions.len() + 1);
        let mut b = vec![T::one()];
        b.extend(base.iter().cloned());
        rows.push(b);
        for d in &self.directions {
            let mut r = vec![T::zero()];
            r.extend(d.iter().cloned());
            rows.push(r);
        }
        nullspace_of_rows(n + 1, &rows)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut eqs = self.equations();
        eqs.extend(other.equations());
        Self::from_equations(self.ambient_dim, &eqs)
    }

    /// Smallest flat containing this flat and `z`.
    pub fn join_point(&self, z: &[T]) -> Result<Self> {
        if z.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: z.len() });
        }
        let Some(base) = &self.basepoint else {
            return Self::span(self.ambient_dim, &[z.to_vec()]);
        };
        let mut dirs = self.directions.clone();
        dirs.push(sub(z, base));
        Ok(Self::from_parts(base.clone(), dirs))
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        let Some(base) = &self.basepoint else { return Ok(true) };
        if !other.contains(base)? {
            return Ok(false);
        }
        for d in &self.directions {
            let tip: Vec<T> = base.iter().zip(d).map(|(a, b)| a.clone() + b.clone()).collect();
            if !other.contains(&tip)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn flat_span<T: ExactField>(ambient_dim: usize, points: &[Vec<T>]) -> Result<Flat<T>> {
    Flat::span(ambient_dim, points)
}

pub fn flat_membership<T: ExactField>(flat: &Flat<T>, z: &[T]) -> Result<bool> {
    flat.contains(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};
    use num_rational::{BigRational, Rational64};

    fn m(rows: &[&[i64]]) -> DenseMatrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        DenseMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(DenseMatrix::<BigRational>::identity(3).rank(), 3);
        assert_eq!(m(&[&[1, 2], &[1, 2]]).rank(), 1);
        assert_eq!(m(&[&[1, 0], &[0, 1], &[1, 1]]).rank(), 2);
        assert_eq!(DenseMatrix::<BigRational>::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        assert_eq!(m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]).rank(), 2);
        assert_eq!(m(&[&[0, 0, 0], &[0, 0, 5]]).rank(), 1);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(DenseMatrix::from_rows(2, vec![v(&[1, 2]), v(&[1])]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(m(&[&[1, 1]]).nullspace(), vec![v(&[1, -1])]);
        assert!(DenseMatrix::<BigRational>::identity(3).nullspace().is_empty());
        assert_eq!(DenseMatrix::<BigRational>::zeros(2, 3).nullspace().len(), 3);
    }

    #[test]
    fn nullspace_is_canonical_and_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(a.mul_vec(x).unwrap().iter().all(|e| *e == rat(0)));
            let first = x.iter().find(|e| **e != rat(0)).unwrap();
            assert_eq!(*first, rat(1));
        }
        let scaled = m(&[&[2, 4, 6, 9], &[3, 6, 9, 12]]);
        assert_eq!(scaled.nullspace(), ns);
    }

    #[test]
    fn span_examples() {
        let e = Flat::<BigRational>::span(2, &[]).unwrap();
        assert_eq!(e.dim(), -1);
        assert!(!e.contains(&v(&[0, 0])).unwrap());
        assert_eq!(Flat::span(2, &[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap().dim(), 2);
        let line = Flat::span(2, &[v(&[0, 0]), v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert_eq!(line.dim(), 1);
        assert_eq!(line.directions(), &[v(&[1, 1])]);
        assert!(line.contains(&v(&[2, 2])).unwrap());
        assert!(!line.contains(&v(&[1, 0])).unwrap());
        assert!(line.contains(&v(&[1])).is_err());
    }

    #[test]
    fn flats_compare_as_sets() {
        let a = Flat::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Flat::span(3, &[v(&[2, -1, 0]), v(&[-1, 2, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn equations_cut_out_the_flat() {
        let f = Flat::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let eqs = f.equations();
        assert_eq!(eqs.len(), 2);
        assert_eq!(Flat::from_equations(3, &eqs).unwrap(), f);
        let p = Flat::span(3, &[v(&[1, 2, 3])]).unwrap();
        assert_eq!(Flat::from_equations(3, &p.equations()).unwrap(), p);
        assert!(Flat::<BigRational>::from_equations(2, &Flat::empty(2).equations()).unwrap().is_empty());
    }

    #[test]
    fn intersection_and_join() {
        let x_axis = Flat::span(2, &[v(&[0, 0]), v(&[1, 0])]).unwrap();
        let diag = Flat::span(2, &[v(&[1, 1]), v(&[2, 2])]).unwrap();
        let meet = x_axis.intersection(&diag).unwrap();
        assert_eq!(meet, Flat::span(2, &[v(&[0, 0])]).unwrap());
        let parallel = Flat::span(2, &[v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert!(x_axis.intersection(&parallel).unwrap().is_empty());
        let plane = x_axis.join_point(&v(&[0, 1])).unwrap();
        assert_eq!(plane.dim(), 2);
        assert!(x_axis.is_subset_of(&plane).unwrap());
        assert!(!plane.is_subset_of(&x_axis).unwrap());
    }

    #[test]
    fn affine_dim_matches_span() {
        let pts = vec![v(&[0, 0, 1]), v(&[1, 1, 1]), v(&[2, 2, 1]), v(&[0, 1, 0])];
        assert_eq!(affine_dim(&pts), Flat::span(3, &pts).unwrap().dim());
        assert_eq!(affine_dim::<BigRational>(&[]), -1);
    }

    #[test]
    fn small_rationals_agree_with_big_rationals() {
        let rows = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), rat(1)]];
        let small = vec![
            vec![Rational64::new(1, 2), Rational64::new(1, 3)],
            vec![Rational64::new(3, 2), Rational64::new(1, 1)],
        ];
        assert_eq!(rank_of_rows(2, &rows), 1);
        assert_eq!(rank_of_rows(2, &small), 1);
    }
}
