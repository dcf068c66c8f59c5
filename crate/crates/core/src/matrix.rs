//! Dense square matrices and column vectors over a [`Scalar`].

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::scalar::{Backend, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnVector<S> {
    entries: Vec<S>,
}

impl<S: Scalar> ColumnVector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![S::zero(); n])
    }

    /// The all-ones vector `u`.
    pub fn ones(n: usize) -> Self {
        Self::new(vec![S::one(); n])
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> S) -> Self {
        Self::new((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.entries.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.len(),
            "backend": S::BACKEND.as_str(),
            "entries": self.entries.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (n, entries) = parse_container::<S>(v)?;
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        Ok(Self::new(entries))
    }
}

impl<S> Index<usize> for ColumnVector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.entries[i]
    }
}

impl<S: Scalar> Sub for &ColumnVector<S> {
    type Output = ColumnVector<S>;
    fn sub(self, rhs: Self) -> ColumnVector<S> {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        ColumnVector::new(
            self.iter()
                .zip(rhs.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SquareMatrix<S> {
    /// Row-major entries; fails unless `entries.len() == n * n`.
    pub fn from_row_major(n: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S + Sync + Send) -> Self {
        Self::from_fn_with(ExecMode::default(), n, f)
    }

    pub fn from_fn_with(
        mode: ExecMode,
        n: usize,
        f: impl Fn(usize, usize) -> S + Sync + Send,
    ) -> Self {
        let entries = exec::map_range(mode, n * n, |idx| f(idx / n, idx % n));
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Left multiplication by `diag(d)`: row `i` scaled by `d[i]`.
    pub fn scale_rows(&self, d: &[S]) -> Self {
        assert_eq!(d.len(), self.n, "diagonal length mismatch");
        Self::from_fn(self.n, |i, j| d[i].clone() * self[(i, j)].clone())
    }

    pub fn mul_vec(&self, v: &ColumnVector<S>) -> Result<ColumnVector<S>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(ColumnVector::from_fn(self.n, |i| {
            self.row(i)
                .iter()
                .zip(v.iter())
                .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        }))
    }

    /// `self^k` by repeated multiplication; `self^0 = I`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "matrix order mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    /// Gaussian elimination with partial pivoting on magnitude. Exact on the
    /// exact backends; plain LU without refinement in floating point.
    pub fn determinant(&self) -> S {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r1, &r2| {
                    a[r1 * n + col]
                        .magnitude()
                        .total_cmp(&a[r2 * n + col].magnitude())
                });
            let Some(p) = pivot else {
                return S::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pv = a[col * n + col].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / pv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = factor.clone() * a[col * n + j].clone();
                    a[r * n + j] = a[r * n + j].clone() - sub;
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial `det(λI - M)` by the Faddeev–LeVerrier
    /// recursion, coefficients lowest degree first. Exact backends only.
    pub fn char_poly_exact(&self) -> Result<Vec<S>> {
        if !S::is_exact() {
            return Err(Error::BackendMismatch);
        }
        let n = self.n;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            let am = self * &next;
            coeffs[n - k] = -(am.trace() / S::from_i64(k as i64));
            m = next;
        }
        Ok(coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "backend": S::BACKEND.as_str(),
            "entries": self.entries.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (n, entries) = parse_container::<S>(v)?;
        Self::from_row_major(n, entries)
    }
}

fn parse_container<S: Scalar>(v: &Value) -> Result<(usize, Vec<S>)> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
    let backend = v
        .get("backend")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field \"backend\"".into()))?;
    if Backend::parse(backend)? != S::BACKEND {
        return Err(Error::Parse(format!(
            "backend {backend:?} does not match {:?}",
            S::BACKEND.as_str()
        )));
    }
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"entries\"".into()))?
        .iter()
        .map(S::from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok((n, entries))
}

/// Coefficients (lowest first) of `∏ (λ - r)`.
pub fn poly_from_roots<S: Scalar>(roots: &[S]) -> Vec<S> {
    let mut coeffs = vec![S::one()];
    for r in roots {
        let mut next = vec![S::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + c.clone();
            next[i] = next[i].clone() - c.clone() * r.clone();
        }
        coeffs = next;
    }
    coeffs
}

impl<S> Index<(usize, usize)> for SquareMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for SquareMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.entries[i * self.n + j]
    }
}

impl<S: Scalar> Mul for &SquareMatrix<S> {
    type Output = SquareMatrix<S>;
    fn mul(self, rhs: Self) -> SquareMatrix<S> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        let n = self.n;
        SquareMatrix::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        })
    }
}

impl<S: Scalar> Add for &SquareMatrix<S> {
    type Output = SquareMatrix<S>;
    fn add(self, rhs: Self) -> SquareMatrix<S> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &SquareMatrix<S> {
    type Output = SquareMatrix<S>;
    fn sub(self, rhs: Self) -> SquareMatrix<S> {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(n: usize, v: &[i64]) -> SquareMatrix<BigRational> {
        SquareMatrix::from_row_major(n, v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn determinant_by_hand() {
        assert_eq!(mat(2, &[0, 1, -1, 2]).determinant(), q(1));
        assert_eq!(mat(3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]).determinant(), q(6));
        assert_eq!(mat(2, &[1, 2, 2, 4]).determinant(), q(0));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = SquareMatrix::diagonal(&[q(0), q(1)]);
        assert_eq!(m.char_poly_exact().unwrap(), vec![q(0), q(-1), q(1)]);
    }

    #[test]
    fn char_poly_matches_brute_force_expansion() {
        // det(λI - M) at λ = 0..=3 equals the polynomial value.
        let m = mat(3, &[1, 2, 0, -1, 3, 4, 2, 0, 5]);
        let cp = m.char_poly_exact().unwrap();
        for lam in 0..=3 {
            let shifted = &SquareMatrix::identity(3).scale(&q(lam)) - &m;
            let value = cp
                .iter()
                .rev()
                .fold(q(0), |acc, c| acc * q(lam) + c.clone());
            assert_eq!(shifted.determinant(), value);
        }
    }

    #[test]
    fn char_poly_rejects_float() {
        let m = SquareMatrix::<num_complex::Complex64>::identity(2);
        assert_eq!(m.char_poly_exact(), Err(Error::BackendMismatch));
    }

    #[test]
    fn roots_to_poly() {
        assert_eq!(poly_from_roots(&[q(0), q(1)]), vec![q(0), q(-1), q(1)]);
    }

    #[test]
    fn json_rejects_wrong_backend() {
        let m = mat(1, &[3]);
        let v = m.to_json();
        assert!(SquareMatrix::<num_complex::Complex64>::from_json(&v).is_err());
        assert_eq!(SquareMatrix::<BigRational>::from_json(&v).unwrap(), m);
    }
}
