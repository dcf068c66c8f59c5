//! Matrix representations of the shift `f(z) → f(z+a)`, the dilation
//! `f(z) → f(qz)` and the two difference operators built from them.
//!
//! For samples `f_n = f(z_n)` of a polynomial of degree `< N` the matrices act
//! exactly: `delta_hat(a) · f` are the samples of `f(z+a)` and
//! `delta_check(q) · f` those of `f(qz)`. The `_mapped` variants do the same
//! for polynomials in `ζ(z)` using the node set's variable map.

use crate::error::{Error, Result};
use crate::foundation::{interpolation_matrix, NodeSet};
use crate::matrix::{ColumnVector, SquareMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum ShiftKind<S> {
    /// `f(z) → f(z + a)`, `a ≠ 0`.
    Additive(S),
    /// `f(z) → f(q z)`, `q ≠ 1`.
    Multiplicative(S),
}

impl<S: Scalar> ShiftKind<S> {
    pub fn additive(a: S) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroStep);
        }
        Ok(ShiftKind::Additive(a))
    }

    pub fn multiplicative(q: S) -> Result<Self> {
        if q == S::one() {
            return Err(Error::UnitQ);
        }
        Ok(ShiftKind::Multiplicative(q))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ShiftKind::Additive(a) if a.is_zero() => Err(Error::ZeroStep),
            ShiftKind::Multiplicative(q) if *q == S::one() => Err(Error::UnitQ),
            _ => Ok(()),
        }
    }

    pub fn value(&self) -> &S {
        match self {
            ShiftKind::Additive(v) | ShiftKind::Multiplicative(v) => v,
        }
    }

    /// Image of a single point.
    pub fn apply(&self, z: &S) -> S {
        match self {
            ShiftKind::Additive(a) => z.clone() + a.clone(),
            ShiftKind::Multiplicative(q) => q.clone() * z.clone(),
        }
    }

    /// The shift that undoes this one.
    pub fn inverse(&self) -> Self {
        match self {
            ShiftKind::Additive(a) => ShiftKind::Additive(-a.clone()),
            ShiftKind::Multiplicative(q) => ShiftKind::Multiplicative(q.recip()),
        }
    }

    /// The shift applied `r` times in a row.
    pub fn iterate(&self, r: usize) -> Self {
        match self {
            ShiftKind::Additive(a) => ShiftKind::Additive(a.clone() * S::from_i64(r as i64)),
            ShiftKind::Multiplicative(q) => ShiftKind::Multiplicative(q.powi(r as i64)),
        }
    }
}

/// `δ̂(a; z)_{nm} = ∏_{ℓ≠m} (z_n + a - z_ℓ)/(z_m - z_ℓ)`. Ignores any
/// variable map on `ns`.
pub fn delta_hat<S: Scalar>(ns: &NodeSet<S>, a: &S) -> SquareMatrix<S> {
    let targets: Vec<S> = ns.nodes().iter().map(|z| z.clone() + a.clone()).collect();
    interpolation_matrix(ns.nodes(), &targets)
}

/// `δ̌(q; z)_{nm} = ∏_{ℓ≠m} (q z_n - z_ℓ)/(z_m - z_ℓ)`. Ignores any variable
/// map on `ns`.
pub fn delta_check<S: Scalar>(ns: &NodeSet<S>, q: &S) -> SquareMatrix<S> {
    let targets: Vec<S> = ns.nodes().iter().map(|z| q.clone() * z.clone()).collect();
    interpolation_matrix(ns.nodes(), &targets)
}

/// `∇̂(a; z) = (δ̂(a; z) - I) / a`.
pub fn nabla_hat<S: Scalar>(ns: &NodeSet<S>, a: &S) -> Result<SquareMatrix<S>> {
    if a.is_zero() {
        return Err(Error::ZeroStep);
    }
    let d = delta_hat(ns, a);
    Ok((&d - &SquareMatrix::identity(ns.len())).scale(&a.recip()))
}

/// `∇̌(q; z) = [(1-q) Z]⁻¹ (I - δ̌(q; z))`.
pub fn nabla_check<S: Scalar>(ns: &NodeSet<S>, q: &S) -> Result<SquareMatrix<S>> {
    if *q == S::one() {
        return Err(Error::UnitQ);
    }
    if let Some(i) = ns.nodes().iter().position(|z| z.is_zero()) {
        return Err(Error::ZeroNode(i));
    }
    let one_minus_q = S::one() - q.clone();
    let row_scale: Vec<S> = ns
        .nodes()
        .iter()
        .map(|z| (one_minus_q.clone() * z.clone()).recip())
        .collect();
    let d = delta_check(ns, q);
    Ok((&SquareMatrix::identity(ns.len()) - &d).scale_rows(&row_scale))
}

/// `δ̃(a; z)_{nm} = ∏_{ℓ≠m} [ζ(z_n + a) - ζ_ℓ]/[ζ_m - ζ_ℓ]`.
pub fn delta_hat_mapped<S: Scalar>(ns: &NodeSet<S>, a: &S) -> Result<SquareMatrix<S>> {
    mapped_shift(ns, &|z: &S| z.clone() + a.clone())
}

/// `δ̆(q; z)_{nm} = ∏_{ℓ≠m} [ζ(q z_n) - ζ_ℓ]/[ζ_m - ζ_ℓ]`.
pub fn delta_check_mapped<S: Scalar>(ns: &NodeSet<S>, q: &S) -> Result<SquareMatrix<S>> {
    mapped_shift(ns, &|z: &S| q.clone() * z.clone())
}

/// `(δ̃(a; z) - I) / a`.
pub fn nabla_hat_mapped<S: Scalar>(ns: &NodeSet<S>, a: &S) -> Result<SquareMatrix<S>> {
    if a.is_zero() {
        return Err(Error::ZeroStep);
    }
    let d = delta_hat_mapped(ns, a)?;
    Ok((&d - &SquareMatrix::identity(ns.len())).scale(&a.recip()))
}

fn mapped_shift<S: Scalar>(ns: &NodeSet<S>, shift: &dyn Fn(&S) -> S) -> Result<SquareMatrix<S>> {
    let targets = ns
        .nodes()
        .iter()
        .map(|z| ns.map().eval(&shift(z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(interpolation_matrix(ns.mapped(), &targets))
}

/// Shift matrix for `kind`, honoring the node set's variable map.
pub fn shift_matrix<S: Scalar>(ns: &NodeSet<S>, kind: &ShiftKind<S>) -> Result<SquareMatrix<S>> {
    match kind {
        ShiftKind::Additive(a) => delta_hat_mapped(ns, a),
        ShiftKind::Multiplicative(q) => delta_check_mapped(ns, q),
    }
}

/// Samples of the shifted function, `f(z+a)` or `f(qz)` (composed with the
/// variable map when one is set).
pub fn shift_samples<S: Scalar>(
    ns: &NodeSet<S>,
    kind: &ShiftKind<S>,
    samples: &ColumnVector<S>,
) -> Result<ColumnVector<S>> {
    kind.validate()?;
    shift_matrix(ns, kind)?.mul_vec(samples)
}
