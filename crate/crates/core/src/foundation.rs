//! Interpolation nodes, Lagrange interpolation and the basic node matrices
//! `Z`, `D`, `V` and the vector `w`.
//!
//! Node indices are zero-based throughout the crate.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{ColumnVector, SquareMatrix};
use crate::scalar::{parse_scalar, Scalar};

/// Default relative distinctness tolerance for the float backend.
pub const DEFAULT_DISTINCT_TOL: f64 = 1e-9;

/// Change of variable `ζ(z)` in which a family is polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum VariableMap<S> {
    Identity,
    /// `ζ = -z²`
    NegSquare,
    /// `ζ = z (z + γ + δ + 1)`
    Racah {
        gamma: S,
        delta: S,
    },
    /// `ζ = (z + 1/z) / 2`
    SymmetricInverse,
}

impl<S: Scalar> VariableMap<S> {
    pub fn eval(&self, z: &S) -> Result<S> {
        Ok(match self {
            VariableMap::Identity => z.clone(),
            VariableMap::NegSquare => -(z.clone() * z.clone()),
            VariableMap::Racah { gamma, delta } => {
                z.clone() * (z.clone() + gamma.clone() + delta.clone() + S::one())
            }
            VariableMap::SymmetricInverse => {
                if z.is_zero() {
                    return Err(Error::PoleAtArgument("symmetric-inverse map"));
                }
                (z.clone() + z.recip()) / S::from_i64(2)
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, VariableMap::Identity)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VariableMap::Identity => "identity",
            VariableMap::NegSquare => "neg-square",
            VariableMap::Racah { .. } => "racah",
            VariableMap::SymmetricInverse => "symmetric-inverse",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            VariableMap::Racah { gamma, delta } => json!({
                "kind": "racah",
                "gamma": gamma.to_json(),
                "delta": delta.to_json(),
            }),
            other => json!({ "kind": other.kind() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("variable map needs a \"kind\"".into()))?;
        Ok(match kind {
            "identity" => VariableMap::Identity,
            "neg-square" => VariableMap::NegSquare,
            "symmetric-inverse" => VariableMap::SymmetricInverse,
            "racah" => {
                let field = |name: &str| -> Result<S> {
                    let raw = v
                        .get(name)
                        .ok_or_else(|| Error::Parse(format!("racah map needs {name:?}")))?;
                    scalar_from_json_or_literal(raw)
                };
                VariableMap::Racah {
                    gamma: field("gamma")?,
                    delta: field("delta")?,
                }
            }
            other => return Err(Error::Parse(format!("unknown map kind {other:?}"))),
        })
    }
}

/// Accepts either the backend's JSON scalar encoding or a string literal
/// such as `"1/2"` or `"1+2i"`.
pub fn scalar_from_json_or_literal<S: Scalar>(v: &Value) -> Result<S> {
    S::from_json(v).or_else(|err| match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_scalar(&n.to_string()),
        _ => Err(err),
    })
}

/// `N` pairwise-distinct interpolation nodes plus an optional variable map.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<S> {
    nodes: Vec<S>,
    map: VariableMap<S>,
    mapped: Vec<S>,
    tolerance: f64,
}

impl<S: Scalar> NodeSet<S> {
    pub fn new(nodes: Vec<S>, map: VariableMap<S>, tolerance: f64) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let nodes = nodes
            .into_iter()
            .map(Scalar::checked)
            .collect::<Result<Vec<_>>>()?;
        if let Some((i, j)) = first_coincidence(&nodes, tolerance) {
            return Err(Error::DuplicateNodes(i, j));
        }
        let mapped = nodes
            .iter()
            .map(|z| map.eval(z).and_then(Scalar::checked))
            .collect::<Result<Vec<_>>>()?;
        if !map.is_identity() {
            if let Some((i, j)) = first_coincidence(&mapped, tolerance) {
                return Err(Error::DegenerateMap(i, j));
            }
        }
        Ok(Self {
            nodes,
            map,
            mapped,
            tolerance,
        })
    }

    /// Identity map, default tolerance.
    pub fn plain(nodes: Vec<S>) -> Result<Self> {
        Self::new(nodes, VariableMap::Identity, DEFAULT_DISTINCT_TOL)
    }

    pub fn with_map(&self, map: VariableMap<S>) -> Result<Self> {
        Self::new(self.nodes.clone(), map, self.tolerance)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    /// `ζ(z_n)`; equal to the nodes for the identity map.
    pub fn mapped(&self) -> &[S] {
        &self.mapped
    }

    pub fn map(&self) -> &VariableMap<S> {
        &self.map
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Samples `f(z_n)`.
    pub fn sample(&self, f: impl Fn(&S) -> S) -> ColumnVector<S> {
        ColumnVector::new(self.nodes.iter().map(f).collect())
    }
}

fn first_coincidence<S: Scalar>(values: &[S], tolerance: f64) -> Option<(usize, usize)> {
    let scale = values.iter().map(Scalar::magnitude).fold(1.0_f64, f64::max);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let same = if S::is_exact() {
                values[i] == values[j]
            } else {
                (values[i].clone() - values[j].clone()).magnitude() <= tolerance * scale
            };
            if same {
                return Some((i, j));
            }
        }
    }
    None
}

/// Barycentric-style weights `∏_{ℓ≠m} 1/(p_m - p_ℓ)`.
pub(crate) fn lagrange_weights<S: Scalar>(points: &[S]) -> Vec<S> {
    (0..points.len())
        .map(|m| {
            points
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != m)
                .fold(S::one(), |acc, (_, p)| {
                    acc * (points[m].clone() - p.clone())
                })
                .recip()
        })
        .collect()
}

/// `∏_{ℓ≠m} (t - p_ℓ) / (p_m - p_ℓ)` with a precomputed weight.
fn basis_with_weight<S: Scalar>(points: &[S], weight: &S, m: usize, t: &S) -> S {
    points
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != m)
        .fold(weight.clone(), |acc, (_, p)| acc * (t.clone() - p.clone()))
}

/// Matrix with entries `∏_{ℓ≠m} (t_n - p_ℓ)/(p_m - p_ℓ)`: the `m`-th Lagrange
/// basis polynomial on `points` evaluated at `targets[n]`. Every shift matrix
/// is of this form for a suitable choice of targets.
pub fn interpolation_matrix<S: Scalar>(points: &[S], targets: &[S]) -> SquareMatrix<S> {
    assert_eq!(
        points.len(),
        targets.len(),
        "points/targets length mismatch"
    );
    let weights = lagrange_weights(points);
    SquareMatrix::from_fn(points.len(), |n, m| {
        basis_with_weight(points, &weights[m], m, &targets[n])
    })
}

/// `p_{N-1}^{(n)}(z) = ∏_{ℓ≠n} (z - z_ℓ)/(z_n - z_ℓ)`.
pub fn lagrange_basis<S: Scalar>(ns: &NodeSet<S>, n: usize, z: &S) -> S {
    assert!(n < ns.len(), "basis index {n} out of range");
    let nodes = ns.nodes();
    nodes
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != n)
        .fold(S::one(), |acc, (_, zl)| {
            acc * (z.clone() - zl.clone()) / (nodes[n].clone() - zl.clone())
        })
}

/// Value at `z` of the unique polynomial of degree `< N` through the samples.
pub fn interpolate<S: Scalar>(ns: &NodeSet<S>, samples: &ColumnVector<S>, z: &S) -> Result<S> {
    check_len(ns, samples)?;
    Ok((0..ns.len()).fold(S::zero(), |acc, n| {
        acc + samples[n].clone() * lagrange_basis(ns, n, z)
    }))
}

pub fn matrix_z<S: Scalar>(ns: &NodeSet<S>) -> SquareMatrix<S> {
    SquareMatrix::diagonal(ns.nodes())
}

/// `D_nn = Σ_{ℓ≠n} 1/(z_n - z_ℓ)`, `D_nm = 1/(z_n - z_m)`.
pub fn matrix_d<S: Scalar>(ns: &NodeSet<S>) -> SquareMatrix<S> {
    let z = ns.nodes();
    let n = z.len();
    SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            (0..n).filter(|&l| l != i).fold(S::zero(), |acc, l| {
                acc + (z[i].clone() - z[l].clone()).recip()
            })
        } else {
            (z[i].clone() - z[j].clone()).recip()
        }
    })
}

/// `V = diag(∏_{ℓ≠n} (z_n - z_ℓ))`.
pub fn matrix_v<S: Scalar>(ns: &NodeSet<S>) -> SquareMatrix<S> {
    let w = lagrange_weights(ns.nodes());
    SquareMatrix::diagonal(&w.iter().map(Scalar::recip).collect::<Vec<_>>())
}

/// `w = V⁻¹ u`, i.e. `w_n = ∏_{ℓ≠n} 1/(z_n - z_ℓ)`.
pub fn vector_w<S: Scalar>(ns: &NodeSet<S>) -> ColumnVector<S> {
    ColumnVector::new(lagrange_weights(ns.nodes()))
}

/// Samples of the `r`-th derivative, `(V D V⁻¹)^r f`. Exact for samples of a
/// polynomial of degree `< N`.
pub fn derivative_samples<S: Scalar>(
    ns: &NodeSet<S>,
    samples: &ColumnVector<S>,
    r: usize,
) -> Result<ColumnVector<S>> {
    check_len(ns, samples)?;
    let w = lagrange_weights(ns.nodes());
    let d = matrix_d(ns);
    let mut g = ColumnVector::new(
        samples
            .iter()
            .zip(&w)
            .map(|(f, wn)| f.clone() * wn.clone())
            .collect(),
    );
    for _ in 0..r {
        g = d.mul_vec(&g)?;
    }
    Ok(ColumnVector::new(
        g.iter()
            .zip(&w)
            .map(|(x, wn)| x.clone() / wn.clone())
            .collect(),
    ))
}

fn check_len<S: Scalar>(ns: &NodeSet<S>, v: &ColumnVector<S>) -> Result<()> {
    if v.len() != ns.len() {
        return Err(Error::DimensionMismatch {
            expected: ns.len(),
            found: v.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    fn ns01() -> NodeSet<Q> {
        NodeSet::plain(ints(&[0, 1])).unwrap()
    }

    #[test]
    fn node_set_validation() {
        assert_eq!(ns01().len(), 2);
        assert_eq!(
            NodeSet::plain(ints(&[1, 1])).unwrap_err(),
            Error::DuplicateNodes(0, 1)
        );
        assert_eq!(
            NodeSet::new(ints(&[1, -1]), VariableMap::NegSquare, DEFAULT_DISTINCT_TOL).unwrap_err(),
            Error::DegenerateMap(0, 1)
        );
        assert_eq!(
            NodeSet::<Q>::plain(vec![]).unwrap_err(),
            Error::EmptyNodeSet
        );
        let close = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-12, 0.0)];
        assert!(matches!(
            NodeSet::plain(close),
            Err(Error::DuplicateNodes(0, 1))
        ));
        assert_eq!(
            NodeSet::plain(vec![Complex64::new(f64::INFINITY, 0.0)]).unwrap_err(),
            Error::NonFinite
        );
    }

    #[test]
    fn lagrange_basis_values() {
        let ns = ns01();
        assert_eq!(lagrange_basis(&ns, 0, &q(0, 1)), q(1, 1));
        assert_eq!(lagrange_basis(&ns, 0, &q(1, 1)), q(0, 1));
        assert_eq!(lagrange_basis(&ns, 0, &q(1, 2)), q(1, 2));
        let single = NodeSet::plain(ints(&[5])).unwrap();
        assert_eq!(lagrange_basis(&single, 0, &q(-3, 1)), q(1, 1));
    }

    #[test]
    fn interpolation_examples() {
        let ns = ns01();
        let f = ns.sample(|z| q(2, 1) * z.clone() + q(3, 1));
        assert_eq!(interpolate(&ns, &f, &q(5, 1)).unwrap(), q(13, 1));
        assert_eq!(interpolate(&ns, &f, &q(1, 1)).unwrap(), q(5, 1));
        let c = ColumnVector::new(vec![q(7, 3); 2]);
        assert_eq!(interpolate(&ns, &c, &q(-11, 2)).unwrap(), q(7, 3));
        assert!(interpolate(&ns, &ColumnVector::ones(3), &q(0, 1)).is_err());
    }

    #[test]
    fn node_matrices_on_zero_one() {
        let ns = ns01();
        assert_eq!(
            matrix_d(&ns),
            SquareMatrix::from_row_major(2, ints(&[-1, -1, 1, 1])).unwrap()
        );
        assert_eq!(matrix_v(&ns), SquareMatrix::diagonal(&ints(&[-1, 1])));
        assert_eq!(vector_w(&ns), ColumnVector::new(ints(&[-1, 1])));
        assert_eq!(matrix_z(&ns), SquareMatrix::diagonal(&ints(&[0, 1])));
    }

    #[test]
    fn single_node_matrices() {
        let ns = NodeSet::plain(ints(&[4])).unwrap();
        assert_eq!(matrix_d(&ns), SquareMatrix::zeros(1));
        assert_eq!(matrix_v(&ns), SquareMatrix::identity(1));
        assert_eq!(vector_w(&ns), ColumnVector::ones(1));
    }

    #[test]
    fn derivative_examples() {
        let ns = ns01();
        let f = ColumnVector::new(ints(&[3, 5]));
        assert_eq!(
            derivative_samples(&ns, &f, 1).unwrap(),
            ColumnVector::new(ints(&[2, 2]))
        );
        assert_eq!(derivative_samples(&ns, &f, 0).unwrap(), f);
        assert!(derivative_samples(&ns, &f, 2).unwrap().is_zero());
    }

    #[test]
    fn map_json_round_trip() {
        let m: VariableMap<Q> = VariableMap::Racah {
            gamma: q(1, 2),
            delta: q(3, 1),
        };
        assert_eq!(VariableMap::from_json(&m.to_json()).unwrap(), m);
        let lit = json!({"kind": "racah", "gamma": "1/2", "delta": 3});
        assert_eq!(VariableMap::<Q>::from_json(&lit).unwrap(), m);
    }
}
