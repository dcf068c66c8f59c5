//! Matrices with closed-form spectra built from shift operators on arbitrary
//! nodes, their variants on polynomial zero grids, and claim verification.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::askey::{hypergeometric_terminating, shifted_factorial, Family, FamilyParams};
use crate::error::{Error, Result};
use crate::exec::{map_tasks, ExecMode};
use crate::foundation::{NodeSet, VariableMap};
use crate::matrix::{poly_from_roots, ColumnVector, SquareMatrix};
use crate::opcompile::check_eigenpair_scaled;
use crate::scalar::{Backend, Scalar};
use crate::zeros::{find_zeros, ZeroSet};

type C64 = Complex64;

/// Default relative eigen-residual tolerance on the float backend.
pub const EIGEN_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Proposition {
    KHat,
    FHat,
    WHat,
    WBar,
    RHat,
    RBar,
    KCheck,
    YCheck,
    YBar,
}

impl Proposition {
    pub const ALL: [Proposition; 9] = [
        Proposition::KHat,
        Proposition::FHat,
        Proposition::WHat,
        Proposition::WBar,
        Proposition::RHat,
        Proposition::RBar,
        Proposition::KCheck,
        Proposition::YCheck,
        Proposition::YBar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Proposition::KHat => "3.1",
            Proposition::FHat => "3.2",
            Proposition::WHat => "3.3",
            Proposition::WBar => "3.4",
            Proposition::RHat => "3.5",
            Proposition::RBar => "3.6",
            Proposition::KCheck => "3.7",
            Proposition::YCheck => "3.8",
            Proposition::YBar => "3.9",
        }
    }

    /// Matrix name as used on the command line.
    pub fn matrix_name(self) -> &'static str {
        match self {
            Proposition::KHat => "K-hat",
            Proposition::FHat => "F-hat",
            Proposition::WHat => "W-hat",
            Proposition::WBar => "W-bar",
            Proposition::RHat => "R-hat",
            Proposition::RBar => "R-bar",
            Proposition::KCheck => "K-check",
            Proposition::YCheck => "Y-check",
            Proposition::YBar => "Y-bar",
        }
    }

    /// Accepts `3.4`, `prop-3.4` or a matrix name such as `W-bar`.
    pub fn parse(s: &str) -> Result<Self> {
        let id = s.strip_prefix("prop-").unwrap_or(s);
        Self::ALL
            .into_iter()
            .find(|p| p.id() == id || p.matrix_name().eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::Parse(format!("unknown proposition {s:?}")))
    }

    pub fn is_bar(self) -> bool {
        matches!(
            self,
            Proposition::WBar | Proposition::RBar | Proposition::YBar
        )
    }
}

/// Claimed eigenvalues and eigenvectors of a built matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralClaim<S> {
    pub proposition: Proposition,
    pub params: Value,
    pub eigenvalues: Vec<S>,
    pub eigenvectors: Vec<ColumnVector<S>>,
    /// Lower bound for `‖M‖∞` in the relative residuals; the size of the
    /// terms that cancel in a zero-grid matrix, zero otherwise.
    pub scale_floor: f64,
}

/// Outcome of [`verify_claim`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub proposition: &'static str,
    pub n: usize,
    pub backend: Backend,
    pub eigen_residuals: Vec<f64>,
    pub char_poly_match: Option<bool>,
    pub pass: bool,
}

impl SpectralReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `∏_{ℓ≠m} (t - p_ℓ) / (p_m - p_ℓ)`.
fn lagrange_entry<S: Scalar>(points: &[S], t: &S, m: usize) -> S {
    let mut num = S::one();
    let mut den = S::one();
    for (l, p) in points.iter().enumerate() {
        if l != m {
            num = num * (t.clone() - p.clone());
            den = den * (points[m].clone() - p.clone());
        }
    }
    num / den
}

/// One `coefficient · (shifted Lagrange product)` term per row.
struct ShiftTerm<S> {
    coeff: Vec<S>,
    targets: Vec<S>,
}

/// `M_nm = Σ_terms c_n L_m(t_n) + δ_nm d_n` with `L_m` the Lagrange basis on
/// `points`.
fn assemble<S: Scalar>(
    mode: ExecMode,
    points: &[S],
    terms: &[ShiftTerm<S>],
    diag: &[S],
) -> SquareMatrix<S> {
    SquareMatrix::from_fn_with(mode, points.len(), |n, m| {
        let mut v = terms.iter().fold(S::zero(), |acc, t| {
            acc + t.coeff[n].clone() * lagrange_entry(points, &t.targets[n], m)
        });
        if n == m {
            v = v + diag[n].clone();
        }
        v
    })
}

/// Evaluates a coefficient function at every node, naming the node on a pole.
fn at_nodes<S: Scalar>(
    nodes: &[S],
    name: &'static str,
    f: impl Fn(&S) -> Result<S>,
) -> Result<Vec<S>> {
    nodes
        .iter()
        .enumerate()
        .map(|(node, z)| {
            f(z).map_err(|e| match e {
                Error::PoleAtArgument(_) => Error::PoleAtNode {
                    function: name,
                    node,
                },
                other => other,
            })
        })
        .collect()
}

fn neg_sum<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| -(x.clone() + y.clone()))
        .collect()
}

/// The six matrices defined on arbitrary nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum HatMatrix<S> {
    /// `K̂ = Z ∇̂(a)`, eigenvalues `k`.
    KHat { a: S },
    /// `F̂`, eigenvalues `c + α k`.
    FHat { alpha: S, c: S },
    /// `Ŵ`, Wilson parameters.
    WHat(FamilyParams<S>),
    /// `R̂`, Racah parameters.
    RHat(FamilyParams<S>),
    /// `Ǩ = Z ∇̌(q)`, eigenvalues `(1 - q^k)/(1 - q)`.
    KCheck { q: S },
    /// `Y̌`, Askey-Wilson parameters.
    YCheck(FamilyParams<S>),
}

impl<S: Scalar> HatMatrix<S> {
    pub fn proposition(&self) -> Proposition {
        match self {
            HatMatrix::KHat { .. } => Proposition::KHat,
            HatMatrix::FHat { .. } => Proposition::FHat,
            HatMatrix::WHat(_) => Proposition::WHat,
            HatMatrix::RHat(_) => Proposition::RHat,
            HatMatrix::KCheck { .. } => Proposition::KCheck,
            HatMatrix::YCheck(_) => Proposition::YCheck,
        }
    }

    pub fn params_json(&self) -> Value {
        match self {
            HatMatrix::KHat { a } => json!({"a": a.to_json()}),
            HatMatrix::FHat { alpha, c } => json!({"alpha": alpha.to_json(), "c": c.to_json()}),
            HatMatrix::KCheck { q } => json!({"q": q.to_json()}),
            HatMatrix::WHat(p) | HatMatrix::RHat(p) | HatMatrix::YCheck(p) => p.to_json(),
        }
    }

    fn family_params(&self, expected: Family) -> Result<&FamilyParams<S>> {
        match self {
            HatMatrix::WHat(p) | HatMatrix::RHat(p) | HatMatrix::YCheck(p) => {
                if p.family == expected {
                    Ok(p)
                } else {
                    Err(Error::InvalidParameter(
                        "family",
                        format!(
                            "{} needs {} parameters",
                            self.proposition().matrix_name(),
                            expected.as_str()
                        ),
                    ))
                }
            }
            _ => unreachable!("only family matrices carry parameters"),
        }
    }

    /// Claimed `k`-th eigenvalue.
    pub fn eigenvalue(&self, k: usize) -> S {
        let kk = S::from_i64(k as i64);
        match self {
            HatMatrix::KHat { .. } => kk,
            HatMatrix::FHat { alpha, c } => c.clone() + alpha.clone() * kk,
            // 1 + q + ... + q^{k-1}
            HatMatrix::KCheck { q } => (0..k).fold(S::zero(), |acc, j| acc + q.powi(j as i64)),
            HatMatrix::WHat(p) | HatMatrix::RHat(p) | HatMatrix::YCheck(p) => p.eigenvalue(k),
        }
    }

    /// Claimed `k`-th eigenvector sampled on `ns`.
    pub fn eigenvector(&self, k: usize, ns: &NodeSet<S>) -> Result<ColumnVector<S>> {
        let entries = ns
            .nodes()
            .iter()
            .map(|z| match self {
                HatMatrix::KHat { a } => Ok(shifted_factorial(z, a, k)),
                HatMatrix::FHat { alpha, c } => hypergeometric_terminating(z, k, c, alpha),
                HatMatrix::KCheck { .. } => Ok(z.powi(k as i64)),
                HatMatrix::WHat(p) | HatMatrix::RHat(p) | HatMatrix::YCheck(p) => p.eval(k, z),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ColumnVector::new(entries))
    }

    /// The matrix from its explicit entries.
    pub fn matrix(&self, mode: ExecMode, ns: &NodeSet<S>) -> Result<SquareMatrix<S>> {
        let z = ns.nodes();
        let shifted = |d: S| -> Vec<S> { z.iter().map(|x| x.clone() + d.clone()).collect() };
        match self {
            HatMatrix::KHat { a } => {
                if a.is_zero() {
                    return Err(Error::ZeroStep);
                }
                let coeff: Vec<S> = z.iter().map(|x| x.clone() / a.clone()).collect();
                let diag: Vec<S> = coeff.iter().map(|c| -c.clone()).collect();
                let terms = [ShiftTerm {
                    coeff,
                    targets: shifted(a.clone()),
                }];
                Ok(assemble(mode, z, &terms, &diag))
            }
            HatMatrix::FHat { alpha, c } => {
                let one = S::one();
                let terms = [
                    ShiftTerm {
                        coeff: z.iter().map(|x| c.clone() - x.clone()).collect(),
                        targets: shifted(-one.clone()),
                    },
                    ShiftTerm {
                        coeff: z
                            .iter()
                            .map(|x| (alpha.clone() - one.clone()) * x.clone())
                            .collect(),
                        targets: shifted(one.clone()),
                    },
                ];
                let two = S::from_i64(2);
                let diag: Vec<S> = z
                    .iter()
                    .map(|x| (two.clone() - alpha.clone()) * x.clone())
                    .collect();
                Ok(assemble(mode, z, &terms, &diag))
            }
            HatMatrix::KCheck { q } => {
                if *q == S::one() {
                    return Err(Error::UnitQ);
                }
                if let Some(i) = z.iter().position(|x| x.is_zero()) {
                    return Err(Error::ZeroNode(i));
                }
                let c = (q.clone() - S::one()).recip();
                let terms = [ShiftTerm {
                    coeff: vec![c.clone(); z.len()],
                    targets: z.iter().map(|x| q.clone() * x.clone()).collect(),
                }];
                Ok(assemble(mode, z, &terms, &vec![-c; z.len()]))
            }
            HatMatrix::WHat(_) => {
                let p = self.family_params(Family::Wilson)?;
                ns.with_map(p.variable_map())?;
                let f = at_nodes(z, "B", |x| p.forward_coefficient(x))?;
                let b = at_nodes(z, "B", |x| p.backward_coefficient(x))?;
                // Products written in z²: ((z_n ± 1)² - z_ℓ²)/(z_m² - z_ℓ²).
                let sq = |v: Vec<S>| -> Vec<S> { v.into_iter().map(|x| x.clone() * x).collect() };
                let points = sq(z.to_vec());
                let terms = [
                    ShiftTerm {
                        coeff: f.clone(),
                        targets: sq(shifted(S::one())),
                    },
                    ShiftTerm {
                        coeff: b.clone(),
                        targets: sq(shifted(-S::one())),
                    },
                ];
                Ok(assemble(mode, &points, &terms, &neg_sum(&f, &b)))
            }
            HatMatrix::RHat(_) | HatMatrix::YCheck(_) => {
                let family = if matches!(self, HatMatrix::RHat(_)) {
                    Family::Racah
                } else {
                    Family::AskeyWilson
                };
                let p = self.family_params(family)?;
                let (fname, bname) = match family {
                    Family::Racah => ("C", "D"),
                    _ => ("A", "A(1/z)"),
                };
                let mapped = ns.with_map(p.variable_map()).map_err(|e| match e {
                    Error::PoleAtArgument(_) => Error::PoleAtNode {
                        function: "symmetric-inverse map",
                        node: z.iter().position(|x| x.is_zero()).unwrap_or(0),
                    },
                    other => other,
                })?;
                let f = at_nodes(z, fname, |x| p.forward_coefficient(x))?;
                let b = at_nodes(z, bname, |x| p.backward_coefficient(x))?;
                let fwd = at_nodes(z, "ζ", |x| p.zeta(&p.forward_point(x)))?;
                let bwd = at_nodes(z, "ζ", |x| p.zeta(&p.backward_point(x)))?;
                let terms = [
                    ShiftTerm {
                        coeff: f.clone(),
                        targets: fwd,
                    },
                    ShiftTerm {
                        coeff: b.clone(),
                        targets: bwd,
                    },
                ];
                Ok(assemble(mode, mapped.mapped(), &terms, &neg_sum(&f, &b)))
            }
        }
    }

    /// Matrix plus claim, using the default execution mode.
    pub fn build(&self, ns: &NodeSet<S>) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
        self.build_with(ExecMode::default(), ns)
    }

    pub fn build_with(
        &self,
        mode: ExecMode,
        ns: &NodeSet<S>,
    ) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
        let m = self.matrix(mode, ns)?;
        let n = ns.len();
        let eigenvectors = (0..n)
            .map(|k| self.eigenvector(k, ns))
            .collect::<Result<Vec<_>>>()?;
        let claim = SpectralClaim {
            proposition: self.proposition(),
            params: self.params_json(),
            eigenvalues: (0..n).map(|k| self.eigenvalue(k)).collect(),
            eigenvectors,
            scale_floor: 0.0,
        };
        Ok((m, claim))
    }
}

pub fn build_k_hat<S: Scalar>(
    ns: &NodeSet<S>,
    a: S,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::KHat { a }.build(ns)
}

pub fn build_f_hat<S: Scalar>(
    ns: &NodeSet<S>,
    alpha: S,
    c: S,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::FHat { alpha, c }.build(ns)
}

pub fn build_w_hat<S: Scalar>(
    ns: &NodeSet<S>,
    p: &FamilyParams<S>,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::WHat(p.clone()).build(ns)
}

pub fn build_r_hat<S: Scalar>(
    ns: &NodeSet<S>,
    p: &FamilyParams<S>,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::RHat(p.clone()).build(ns)
}

pub fn build_k_check<S: Scalar>(
    ns: &NodeSet<S>,
    q: S,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::KCheck { q }.build(ns)
}

pub fn build_y_check<S: Scalar>(
    ns: &NodeSet<S>,
    p: &FamilyParams<S>,
) -> Result<(SquareMatrix<S>, SpectralClaim<S>)> {
    HatMatrix::YCheck(p.clone()).build(ns)
}

/// Which diagonal to use for the zero-grid matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarDiagonal {
    /// Diagonal obtained by eliminating the backward product with the zero
    /// identity.
    Derived,
    /// Racah diagonal with the product
    /// `∏ (ζ(z̄_n+1) - ζ̄_ℓ)/(ζ(z̄_n-1) - ζ̄_ℓ)`. Kept for comparison; it does
    /// not reproduce the spectrum. Identical to `Derived` for the other
    /// families.
    Literal,
}

/// Factor multiplying `F(z̄_n) L_n(ζ(z̄_n⁺))` on the zero-grid diagonal.
fn bar_factor(p: &FamilyParams<C64>, z: C64) -> C64 {
    match p.family {
        Family::Wilson => 4.0 * z / (2.0 * z - 1.0),
        Family::Racah => {
            let s = 2.0 * z + p.gamma + p.delta;
            2.0 * (s + 1.0) / s
        }
        Family::AskeyWilson => {
            let q = *p.q().expect("askey-wilson carries q");
            (1.0 + q) * (z * z - 1.0) / (z * z - q)
        }
    }
}

/// Zero-grid matrix on a given grid (`zeta[n] = ζ(z[n])`), without
/// recomputing zeros. The off-diagonal entries are those of the hat matrix.
pub fn bar_matrix_on_grid(
    mode: ExecMode,
    p: &FamilyParams<C64>,
    zeta: &[C64],
    z: &[C64],
    diagonal: BarDiagonal,
) -> Result<SquareMatrix<C64>> {
    if zeta.len() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: zeta.len(),
            found: z.len(),
        });
    }
    let names = match p.family {
        Family::Wilson => ("B", "B"),
        Family::Racah => ("C", "D"),
        Family::AskeyWilson => ("A", "A(1/z)"),
    };
    let f = at_nodes(z, names.0, |x| p.forward_coefficient(x))?;
    let b = at_nodes(z, names.1, |x| p.backward_coefficient(x))?;
    let fwd = at_nodes(z, "ζ", |x| p.zeta(&p.forward_point(x)))?;
    let bwd = at_nodes(z, "ζ", |x| p.zeta(&p.backward_point(x)))?;
    let factor = at_nodes(z, "diagonal factor", |x| {
        let v = bar_factor(p, *x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::PoleAtArgument("diagonal factor"))
        }
    })?;
    let literal = diagonal == BarDiagonal::Literal && p.family == Family::Racah;
    Ok(SquareMatrix::from_fn_with(mode, z.len(), |n, m| {
        if n != m {
            return f[n] * lagrange_entry(zeta, &fwd[n], m)
                + b[n] * lagrange_entry(zeta, &bwd[n], m);
        }
        let product: C64 = if literal {
            zeta.iter()
                .enumerate()
                .filter(|&(l, _)| l != n)
                .map(|(_, zl)| (fwd[n] - zl) / (bwd[n] - zl))
                .product()
        } else {
            lagrange_entry(zeta, &fwd[n], n)
        };
        -(f[n] + b[n]) + factor[n] * f[n] * product
    }))
}

/// Claim for a zero-grid matrix: the hat/check eigenpairs sampled at `z̄`.
/// Its scale floor is `max_n |F(z̄_n)| + |G(z̄_n)|`.
pub fn bar_claim(p: &FamilyParams<C64>, zs: &ZeroSet) -> Result<SpectralClaim<C64>> {
    let proposition = match p.family {
        Family::Wilson => Proposition::WBar,
        Family::Racah => Proposition::RBar,
        Family::AskeyWilson => Proposition::YBar,
    };
    let n = zs.n;
    let eigenvectors = (0..n)
        .map(|k| {
            Ok(ColumnVector::new(
                zs.zeta_zeros
                    .iter()
                    .map(|zeta| p.eval_zeta(k, zeta))
                    .collect::<Result<Vec<_>>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralClaim {
        proposition,
        params: p.to_json(),
        eigenvalues: (0..n).map(|k| p.eigenvalue(k)).collect(),
        eigenvectors,
        scale_floor: zs
            .z_lift
            .iter()
            .map(|z| Ok(p.forward_coefficient(z)?.norm() + p.backward_coefficient(z)?.norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max),
    })
}

/// Zero-grid matrix of order `n` for any family, with its claim and zeros.
pub fn build_bar(
    p: &FamilyParams<C64>,
    n: usize,
    diagonal: BarDiagonal,
) -> Result<(SquareMatrix<C64>, SpectralClaim<C64>, ZeroSet)> {
    let zs = find_zeros(p, n)?;
    let m = bar_matrix_on_grid(ExecMode::default(), p, &zs.zeta_zeros, &zs.z_lift, diagonal)?;
    let claim = bar_claim(p, &zs)?;
    Ok((m, claim, zs))
}

fn expect_family(p: &FamilyParams<C64>, family: Family) -> Result<()> {
    if p.family == family {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "family",
            format!("expected {} parameters", family.as_str()),
        ))
    }
}

pub fn build_w_bar(
    p: &FamilyParams<C64>,
    n: usize,
) -> Result<(SquareMatrix<C64>, SpectralClaim<C64>)> {
    expect_family(p, Family::Wilson)?;
    build_bar(p, n, BarDiagonal::Derived).map(|(m, c, _)| (m, c))
}

pub fn build_r_bar(
    p: &FamilyParams<C64>,
    n: usize,
) -> Result<(SquareMatrix<C64>, SpectralClaim<C64>)> {
    expect_family(p, Family::Racah)?;
    build_bar(p, n, BarDiagonal::Derived).map(|(m, c, _)| (m, c))
}

/// `R̄` with the alternative diagonal; see [`BarDiagonal::Literal`].
pub fn build_r_bar_literal(
    p: &FamilyParams<C64>,
    n: usize,
) -> Result<(SquareMatrix<C64>, SpectralClaim<C64>)> {
    expect_family(p, Family::Racah)?;
    build_bar(p, n, BarDiagonal::Literal).map(|(m, c, _)| (m, c))
}

pub fn build_y_bar(
    p: &FamilyParams<C64>,
    n: usize,
) -> Result<(SquareMatrix<C64>, SpectralClaim<C64>)> {
    expect_family(p, Family::AskeyWilson)?;
    build_bar(p, n, BarDiagonal::Derived).map(|(m, c, _)| (m, c))
}

/// Checks every claimed eigenpair, and on exact backends also compares the
/// characteristic polynomial with `∏ (λ - λ_k)`.
pub fn verify_claim<S: Scalar>(
    m: &SquareMatrix<S>,
    claim: &SpectralClaim<S>,
    tol: f64,
) -> SpectralReport {
    verify_claim_with(ExecMode::default(), m, claim, tol)
}

pub fn verify_claim_with<S: Scalar>(
    mode: ExecMode,
    m: &SquareMatrix<S>,
    claim: &SpectralClaim<S>,
    tol: f64,
) -> SpectralReport {
    let n = m.order();
    let shape_ok = claim.eigenvalues.len() == n && claim.eigenvectors.len() == n;
    let checks: Vec<(f64, bool)> = if shape_ok {
        map_tasks(mode, n, |k| {
            let (b, v) = (&claim.eigenvalues[k], &claim.eigenvectors[k]);
            match check_eigenpair_scaled(m, b, v, tol, claim.scale_floor) {
                Ok(r) => (r.max_residual, r.pass),
                Err(_) => (f64::INFINITY, false),
            }
        })
    } else {
        vec![(f64::INFINITY, false)]
    };
    let char_poly_match = if S::is_exact() && shape_ok {
        Some(m.char_poly_exact().ok() == Some(poly_from_roots(&claim.eigenvalues)))
    } else {
        None
    };
    SpectralReport {
        proposition: claim.proposition.id(),
        n,
        backend: S::BACKEND,
        eigen_residuals: checks.iter().map(|c| c.0).collect(),
        char_poly_match,
        pass: checks.iter().all(|c| c.1) && char_poly_match != Some(false),
    }
}

/// The hat matrix of `p`'s family evaluated on the zero grid.
pub fn hat_on_zero_grid(p: &FamilyParams<C64>, zs: &ZeroSet) -> Result<SquareMatrix<C64>> {
    let ns = NodeSet::new(
        zs.z_lift.clone(),
        VariableMap::Identity,
        crate::foundation::DEFAULT_DISTINCT_TOL,
    )?;
    let hat = match p.family {
        Family::Wilson => HatMatrix::WHat(p.clone()),
        Family::Racah => HatMatrix::RHat(p.clone()),
        Family::AskeyWilson => HatMatrix::YCheck(p.clone()),
    };
    hat.matrix(ExecMode::default(), &ns)
}
