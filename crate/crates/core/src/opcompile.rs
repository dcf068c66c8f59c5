//! Compiles difference-operator expressions `Σ_r d_r(z) (shift)^r` to
//! matrices, and checks solutions, null vectors and eigenpairs against them.
//!
//! If `f` is a polynomial of degree `< N` (in `ζ` when a variable map is set)
//! and the operator maps it to `g`, then `compile(expr) · f(z) = g(z)` holds
//! exactly on the node samples, whatever the degree of `g`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::foundation::{scalar_from_json_or_literal, NodeSet, VariableMap};
use crate::matrix::{ColumnVector, SquareMatrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::shift::{shift_matrix, ShiftKind};

/// Default float tolerance for [`check_solution`], relative to `max(1, ‖g‖∞)`.
pub const SOLUTION_TOL: f64 = 1e-9;

/// Rational function given by coefficient lists, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn<S> {
    pub num: Vec<S>,
    pub den: Vec<S>,
}

impl<S: Scalar> RationalFn<S> {
    pub fn polynomial(num: Vec<S>) -> Self {
        Self {
            num,
            den: vec![S::one()],
        }
    }

    pub fn constant(c: S) -> Self {
        Self::polynomial(vec![c])
    }

    /// `c z`.
    pub fn linear(c: S) -> Self {
        Self::polynomial(vec![S::zero(), c])
    }

    /// `None` at a pole.
    pub fn eval(&self, z: &S) -> Option<S> {
        let den = horner(&self.den, z);
        if den.is_zero() {
            None
        } else {
            Some(horner(&self.num, z) / den)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: poly_add(&self.num, &other.num),
                den: self.den.clone(),
            };
        }
        Self {
            num: poly_add(
                &poly_mul(&self.num, &other.den),
                &poly_mul(&other.num, &self.den),
            ),
            den: poly_mul(&self.den, &other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: poly_mul(&self.num, &other.num),
            den: poly_mul(&self.den, &other.den),
        }
    }
}

pub(crate) fn horner<S: Scalar>(coeffs: &[S], z: &S) -> S {
    coeffs
        .iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
}

fn poly_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x + y
        })
        .collect()
}

fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term<S> {
    pub power: usize,
    pub coeff: RationalFn<S>,
}

/// `Σ_r d_r(z) · (shift)^r` for a single shift kind.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr<S> {
    shift: ShiftKind<S>,
    map: VariableMap<S>,
    terms: Vec<Term<S>>,
}

impl<S: Scalar> OperatorExpr<S> {
    pub fn new(shift: ShiftKind<S>, map: VariableMap<S>, terms: Vec<Term<S>>) -> Result<Self> {
        shift.validate()?;
        let mut seen = std::collections::BTreeSet::new();
        for t in &terms {
            if !seen.insert(t.power) {
                return Err(Error::RepeatedPower(t.power));
            }
        }
        Ok(Self { shift, map, terms })
    }

    /// The identity operator (a single `d_0 = 1` term).
    pub fn identity(shift: ShiftKind<S>) -> Result<Self> {
        Self::new(
            shift,
            VariableMap::Identity,
            vec![Term {
                power: 0,
                coeff: RationalFn::constant(S::one()),
            }],
        )
    }

    /// `(shift)^power` alone.
    pub fn pure_shift(shift: ShiftKind<S>, power: usize) -> Result<Self> {
        Self::new(
            shift,
            VariableMap::Identity,
            vec![Term {
                power,
                coeff: RationalFn::constant(S::one()),
            }],
        )
    }

    /// `∇̂(a) = (δ̂(a) - 1)/a`, or `∇̌(q) = [(1-q) z]⁻¹ (1 - δ̌(q))`.
    pub fn nabla(shift: ShiftKind<S>) -> Result<Self> {
        let (d1, d0) = match &shift {
            ShiftKind::Additive(a) => {
                let inv = a.recip();
                (
                    RationalFn::constant(inv.clone()),
                    RationalFn::constant(-inv),
                )
            }
            ShiftKind::Multiplicative(q) => {
                let den = vec![S::zero(), S::one() - q.clone()];
                (
                    RationalFn {
                        num: vec![-S::one()],
                        den: den.clone(),
                    },
                    RationalFn {
                        num: vec![S::one()],
                        den,
                    },
                )
            }
        };
        Self::new(
            shift,
            VariableMap::Identity,
            vec![
                Term {
                    power: 1,
                    coeff: d1,
                },
                Term {
                    power: 0,
                    coeff: d0,
                },
            ],
        )
    }

    /// Multiplies every coefficient on the left by `c(z)`.
    pub fn left_multiply(&self, c: &RationalFn<S>) -> Self {
        Self {
            shift: self.shift.clone(),
            map: self.map.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    power: t.power,
                    coeff: c.mul(&t.coeff),
                })
                .collect(),
        }
    }

    /// Sum of two expressions over the same shift and map.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shift != other.shift || self.map != other.map {
            return Err(Error::InvalidParameter(
                "expr",
                "sum requires the same shift and variable map".into(),
            ));
        }
        let mut terms = self.terms.clone();
        for t in &other.terms {
            match terms.iter_mut().find(|s| s.power == t.power) {
                Some(s) => s.coeff = s.coeff.add(&t.coeff),
                None => terms.push(t.clone()),
            }
        }
        Self::new(self.shift.clone(), self.map.clone(), terms)
    }

    pub fn with_map(mut self, map: VariableMap<S>) -> Self {
        self.map = map;
        self
    }

    pub fn shift(&self) -> &ShiftKind<S> {
        &self.shift
    }

    pub fn map(&self) -> &VariableMap<S> {
        &self.map
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    /// `R`, the largest power present.
    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.power).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let (kind, value) = match &self.shift {
            ShiftKind::Additive(a) => ("additive", a),
            ShiftKind::Multiplicative(q) => ("multiplicative", q),
        };
        json!({
            "shift": {"kind": kind, "value": value.to_json()},
            "map": self.map.to_json(),
            "terms": self.terms.iter().map(|t| json!({
                "power": t.power,
                "num": t.coeff.num.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                "den": t.coeff.den.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let shift = v
            .get("shift")
            .ok_or_else(|| Error::Parse("missing \"shift\"".into()))?;
        let value: S = scalar_from_json_or_literal(
            shift
                .get("value")
                .ok_or_else(|| Error::Parse("shift needs a \"value\"".into()))?,
        )?;
        let shift = match shift.get("kind").and_then(Value::as_str) {
            Some("additive") => ShiftKind::additive(value)?,
            Some("multiplicative") => ShiftKind::multiplicative(value)?,
            other => return Err(Error::Parse(format!("unknown shift kind {other:?}"))),
        };
        let map = match v.get("map") {
            Some(m) => VariableMap::from_json(m)?,
            None => VariableMap::Identity,
        };
        let coeff_list = |t: &Value, name: &str| -> Result<Vec<S>> {
            match t.get(name) {
                None if name == "den" => Ok(vec![S::one()]),
                None => Err(Error::Parse(format!("term needs {name:?}"))),
                Some(list) => list
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("{name:?} must be an array")))?
                    .iter()
                    .map(scalar_from_json_or_literal)
                    .collect(),
            }
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?
            .iter()
            .map(|t| {
                let power = t
                    .get("power")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("term needs an integer \"power\"".into()))?
                    as usize;
                Ok(Term {
                    power,
                    coeff: RationalFn {
                        num: coeff_list(t, "num")?,
                        den: coeff_list(t, "den")?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shift, map, terms)
    }
}

/// `Σ_r diag(d_r(z_n)) · S^r` with `S` the (mapped) shift matrix.
pub fn compile<S: Scalar>(expr: &OperatorExpr<S>, ns: &NodeSet<S>) -> Result<SquareMatrix<S>> {
    let ns = if *ns.map() == expr.map {
        ns.clone()
    } else {
        ns.with_map(expr.map.clone())?
    };
    let n = ns.len();
    let mut diags = Vec::with_capacity(expr.terms.len());
    for t in &expr.terms {
        let d = ns
            .nodes()
            .iter()
            .enumerate()
            .map(|(node, z)| {
                t.coeff.eval(z).ok_or(Error::CoefficientPoleAtNode {
                    power: t.power,
                    node,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        diags.push(d);
    }
    let shift = shift_matrix(&ns, &expr.shift)?;
    let mut power = SquareMatrix::identity(n);
    let mut out = SquareMatrix::zeros(n);
    for r in 0..=expr.order() {
        if r > 0 {
            power = &power * &shift;
        }
        for (t, d) in expr.terms.iter().zip(&diags) {
            if t.power == r {
                out = &out + &power.scale_rows(d);
            }
        }
    }
    Ok(out)
}

/// Residuals of `compile(expr) · f - g`.
pub fn check_solution<S: Scalar>(
    expr: &OperatorExpr<S>,
    ns: &NodeSet<S>,
    f: &ColumnVector<S>,
    g: &ColumnVector<S>,
) -> Result<VerificationReport> {
    for v in [f, g] {
        if v.len() != ns.len() {
            return Err(Error::DimensionMismatch {
                expected: ns.len(),
                found: v.len(),
            });
        }
    }
    let m = compile(expr, ns)?;
    let lhs = m.mul_vec(f)?;
    let residual = &lhs - g;
    let tol = SOLUTION_TOL * g.norm_inf().max(1.0);
    Ok(VerificationReport::from_scalars(
        residual.entries(),
        1.0,
        tol,
    ))
}

/// Determinant of the compiled matrix; zero whenever the operator has a
/// polynomial null vector of degree `< N`.
pub fn check_null<S: Scalar>(expr: &OperatorExpr<S>, ns: &NodeSet<S>) -> Result<S> {
    Ok(compile(expr, ns)?.determinant())
}

/// Relative residual `‖M v - b v‖∞ / (‖M‖∞ ‖v‖∞)`.
pub fn check_eigenpair<S: Scalar>(
    m: &SquareMatrix<S>,
    b: &S,
    v: &ColumnVector<S>,
    tol: f64,
) -> Result<VerificationReport> {
    check_eigenpair_scaled(m, b, v, tol, 0.0)
}

/// As [`check_eigenpair`] with `‖M‖∞` replaced by `max(‖M‖∞, floor)`. The
/// floor matters for matrices that vanish up to rounding, where the plain
/// relative residual is noise over noise.
pub fn check_eigenpair_scaled<S: Scalar>(
    m: &SquareMatrix<S>,
    b: &S,
    v: &ColumnVector<S>,
    tol: f64,
    floor: f64,
) -> Result<VerificationReport> {
    if v.len() != m.order() {
        return Err(Error::DimensionMismatch {
            expected: m.order(),
            found: v.len(),
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let residual = &m.mul_vec(v)? - &v.scale(b);
    let scale = m.norm_inf().max(floor) * v.norm_inf();
    Ok(VerificationReport::from_scalars(
        residual.entries(),
        scale,
        tol,
    ))
}

/// Monic characteristic polynomial, exact backends only.
pub fn char_poly_exact<S: Scalar>(m: &SquareMatrix<S>) -> Result<Vec<S>> {
    m.char_poly_exact()
}
