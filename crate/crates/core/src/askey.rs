//! Terminating hypergeometric and basic hypergeometric series: shifted
//! factorials, the Wilson, Racah and Askey-Wilson polynomials, and the
//! coefficient functions of their difference equations.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::foundation::{scalar_from_json_or_literal, VariableMap};
use crate::scalar::Scalar;

/// `(z, a)_k = ∏_{s<k} (z + s a)`.
pub fn shifted_factorial<S: Scalar>(z: &S, a: &S, k: usize) -> S {
    (0..k).fold(S::one(), |acc, s| {
        acc * (z.clone() + S::from_i64(s as i64) * a.clone())
    })
}

/// Pochhammer symbol `(x)_r = x (x+1) ⋯ (x+r-1)`.
pub fn pochhammer<S: Scalar>(x: &S, r: usize) -> S {
    shifted_factorial(x, &S::one(), r)
}

/// `(x; q)_s = ∏_{r<s} (1 - q^r x)`.
pub fn q_shifted_factorial<S: Scalar>(x: &S, q: &S, s: usize) -> S {
    let mut acc = S::one();
    let mut qr = S::one();
    for _ in 0..s {
        acc = acc * (S::one() - qr.clone() * x.clone());
        qr = qr * q.clone();
    }
    acc
}

/// `[α, ζ; q]_s = ∏_{r<s} (1 - α q^r z)(1 - α q^r / z)`, a function of
/// `ζ = (z + 1/z)/2` only.
pub fn aw_bracket<S: Scalar>(alpha: &S, z: &S, q: &S, s: usize) -> S {
    let zi = z.recip();
    let mut acc = S::one();
    let mut aq = alpha.clone();
    for _ in 0..s {
        acc = acc * (S::one() - aq.clone() * z.clone()) * (S::one() - aq.clone() * zi.clone());
        aq = aq * q.clone();
    }
    acc
}

/// The same bracket written directly in `ζ`: `∏_{r<s} (1 - 2αζq^r + α²q^{2r})`.
pub fn aw_bracket_zeta<S: Scalar>(alpha: &S, zeta: &S, q: &S, s: usize) -> S {
    let two = S::from_i64(2);
    let mut acc = S::one();
    let mut aq = alpha.clone();
    for _ in 0..s {
        acc = acc * (S::one() - two.clone() * aq.clone() * zeta.clone() + aq.clone() * aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// `F(a, -k; c; x) = Σ_{r=0}^{k} (a)_r (-k)_r x^r / (r! (c)_r)`.
pub fn hypergeometric_terminating<S: Scalar>(a: &S, k: usize, c: &S, x: &S) -> Result<S> {
    let minus_k = S::from_i64(-(k as i64));
    let mut term = S::one();
    let mut sum = S::one();
    for r in 0..k {
        // term_{r+1} = term_r (a+r)(-k+r) x / ((r+1)(c+r))
        let rr = S::from_i64(r as i64);
        let den = S::from_i64(r as i64 + 1) * (c.clone() + rr.clone());
        if den.is_zero() {
            return Err(Error::DenominatorPole(r + 1));
        }
        term = term * (a.clone() + rr.clone()) * (minus_k.clone() + rr) * x.clone() / den;
        sum = sum + term.clone();
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Wilson,
    Racah,
    AskeyWilson,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Wilson => "wilson",
            Family::Racah => "racah",
            Family::AskeyWilson => "askey-wilson",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "wilson" => Ok(Family::Wilson),
            "racah" => Ok(Family::Racah),
            "askey-wilson" => Ok(Family::AskeyWilson),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Parameters of one of the three families.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams<S> {
    pub family: Family,
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub delta: S,
    /// Base of the Askey-Wilson family; `None` otherwise.
    pub q: Option<S>,
}

impl<S> FamilyParams<Result<S>> {
    /// Moves a fallible conversion's error out of the parameter record.
    pub fn try_into_result(self) -> Result<FamilyParams<S>> {
        Ok(FamilyParams {
            family: self.family,
            alpha: self.alpha?,
            beta: self.beta?,
            gamma: self.gamma?,
            delta: self.delta?,
            q: self.q.transpose()?,
        })
    }
}

impl<S: Scalar> FamilyParams<S> {
    pub fn wilson(alpha: S, beta: S, gamma: S, delta: S) -> Self {
        Self {
            family: Family::Wilson,
            alpha,
            beta,
            gamma,
            delta,
            q: None,
        }
    }

    pub fn racah(alpha: S, beta: S, gamma: S, delta: S) -> Self {
        Self {
            family: Family::Racah,
            alpha,
            beta,
            gamma,
            delta,
            q: None,
        }
    }

    pub fn askey_wilson(alpha: S, beta: S, gamma: S, delta: S, q: S) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidParameter("q", "must be nonzero".into()));
        }
        if q == S::one() {
            return Err(Error::UnitQ);
        }
        Ok(Self {
            family: Family::AskeyWilson,
            alpha,
            beta,
            gamma,
            delta,
            q: Some(q),
        })
    }

    fn base(&self) -> &S {
        self.q
            .as_ref()
            .expect("Askey-Wilson parameters always carry q")
    }

    /// Applies `f` to every parameter, e.g. to move to another backend.
    pub fn map_scalars<T>(&self, f: impl Fn(&S) -> T) -> FamilyParams<T> {
        FamilyParams {
            family: self.family,
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            gamma: f(&self.gamma),
            delta: f(&self.delta),
            q: self.q.as_ref().map(f),
        }
    }

    /// `q`, for the Askey-Wilson family.
    pub fn q(&self) -> Option<&S> {
        self.q.as_ref()
    }

    pub fn variable_map(&self) -> VariableMap<S> {
        match self.family {
            Family::Wilson => VariableMap::NegSquare,
            Family::Racah => VariableMap::Racah {
                gamma: self.gamma.clone(),
                delta: self.delta.clone(),
            },
            Family::AskeyWilson => VariableMap::SymmetricInverse,
        }
    }

    pub fn zeta(&self, z: &S) -> Result<S> {
        self.variable_map().eval(z)
    }

    /// Eigenvalue of the family's difference operator on the degree-`k`
    /// polynomial.
    pub fn eigenvalue(&self, k: usize) -> S {
        let kk = S::from_i64(k as i64);
        match self.family {
            Family::Wilson => kk.clone() * (kk + self.parameter_sum() - S::one()),
            Family::Racah => kk.clone() * (kk + self.alpha.clone() + self.beta.clone() + S::one()),
            Family::AskeyWilson => {
                let q = self.base();
                (q.powi(-(k as i64)) - S::one())
                    * (S::one() - self.parameter_product() * q.powi(k as i64 - 1))
            }
        }
    }

    pub fn parameter_sum(&self) -> S {
        self.alpha.clone() + self.beta.clone() + self.gamma.clone() + self.delta.clone()
    }

    pub fn parameter_product(&self) -> S {
        self.alpha.clone() * self.beta.clone() * self.gamma.clone() * self.delta.clone()
    }

    /// Checks that every series denominator up to degree `max_degree` is
    /// nonzero (for Askey-Wilson this includes `q` not being a root of unity
    /// of order `≤ max_degree`).
    pub fn check_guards(&self, max_degree: usize) -> Result<()> {
        for s in 1..=max_degree {
            if self.denominator(s).is_zero() {
                return Err(Error::DenominatorPole(s));
            }
        }
        Ok(())
    }

    fn denominator(&self, s: usize) -> S {
        let fact = pochhammer(&S::one(), s);
        match self.family {
            Family::Wilson => {
                fact * pochhammer(&(self.alpha.clone() + self.beta.clone()), s)
                    * pochhammer(&(self.alpha.clone() + self.gamma.clone()), s)
                    * pochhammer(&(self.alpha.clone() + self.delta.clone()), s)
            }
            Family::Racah => {
                fact * pochhammer(&(self.alpha.clone() + S::one()), s)
                    * pochhammer(&(self.beta.clone() + self.delta.clone() + S::one()), s)
                    * pochhammer(&(self.gamma.clone() + S::one()), s)
            }
            Family::AskeyWilson => {
                let q = self.base();
                let a = &self.alpha;
                q_shifted_factorial(q, q, s)
                    * q_shifted_factorial(&(a.clone() * self.beta.clone()), q, s)
                    * q_shifted_factorial(&(a.clone() * self.gamma.clone()), q, s)
                    * q_shifted_factorial(&(a.clone() * self.delta.clone()), q, s)
            }
        }
    }

    /// Coefficient `t_s` multiplying the `s`-th variable-dependent factor
    /// of the degree-`k` series, `s = 0..=k`.
    fn series_weights(&self, k: usize) -> Result<Vec<S>> {
        self.check_guards(k)?;
        let kk = S::from_i64(k as i64);
        (0..=k)
            .map(|s| {
                let num = match self.family {
                    Family::Wilson => {
                        pochhammer(&-kk.clone(), s)
                            * pochhammer(&(kk.clone() + self.parameter_sum() - S::one()), s)
                    }
                    Family::Racah => {
                        pochhammer(&-kk.clone(), s)
                            * pochhammer(
                                &(kk.clone() + self.alpha.clone() + self.beta.clone() + S::one()),
                                s,
                            )
                    }
                    Family::AskeyWilson => {
                        let q = self.base();
                        q_shifted_factorial(&q.powi(-(k as i64)), q, s)
                            * q_shifted_factorial(
                                &(self.parameter_product() * q.powi(k as i64 - 1)),
                                q,
                                s,
                            )
                            * q.powi(s as i64)
                    }
                };
                Ok(num / self.denominator(s))
            })
            .collect()
    }

    /// `s`-th factor as a function of `z`.
    fn factor_z(&self, s: usize, z: &S) -> S {
        match self.family {
            // (α + z)_s (α - z)_s
            Family::Wilson => {
                pochhammer(&(self.alpha.clone() + z.clone()), s)
                    * pochhammer(&(self.alpha.clone() - z.clone()), s)
            }
            // (-z)_s (z + γ + δ + 1)_s
            Family::Racah => {
                pochhammer(&-z.clone(), s)
                    * pochhammer(
                        &(z.clone() + self.gamma.clone() + self.delta.clone() + S::one()),
                        s,
                    )
            }
            Family::AskeyWilson => aw_bracket(&self.alpha, z, self.base(), s),
        }
    }

    /// Linear factors `(c_r, d_r)` with the `s`-th factor equal to
    /// `∏_{r<s} (c_r + d_r ζ)`.
    fn zeta_linear_factor(&self, r: usize) -> (S, S) {
        let rr = S::from_i64(r as i64);
        match self.family {
            // (α + r)² - z² = (α + r)² + ζ
            Family::Wilson => {
                let ar = self.alpha.clone() + rr;
                (ar.clone() * ar, S::one())
            }
            // (r - z)(z + g + r) = r (r + g) - ζ with g = γ + δ + 1
            Family::Racah => {
                let g = self.gamma.clone() + self.delta.clone() + S::one();
                (rr.clone() * (rr + g), -S::one())
            }
            Family::AskeyWilson => {
                let aq = self.alpha.clone() * self.base().powi(r as i64);
                (S::one() + aq.clone() * aq.clone(), -(S::from_i64(2) * aq))
            }
        }
    }

    /// Degree-`k` polynomial evaluated through `z`.
    pub fn eval(&self, k: usize, z: &S) -> Result<S> {
        let weights = self.series_weights(k)?;
        Ok(weights.iter().enumerate().fold(S::zero(), |acc, (s, w)| {
            acc + w.clone() * self.factor_z(s, z)
        }))
    }

    /// Degree-`k` polynomial evaluated directly at `ζ`.
    pub fn eval_zeta(&self, k: usize, zeta: &S) -> Result<S> {
        let weights = self.series_weights(k)?;
        let mut factor = S::one();
        let mut sum = S::zero();
        for (s, w) in weights.iter().enumerate() {
            if s > 0 {
                let (c, d) = self.zeta_linear_factor(s - 1);
                factor = factor * (c + d * zeta.clone());
            }
            sum = sum + w.clone() * factor.clone();
        }
        Ok(sum)
    }

    /// Coefficients `c_0..c_k` of the degree-`k` polynomial in powers of `ζ`.
    /// In floating point the expansion can cancel badly for small `q`.
    pub fn monomial_coefficients(&self, k: usize) -> Result<Vec<S>> {
        let weights = self.series_weights(k)?;
        let mut coeffs = vec![S::zero(); k + 1];
        let mut factor = vec![S::one()];
        for (s, w) in weights.iter().enumerate() {
            if s > 0 {
                let (c, d) = self.zeta_linear_factor(s - 1);
                let mut next = vec![S::zero(); factor.len() + 1];
                for (i, f) in factor.iter().enumerate() {
                    next[i] = next[i].clone() + c.clone() * f.clone();
                    next[i + 1] = next[i + 1].clone() + d.clone() * f.clone();
                }
                factor = next;
            }
            for (i, f) in factor.iter().enumerate() {
                coeffs[i] = coeffs[i].clone() + w.clone() * f.clone();
            }
        }
        if coeffs[k].is_zero() {
            return Err(Error::DegenerateLeadingCoefficient(k));
        }
        Ok(coeffs)
    }

    /// Coefficient of the forward shift in the difference equation:
    /// `B(z)`, `C(z)` or `A(z)`.
    pub fn forward_coefficient(&self, z: &S) -> Result<S> {
        match self.family {
            Family::Wilson => wilson_b(z, self),
            Family::Racah => racah_c(z, self),
            Family::AskeyWilson => aw_a(z, self),
        }
    }

    /// Coefficient of the backward shift: `B(-z)`, `D(z)` or `A(1/z)`.
    pub fn backward_coefficient(&self, z: &S) -> Result<S> {
        match self.family {
            Family::Wilson => wilson_b(&-z.clone(), self),
            Family::Racah => racah_d(z, self),
            Family::AskeyWilson => {
                if z.is_zero() {
                    return Err(Error::PoleAtArgument("A(1/z)"));
                }
                aw_a(&z.recip(), self)
            }
        }
    }

    /// `z + 1` or `q z`.
    pub fn forward_point(&self, z: &S) -> S {
        match self.family {
            Family::AskeyWilson => self.base().clone() * z.clone(),
            _ => z.clone() + S::one(),
        }
    }

    /// `z - 1` or `z / q`.
    pub fn backward_point(&self, z: &S) -> S {
        match self.family {
            Family::AskeyWilson => z.clone() / self.base().clone(),
            _ => z.clone() - S::one(),
        }
    }

    /// Left side of the family's difference equation applied to the
    /// degree-`k` polynomial at the point `z`.
    pub fn difference_operator(&self, k: usize, z: &S) -> Result<S> {
        let here = self.eval(k, z)?;
        let fwd = self.eval(k, &self.forward_point(z))?;
        let bwd = self.eval(k, &self.backward_point(z))?;
        Ok(self.forward_coefficient(z)? * (fwd - here.clone())
            + self.backward_coefficient(z)? * (bwd - here))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": self.family.as_str(),
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "gamma": self.gamma.to_json(),
            "delta": self.delta.to_json(),
        });
        if let Some(q) = &self.q {
            v["q"] = q.to_json();
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let family = Family::parse(
            v.get("family")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing \"family\"".into()))?,
        )?;
        let field = |name: &str| -> Result<S> {
            scalar_from_json_or_literal(
                v.get(name)
                    .ok_or_else(|| Error::Parse(format!("missing {name:?}")))?,
            )
        };
        let (a, b, c, d) = (
            field("alpha")?,
            field("beta")?,
            field("gamma")?,
            field("delta")?,
        );
        match family {
            Family::Wilson => Ok(Self::wilson(a, b, c, d)),
            Family::Racah => Ok(Self::racah(a, b, c, d)),
            Family::AskeyWilson => Self::askey_wilson(a, b, c, d, field("q")?),
        }
    }
}

fn nonzero<S: Scalar>(v: S, name: &'static str) -> Result<S> {
    if v.is_zero() {
        Err(Error::PoleAtArgument(name))
    } else {
        Ok(v)
    }
}

/// `B(z) = (z+α)(z+β)(z+γ)(z+δ) / (2z(2z+1))`.
pub fn wilson_b<S: Scalar>(z: &S, p: &FamilyParams<S>) -> Result<S> {
    let two = S::from_i64(2);
    let den = nonzero(two.clone() * z.clone() * (two * z.clone() + S::one()), "B")?;
    Ok((z.clone() + p.alpha.clone())
        * (z.clone() + p.beta.clone())
        * (z.clone() + p.gamma.clone())
        * (z.clone() + p.delta.clone())
        / den)
}

/// `C(z) = (z+α+1)(z+β+δ+1)(z+γ+1)(z+γ+δ+1) / ((2z+γ+δ+1)(2z+γ+δ+2))`.
pub fn racah_c<S: Scalar>(z: &S, p: &FamilyParams<S>) -> Result<S> {
    let one = S::one();
    let two_z_gd = S::from_i64(2) * z.clone() + p.gamma.clone() + p.delta.clone();
    let den = nonzero(
        (two_z_gd.clone() + one.clone()) * (two_z_gd + S::from_i64(2)),
        "C",
    )?;
    Ok((z.clone() + p.alpha.clone() + one.clone())
        * (z.clone() + p.beta.clone() + p.delta.clone() + one.clone())
        * (z.clone() + p.gamma.clone() + one.clone())
        * (z.clone() + p.gamma.clone() + p.delta.clone() + one)
        / den)
}

/// `D(z) = z(z-α+γ+δ)(z-β+γ)(z+δ) / ((2z+γ+δ)(2z+γ+δ+1))`.
pub fn racah_d<S: Scalar>(z: &S, p: &FamilyParams<S>) -> Result<S> {
    let two_z_gd = S::from_i64(2) * z.clone() + p.gamma.clone() + p.delta.clone();
    let den = nonzero(two_z_gd.clone() * (two_z_gd + S::one()), "D")?;
    Ok(z.clone()
        * (z.clone() - p.alpha.clone() + p.gamma.clone() + p.delta.clone())
        * (z.clone() - p.beta.clone() + p.gamma.clone())
        * (z.clone() + p.delta.clone())
        / den)
}

/// `A(z) = (1-αz)(1-βz)(1-γz)(1-δz) / ((1-z²)(1-qz²))`.
pub fn aw_a<S: Scalar>(z: &S, p: &FamilyParams<S>) -> Result<S> {
    let q = p.q.as_ref().ok_or(Error::InvalidParameter(
        "q",
        "A(z) needs Askey-Wilson parameters".into(),
    ))?;
    let one = S::one();
    let z2 = z.clone() * z.clone();
    let den = nonzero(
        (one.clone() - z2.clone()) * (one.clone() - q.clone() * z2),
        "A",
    )?;
    Ok((one.clone() - p.alpha.clone() * z.clone())
        * (one.clone() - p.beta.clone() * z.clone())
        * (one.clone() - p.gamma.clone() * z.clone())
        * (one - p.delta.clone() * z.clone())
        / den)
}
