//! Zeros of the degree-`N` family polynomials in `ζ`, their lifts to `z`,
//! and the zero identities that the modified-diagonal matrices rely on.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive};
use serde_json::{json, Value};

use crate::askey::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::foundation::VariableMap;
use crate::report::VerificationReport;
use crate::scalar::{gauss_from_c64, Backend, GaussRational, Scalar};

type C64 = Complex64;

pub const MAX_ITERATIONS: usize = 200;
pub const STEP_TOL: f64 = 1e-13;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const MULTIPLE_ROOT_TOL: f64 = 1e-8;
/// Tolerance on the normalized zero identities.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Zeros `ζ̄_n` of a degree-`N` polynomial and one preimage `z̄_n` of each.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub params: FamilyParams<C64>,
    pub n: usize,
    pub zeta_zeros: Vec<C64>,
    pub z_lift: Vec<C64>,
    /// `|p_N(ζ̄_n)| / max_i |c_i|`.
    pub residuals: Vec<f64>,
}

impl ZeroSet {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.params.family.as_str(),
            "n": self.n,
            "zeta_zeros": self.zeta_zeros.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "z_lift": self.z_lift.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "residuals": self.residuals,
        })
    }
}

fn horner_with_derivative(coeffs: &[C64], x: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Rounding bound for Horner evaluation at `x`: `8 ε Σ |c_i| |x|^i`.
fn rounding_bound(coeffs: &[C64], x: C64) -> f64 {
    let r = x.norm();
    8.0 * f64::EPSILON * coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Roots of `Σ c_i x^i` (lowest degree first, nonzero leading coefficient)
/// by Aberth–Ehrlich iteration.
pub fn aberth(coeffs: &[C64]) -> Result<Vec<C64>> {
    aberth_with(coeffs, |z| Ok(horner_with_derivative(coeffs, z)))
}

/// Gauss–Seidel Aberth–Ehrlich iteration started on a circle of radius
/// `1 + max |c_i / c_N|`, with `eval` returning the value and derivative.
/// A root stops moving once its value is at rounding level or its step is
/// negligible.
fn aberth_with(coeffs: &[C64], eval: impl Fn(C64) -> Result<(C64, C64)>) -> Result<Vec<C64>> {
    let n = coeffs.len().saturating_sub(1);
    let lead = coeffs[n];
    if lead.norm() == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient(n));
    }
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut roots: Vec<C64> = (0..n)
        .map(|j| {
            C64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for j in 0..n {
            if done[j] {
                continue;
            }
            let (p, dp) = eval(roots[j])?;
            if p.norm() <= rounding_bound(coeffs, roots[j]) {
                done[j] = true;
                continue;
            }
            let w = p / dp;
            let repulsion: C64 = (0..n)
                .filter(|&k| k != j)
                .map(|k| (roots[j] - roots[k]).inv())
                .sum();
            let step = w / (C64::new(1.0, 0.0) - w * repulsion);
            if !step.is_finite() {
                return Err(Error::NonConvergence(MAX_ITERATIONS));
            }
            roots[j] -= step;
            if step.norm() <= STEP_TOL * scale {
                done[j] = true;
            }
        }
        if done.iter().all(|d| *d) {
            return Ok(roots);
        }
    }
    Err(Error::NonConvergence(MAX_ITERATIONS))
}

/// Lifts `ζ` to one preimage `z` under the family's variable map.
///
/// Branches: `√(-ζ)` for `ζ = -z²`; `(-g + √(g² + 4ζ))/2` for
/// `ζ = z(z+g)`; `ζ + √(ζ² - 1)` for `ζ = (z + 1/z)/2`. All square roots
/// are principal. At `ζ = ±1` the last map has the double preimage `±1`,
/// which is returned; see [`is_branch_point`].
pub fn lift_to_z(zeta: C64, map: &VariableMap<C64>) -> Result<C64> {
    if !zeta.is_finite() {
        return Err(Error::BranchFailure(format!("non-finite argument {zeta}")));
    }
    let z = match map {
        VariableMap::Identity => zeta,
        VariableMap::NegSquare => principal_sqrt(-zeta),
        VariableMap::Racah { gamma, delta } => {
            let g = gamma + delta + 1.0;
            (-g + principal_sqrt(g * g + 4.0 * zeta)) / 2.0
        }
        VariableMap::SymmetricInverse => zeta + principal_sqrt(zeta * zeta - 1.0),
    };
    let back = map.eval(&z)?;
    if (back - zeta).norm() > 1e-9 * zeta.norm().max(1.0) {
        return Err(Error::BranchFailure(format!(
            "lift of {zeta} maps back to {back}"
        )));
    }
    Ok(z)
}

/// Square root with the cut on the negative real axis approached from
/// above, so that a signed zero imaginary part cannot flip the branch.
fn principal_sqrt(x: C64) -> C64 {
    C64::new(x.re, x.im + 0.0).sqrt()
}

/// True where the map has a double preimage (`ζ = ±1` for `(z + 1/z)/2`).
pub fn is_branch_point(zeta: C64, map: &VariableMap<C64>) -> bool {
    match map {
        VariableMap::SymmetricInverse => (zeta * zeta - 1.0).norm() <= 1e-12,
        VariableMap::NegSquare => zeta.norm() <= 1e-12,
        VariableMap::Racah { gamma, delta } => {
            let g = gamma + delta + 1.0;
            (g * g + 4.0 * zeta).norm() <= 1e-12
        }
        VariableMap::Identity => false,
    }
}

fn order_key(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// The `N` zeros of the degree-`N` polynomial of the family, sorted by real
/// then imaginary part, with residuals and lifts.
pub fn find_zeros(p: &FamilyParams<C64>, n: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "n",
            "degree must be at least 1".into(),
        ));
    }
    // Expanding in floating point loses the low-order coefficients to
    // cancellation for some parameters, so the expansion is done exactly.
    let exact_coeffs = p
        .map_scalars(|x| gauss_from_c64(*x))
        .try_into_result()?
        .monomial_coefficients(n)?;
    let coeffs: Vec<C64> = exact_coeffs.iter().map(Scalar::to_c64).collect();
    let exact = ExactPoly::new(&exact_coeffs);
    let coeff_scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut zeros = aberth(&coeffs)?;
    for z in zeros.iter_mut() {
        *z = polish(&exact, &coeffs, *z)?;
    }
    zeros.sort_by(order_key);
    let scale = zeros.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..n {
        for j in i + 1..n {
            if (zeros[i] - zeros[j]).norm() <= MULTIPLE_ROOT_TOL * scale {
                return Err(Error::MultipleRoot(i, j));
            }
        }
    }
    let residuals = zeros
        .iter()
        .map(|z| Ok(exact.eval(*z)?.norm() / coeff_scale))
        .collect::<Result<Vec<f64>>>()?;
    if residuals.iter().any(|r| !(*r <= RESIDUAL_TOL)) {
        return Err(Error::NonConvergence(MAX_ITERATIONS));
    }
    let map = p.variable_map();
    let z_lift = zeros
        .iter()
        .map(|z| lift_to_z(*z, &map))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroSet {
        params: p.clone(),
        n,
        zeta_zeros: zeros,
        z_lift,
        residuals,
    })
}

/// Polynomial with exact Gaussian-rational coefficients, stored as Gaussian
/// integers over one common denominator so that evaluation at a float point
/// needs only integer arithmetic.
struct ExactPoly {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    den: BigInt,
}

impl ExactPoly {
    fn new(coeffs: &[GaussRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(c.re.denom()).lcm(c.im.denom())
        });
        let scaled = |r: &BigRational| r.numer() * (&den / r.denom());
        Self {
            re: coeffs.iter().map(|c| scaled(&c.re)).collect(),
            im: coeffs.iter().map(|c| scaled(&c.im)).collect(),
            den,
        }
    }

    /// Exact value at `z`, rounded once.
    fn eval(&self, z: C64) -> Result<C64> {
        if !z.is_finite() {
            return Err(Error::NonFinite);
        }
        // z = (a + b i) 2^e with integers a, b
        let (ma, ea, sa) = z.re.integer_decode();
        let (mb, eb, sb) = z.im.integer_decode();
        let e = ea.min(eb);
        let a = BigInt::from(sa) * (BigInt::from(ma) << (ea - e) as usize);
        let b = BigInt::from(sb) * (BigInt::from(mb) << (eb - e) as usize);
        let (a, b, s) = if e >= 0 {
            (a << e as usize, b << e as usize, 0usize)
        } else {
            (a, b, (-e) as usize)
        };
        // Horner on 2^{s N} p(z): acc <- acc w + c_i 2^{s (N - i)}
        let n = self.re.len() - 1;
        let mut acc_re = self.re[n].clone();
        let mut acc_im = self.im[n].clone();
        for i in (0..n).rev() {
            let shift = s * (n - i);
            let next_re = &acc_re * &a - &acc_im * &b + (&self.re[i] << shift);
            let next_im = &acc_re * &b + &acc_im * &a + (&self.im[i] << shift);
            acc_re = next_re;
            acc_im = next_im;
        }
        let den = &self.den << (s * n);
        let to_f64 = |num: BigInt| {
            BigRational::new(num, den.clone())
                .to_f64()
                .unwrap_or(f64::NAN)
        };
        Ok(C64::new(to_f64(acc_re), to_f64(acc_im)))
    }
}

/// Newton steps with the polynomial value computed exactly at the current
/// float iterate and the derivative from the float coefficients; a step is
/// kept only if it lowers the residual.
fn polish(exact: &ExactPoly, coeffs: &[C64], mut z: C64) -> Result<C64> {
    let value_at = |z: C64| exact.eval(z);
    let mut value = value_at(z)?;
    for _ in 0..4 {
        let (_, dp) = horner_with_derivative(coeffs, z);
        if dp.norm() == 0.0 || value.norm() == 0.0 {
            break;
        }
        let candidate = z - value / dp;
        let next = value_at(candidate)?;
        if next.norm() < value.norm() {
            z = candidate;
            value = next;
        } else {
            break;
        }
    }
    Ok(z)
}

/// `|a - b|` over the larger of `|a|`, `|b|`, floored at `DEGENERATE_FLOOR`
/// times the uncancelled size `natural`. Without the floor, a zero where
/// both sides vanish exactly (the coefficient is zero and a shifted point
/// is itself a zero) would compare rounding noise with rounding noise.
fn relative(a: C64, b: C64, natural: f64) -> f64 {
    let scale = a.norm().max(b.norm()).max(DEGENERATE_FLOOR * natural);
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Relative size below which both sides of a zero identity count as zero.
pub const DEGENERATE_FLOOR: f64 = 1e-6;

/// `(∏_j (ζ(w) - ζ̄_j), ∏_j max(|ζ(w)|, |ζ̄_j|))` over `j ≠ skip`.
fn shifted_product(zs: &ZeroSet, w: C64, skip: Option<usize>) -> Result<(C64, f64)> {
    let zeta = zs.params.zeta(&w)?;
    let mut value = C64::new(1.0, 0.0);
    let mut size = 1.0;
    for (j, zj) in zs.zeta_zeros.iter().enumerate() {
        if Some(j) != skip {
            value *= zeta - zj;
            size *= zeta.norm().max(zj.norm());
        }
    }
    Ok((value, size))
}

/// For each zero, the residual of
/// `F(z̄) ∏_j (ζ(z̄⁺) - ζ̄_j) + G(z̄) ∏_j (ζ(z̄⁻) - ζ̄_j) = 0`, where `F`, `G`
/// are the forward/backward coefficients and `z̄^±` the shifted points,
/// normalized by the larger term (see [`DEGENERATE_FLOOR`]).
pub fn verify_zero_identity(zs: &ZeroSet) -> Result<VerificationReport> {
    let p = &zs.params;
    let residuals = zs
        .z_lift
        .iter()
        .map(|z| {
            let (f, g) = (p.forward_coefficient(z)?, p.backward_coefficient(z)?);
            let (fp, fs) = shifted_product(zs, p.forward_point(z), None)?;
            let (bp, bs) = shifted_product(zs, p.backward_point(z), None)?;
            let natural = (f.norm() * fs).max(g.norm() * bs);
            Ok(relative(f * fp, -(g * bp), natural))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_magnitudes(
        residuals,
        IDENTITY_TOL,
        Backend::FloatComplex,
    ))
}

/// For Askey-Wilson zeros, the residual of
/// `A(1/z̄_n) ∏' (ζ(z̄_n/q) - ζ̄_ℓ) = ((q z̄_n² - 1)/(z̄_n² - q)) A(z̄_n) ∏' (ζ(q z̄_n) - ζ̄_ℓ)`
/// with `∏'` over `ℓ ≠ n`.
pub fn verify_aw_ratio_identity(zs: &ZeroSet) -> Result<VerificationReport> {
    let p = &zs.params;
    if p.family != Family::AskeyWilson {
        return Err(Error::InvalidParameter(
            "family",
            "the ratio identity is specific to askey-wilson".into(),
        ));
    }
    let q = *p.q().expect("askey-wilson carries q");
    let residuals = zs
        .z_lift
        .iter()
        .enumerate()
        .map(|(n, z)| {
            let z2 = z * z;
            let g = p.backward_coefficient(z)?;
            let f = (q * z2 - 1.0) / (z2 - q) * p.forward_coefficient(z)?;
            let (bp, bs) = shifted_product(zs, z / q, Some(n))?;
            let (fp, fs) = shifted_product(zs, q * z, Some(n))?;
            let natural = (g.norm() * bs).max(f.norm() * fs);
            Ok(relative(g * bp, f * fp, natural))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::from_magnitudes(
        residuals,
        IDENTITY_TOL,
        Backend::FloatComplex,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn degree_one_closed_forms() {
        let p = FamilyParams::wilson(c(1.0), c(1.0), c(1.0), c(1.0));
        let zs = find_zeros(&p, 1).unwrap();
        assert!((zs.zeta_zeros[0] - c(1.0)).norm() < 1e-12);
        assert!((zs.z_lift[0] - C64::new(0.0, 1.0)).norm() < 1e-12);

        let (a, b, g, d) = (0.3, 1.7, 2.2, -0.4);
        let p = FamilyParams::racah(c(a), c(b), c(g), c(d));
        let zs = find_zeros(&p, 1).unwrap();
        let expected = -(a + 1.0) * (b + d + 1.0) * (g + 1.0) / (a + b + 2.0);
        assert!((zs.zeta_zeros[0] - c(expected)).norm() < 1e-12);
    }

    #[test]
    fn vieta_at_degree_two() {
        let families = [
            FamilyParams::wilson(c(0.5), c(1.5), c(2.0), c(3.0)),
            FamilyParams::racah(c(0.5), c(1.5), c(2.0), c(3.0)),
            FamilyParams::askey_wilson(c(0.5), c(1.5), c(2.5), c(3.0), c(0.3)).unwrap(),
        ];
        for p in families {
            let cs = p.monomial_coefficients(2).unwrap();
            let zs = find_zeros(&p, 2).unwrap();
            let (x, y) = (zs.zeta_zeros[0], zs.zeta_zeros[1]);
            assert!((x + y + cs[1] / cs[2]).norm() < 1e-12 * (cs[1] / cs[2]).norm().max(1.0));
            assert!((x * y - cs[0] / cs[2]).norm() < 1e-12 * (cs[0] / cs[2]).norm().max(1.0));
        }
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            lift_to_z(c(1.0), &VariableMap::NegSquare).unwrap(),
            C64::new(0.0, 1.0)
        );
        let racah = VariableMap::Racah {
            gamma: c(0.5),
            delta: c(1.5),
        };
        assert!(lift_to_z(c(0.0), &racah).unwrap().norm() < 1e-15);
        assert_eq!(
            lift_to_z(c(1.0), &VariableMap::SymmetricInverse).unwrap(),
            c(1.0)
        );
        assert!(is_branch_point(c(1.0), &VariableMap::SymmetricInverse));
        assert!(lift_to_z(C64::new(f64::NAN, 0.0), &VariableMap::NegSquare).is_err());
    }

    #[test]
    fn wilson_unit_identity_by_hand() {
        let p = FamilyParams::wilson(c(1.0), c(1.0), c(1.0), c(1.0));
        let i = C64::new(0.0, 1.0);
        let b_plus = crate::askey::wilson_b(&i, &p).unwrap() * (1.0 + 2.0 * i);
        let b_minus = crate::askey::wilson_b(&-i, &p).unwrap() * (1.0 - 2.0 * i);
        assert!((b_plus - 2.0 * i).norm() < 1e-15);
        assert!((b_minus + 2.0 * i).norm() < 1e-15);
        let zs = find_zeros(&p, 1).unwrap();
        assert!(verify_zero_identity(&zs).unwrap().pass);
    }

    #[test]
    fn zero_identities_up_to_five() {
        for n in 2..=5 {
            for p in [
                FamilyParams::wilson(c(0.5), c(1.5), c(2.0), c(3.0)),
                FamilyParams::racah(c(0.5), c(1.5), c(2.0), c(3.0)),
                FamilyParams::askey_wilson(c(0.5), c(1.5), c(2.5), c(3.0), c(0.3)).unwrap(),
            ] {
                let zs = find_zeros(&p, n).unwrap();
                let report = verify_zero_identity(&zs).unwrap();
                assert!(report.pass, "{:?} n={n}: {report:?}", p.family);
                if p.family == Family::AskeyWilson {
                    assert!(verify_aw_ratio_identity(&zs).unwrap().pass);
                }
            }
        }
    }

    #[test]
    fn degenerate_racah_grid() {
        // Zeros at -5/2 and -3/2: both sides of the identity vanish.
        let p = FamilyParams::racah(c(9.0), c(2.25), c(0.5), c(11.0));
        let zs = find_zeros(&p, 2).unwrap();
        let report = verify_zero_identity(&zs).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn zero_degree_rejected() {
        let p = FamilyParams::wilson(c(1.0), c(1.0), c(1.0), c(1.0));
        assert!(matches!(
            find_zeros(&p, 0),
            Err(Error::InvalidParameter(..))
        ));
    }
}
