//! Seeded random draws of nodes and parameters.
//!
//! Every draw is a pure function of `(seed, stream)`: each stream gets its own
//! ChaCha8 sequence, so batches of draws can be generated in parallel and still
//! come out identical to a sequential run.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::askey::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::foundation::{NodeSet, VariableMap, DEFAULT_DISTINCT_TOL};
use crate::scalar::{GaussRational, Scalar};

/// Candidates closer than this (relative) to a pole are rejected.
pub const POLE_MARGIN: f64 = 1e-6;

/// Minimum float separation of drawn nodes and of their mapped values.
pub const FLOAT_SEPARATION: f64 = 0.05;

/// Rejections allowed per node before giving up.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Independent generator for stream `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    let num = rng.random_range(-max_num..=max_num);
    let den = rng.random_range(1..=max_den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Scalars that can be drawn at random.
pub trait RandomScalar: Scalar {
    fn random<R: Rng>(rng: &mut R) -> Self;
}

impl RandomScalar for Complex64 {
    /// Uniform in the annulus `0.5 ≤ |z| ≤ 2`.
    fn random<R: Rng>(rng: &mut R) -> Self {
        let (r0, r1) = (0.5f64, 2.0f64);
        let u: f64 = rng.random();
        let r = (r0 * r0 + u * (r1 * r1 - r0 * r0)).sqrt();
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        Complex64::from_polar(r, theta)
    }
}

impl RandomScalar for BigRational {
    fn random<R: Rng>(rng: &mut R) -> Self {
        small_rational(rng, 12, 6)
    }
}

impl RandomScalar for GaussRational {
    /// Real half the time, otherwise with a small imaginary part.
    fn random<R: Rng>(rng: &mut R) -> Self {
        let re = small_rational(rng, 12, 6);
        let im = if rng.random_bool(0.5) {
            small_rational(rng, 6, 4)
        } else {
            BigRational::from_integer(0.into())
        };
        GaussRational::new(re, im)
    }
}

/// Extra conditions a drawn node must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeGuard<S> {
    Plain,
    NonZero,
    /// Away from the coefficient-function poles of the family, with pairwise
    /// distinct `ζ(z)`.
    Family(FamilyParams<S>),
}

fn near<S: Scalar>(a: &S, b: &S, margin: f64) -> bool {
    if S::is_exact() {
        a == b
    } else {
        (a.clone() - b.clone()).magnitude() <= margin * a.magnitude().max(b.magnitude()).max(1.0)
    }
}

impl<S: Scalar> NodeGuard<S> {
    fn mapped(&self, z: &S) -> Result<S> {
        match self {
            NodeGuard::Family(p) => p.zeta(z),
            _ => Ok(z.clone()),
        }
    }

    fn admits(&self, z: &S) -> bool {
        let zero = S::zero();
        match self {
            NodeGuard::Plain => true,
            NodeGuard::NonZero => !near(z, &zero, POLE_MARGIN),
            NodeGuard::Family(p) => {
                if near(z, &zero, POLE_MARGIN) {
                    return false;
                }
                let two = S::from_i64(2);
                let forbidden: Vec<S> = match p.family {
                    // 2z(2z+1) and its mirror.
                    Family::Wilson => vec![S::ratio(1, 2), S::ratio(-1, 2)],
                    // 2z+γ+δ ∈ {0,-1,-2}
                    Family::Racah => (0..3)
                        .map(|j| {
                            (-(p.gamma.clone() + p.delta.clone()) - S::from_i64(j)) / two.clone()
                        })
                        .collect(),
                    Family::AskeyWilson => vec![],
                };
                if forbidden.iter().any(|f| near(z, f, POLE_MARGIN)) {
                    return false;
                }
                if p.family == Family::AskeyWilson {
                    let q = p.q().expect("askey-wilson carries q");
                    let z2 = z.clone() * z.clone();
                    let bad = [S::one(), q.clone(), q.recip()];
                    if bad.iter().any(|b| near(&z2, b, POLE_MARGIN)) {
                        return false;
                    }
                }
                let coeffs = [p.forward_coefficient(z), p.backward_coefficient(z)];
                coeffs.iter().all(
                    |c| matches!(c, Ok(v) if v.is_finite() && v.magnitude() < 1.0 / POLE_MARGIN),
                ) && p.zeta(&p.forward_point(z)).is_ok()
                    && p.zeta(&p.backward_point(z)).is_ok()
            }
        }
    }
}

/// Draws `n` admissible, well separated nodes. The returned set carries the
/// identity map; family builders apply their own map.
pub fn random_nodes<S: RandomScalar>(
    seed: u64,
    stream: u64,
    n: usize,
    guard: &NodeGuard<S>,
) -> Result<NodeSet<S>> {
    if n == 0 {
        return Err(Error::EmptyNodeSet);
    }
    let mut rng = rng_for(seed, stream);
    let mut nodes: Vec<S> = Vec::with_capacity(n);
    let mut mapped: Vec<S> = Vec::with_capacity(n);
    let separation = if S::is_exact() { 0.0 } else { FLOAT_SEPARATION };
    while nodes.len() < n {
        let mut accepted = false;
        for _ in 0..MAX_ATTEMPTS {
            let z = S::random(&mut rng);
            if !guard.admits(&z) {
                continue;
            }
            let Ok(zeta) = guard.mapped(&z) else { continue };
            let clash = nodes.iter().any(|x| near(x, &z, separation))
                || mapped.iter().any(|x| near(x, &zeta, separation));
            if !clash {
                nodes.push(z);
                mapped.push(zeta);
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::InvalidParameter(
                "nodes",
                format!("no admissible node found after {MAX_ATTEMPTS} draws"),
            ));
        }
    }
    NodeSet::new(nodes, VariableMap::Identity, DEFAULT_DISTINCT_TOL)
}

/// Random nonzero rational in `[1/4, 3]` or its negative when `signed`.
fn param<R: Rng>(rng: &mut R, signed: bool) -> BigRational {
    let num = rng.random_range(1..=12i64);
    let den = rng.random_range(1..=4i64);
    let v = BigRational::new(BigInt::from(num), BigInt::from(den));
    if signed && rng.random_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Random rational family parameters whose series denominators do not
/// vanish up to `max_degree`. Askey-Wilson draws `q` from `(0, 1)`.
pub fn random_family_params(
    seed: u64,
    stream: u64,
    family: Family,
    max_degree: usize,
) -> Result<FamilyParams<BigRational>> {
    let mut rng = rng_for(seed, stream);
    for _ in 0..MAX_ATTEMPTS {
        let [a, b, c, d] = std::array::from_fn(|_| param(&mut rng, false));
        let p = match family {
            Family::Wilson => FamilyParams::wilson(a, b, c, d),
            Family::Racah => FamilyParams::racah(a, b, c, d),
            Family::AskeyWilson => {
                let den = rng.random_range(2..=5i64);
                let num = rng.random_range(1..den);
                let q = BigRational::new(BigInt::from(num), BigInt::from(den));
                // Keep the parameters small so that q-powers stay tame.
                let shrink = |x: BigRational| x / BigRational::from_integer(BigInt::from(4));
                FamilyParams::askey_wilson(shrink(a), shrink(b), shrink(c), shrink(d), q)?
            }
        };
        if p.check_guards(max_degree).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::InvalidParameter(
        "family",
        "no admissible parameters drawn".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        let a: NodeSet<Complex64> = random_nodes(7, 3, 6, &NodeGuard::NonZero).unwrap();
        let b: NodeSet<Complex64> = random_nodes(7, 3, 6, &NodeGuard::NonZero).unwrap();
        assert_eq!(a.nodes(), b.nodes());
        let c: NodeSet<Complex64> = random_nodes(7, 4, 6, &NodeGuard::NonZero).unwrap();
        assert_ne!(a.nodes(), c.nodes());
    }

    #[test]
    fn float_nodes_lie_in_annulus() {
        let ns: NodeSet<Complex64> = random_nodes(1, 0, 8, &NodeGuard::Plain).unwrap();
        assert!(ns
            .nodes()
            .iter()
            .all(|z| (0.5 - 1e-12..=2.0 + 1e-12).contains(&z.norm())));
    }

    #[test]
    fn family_guard_gives_distinct_mapped_values() {
        let p = random_family_params(2, 0, Family::Wilson, 8).unwrap();
        let ns = random_nodes(2, 1, 8, &NodeGuard::Family(p.clone())).unwrap();
        assert!(ns.with_map(p.variable_map()).is_ok());
        let half = BigRational::new(1.into(), 2.into());
        assert!(ns.nodes().iter().all(|z| *z != half && *z != -half.clone()));
    }

    #[test]
    fn askey_wilson_guard_rejects_unit_square() {
        let p = FamilyParams::askey_wilson(
            Complex64::new(0.5, 0.0),
            Complex64::new(0.7, 0.0),
            Complex64::new(-0.4, 0.0),
            Complex64::new(0.3, 0.0),
            Complex64::new(0.6, 0.0),
        )
        .unwrap();
        let g = NodeGuard::Family(p);
        assert!(!g.admits(&Complex64::new(1.0, 0.0)));
        assert!(!g.admits(&Complex64::new(0.6f64.sqrt(), 0.0)));
        assert!(g.admits(&Complex64::new(0.9, 0.4)));
    }
}
