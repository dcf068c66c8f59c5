//! Reference formulas written out directly, shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use specmat::askey::{Family, FamilyParams};
use specmat::{Scalar, SquareMatrix};

pub type Q = BigRational;
pub type C = Complex64;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_c(x: &Q) -> C {
    x.to_c64()
}

/// `Σ c_i z^i`, lowest degree first.
pub fn horner<S: Scalar>(c: &[S], z: &S) -> S {
    let mut acc = S::zero();
    for ci in c.iter().rev() {
        acc = acc * z.clone() + ci.clone();
    }
    acc
}

pub fn poly_mul<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Monic `∏ (λ - r)`, lowest degree first.
pub fn poly_from_roots<S: Scalar>(roots: &[S]) -> Vec<S> {
    roots.iter().fold(vec![S::one()], |acc, r| {
        poly_mul(&acc, &[-r.clone(), S::one()])
    })
}

/// Determinant by elimination with a nonzero pivot (exact backends).
pub fn det<S: Scalar>(m: &SquareMatrix<S>) -> S {
    let n = m.order();
    let mut a: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut d = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let piv = a[col][col].clone();
        d = d * piv.clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
        }
    }
    d
}

pub fn shifted_identity<S: Scalar>(m: &SquareMatrix<S>, lambda: &S) -> SquareMatrix<S> {
    let n = m.order();
    SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            m[(i, j)].clone() - lambda.clone()
        } else {
            m[(i, j)].clone()
        }
    })
}

/// `max_n |(Mv - λv)_n| / (‖M‖∞ ‖v‖∞)`.
pub fn eigen_residual(m: &SquareMatrix<C>, lambda: C, v: &[C]) -> f64 {
    let n = m.order();
    let norm_m = (0..n)
        .map(|i| m.row(i).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let norm_v = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let res = (0..n)
        .map(|i| {
            let mv: C = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
            (mv - lambda * v[i]).norm()
        })
        .fold(0.0, f64::max);
    if res == 0.0 {
        0.0
    } else {
        res / (norm_m * norm_v)
    }
}

/// Family data with every formula spelled out term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct Fam<S> {
    pub kind: Family,
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub q: S,
}

fn poch<S: Scalar>(x: &S, s: usize) -> S {
    let mut acc = S::one();
    for j in 0..s {
        acc = acc * (x.clone() + S::from_i64(j as i64));
    }
    acc
}

fn qpoch<S: Scalar>(x: &S, q: &S, s: usize) -> S {
    let mut acc = S::one();
    for j in 0..s {
        acc = acc * (S::one() - x.clone() * q.powi(j as i64));
    }
    acc
}

impl<S: Scalar> Fam<S> {
    pub fn new(kind: Family, p: [S; 4], q: S) -> Self {
        let [a, b, c, d] = p;
        Self {
            kind,
            a,
            b,
            c,
            d,
            q,
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Fam<T> {
        Fam {
            kind: self.kind,
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
            q: f(&self.q),
        }
    }

    pub fn params(&self) -> FamilyParams<S> {
        let (a, b, c, d) = (
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        );
        match self.kind {
            Family::Wilson => FamilyParams::wilson(a, b, c, d),
            Family::Racah => FamilyParams::racah(a, b, c, d),
            Family::AskeyWilson => FamilyParams::askey_wilson(a, b, c, d, self.q.clone()).unwrap(),
        }
    }

    fn g(&self) -> S {
        self.c.clone() + self.d.clone() + S::one()
    }

    pub fn zeta(&self, z: &S) -> S {
        match self.kind {
            Family::Wilson => -(z.clone() * z.clone()),
            Family::Racah => z.clone() * (z.clone() + self.g()),
            Family::AskeyWilson => (z.clone() + z.recip()) / S::from_i64(2),
        }
    }

    pub fn fwd(&self, z: &S) -> S {
        match self.kind {
            Family::AskeyWilson => self.q.clone() * z.clone(),
            _ => z.clone() + S::one(),
        }
    }

    pub fn bwd(&self, z: &S) -> S {
        match self.kind {
            Family::AskeyWilson => z.clone() / self.q.clone(),
            _ => z.clone() - S::one(),
        }
    }

    fn wilson_b(&self, z: &S) -> S {
        let two = S::from_i64(2);
        (z.clone() + self.a.clone())
            * (z.clone() + self.b.clone())
            * (z.clone() + self.c.clone())
            * (z.clone() + self.d.clone())
            / (two.clone() * z.clone() * (two * z.clone() + S::one()))
    }

    fn aw_a(&self, z: &S) -> S {
        let one = S::one();
        let z2 = z.clone() * z.clone();
        (one.clone() - self.a.clone() * z.clone())
            * (one.clone() - self.b.clone() * z.clone())
            * (one.clone() - self.c.clone() * z.clone())
            * (one.clone() - self.d.clone() * z.clone())
            / ((one.clone() - z2.clone()) * (one - self.q.clone() * z2))
    }

    pub fn f_coef(&self, z: &S) -> S {
        let one = S::one();
        match self.kind {
            Family::Wilson => self.wilson_b(z),
            Family::Racah => {
                let s = S::from_i64(2) * z.clone() + self.c.clone() + self.d.clone();
                (z.clone() + self.a.clone() + one.clone())
                    * (z.clone() + self.b.clone() + self.d.clone() + one.clone())
                    * (z.clone() + self.c.clone() + one.clone())
                    * (z.clone() + self.g())
                    / ((s.clone() + one) * (s + S::from_i64(2)))
            }
            Family::AskeyWilson => self.aw_a(z),
        }
    }

    pub fn g_coef(&self, z: &S) -> S {
        match self.kind {
            Family::Wilson => self.wilson_b(&-z.clone()),
            Family::Racah => {
                let s = S::from_i64(2) * z.clone() + self.c.clone() + self.d.clone();
                z.clone()
                    * (z.clone() - self.a.clone() + self.c.clone() + self.d.clone())
                    * (z.clone() - self.b.clone() + self.c.clone())
                    * (z.clone() + self.d.clone())
                    / (s.clone() * (s + S::one()))
            }
            Family::AskeyWilson => self.aw_a(&z.recip()),
        }
    }

    pub fn eigenvalue(&self, k: usize) -> S {
        let kk = S::from_i64(k as i64);
        match self.kind {
            Family::Wilson => {
                kk.clone()
                    * (kk + self.a.clone() + self.b.clone() + self.c.clone() + self.d.clone()
                        - S::one())
            }
            Family::Racah => kk.clone() * (kk + self.a.clone() + self.b.clone() + S::one()),
            Family::AskeyWilson => {
                let abcd = self.a.clone() * self.b.clone() * self.c.clone() * self.d.clone();
                (self.q.powi(-(k as i64)) - S::one())
                    * (S::one() - abcd * self.q.powi(k as i64 - 1))
            }
        }
    }

    /// Coefficient of the `s`-th term of the degree-`k` series.
    fn weight(&self, k: usize, s: usize) -> S {
        let kk = S::from_i64(k as i64);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        match self.kind {
            Family::Wilson => {
                poch(&-kk.clone(), s)
                    * poch(
                        &(kk + a.clone() + b.clone() + c.clone() + d.clone() - S::one()),
                        s,
                    )
                    / (poch(&S::one(), s)
                        * poch(&(a.clone() + b.clone()), s)
                        * poch(&(a.clone() + c.clone()), s)
                        * poch(&(a.clone() + d.clone()), s))
            }
            Family::Racah => {
                poch(&-kk.clone(), s) * poch(&(kk + a.clone() + b.clone() + S::one()), s)
                    / (poch(&S::one(), s)
                        * poch(&(a.clone() + S::one()), s)
                        * poch(&(b.clone() + d.clone() + S::one()), s)
                        * poch(&(c.clone() + S::one()), s))
            }
            Family::AskeyWilson => {
                let qq = &self.q;
                let abcd = a.clone() * b.clone() * c.clone() * d.clone();
                qpoch(&qq.powi(-(k as i64)), qq, s)
                    * qpoch(&(abcd * qq.powi(k as i64 - 1)), qq, s)
                    * qq.powi(s as i64)
                    / (qpoch(qq, qq, s)
                        * qpoch(&(a.clone() * b.clone()), qq, s)
                        * qpoch(&(a.clone() * c.clone()), qq, s)
                        * qpoch(&(a.clone() * d.clone()), qq, s))
            }
        }
    }

    /// Degree-`k` polynomial evaluated through `z`.
    pub fn poly_z(&self, k: usize, z: &S) -> S {
        (0..=k)
            .map(|s| {
                let factor = match self.kind {
                    Family::Wilson => {
                        poch(&(self.a.clone() + z.clone()), s)
                            * poch(&(self.a.clone() - z.clone()), s)
                    }
                    Family::Racah => poch(&-z.clone(), s) * poch(&(z.clone() + self.g()), s),
                    Family::AskeyWilson => {
                        qpoch(&(self.a.clone() * z.clone()), &self.q, s)
                            * qpoch(&(self.a.clone() / z.clone()), &self.q, s)
                    }
                };
                self.weight(k, s) * factor
            })
            .fold(S::zero(), |acc, t| acc + t)
    }

    /// `r`-th linear factor `u + v ζ` of the series written in `ζ`.
    fn zeta_factor(&self, r: usize) -> [S; 2] {
        let rr = S::from_i64(r as i64);
        match self.kind {
            Family::Wilson => {
                let x = self.a.clone() + rr;
                [x.clone() * x, S::one()]
            }
            Family::Racah => [rr.clone() * (rr + self.g()), -S::one()],
            Family::AskeyWilson => {
                let x = self.a.clone() * self.q.powi(r as i64);
                [S::one() + x.clone() * x.clone(), -(S::from_i64(2) * x)]
            }
        }
    }

    /// Coefficients in powers of `ζ`, lowest first.
    pub fn coeffs_zeta(&self, k: usize) -> Vec<S> {
        let mut out = vec![S::zero(); k + 1];
        let mut factor = vec![S::one()];
        for s in 0..=k {
            if s > 0 {
                factor = poly_mul(&factor, &self.zeta_factor(s - 1));
            }
            let w = self.weight(k, s);
            for (i, f) in factor.iter().enumerate() {
                out[i] = out[i].clone() + w.clone() * f.clone();
            }
        }
        out
    }

    /// `F(z)[P(ζ(z⁺)) - P(ζ(z))] + G(z)[P(ζ(z⁻)) - P(ζ(z))] - λ P(ζ(z))`
    /// together with the largest of the three term magnitudes.
    pub fn difference_residual(&self, k: usize, z: &S) -> (S, f64) {
        let here = self.poly_z(k, z);
        let t1 = self.f_coef(z) * (self.poly_z(k, &self.fwd(z)) - here.clone());
        let t2 = self.g_coef(z) * (self.poly_z(k, &self.bwd(z)) - here.clone());
        let t3 = self.eigenvalue(k) * here;
        let scale = t1.magnitude().max(t2.magnitude()).max(t3.magnitude());
        (t1 + t2 - t3, scale)
    }
}
