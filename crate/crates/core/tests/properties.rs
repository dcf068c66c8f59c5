//! Property tests over random exact inputs.

mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use specmat::askey::{Family, FamilyParams};
use specmat::foundation::{derivative_samples, interpolate, lagrange_basis, matrix_d, NodeSet};
use specmat::opcompile::{check_null, check_solution, compile, OperatorExpr, RationalFn};
use specmat::shift::{delta_check, delta_hat, nabla_check, nabla_hat, ShiftKind};
use specmat::{ColumnVector, Scalar, SquareMatrix};

fn rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn nonzero() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn positive() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn nodes(max: usize) -> impl Strategy<Value = NodeSet<Q>> {
    prop::collection::btree_set(rational(), 1..=max)
        .prop_map(|s| NodeSet::plain(s.into_iter().collect()).unwrap())
}

fn nonzero_nodes(max: usize) -> impl Strategy<Value = NodeSet<Q>> {
    prop::collection::btree_set(nonzero(), 1..=max)
        .prop_map(|s| NodeSet::plain(s.into_iter().collect()).unwrap())
}

/// Nodes together with coefficients of a polynomial of degree below `N`.
fn nodes_and_poly(max: usize) -> impl Strategy<Value = (NodeSet<Q>, Vec<Q>)> {
    nodes(max).prop_flat_map(|ns| {
        let n = ns.len();
        (Just(ns), prop::collection::vec(rational(), n))
    })
}

fn family(kind: Family) -> impl Strategy<Value = FamilyParams<Q>> {
    let q_base = (1i64..=4, 5i64..=6).prop_map(|(n, d)| q(n, d));
    (positive(), positive(), positive(), positive(), q_base).prop_filter_map(
        "guards",
        move |(a, b, c, d, qq)| {
            let p = match kind {
                Family::Wilson => FamilyParams::wilson(a, b, c, d),
                Family::Racah => FamilyParams::racah(a, b, c, d),
                Family::AskeyWilson => {
                    let s = |x: Q| x / q(4, 1);
                    FamilyParams::askey_wilson(s(a), s(b), s(c), s(d), qq).ok()?
                }
            };
            p.check_guards(5).is_ok().then_some(p)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interpolation_is_exact((ns, c) in nodes_and_poly(6), z in rational()) {
        let f = ns.sample(|x| horner(&c, x));
        prop_assert_eq!(interpolate(&ns, &f, &z).unwrap(), horner(&c, &z));
    }

    #[test]
    fn lagrange_basis_sums_to_one(ns in nodes(6), z in rational()) {
        let total = (0..ns.len()).fold(Q::zero(), |acc, n| acc + lagrange_basis(&ns, n, &z));
        prop_assert_eq!(total, Q::one());
    }

    #[test]
    fn derivative_matrix_is_nilpotent(ns in nodes(6)) {
        prop_assert!(matrix_d(&ns).pow(ns.len()).is_zero());
    }

    #[test]
    fn derivative_of_monomials(ns in nodes(6), m in 0usize..6) {
        let n = ns.len();
        let m = m % n;
        let f = ns.sample(|z| z.powi(m as i64));
        let df = derivative_samples(&ns, &f, 1).unwrap();
        let expected: Vec<Q> = ns
            .nodes()
            .iter()
            .map(|z| if m == 0 { Q::zero() } else { q(m as i64, 1) * z.powi(m as i64 - 1) })
            .collect();
        prop_assert_eq!(df.entries(), expected.as_slice());
    }

    #[test]
    fn shifts_act_exactly((ns, c) in nodes_and_poly(6), a in nonzero(), p in nonzero()) {
        let f = ns.sample(|z| horner(&c, z));
        let hat = delta_hat(&ns, &a).mul_vec(&f).unwrap();
        let check = delta_check(&ns, &p).mul_vec(&f).unwrap();
        for (i, z) in ns.nodes().iter().enumerate() {
            prop_assert_eq!(&hat[i], &horner(&c, &(z + &a)));
            prop_assert_eq!(&check[i], &horner(&c, &(&p * z)));
        }
    }

    #[test]
    fn semigroup_and_inverse(ns in nodes(5), a in rational(), b in rational(), p in nonzero(), r in nonzero()) {
        prop_assert_eq!(&delta_hat(&ns, &a) * &delta_hat(&ns, &b), delta_hat(&ns, &(&a + &b)));
        prop_assert_eq!(&delta_check(&ns, &p) * &delta_check(&ns, &r), delta_check(&ns, &(&p * &r)));
        let id = SquareMatrix::<Q>::identity(ns.len());
        prop_assert_eq!(&delta_hat(&ns, &a) * &delta_hat(&ns, &-a.clone()), id.clone());
        prop_assert_eq!(&delta_check(&ns, &p) * &delta_check(&ns, &p.recip()), id);
    }

    #[test]
    fn nablas_are_nilpotent(ns in nonzero_nodes(6), a in nonzero(), p in nonzero()) {
        prop_assume!(p != Q::one());
        let n = ns.len();
        prop_assert!(nabla_hat(&ns, &a).unwrap().pow(n).is_zero());
        prop_assert!(nabla_check(&ns, &p).unwrap().pow(n).is_zero());
    }

    #[test]
    fn dilation_determinant_and_trace(ns in nodes(6), p in nonzero()) {
        prop_assume!(p != Q::one());
        let n = ns.len() as i64;
        let m = delta_check(&ns, &p);
        prop_assert_eq!(m.determinant(), p.powi(n * (n - 1) / 2));
        prop_assert_eq!(det(&m), p.powi(n * (n - 1) / 2));
        let trace = (0..n).fold(Q::zero(), |acc, k| acc + p.powi(k));
        prop_assert_eq!(m.trace(), trace);
    }

    #[test]
    fn compile_is_linear(ns in nodes(5), a in nonzero(), c0 in rational(), c1 in rational()) {
        let shift = ShiftKind::additive(a).unwrap();
        let e1 = OperatorExpr::nabla(shift.clone()).unwrap();
        let e2 = OperatorExpr::pure_shift(shift, 2).unwrap();
        let sum = compile(&e1.add(&e2).unwrap(), &ns).unwrap();
        prop_assert_eq!(sum, &compile(&e1, &ns).unwrap() + &compile(&e2, &ns).unwrap());
        let coeff = RationalFn::polynomial(vec![c0, c1]);
        let scaled = compile(&e1.left_multiply(&coeff), &ns).unwrap();
        let d: Vec<Q> = ns.nodes().iter().map(|z| coeff.eval(z).unwrap()).collect();
        prop_assert_eq!(scaled, compile(&e1, &ns).unwrap().scale_rows(&d));
    }

    #[test]
    fn check_solution_accepts_images_only((ns, c) in nodes_and_poly(5), a in nonzero(), bump in nonzero()) {
        let expr = OperatorExpr::nabla(ShiftKind::additive(a).unwrap()).unwrap();
        let f = ns.sample(|z| horner(&c, z));
        let g = compile(&expr, &ns).unwrap().mul_vec(&f).unwrap();
        prop_assert!(check_solution(&expr, &ns, &f, &g).unwrap().pass);
        let mut wrong = g.into_entries();
        wrong[0] = wrong[0].clone() + bump;
        prop_assert!(!check_solution(&expr, &ns, &f, &ColumnVector::new(wrong)).unwrap().pass);
    }

    #[test]
    fn constant_null_vector_gives_zero_determinant(ns in nonzero_nodes(5), a in nonzero(), p in nonzero()) {
        prop_assume!(p != Q::one());
        for shift in [ShiftKind::additive(a.clone()).unwrap(), ShiftKind::multiplicative(p.clone()).unwrap()] {
            let expr = OperatorExpr::nabla(shift).unwrap();
            prop_assert!(check_null(&expr, &ns).unwrap().is_zero());
        }
    }

    #[test]
    fn matrix_json_round_trip(ns in nodes(4), a in rational()) {
        let m = delta_hat(&ns, &a);
        prop_assert_eq!(SquareMatrix::<Q>::from_json(&m.to_json()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wilson_depends_on_z_squared(p in family(Family::Wilson), k in 0usize..5, z in rational()) {
        prop_assert_eq!(p.eval(k, &z).unwrap(), p.eval(k, &-z.clone()).unwrap());
    }

    #[test]
    fn askey_wilson_is_inversion_symmetric(p in family(Family::AskeyWilson), k in 0usize..4, z in nonzero()) {
        prop_assert_eq!(p.eval(k, &z).unwrap(), p.eval(k, &z.recip()).unwrap());
    }

    #[test]
    fn racah_reflection_symmetry(p in family(Family::Racah), k in 0usize..5, z in rational()) {
        let mirror = -z.clone() - p.gamma.clone() - p.delta.clone() - Q::one();
        prop_assert_eq!(p.eval(k, &z).unwrap(), p.eval(k, &mirror).unwrap());
    }

    #[test]
    fn monomial_coefficients_match_evaluation(
        p in prop_oneof![family(Family::Wilson), family(Family::Racah), family(Family::AskeyWilson)],
        k in 0usize..5,
        z in nonzero(),
    ) {
        let c = p.monomial_coefficients(k).unwrap();
        prop_assert_eq!(c.len(), k + 1);
        prop_assert_eq!(horner(&c, &p.zeta(&z).unwrap()), p.eval(k, &z).unwrap());
    }

    #[test]
    fn wilson_zeros_ignore_parameter_order(p in family(Family::Wilson), k in 1usize..5) {
        let swapped = FamilyParams::wilson(p.beta.clone(), p.alpha.clone(), p.gamma.clone(), p.delta.clone());
        prop_assume!(swapped.check_guards(k).is_ok());
        let (c, s) = (p.monomial_coefficients(k).unwrap(), swapped.monomial_coefficients(k).unwrap());
        prop_assert!(!c[k].is_zero() && !s[k].is_zero());
        for i in 0..=k {
            prop_assert_eq!(&c[i] * &s[k], &s[i] * &c[k]);
        }
    }
}
