//! Algebraic laws checked on random inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use quasimod::generators::{theta, Diagonal, ThetaVariant};
use quasimod::graded::{
    d_e_basis, d_g_basis, d_theta_basis, eval_poly, express_in_basis, Basis, GradedPoly, GUARD_BAND,
};
use quasimod::TruncatedSeries;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), order + 1)
        .prop_map(move |c| TruncatedSeries::new(c, order).unwrap())
}

fn any_series() -> impl Strategy<Value = TruncatedSeries> {
    (0usize..=32).prop_flat_map(series)
}

fn integer_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-1000i64..=1000, order + 1)
        .prop_map(move |c| TruncatedSeries::from_ints(c, order).unwrap())
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (0usize..=32)
        .prop_flat_map(|order| {
            (
                series(order),
                small_rational().prop_filter("unit", |c| !c.is_zero()),
            )
        })
        .prop_map(|(s, c0)| {
            let mut c = s.into_coeffs();
            c[0] = c0;
            let order = c.len() - 1;
            TruncatedSeries::new(c, order).unwrap()
        })
}

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![
        Just(Basis::E),
        Just(Basis::G),
        Just(Basis::XY),
        Just(Basis::Theta(Diagonal::Plain)),
        Just(Basis::Theta(Diagonal::Doubled)),
    ]
}

/// A random polynomial with terms of weight at most `2 * t_max`.
fn poly(basis: Basis, t_max: u32) -> impl Strategy<Value = GradedPoly> {
    let keys = basis.monomials(t_max);
    prop::collection::vec(prop::option::weighted(0.6, small_rational()), keys.len()).prop_map(
        move |coeffs| {
            GradedPoly::from_terms(
                basis,
                keys.iter()
                    .zip(coeffs)
                    .filter_map(|(&k, c)| c.map(|c| (k, c))),
            )
        },
    )
}

fn derivation(p: &GradedPoly) -> GradedPoly {
    match p.basis() {
        Basis::E => d_e_basis(p),
        Basis::G => d_g_basis(p),
        Basis::XY | Basis::Theta(_) => d_theta_basis(p),
    }
    .unwrap()
}

proptest! {
    #[test]
    fn multiplication_commutes_and_associates(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn derive_is_a_derivation(a in any_series(), b in any_series()) {
        let lhs = a.mul(&b).derive();
        let rhs = a.derive().mul(&b).add(&a.mul(&b.derive()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitute_power_is_multiplicative(a in any_series(), b in any_series(), k in 1usize..=4) {
        let lhs = a.mul(&b).substitute_power(k).unwrap();
        let rhs = a.substitute_power(k).unwrap().mul(&b.substitute_power(k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_mod_is_a_ring_map(
        (a, b) in (0usize..=32).prop_flat_map(|n| (integer_series(n), integer_series(n))),
        m in 2u64..=97,
    ) {
        let (ra, rb) = (a.reduce_mod(m).unwrap(), b.reduce_mod(m).unwrap());
        prop_assert_eq!(a.add(&b).reduce_mod(m).unwrap(), ra.add(&rb));
        prop_assert_eq!(a.mul(&b).reduce_mod(m).unwrap(), ra.mul(&rb));
    }

    #[test]
    fn reduce_mod_commutes_when_defined(a in any_series(), b in any_series(), m in 2u64..=31) {
        if let (Ok(ra), Ok(rb)) = (a.reduce_mod(m), b.reduce_mod(m)) {
            prop_assert_eq!(a.add(&b).reduce_mod(m).unwrap(), ra.add(&rb));
            prop_assert_eq!(a.mul(&b).reduce_mod(m).unwrap(), ra.mul(&rb));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_exact(a in unit_series()) {
        let one = TruncatedSeries::one(a.order());
        prop_assert_eq!(a.mul(&a.invert().unwrap()), one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivation_commutes_with_evaluation((p, n) in basis().prop_flat_map(|b| (poly(b, 6), 8usize..=24))) {
        let lhs = eval_poly(&derivation(&p), n);
        let rhs = eval_poly(&p, n + 1).derive().truncate(n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solver_recovers_random_polynomials(
        p in prop_oneof![
            Just(Basis::E),
            Just(Basis::G),
            Just(Basis::Theta(Diagonal::Plain)),
            Just(Basis::Theta(Diagonal::Doubled)),
        ].prop_flat_map(|b| poly(b, 5))
    ) {
        let t = 5;
        let order = p.basis().monomials(t).len() + GUARD_BAND + 4;
        let f = eval_poly(&p, order);
        prop_assert_eq!(express_in_basis(&f, t, p.basis()).unwrap(), p);
    }

    #[test]
    fn theta_xy_round_trip(
        (p, diag) in prop_oneof![Just(Diagonal::Plain), Just(Diagonal::Doubled)]
            .prop_flat_map(|d| (poly(Basis::Theta(d), 6), Just(d)))
    ) {
        let xy = p.to_xy().unwrap();
        prop_assert!(xy.is_symmetric());
        prop_assert_eq!(xy.from_xy(diag).unwrap(), p);
    }
}

#[test]
fn jacobi_quartic_identity_to_order_200() {
    let n = 200;
    let lhs = theta(ThetaVariant::Three, n).pow(4);
    let rhs = theta(ThetaVariant::TwoPow4, n).add(&theta(ThetaVariant::Four, n).pow(4));
    assert_eq!(lhs, rhs);
}
