//! Truncated q-expansion arithmetic: fixed vectors plus ring/derivation laws
//! on randomly generated series.

use graded_forms::qseries::QSeries;
use graded_forms::rat::{rat, rat_frac};
use proptest::prelude::*;

fn series_strategy(prec: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((-40i64..=40, 1i64..=6), prec)
        .prop_map(|v| QSeries::new(v.into_iter().map(|(n, d)| rat_frac(n, d)).collect()))
}

#[test]
fn product_truncates_to_min_precision() {
    let a = QSeries::from_ints(&[1, 2, 3, 4]);
    let b = QSeries::from_ints(&[5, 6]);
    let p = a.mul(&b);
    assert_eq!(p.prec(), 2);
    assert_eq!(p.coeff(0), &rat(5));
    assert_eq!(p.coeff(1), &rat(16));
}

#[test]
fn derive_multiplies_by_the_exponent() {
    let a = QSeries::from_ints(&[7, 1, 1, 1, 1]);
    let d = a.derive();
    for n in 0..5 {
        assert_eq!(d.coeff(n), &rat(n as i64));
    }
}

#[test]
fn u_and_v_operators_on_a_marker_series() {
    // a(n) = n makes the index bookkeeping visible.
    let a = QSeries::new((0..12).map(rat).collect());
    let u = a.u_op(3);
    assert_eq!(u.prec(), 4);
    for n in 0..4 {
        assert_eq!(u.coeff(n), &rat(3 * n as i64));
    }
    let v = a.v_op(3);
    assert_eq!(v.prec(), 12);
    assert_eq!(v.coeff(0), &rat(0));
    assert_eq!(v.coeff(3), &rat(1));
    assert_eq!(v.coeff(4), &rat(0));
    assert_eq!(v.coeff(9), &rat(3));
}

#[test]
fn u_after_v_is_the_identity() {
    let a = QSeries::new((0..20).map(|n| rat(n * n + 1)).collect());
    for d in [2usize, 3, 5] {
        let round = a.v_op(d).u_op(d);
        assert!(round.agrees_with(&a));
    }
}

proptest! {
    #[test]
    fn multiplication_commutes(a in series_strategy(8), b in series_strategy(8)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(
        a in series_strategy(6),
        b in series_strategy(6),
        c in series_strategy(6),
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(
        a in series_strategy(6),
        b in series_strategy(6),
        c in series_strategy(6),
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn derive_satisfies_leibniz(a in series_strategy(8), b in series_strategy(8)) {
        let lhs = a.mul(&b).derive();
        let rhs = a.derive().mul(&b).add(&a.mul(&b.derive()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn u_op_is_linear(a in series_strategy(9), b in series_strategy(9), d in 2usize..4) {
        prop_assert_eq!(a.add(&b).u_op(d), a.u_op(d).add(&b.u_op(d)));
    }

    #[test]
    fn v_op_is_multiplicative(a in series_strategy(6), b in series_strategy(6), d in 2usize..4) {
        // V_d is a ring map on the coefficients it keeps.
        let lhs = a.mul(&b).v_op(d);
        let rhs = a.v_op(d).mul(&b.v_op(d));
        prop_assert!(lhs.agrees_with(&rhs));
    }
}
