//! Pseudodifferential-operator picture: the symbol product, its bracket, and
//! the round trips to the X-series and polynomial pictures.

use graded_forms::jacobilike;
use graded_forms::modforms;
use graded_forms::psido;
use graded_forms::qseries::QSeries;
use graded_forms::quasipoly;
use graded_forms::rat::rat_frac;
use proptest::prelude::*;

fn small_psido(seed: &[(i64, i64)], offset: i64, prec: usize) -> psido::PsiDO {
    let coeffs = seed
        .iter()
        .map(|&(a, b)| {
            QSeries::new(
                (0..prec)
                    .map(|n| rat_frac(a + b * n as i64, 1 + (n as i64 % 3)))
                    .collect(),
            )
        })
        .collect();
    psido::PsiDO::new(offset, coeffs)
}

#[test]
fn product_is_associative_on_fixed_operators() {
    let a = small_psido(&[(1, 2), (0, 1), (3, -1), (2, 0)], 1, 8);
    let b = small_psido(&[(2, -1), (1, 1), (0, 2), (1, 0)], 2, 8);
    let c = small_psido(&[(0, 3), (2, 2), (1, -2), (0, 1)], 1, 8);
    let lhs = psido::psido_mul(&psido::psido_mul(&a, &b), &c);
    let rhs = psido::psido_mul(&a, &psido::psido_mul(&b, &c));
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn bracket_closed_form_matches_the_commutator() {
    let a = small_psido(&[(1, 1), (2, -1), (0, 2), (1, 0), (3, 1)], 2, 8);
    let b = small_psido(&[(2, 0), (1, 2), (1, -1), (0, 1), (2, 2)], 3, 8);
    let lhs = psido::psido_bracket(&a, &b);
    let rhs = psido::psido_bracket_closed(&a, &b);
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn series_round_trip() {
    let prec = 10;
    let d = modforms::delta(prec).unwrap();
    let phi = jacobilike::xi_hat(&d, 1, 5).unwrap();
    // Half the weight tag keeps the round trip weight-faithful.
    let xi = phi.weight / 2;
    let op = psido::from_series(&phi, xi).unwrap();
    assert_eq!(op.offset, xi + 1);
    let back = psido::to_series(&op, xi).unwrap();
    assert!(back.agrees_with(&phi));
    assert_eq!(back.weight, phi.weight);
    assert_eq!(back.offset, phi.offset);
}

#[test]
fn operator_lift_projects_back() {
    let prec = 10;
    let d = modforms::delta(prec).unwrap();
    for m in 0..=2usize {
        let f = quasipoly::xi_lift(&d, m).unwrap();
        // pi_partial expects weight 2m + 2eps.
        let eps = (f.weight - 2 * m as i64) / 2;
        let op = psido::psido_lift(&f, 0, eps, m + 3).unwrap();
        let back = psido::pi_partial(&op, m).unwrap();
        assert!(back.agrees_with(&f));
        assert_eq!(back.weight, f.weight);
    }
}

fn series_strategy(prec: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-9i64..=9, prec).prop_map(|v| QSeries::from_ints(&v))
}

fn psido_strategy() -> impl Strategy<Value = psido::PsiDO> {
    (1i64..=3, prop::collection::vec(series_strategy(5), 3..=4))
        .prop_map(|(off, coeffs)| psido::PsiDO::new(off, coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_antisymmetric(a in psido_strategy(), b in psido_strategy()) {
        let ab = psido::psido_bracket(&a, &b);
        let ba = psido::psido_bracket(&b, &a);
        prop_assert!(ab.add(&ba).is_zero());
    }

    #[test]
    fn jacobi_identity(a in psido_strategy(), b in psido_strategy(), c in psido_strategy()) {
        let x = psido::psido_bracket(&psido::psido_bracket(&a, &b), &c);
        let y = psido::psido_bracket(&psido::psido_bracket(&b, &c), &a);
        let z = psido::psido_bracket(&psido::psido_bracket(&c, &a), &b);
        prop_assert!(x.add(&y).add(&z).is_zero());
    }

    #[test]
    fn product_distributes(
        a in psido_strategy(),
        off in 1i64..=3,
        bc in prop::collection::vec(series_strategy(5), 3..=4),
        cc in prop::collection::vec(series_strategy(5), 3..=4),
    ) {
        // Addition needs a common offset on the two summands.
        let b = psido::PsiDO::new(off, bc);
        let c = psido::PsiDO::new(off, cc);
        let lhs = psido::psido_mul(&a, &b.add(&c));
        let rhs = psido::psido_mul(&a, &b).add(&psido::psido_mul(&a, &c));
        prop_assert!(lhs.agrees_with(&rhs));
    }
}
