//! Jacobi-like X-series: lifts, projections, head certification, and the
//! series-side Hecke operator.

use graded_forms::certificate::Certificate;
use graded_forms::jacobilike;
use graded_forms::modforms::{self, ModularForm};
use graded_forms::quasipoly;
use graded_forms::rat::rat;

#[test]
fn canonical_lift_round_trips() {
    let prec = 12;
    let d = modforms::delta(prec).unwrap();
    for m in 0..=3usize {
        let f = quasipoly::xi_lift(&d, m).unwrap();
        for delta in 0..=2i64 {
            let lift = jacobilike::canonical_lift(&f, delta, m + 4).unwrap();
            assert_eq!(lift.offset, delta);
            assert_eq!(lift.weight, f.weight - 2 * (m as i64 + delta));
            let back = jacobilike::pi_map(&lift, m).unwrap();
            assert!(back.agrees_with(&f));
            assert_eq!(back.weight, f.weight);
        }
    }
}

#[test]
fn canonical_lift_is_jacobi_like() {
    let prec = 12;
    let f = quasipoly::xi_lift(&modforms::delta(prec).unwrap(), 2).unwrap();
    let lift = jacobilike::canonical_lift(&f, 1, 7).unwrap();
    match jacobilike::jl_check(&lift).unwrap() {
        Certificate::JacobiLike { heads_checked, .. } => assert!(heads_checked >= 3),
        other => panic!("{:?}", other),
    }
}

#[test]
fn xi_hat_heads_project_to_xi_lifts() {
    let prec = 12;
    let d = modforms::delta(prec).unwrap();
    let phi = jacobilike::xi_hat(&d, 0, 5).unwrap();
    for m in 0..=4usize {
        // The projected heads are the Xi lifts up to the depth factorial.
        let proj = jacobilike::pi_map(&phi, m)
            .unwrap()
            .scale(&graded_forms::rat::factorial(m as i64));
        let expect = quasipoly::xi_lift(&d, m).unwrap();
        assert!(proj.agrees_with(&expect), "depth {}", m);
    }
}

#[test]
fn jl_check_detects_a_broken_series() {
    let prec = 12;
    let d = modforms::delta(prec).unwrap();
    let mut phi = jacobilike::xi_hat(&d, 0, 5).unwrap();
    phi.coeffs[2] = modforms::e4(prec);
    match jacobilike::jl_check(&phi).unwrap() {
        Certificate::NotJacobiLike { failing_head, .. } => assert!(failing_head <= 2),
        other => panic!("{:?}", other),
    }
}

#[test]
fn reoffset_embedding_preserves_certification() {
    let prec = 12;
    let d = modforms::delta(prec).unwrap();
    let phi = jacobilike::xi_hat(&d, 2, 4).unwrap();
    let flat = jacobilike::reoffset(&phi, 0).unwrap();
    assert_eq!(flat.offset, 0);
    assert_eq!(flat.xtrunc(), phi.xtrunc() + 2);
    assert!(flat.coeffs[0].is_zero() && flat.coeffs[1].is_zero());
    match jacobilike::jl_check(&flat).unwrap() {
        Certificate::JacobiLike { .. } => {}
        other => panic!("{:?}", other),
    }
}

#[test]
fn series_hecke_commutes_with_xi_hat() {
    let prec = 24;
    let d = modforms::delta(prec).unwrap();
    let phi = jacobilike::xi_hat(&d, 1, 4).unwrap();
    let lhs = jacobilike::hecke_tj(2, &phi).unwrap();
    let td = ModularForm::new(12, modforms::hecke_t(2, 12, &d.series).unwrap());
    let rhs = jacobilike::xi_hat(&td, 1, 4).unwrap();
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn series_hecke_eigenvalue_via_projection() {
    let prec = 24;
    let d = modforms::delta(prec).unwrap();
    let phi = jacobilike::xi_hat(&d, 0, 4).unwrap();
    let t = jacobilike::hecke_tj(2, &phi).unwrap();
    // p^m · pi_m(T phi) equals the polynomial Hecke image of pi_m(phi).
    for m in 0..=2usize {
        let lhs = jacobilike::pi_map(&t, m).unwrap().scale(&rat(1 << m));
        let rhs = quasipoly::hecke_tp(2, &jacobilike::pi_map(&phi, m).unwrap()).unwrap();
        assert!(lhs.agrees_with(&rhs), "depth {}", m);
    }
}

#[test]
fn e2_series_heads_certify() {
    let phi = jacobilike::phi_e2(14, 5);
    assert_eq!(phi.weight, 2);
    match jacobilike::jl_check(&phi).unwrap() {
        Certificate::JacobiLike { .. } => {}
        other => panic!("{:?}", other),
    }
    let head = jacobilike::pi_map(&phi, 1).unwrap();
    assert!(head.agrees_with(&quasipoly::e2_polynomial(14)));
}

#[test]
fn transfer_moves_between_depths() {
    let prec = 12;
    let f = quasipoly::xi_lift(&modforms::delta(prec).unwrap(), 2).unwrap();
    let g = jacobilike::transfer(&f, 4, 0).unwrap();
    assert_eq!(g.depth(), 4);
    match quasipoly::certify_quasimodular(&g).unwrap() {
        Certificate::QuasiModular { .. } => {}
        other => panic!("{:?}", other),
    }
}
