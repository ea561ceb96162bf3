//! Quasimodular polynomials: lifts, certification, depth reduction and the
//! polynomial Hecke operator.

use graded_forms::certificate::Certificate;
use graded_forms::modforms;
use graded_forms::quasipoly;
use graded_forms::rat::rat;

#[test]
fn ramanujan_derivative_identities() {
    let prec = 30;
    let e2 = modforms::e2(prec);
    let e4 = modforms::e4(prec);
    let e6 = modforms::e6(prec);
    let twelve_de2 = e2.derive().scale(&rat(12));
    assert!(twelve_de2.agrees_with(&e2.mul(&e2).sub(&e4)));
    let three_de4 = e4.derive().scale(&rat(3));
    assert!(three_de4.agrees_with(&e2.mul(&e4).sub(&e6)));
    let two_de6 = e6.derive().scale(&rat(2));
    assert!(two_de6.agrees_with(&e2.mul(&e6).sub(&e4.mul(&e4))));
}

#[test]
fn xi_lift_certifies_and_has_the_right_shape() {
    let prec = 14;
    let d = modforms::delta(prec).unwrap();
    for m in 0..=3usize {
        let f = quasipoly::xi_lift(&d, m).unwrap();
        assert_eq!(f.depth(), m);
        assert_eq!(f.weight, 12 + 2 * m as i64);
        match quasipoly::certify_quasimodular(&f).unwrap() {
            Certificate::QuasiModular { weight, .. } => assert_eq!(weight, f.weight),
            other => panic!("lift failed to certify: {:?}", other),
        }
    }
}

#[test]
fn derivative_polynomial_certifies() {
    let prec = 14;
    let e4 = graded_forms::modforms::ModularForm::new(4, modforms::e4(prec));
    for m in 1..=3usize {
        let f = quasipoly::derivative_polynomial(&e4, m).unwrap();
        assert_eq!(f.depth(), m);
        match quasipoly::certify_quasimodular(&f).unwrap() {
            Certificate::QuasiModular { .. } => {}
            other => panic!("derivative polynomial failed to certify: {:?}", other),
        }
    }
}

#[test]
fn e2_polynomial_is_depth_one_quasimodular() {
    let f = quasipoly::e2_polynomial(16);
    assert_eq!(f.weight, 2);
    assert_eq!(f.depth(), 1);
    match quasipoly::certify_quasimodular(&f).unwrap() {
        Certificate::QuasiModular { components, .. } => assert_eq!(components.len(), 2),
        other => panic!("{:?}", other),
    }
}

#[test]
fn certification_rejects_a_broken_polynomial() {
    let prec = 14;
    let d = modforms::delta(prec).unwrap();
    let mut f = quasipoly::xi_lift(&d, 2).unwrap();
    // Replace the top coefficient with something of the wrong weight.
    f.coeffs[2] = modforms::e4(prec);
    match quasipoly::certify_quasimodular(&f).unwrap() {
        Certificate::NotQuasiModular { .. } => {}
        other => panic!("expected a refutation, got {:?}", other),
    }
}

#[test]
fn depth_reduce_strips_one_level() {
    let prec = 14;
    let d = modforms::delta(prec).unwrap();
    let f = quasipoly::xi_lift(&d, 3).unwrap();
    let g = quasipoly::depth_reduce(&f).unwrap();
    assert_eq!(g.depth(), 2);
    match quasipoly::certify_quasimodular(&g).unwrap() {
        Certificate::QuasiModular { .. } => {}
        other => panic!("{:?}", other),
    }
}

#[test]
fn polynomial_hecke_eigenvalue_on_the_delta_family() {
    let prec = 24;
    let d = modforms::delta(prec).unwrap();
    let f = quasipoly::derivative_polynomial(&d, 1).unwrap();
    let t = quasipoly::hecke_tp(2, &f).unwrap();
    // Eigenvalue p·tau(p) = 2·(−24) on the depth-one derivative family.
    let expect = f.scale(&rat(-48)).truncated(t.prec());
    assert!(t.agrees_with(&expect));
}

#[test]
fn product_of_quasimodular_polynomials_certifies() {
    let prec = 12;
    let a = quasipoly::xi_lift(&modforms::delta(prec).unwrap(), 1).unwrap();
    let b = quasipoly::e2_polynomial(prec);
    let p = quasipoly::qp_mul(&a, &b);
    assert_eq!(p.weight, a.weight + 2);
    assert_eq!(p.depth(), 2);
    match quasipoly::certify_quasimodular(&p).unwrap() {
        Certificate::QuasiModular { .. } => {}
        other => panic!("{:?}", other),
    }
}
