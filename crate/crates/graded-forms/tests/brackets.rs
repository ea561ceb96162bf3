//! Lie and Rankin-Cohen brackets across the three pictures, and the heat
//! operator that drives them.

use graded_forms::brackets::{self, BracketParams};
use graded_forms::certificate::Certificate;
use graded_forms::jacobilike;
use graded_forms::modforms::{self, ModularForm};
use graded_forms::quasipoly;
use graded_forms::rat::{rat, rat_frac};

fn qm_ok(f: &graded_forms::quasipoly::QuasiPolynomial) {
    match quasipoly::certify_quasimodular(f).unwrap() {
        Certificate::QuasiModular { .. } => {}
        other => panic!("certification failed: {:?}", other),
    }
}

#[test]
fn polynomial_lie_bracket_is_quasimodular() {
    let prec = 12;
    let f1 = quasipoly::xi_lift(&modforms::delta(prec).unwrap(), 2).unwrap();
    let e8 = ModularForm::new(8, {
        let e4 = modforms::e4(prec);
        e4.mul(&e4)
    });
    let f2 = quasipoly::xi_lift(&e8, 2).unwrap();
    let br = brackets::lie_bracket_q(&f1, &f2, 0, 1, f1.weight / 2, f2.weight / 2).unwrap();
    qm_ok(&br);
    // Top coefficient vanishes and the subtop one is modular.
    assert!(br.coeffs.last().unwrap().is_zero());
    let sub = &br.coeffs[br.coeffs.len() - 2];
    let w = br.weight - 2 * (br.depth() as i64 - 1);
    match modforms::is_modular(sub, w).unwrap() {
        Certificate::Modular { .. } => {}
        other => panic!("subtop coefficient not modular: {:?}", other),
    }
}

#[test]
fn polynomial_lie_bracket_is_antisymmetric() {
    let prec = 12;
    let f1 = quasipoly::xi_lift(&modforms::delta(prec).unwrap(), 3).unwrap();
    let f2 = quasipoly::derivative_polynomial(&modforms::delta(prec).unwrap(), 3).unwrap();
    let ab = brackets::lie_bracket_q(&f1, &f2, 1, 0, f1.weight / 2, f2.weight / 2).unwrap();
    let ba = brackets::lie_bracket_q(&f2, &f1, 0, 1, f2.weight / 2, f1.weight / 2).unwrap();
    assert!(ab.add(&ba).is_zero());
}

#[test]
fn heat_operator_preserves_or_breaks_structure_by_parameter() {
    let phi = jacobilike::xi_hat(&modforms::delta(14).unwrap(), 0, 5).unwrap();
    let good = brackets::heat_apply(&phi, &rat(phi.weight)).unwrap();
    match jacobilike::jl_check(&good).unwrap() {
        Certificate::JacobiLike { .. } => {}
        other => panic!("{:?}", other),
    }
    let bad = brackets::heat_apply(&phi, &rat(phi.weight + 3)).unwrap();
    match jacobilike::jl_check(&bad).unwrap() {
        Certificate::NotJacobiLike { .. } => {}
        other => panic!("mismatched parameter went undetected: {:?}", other),
    }
}

#[test]
fn heat_closed_form_matches_iteration() {
    let phi = jacobilike::xi_hat(&modforms::delta(14).unwrap(), 1, 7).unwrap();
    let mu = rat_frac(3, 2);
    let mut it = phi.clone();
    for l in 1..=3usize {
        it = brackets::heat_apply(&it, &mu).unwrap();
        let closed = brackets::heat_coeffs(&phi, &mu, l).unwrap();
        assert!(closed.agrees_with(&it), "order {}", l);
    }
}

#[test]
fn series_bracket_output_is_jacobi_like() {
    let prec = 12;
    let phi1 = jacobilike::xi_hat(&modforms::delta(prec).unwrap(), 0, 6).unwrap();
    let phi2 = jacobilike::xi_hat(&ModularForm::new(6, modforms::e6(prec)), 0, 6).unwrap();
    let br = brackets::rc_bracket_j(&phi1, &phi2, 1, &rat_frac(1, 2), &rat_frac(1, 2)).unwrap();
    assert_eq!(br.weight, phi1.weight + phi2.weight + 2);
    assert_eq!(br.offset, 0);
    match jacobilike::jl_check(&br).unwrap() {
        Certificate::JacobiLike { .. } => {}
        other => panic!("{:?}", other),
    }
}

#[test]
fn series_bracket_handles_positive_offsets() {
    let prec = 12;
    let phi1 = jacobilike::xi_hat(&modforms::delta(prec).unwrap(), 1, 5).unwrap();
    let phi2 = jacobilike::xi_hat(&ModularForm::new(4, modforms::e4(prec)), 2, 5).unwrap();
    let br = brackets::rc_bracket_j(&phi1, &phi2, 1, &rat(1), &rat(2)).unwrap();
    // Offsets 1 + 2 with one heat application each side leaves degree >= 2.
    assert_eq!(br.offset, 2);
    match jacobilike::jl_check(&br).unwrap() {
        Certificate::JacobiLike { .. } => {}
        other => panic!("{:?}", other),
    }
}

#[test]
fn order_zero_bracket_is_the_renormalized_product() {
    let prec = 10;
    let phi1 = jacobilike::xi_hat(&modforms::delta(prec).unwrap(), 0, 5).unwrap();
    let phi2 = jacobilike::xi_hat(&ModularForm::new(4, modforms::e4(prec)), 1, 5).unwrap();
    let br = brackets::rc_bracket_j(&phi1, &phi2, 0, &rat(1), &rat(1)).unwrap();
    let plain = jacobilike::jl_mul(&phi1, &phi2);
    assert_eq!(br.offset, plain.offset);
    for (u, c) in br.coeffs.iter().enumerate() {
        let scale = graded_forms::rat::rat_pow(2, u as i64 + plain.offset);
        assert!(c.scale(&scale).agrees_with(&plain.coeffs[u]), "index {}", u);
    }
}

#[test]
fn polynomial_bracket_closed_form_matches_composition() {
    let prec = 12;
    let f1 = quasipoly::xi_lift(&ModularForm::new(4, modforms::e4(prec)), 4).unwrap();
    let f2 = quasipoly::xi_lift(&ModularForm::new(6, modforms::e6(prec)), 4).unwrap();
    let params = BracketParams {
        n: 1,
        mu1: rat_frac(1, 2),
        mu2: rat_frac(1, 2),
        lambda1: f1.weight - 8,
        lambda2: f2.weight - 10,
        delta1: 0,
        delta2: 1,
    };
    for m in 0..=2usize {
        let closed = brackets::rc_bracket_qp_m_closed(&f1, &f2, m, &params).unwrap();
        let composed = brackets::rc_bracket_qp_m(&f1, &f2, m, &params).unwrap();
        assert!(closed.agrees_with(&composed), "m = {}", m);
        assert_eq!(closed.weight, composed.weight);
    }
}

#[test]
fn closed_form_rejects_excessive_depth() {
    let prec = 10;
    let f1 = quasipoly::xi_lift(&ModularForm::new(4, modforms::e4(prec)), 2).unwrap();
    let f2 = quasipoly::xi_lift(&ModularForm::new(6, modforms::e6(prec)), 2).unwrap();
    let params = BracketParams {
        n: 1,
        mu1: rat(1),
        mu2: rat(1),
        lambda1: 4,
        lambda2: 6,
        delta1: 0,
        delta2: 0,
    };
    assert!(brackets::rc_bracket_qp_m_closed(&f1, &f2, 1, &params).is_err());
}

#[test]
fn polynomial_rankin_cohen_certifies() {
    let prec = 12;
    let f1 = quasipoly::derivative_polynomial(&modforms::delta(prec).unwrap(), 2).unwrap();
    let f2 = quasipoly::xi_lift(&ModularForm::new(4, modforms::e4(prec)), 2).unwrap();
    let params = BracketParams {
        n: 1,
        mu1: rat_frac(1, 2),
        mu2: rat_frac(3, 2),
        lambda1: f1.weight - 4,
        lambda2: f2.weight - 4,
        delta1: 0,
        delta2: 0,
    };
    let br = brackets::rc_bracket_qp(&f1, &f2, &params).unwrap();
    assert_eq!(br.weight, params.lambda1 + params.lambda2 + 2 * (4 + 1));
    assert_eq!(br.depth(), 4);
    qm_ok(&br);
}
