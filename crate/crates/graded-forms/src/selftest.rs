//! Built-in verification suite.  Each check exercises one cluster of exact
//! identities (generators, liftings, diagrams, brackets, Hecke action,
//! half-integral maps) and reports pass/fail with a short detail string.
//! The CLI `selftest` subcommand and the integration tests share this code.

use crate::brackets::{self, BracketParams};
use crate::certificate::Certificate;
use crate::error::Result;
use crate::halfint::{self, DirichletCharacter, HalfIntPolynomial};
use crate::jacobilike::{self, JacobiLikeForm};
use crate::modforms::{self, ModularForm};
use crate::psido::{self, PsiDO};
use crate::qseries::QSeries;
use crate::quasipoly::{self, QuasiPolynomial};
use crate::rat::{rat, rat_frac, Rat};
use num::{One, Zero};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<String, String>;

/// Deterministic linear congruential generator for reproducible test data.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493))
    }
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }
    /// Small signed integer in [-5, 5].
    pub fn small(&mut self) -> i64 {
        (self.next_u64() % 11) as i64 - 5
    }
    pub fn series(&mut self, prec: usize) -> QSeries {
        QSeries::new((0..prec).map(|_| rat(self.small())).collect())
    }
}

fn fail(msg: impl Into<String>) -> Check {
    Err(msg.into())
}

fn lift_err<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {}", e))
}

// ---------------------------------------------------------------- fixtures

fn form_e4(prec: usize) -> ModularForm {
    ModularForm::new(4, modforms::e4(prec))
}
fn form_e6(prec: usize) -> ModularForm {
    ModularForm::new(6, modforms::e6(prec))
}
fn form_delta(prec: usize) -> ModularForm {
    modforms::delta(prec).expect("precision suffices")
}
fn form_mul(a: &ModularForm, b: &ModularForm) -> ModularForm {
    ModularForm::new(a.weight + b.weight, a.series.mul(&b.series))
}

/// Modular-form pool with weights 4..20.
fn form_pool(prec: usize) -> Vec<ModularForm> {
    let e4 = form_e4(prec);
    let e6 = form_e6(prec);
    let delta = form_delta(prec);
    vec![
        e4.clone(),
        e6.clone(),
        form_mul(&e4, &e4),
        form_mul(&e4, &e6),
        delta.clone(),
        form_mul(&e4, &delta),
        form_mul(&e6, &delta),
        form_mul(&form_mul(&e4, &e4), &delta),
    ]
}

/// Certified quasimodular polynomials of weight ≤ 30 and depth ≤ 5.
/// `strict` keeps only those with weight > 2·depth (liftable ones).
fn qp_corpus(prec: usize, strict: bool) -> Vec<QuasiPolynomial> {
    let mut out = Vec::new();
    for h in form_pool(prec) {
        for m in 0..=5usize {
            if h.weight + 2 * m as i64 > 30 {
                continue;
            }
            out.push(quasipoly::xi_lift(&h, m).expect("weights >= 4"));
        }
    }
    for h in [form_e4(prec), form_e6(prec), form_delta(prec)] {
        for m in 1..=4usize {
            out.push(quasipoly::derivative_polynomial(&h, m).expect("valid inputs"));
        }
    }
    if !strict {
        let e2p = quasipoly::e2_polynomial(prec);
        out.push(e2p.clone());
        out.push(quasipoly::qp_mul(&e2p, &e2p));
        let x4 = quasipoly::xi_lift(&form_e4(prec), 1).unwrap();
        out.push(quasipoly::qp_mul(&e2p, &x4));
        out.push(quasipoly::qp_mul(&x4, &x4));
    }
    if strict {
        out.retain(|f| f.weight > 2 * f.depth() as i64);
    }
    out
}

fn certify_ok(f: &QuasiPolynomial) -> std::result::Result<(), String> {
    match lift_err(quasipoly::certify_quasimodular(f))? {
        Certificate::QuasiModular { .. } => Ok(()),
        c => Err(format!(
            "certification failed at weight {} depth {}: {:?}",
            f.weight,
            f.depth(),
            c
        )),
    }
}

fn jl_ok(phi: &JacobiLikeForm) -> std::result::Result<(), String> {
    match lift_err(jacobilike::jl_check(phi))? {
        Certificate::JacobiLike { .. } => Ok(()),
        c => Err(format!(
            "head certification failed at weight {} offset {}: {:?}",
            phi.weight, phi.offset, c
        )),
    }
}

// ------------------------------------------------------------------ checks

/// Euler product ∏(1−qⁿ) via the pentagonal-number expansion.
fn euler_product(prec: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); prec];
    let mut k: i64 = 0;
    loop {
        let advanced = [k, -k]
            .iter()
            .filter(|&&j| !(k != 0 && j == 0))
            .map(|&j| {
                let g = j * (3 * j - 1) / 2;
                if (g as usize) < prec {
                    coeffs[g as usize] = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    true
                } else {
                    false
                }
            })
            .fold(false, |a, b| a || b);
        if !advanced && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::new(coeffs)
}

fn check_generators() -> Check {
    let prec = 50;
    let e2 = modforms::e2(prec);
    let expected_head: [i64; 5] = [1, -24, -72, -96, -168];
    for (n, &v) in expected_head.iter().enumerate() {
        if e2.coeff(n) != &rat(v) {
            return fail(format!("E2 coefficient {} is not {}", n, v));
        }
    }
    // Divisor-power sums by sieve, independent of the generator code path.
    for (series, mult, pow) in [
        (modforms::e2(prec), -24i64, 1u32),
        (modforms::e4(prec), 240, 3),
        (modforms::e6(prec), -504, 5),
    ] {
        let mut sums = vec![Rat::zero(); prec];
        for d in 1..prec {
            let dp = crate::rat::rat_pow(d as i64, pow as i64);
            let mut m = d;
            while m < prec {
                sums[m] += &dp;
                m += d;
            }
        }
        for n in 1..prec {
            if series.coeff(n) != &(rat(mult) * &sums[n]) {
                return fail(format!("generator mismatch at q^{}", n));
            }
        }
    }
    // Discriminant against q·∏(1−qⁿ)^24 via repeated squaring.
    let delta = form_delta(prec);
    let e = euler_product(prec);
    let e2p = e.mul(&e);
    let e4p = e2p.mul(&e2p);
    let e8p = e4p.mul(&e4p);
    let e16p = e8p.mul(&e8p);
    let e24p = e16p.mul(&e8p);
    for n in 1..prec {
        if delta.series.coeff(n) != e24p.coeff(n - 1) {
            return fail(format!("discriminant mismatch at q^{}", n));
        }
    }
    if !delta.series.coeff(0).is_zero() {
        return fail("discriminant must be cuspidal");
    }
    Ok(format!("generators verified to {} coefficients", prec))
}

fn check_normalization() -> Check {
    let prec = 50;
    let e2 = modforms::e2(prec);
    let e4 = modforms::e4(prec);
    let e6 = modforms::e6(prec);
    let de2 = e2.mul(&e2).sub(&e4).scale(&rat_frac(1, 12));
    let de4 = e2.mul(&e4).sub(&e6).scale(&rat_frac(1, 3));
    let de6 = e2.mul(&e6).sub(&e4.mul(&e4)).scale(&rat_frac(1, 2));
    if !e2.derive().agrees_with(&de2) {
        return fail("derivative identity for E2 fails");
    }
    if !e4.derive().agrees_with(&de4) {
        return fail("derivative identity for E4 fails");
    }
    if !e6.derive().agrees_with(&de6) {
        return fail("derivative identity for E6 fails");
    }
    Ok("derivative identities exact to 50 coefficients".into())
}

fn check_lifting_round_trips() -> Check {
    let prec = 40;
    // (a) top-coefficient extraction inverts the Xi lifting.
    for h in [
        form_e4(prec),
        form_e6(prec),
        form_delta(prec),
        form_mul(&form_e4(prec), &form_e6(prec)),
    ] {
        for m in 0..=4usize {
            let f = lift_err(quasipoly::xi_lift(&h, m))?;
            let top = lift_err(quasipoly::s_r(&f, m))?;
            if !top.agrees_with(&h.series) {
                return fail(format!("Xi round trip fails at weight {} m {}", h.weight, m));
            }
        }
    }
    // (b) leading-coefficient extraction inverts the hatted lifting.
    for h in [form_e4(prec), form_e6(prec), form_delta(prec)] {
        for delta in 0..=3i64 {
            let phi = lift_err(jacobilike::xi_hat(&h, delta, 5))?;
            if !jacobilike::s_hat(&phi).agrees_with(&h.series) {
                return fail(format!(
                    "hatted round trip fails at weight {} delta {}",
                    h.weight, delta
                ));
            }
        }
    }
    // (c) projection inverts the canonical lifting on a liftable corpus.
    let corpus = qp_corpus(prec, true);
    if corpus.len() < 50 {
        return fail(format!("corpus too small: {}", corpus.len()));
    }
    let mut count = 0usize;
    for f in &corpus {
        for delta in 0..=3i64 {
            let lifted = lift_err(jacobilike::canonical_lift(f, delta, f.depth() + 1))?;
            let back = lift_err(jacobilike::pi_map(&lifted, f.depth()))?;
            if !back.agrees_with(f) {
                return fail(format!(
                    "canonical round trip fails at weight {} depth {} delta {}",
                    f.weight,
                    f.depth(),
                    delta
                ));
            }
        }
        count += 1;
    }
    Ok(format!(
        "round trips exact on {} polynomials x 4 offsets",
        count
    ))
}

fn check_projection_diagrams() -> Check {
    let prec = 20;
    let mut rng = Lcg::new(41);
    let mut tested = 0usize;
    for case in 0..12 {
        let delta = 1 + (case % 3) as i64;
        let k = 6usize;
        let phi = JacobiLikeForm::new(
            2 * rng.small(),
            delta,
            (0..k).map(|_| rng.series(prec)).collect(),
        );
        // Reading the offset-δ form at offset δ−1 and projecting at depth m
        // matches the depth-(m−1) projection with a zero top coefficient.
        for m in 1..=3usize {
            let wide = lift_err(jacobilike::reoffset(&phi, delta - 1))?;
            let lhs = lift_err(jacobilike::pi_map(&wide, m))?;
            let rhs = lift_err(jacobilike::pi_map(&phi, m - 1))?;
            if lhs.weight != rhs.weight {
                return fail("projection weights disagree across the inclusion");
            }
            for r in 0..m {
                if !lhs.coeffs[r].agrees_with(&rhs.coeffs[r]) {
                    return fail("projection square fails below the top");
                }
            }
            if !lhs.coeffs[m].is_zero() {
                return fail("projection square fails at the top coefficient");
            }
            // Top extraction through the projection is the scaled leading
            // coefficient.
            let top = lift_err(quasipoly::s_r(&lift_err(jacobilike::pi_map(&phi, m))?, m))?;
            let expected = phi.coeffs[0].scale(&(Rat::one() / crate::rat::factorial(m as i64)));
            if !top.agrees_with(&expected) {
                return fail("top extraction is not the scaled leading coefficient");
            }
            tested += 1;
        }
    }
    Ok(format!("projection diagrams exact on {} cases", tested))
}

fn check_certification_closure() -> Check {
    let prec = 16;
    let mut cases = 0usize;

    // Polynomial corpus itself plus products.
    let corpus = qp_corpus(prec, false);
    for f in &corpus {
        certify_ok(f)?;
        cases += 1;
    }
    let e2p = quasipoly::e2_polynomial(prec);
    let x4 = lift_err(quasipoly::xi_lift(&form_e4(prec), 1))?;
    let x6 = lift_err(quasipoly::xi_lift(&form_e6(prec), 2))?;
    for (a, b) in [(&e2p, &x4), (&x4, &x6), (&e2p, &e2p), (&x6, &x6)] {
        let p = quasipoly::qp_mul(a, b);
        if p.weight != a.weight + b.weight || p.depth() != a.depth() + b.depth() {
            return fail("product bookkeeping is off");
        }
        certify_ok(&p)?;
        cases += 1;
    }

    // Depth reduction.
    for f in qp_corpus(prec, true) {
        if f.depth() == 0 {
            continue;
        }
        let g = lift_err(quasipoly::depth_reduce(&f))?;
        if g.depth() != f.depth() - 1 || g.weight != f.weight {
            return fail("depth reduction bookkeeping is off");
        }
        certify_ok(&g)?;
        cases += 1;
    }

    // Hecke action on the polynomial picture.
    for f in qp_corpus(32, true).into_iter().step_by(3) {
        for p in [2usize, 3] {
            let t = lift_err(quasipoly::hecke_tp(p, &f))?;
            certify_ok(&t)?;
            cases += 1;
        }
    }

    // Polynomial Lie brackets.
    let d1 = lift_err(quasipoly::derivative_polynomial(&form_delta(prec), 1))?;
    let x4d = lift_err(quasipoly::xi_lift(&form_e4(prec), 1))?;
    let x6d = lift_err(quasipoly::xi_lift(&form_e6(prec), 1))?;
    let xdd = lift_err(quasipoly::xi_lift(&form_delta(prec), 1))?;
    for (a, b) in [(&x4d, &x6d), (&x4d, &d1), (&x6d, &xdd), (&d1, &xdd)] {
        for (da, db) in [(0i64, 0i64), (1, 0), (1, 2)] {
            let br = lift_err(brackets::lie_bracket_q(
                a,
                b,
                da,
                db,
                a.weight / 2,
                b.weight / 2,
            ))?;
            certify_ok(&br)?;
            cases += 1;
        }
    }

    // Rankin-Cohen brackets on polynomials.
    let f1 = lift_err(quasipoly::xi_lift(&form_e4(prec), 2))?;
    let f2 = lift_err(quasipoly::xi_lift(&form_e6(prec), 2))?;
    // Order n >= 1 only: the order-zero bracket degenerates to the plain
    // product, which doubles the exponential cocycle and leaves the graded
    // spaces (its reduction identity is covered elsewhere).
    for n in [1usize, 2] {
        let params = BracketParams {
            n,
            mu1: rat_frac(1, 2),
            mu2: rat_frac(1, 2),
            lambda1: f1.weight - 4,
            lambda2: f2.weight - 4,
            delta1: 0,
            delta2: 0,
        };
        let br = lift_err(brackets::rc_bracket_qp(&f1, &f2, &params))?;
        let expect_w = params.lambda1 + params.lambda2 + 2 * (4 + n as i64);
        if br.weight != expect_w || br.depth() != 4 {
            return fail("bracket bookkeeping is off");
        }
        certify_ok(&br)?;
        cases += 1;
        let brm = lift_err(brackets::rc_bracket_qp_m(&f1, &f2, 1, &params))?;
        certify_ok(&brm)?;
        cases += 1;
    }

    // X-series picture outputs.
    let mut jl_cases = 0usize;
    for h in [form_e4(prec), form_e6(prec), form_delta(prec)] {
        for delta in 0..=1i64 {
            let phi = lift_err(jacobilike::xi_hat(&h, delta, 4))?;
            jl_ok(&phi)?;
            jl_cases += 1;
        }
    }
    for (w, dl) in [(0i64, 0i64), (1, 0), (2, 1)] {
        let d = form_delta(prec);
        let phi = lift_err(jacobilike::ck_lift(&d, w, d.weight - 2 * w, dl, 4))?;
        jl_ok(&phi)?;
        jl_cases += 1;
    }
    for f in [&x6, &f1] {
        for delta in 0..=1i64 {
            let phi = lift_err(jacobilike::canonical_lift(f, delta, 4))?;
            jl_ok(&phi)?;
            jl_cases += 1;
        }
    }
    {
        let p1 = lift_err(jacobilike::xi_hat(&form_e4(prec), 1, 5))?;
        let p2 = lift_err(jacobilike::xi_hat(&form_e6(prec), 1, 5))?;
        let br = lift_err(brackets::rc_bracket_j(
            &p1,
            &p2,
            1,
            &rat_frac(1, 2),
            &rat_frac(1, 2),
        ))?;
        jl_ok(&br)?;
        jl_cases += 1;
        let br2 = lift_err(brackets::rc_bracket_j(&p1, &p2, 2, &rat(1), &rat(3)))?;
        jl_ok(&br2)?;
        jl_cases += 1;
    }
    for h in [form_e4(32), form_delta(32)] {
        let phi = lift_err(jacobilike::xi_hat(&h, 0, 4))?;
        let t = lift_err(jacobilike::hecke_tj(2, &phi))?;
        jl_ok(&t)?;
        jl_cases += 1;
    }

    Ok(format!(
        "{} polynomial certifications and {} head certifications passed",
        cases, jl_cases
    ))
}

fn check_hecke() -> Check {
    let delta50 = form_delta(50);
    let t2 = lift_err(modforms::hecke_t(2, 12, &delta50.series))?;
    if !t2.agrees_with(&delta50.series.scale(&rat(-24))) {
        return fail("eigenvalue at 2 is not -24");
    }
    let delta60 = form_delta(60);
    let t3 = lift_err(modforms::hecke_t(3, 12, &delta60.series))?;
    if !t3.agrees_with(&delta60.series.scale(&rat(252))) {
        return fail("eigenvalue at 3 is not 252");
    }
    // Multiplicativity at coprime indices on the weight-12 space.
    for b in modforms::basis(12, 72) {
        let lhs = lift_err(modforms::hecke_t(2, 12, &lift_err(modforms::hecke_t(3, 12, &b))?))?;
        let rhs = lift_err(modforms::hecke_t_n(6, 12, &b))?;
        if !lhs.agrees_with(&rhs) {
            return fail("composite Hecke operator disagrees with the composition");
        }
    }
    // Top-coefficient square with the explicit p^m scale.
    for f in qp_corpus(24, true).into_iter().step_by(4) {
        let p = 2usize;
        let m = f.depth();
        let lhs = lift_err(quasipoly::s_r(&lift_err(quasipoly::hecke_tp(p, &f))?, m))?;
        let top = lift_err(quasipoly::s_r(&f, m))?;
        let rhs = lift_err(modforms::hecke_t(p, f.weight - 2 * m as i64, &top))?
            .scale(&crate::rat::rat_pow(p as i64, m as i64));
        if !lhs.agrees_with(&rhs) {
            return fail("top-coefficient Hecke square fails");
        }
    }
    // Eigenvalue on the derivative polynomial with the p^m scale.
    let dp = lift_err(quasipoly::derivative_polynomial(&form_delta(40), 1))?;
    let tp = lift_err(quasipoly::hecke_tp(2, &dp))?;
    if !tp.agrees_with(&dp.scale(&rat(-48))) {
        return fail("scaled eigenvalue on the derivative polynomial is not -48");
    }
    // The polynomial Hecke action projected from the X-series picture.
    let phi = lift_err(jacobilike::xi_hat(&form_e4(40), 1, 3))?;
    let m = 1usize;
    let lhs = lift_err(jacobilike::pi_map(&lift_err(jacobilike::hecke_tj(2, &phi))?, m))?
        .scale(&crate::rat::rat_pow(2, m as i64));
    let rhs = lift_err(quasipoly::hecke_tp(2, &lift_err(jacobilike::pi_map(&phi, m))?))?;
    if !lhs.agrees_with(&rhs) {
        return fail("X-series Hecke square fails");
    }
    Ok("Hecke eigenvalues, multiplicativity and squares exact".into())
}

fn check_operator_algebra() -> Check {
    let prec = 15;
    let k = 6usize;
    let mut rng = Lcg::new(7);
    let mut triples = 0usize;
    for case in 0..20 {
        let e1 = 1 + (case % 3) as i64;
        let e2 = 1 + ((case / 3) % 2) as i64;
        let e3 = 1 + ((case / 6) % 2) as i64;
        let a = PsiDO::new(e1, (0..k).map(|_| rng.series(prec)).collect());
        let b = PsiDO::new(e2, (0..k).map(|_| rng.series(prec)).collect());
        let c = PsiDO::new(e3, (0..k).map(|_| rng.series(prec)).collect());
        let ab_c = psido::psido_mul(&psido::psido_mul(&a, &b), &c);
        let a_bc = psido::psido_mul(&a, &psido::psido_mul(&b, &c));
        if !ab_c.agrees_with(&a_bc) {
            return fail("associativity fails");
        }
        let j1 = psido::psido_bracket(&psido::psido_bracket(&a, &b), &c);
        let j2 = psido::psido_bracket(&psido::psido_bracket(&b, &c), &a);
        let j3 = psido::psido_bracket(&psido::psido_bracket(&c, &a), &b);
        let sum = j1.add(&j2).add(&j3);
        if !sum.is_zero() {
            return fail("Jacobi identity fails");
        }
        if !psido::psido_bracket(&a, &b).agrees_with(&psido::psido_bracket_closed(&a, &b)) {
            return fail("closed-form commutator disagrees with the direct one");
        }
        triples += 1;
    }
    // Isomorphism round trips and compatibility.
    let mut round = 0usize;
    for case in 0..8 {
        let eps = 1 + (case % 3) as i64;
        let psi = PsiDO::new(eps, (0..k).map(|_| rng.series(prec)).collect());
        for xi in 0..=eps {
            let f = lift_err(psido::to_series(&psi, xi))?;
            let back = lift_err(psido::from_series(&f, xi))?;
            if !back.agrees_with(&psi) {
                return fail("round trip through the X-series picture fails");
            }
            // Projection compatibility across the isomorphism.
            for m in 0..k.min(4) {
                let lhs = lift_err(psido::pi_partial(&psi, m))?;
                let rhs = lift_err(jacobilike::pi_map(&f, m))?;
                if !lhs.agrees_with(&rhs) || lhs.weight != rhs.weight {
                    return fail("projection compatibility fails");
                }
            }
            round += 1;
        }
        // Reverse round trip.
        let delta = (case % 2) as i64;
        let xi = 1 + (case % 2) as i64;
        let f = JacobiLikeForm::new(2 * xi, delta, (0..k).map(|_| rng.series(prec)).collect());
        let op = lift_err(psido::from_series(&f, xi))?;
        let back = lift_err(psido::to_series(&op, xi))?;
        if !back.agrees_with(&f) {
            return fail("round trip through the operator picture fails");
        }
    }
    // Bracket transport in both directions.
    for case in 0..6 {
        let (d1, d2) = ((case % 2) as i64, ((case / 2) % 2) as i64);
        let (x1, x2) = (1 + (case % 2) as i64, 1 + ((case / 2) % 2) as i64);
        let f = JacobiLikeForm::new(2 * x1, d1, (0..k).map(|_| rng.series(prec)).collect());
        let g = JacobiLikeForm::new(2 * x2, d2, (0..k).map(|_| rng.series(prec)).collect());
        let lhs = lift_err(psido::from_series(
            &lift_err(brackets::series_lie_bracket(&f, &g, x1, x2))?,
            x1 + x2,
        ))?;
        let rhs = psido::psido_bracket(
            &lift_err(psido::from_series(&f, x1))?,
            &lift_err(psido::from_series(&g, x2))?,
        );
        if !lhs.agrees_with(&rhs) {
            return fail("bracket transport into the operator picture fails");
        }
        let p1 = lift_err(psido::from_series(&f, x1))?;
        let p2 = lift_err(psido::from_series(&g, x2))?;
        let lhs2 = lift_err(psido::to_series(&psido::psido_bracket(&p1, &p2), x1 + x2))?;
        let rhs2 = lift_err(brackets::series_lie_bracket(
            &lift_err(psido::to_series(&p1, x1))?,
            &lift_err(psido::to_series(&p2, x2))?,
            x1,
            x2,
        ))?;
        if !lhs2.agrees_with(&rhs2) {
            return fail("bracket transport into the X-series picture fails");
        }
    }
    Ok(format!(
        "{} random triples and {} projection/round-trip cases exact",
        triples, round
    ))
}

fn check_bracket_compatibility() -> Check {
    let prec = 12;
    let k = 5usize;
    // Certified X-series inputs: hatted lifts and their products.
    let mut pool: Vec<JacobiLikeForm> = Vec::new();
    for h in form_pool(prec).into_iter().take(5) {
        for delta in 0..=1i64 {
            pool.push(lift_err(jacobilike::xi_hat(&h, delta, k))?);
        }
    }
    let mut pairs = 0usize;
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            if pairs >= 24 {
                break;
            }
            let (p1, p2) = (&pool[i], &pool[j]);
            let m = 1 + (pairs % 2);
            let x1 = p1.weight / 2 + m as i64 + p1.offset;
            let x2 = p2.weight / 2 + m as i64 + p2.offset;
            let lhs = lift_err(jacobilike::pi_map(
                &lift_err(brackets::series_lie_bracket(
                    p1,
                    p2,
                    p1.weight / 2,
                    p2.weight / 2,
                ))?,
                m,
            ))?;
            let g1 = lift_err(jacobilike::pi_map(p1, m))?;
            let g2 = lift_err(jacobilike::pi_map(p2, m))?;
            let rhs = lift_err(brackets::lie_bracket_q(
                &g1, &g2, p1.offset, p2.offset, x1, x2,
            ))?;
            if !lhs.agrees_with(&rhs) || lhs.weight != rhs.weight {
                return fail("compatibility square fails");
            }
            // Top coefficient vanishes; the next one is modular of the
            // documented weight.
            if !rhs.coeffs[m].is_zero() {
                return fail("bracket top coefficient does not vanish");
            }
            let sub = &rhs.coeffs[m - 1];
            let w = 2 * x1 + 2 * x2 - 4 * m as i64 + 2;
            match lift_err(modforms::is_modular(sub, w))? {
                Certificate::Modular { .. } => {}
                c => return fail(format!("subtop coefficient not modular: {:?}", c)),
            }
            pairs += 1;
        }
    }
    if pairs < 20 {
        return fail(format!("only {} pairs exercised", pairs));
    }
    // Antisymmetry.
    let p = &pool[0];
    let x = p.weight / 2 + 1 + p.offset;
    let g = lift_err(jacobilike::pi_map(p, 1))?;
    let z = lift_err(brackets::lie_bracket_q(&g, &g, p.offset, p.offset, x, x))?;
    if !z.is_zero() {
        return fail("self-bracket is nonzero");
    }
    Ok(format!("compatibility square exact on {} pairs", pairs))
}

fn check_heat_operator() -> Check {
    let prec = 10;
    let k = 7usize;
    let mut rng = Lcg::new(23);
    let mus = [rat(0), rat_frac(1, 2), rat(1), rat_frac(3, 2), rat(2)];
    let mut cases = 0usize;
    for case in 0..6 {
        let delta = (case % 3) as i64;
        let phi = JacobiLikeForm::new(
            2 * rng.small(),
            delta,
            (0..k).map(|_| rng.series(prec)).collect(),
        );
        for mu in &mus {
            for l in 0..=4usize {
                let closed = lift_err(brackets::heat_coeffs(&phi, mu, l))?;
                let mut iter = phi.clone();
                for _ in 0..l {
                    iter = lift_err(brackets::heat_apply(&iter, mu))?;
                }
                if !closed.agrees_with(&iter)
                    || closed.weight != iter.weight
                    || closed.xtrunc() != iter.xtrunc()
                {
                    return fail(format!("closed iterate disagrees at l = {}", l));
                }
                cases += 1;
            }
        }
    }
    // Weight-matched parameter preserves the certified structure.
    let phi = lift_err(jacobilike::xi_hat(&form_e4(14), 0, 5))?;
    let heated = lift_err(brackets::heat_apply(&phi, &rat(phi.weight)))?;
    jl_ok(&heated)?;
    // A mismatched parameter is detected.
    let bad = lift_err(brackets::heat_apply(&phi, &rat(1)))?;
    match lift_err(jacobilike::jl_check(&bad))? {
        Certificate::NotJacobiLike { .. } => {}
        _ => return fail("mismatched heat parameter went undetected"),
    }
    Ok(format!("heat iterates exact on {} cases", cases))
}

fn check_rankin_cohen() -> Check {
    let prec = 12;
    // Closed form against the composition path.
    let f1 = lift_err(quasipoly::xi_lift(&form_e4(prec), 4))?;
    let f2 = lift_err(quasipoly::xi_lift(&form_e6(prec), 4))?;
    let mut cases = 0usize;
    for (d1, d2) in [(0i64, 0i64), (0, 1)] {
        for (mu1, mu2) in [(rat_frac(1, 2), rat_frac(1, 2)), (rat(1), rat_frac(3, 2))] {
            let params = BracketParams {
                n: 1,
                mu1: mu1.clone(),
                mu2: mu2.clone(),
                lambda1: f1.weight - 2 * (4 + d1),
                lambda2: f2.weight - 2 * (4 + d2),
                delta1: d1,
                delta2: d2,
            };
            for m in 0..=2usize {
                let closed = lift_err(brackets::rc_bracket_qp_m_closed(&f1, &f2, m, &params))?;
                let composed = lift_err(brackets::rc_bracket_qp_m(&f1, &f2, m, &params))?;
                if !closed.agrees_with(&composed) || closed.weight != composed.weight {
                    return fail(format!("closed form disagrees at m = {}", m));
                }
                cases += 1;
            }
        }
    }
    // The projection square on X-series inputs that are not canonical lifts.
    let phi1 = lift_err(jacobilike::xi_hat(&form_e4(prec), 0, 10))?;
    let phi2 = lift_err(jacobilike::xi_hat(&form_e6(prec), 1, 10))?;
    let params = BracketParams {
        n: 1,
        mu1: rat_frac(1, 2),
        mu2: rat_frac(1, 2),
        lambda1: phi1.weight,
        lambda2: phi2.weight,
        delta1: phi1.offset,
        delta2: phi2.offset,
    };
    for m in 0..=2usize {
        let lhs = lift_err(jacobilike::pi_map(
            &lift_err(brackets::rc_bracket_j(
                &phi1, &phi2, 1, &params.mu1, &params.mu2,
            ))?,
            m,
        ))?;
        let g1 = lift_err(jacobilike::pi_map(&phi1, 4))?;
        let g2 = lift_err(jacobilike::pi_map(&phi2, 4))?;
        let rhs = lift_err(brackets::rc_bracket_qp_m_closed(&g1, &g2, m, &params))?;
        if !lhs.agrees_with(&rhs) || lhs.weight != rhs.weight {
            return fail(format!("projection square fails at m = {}", m));
        }
        cases += 1;
    }
    // Order zero collapses to the product (in the X/2 normalization).
    let prod = lift_err(brackets::rc_bracket_j(
        &phi1,
        &phi2,
        0,
        &rat_frac(7, 2),
        &rat(2),
    ))?;
    let plain = jacobilike::jl_mul(&phi1, &phi2);
    let rescaled = JacobiLikeForm::new(
        plain.weight,
        plain.offset,
        plain
            .coeffs
            .iter()
            .enumerate()
            .map(|(u, c)| c.scale(&crate::rat::rat_pow(2, -(u as i64 + plain.offset))))
            .collect(),
    );
    if !prod.agrees_with(&rescaled) {
        return fail("order-zero bracket is not the product");
    }
    Ok(format!("bracket identities exact on {} cases", cases))
}

fn check_e2_family() -> Check {
    let prec = 14;
    let phi = jacobilike::phi_e2(prec, 6);
    let projected = lift_err(jacobilike::pi_map(&phi, 1))?;
    if !projected.agrees_with(&quasipoly::e2_polynomial(prec)) || projected.weight != 2 {
        return fail("depth-1 projection is not the E2 polynomial");
    }
    for k in 0..=4usize {
        let head = lift_err(jacobilike::pi_map(&phi, k))?;
        certify_ok(&head).map_err(|e| format!("head {} fails: {}", k, e))?;
    }
    Ok("E2 family projections and heads verified".into())
}

fn check_shimura() -> Check {
    let chi = DirichletCharacter::principal(4);
    let mut rng = Lcg::new(99);
    let b = rng.series(10_801);
    let n_max = 60usize;
    for t in [1i64, 2, 3] {
        for k in [2i64, 3] {
            let a = lift_err(halfint::shimura_coeffs(&b, t, k, &chi, n_max + 1))?;
            // Brute-force Dirichlet multiplication over all index pairs.
            let mut oracle = vec![Rat::zero(); n_max + 1];
            for d in 1..=n_max as i64 {
                for e in 1..=n_max as i64 {
                    if d * e > n_max as i64 {
                        continue;
                    }
                    let psi = halfint::psi_t(&chi, t, k, d);
                    if psi == 0 {
                        continue;
                    }
                    oracle[(d * e) as usize] +=
                        rat(psi) * crate::rat::rat_pow(d, k - 1) * b.coeff((t * e * e) as usize);
                }
            }
            for n in 0..=n_max {
                if a.coeff(n) != &oracle[n] {
                    return fail(format!("convolution identity fails at n = {} (t={}, k={})", n, t, k));
                }
            }
        }
    }
    // Quasi-lifting top-coefficient identities on synthetic inputs.
    let m = 2usize;
    let m_prime = 2usize;
    let tw_lambda = 5i64;
    for r in 0..=2usize {
        let coeffs: Vec<QSeries> = (0..=(m - r)).map(|_| rng.series(160)).collect();
        let f = HalfIntPolynomial {
            twice_weight: tw_lambda + 4 * m as i64,
            level: 4,
            coeffs,
        };
        let out = lift_err(halfint::q_shimura(&f, 2, &chi, m, m_prime, r, 8))?;
        if out.depth() != m_prime - r {
            return fail("quasi-Shimura depth bookkeeping is off");
        }
        let kk = (tw_lambda + 4 * r as i64 - 1) / 2;
        if out.weight != 2 * kk + 2 * (m_prime - r) as i64 {
            return fail("quasi-Shimura weight bookkeeping is off");
        }
        let top = lift_err(quasipoly::s_r(&out, m_prime - r))?;
        let expected = lift_err(halfint::shimura_coeffs(&f.coeffs[m - r], 2, kk, &chi, 8))?;
        if !top.agrees_with(&expected) {
            return fail("quasi-Shimura top coefficient is not the coefficient map image");
        }
        // Reverse-direction lifting.
        let theta_f = rng.series(12);
        let m_prime2 = 3usize;
        let st = lift_err(halfint::q_shintani(&theta_f, tw_lambda, 4, m, m_prime2, r))?;
        if st.twice_weight != tw_lambda + 4 * m_prime2 as i64 - 2 * r as i64 {
            return fail("quasi-Shintani weight bookkeeping is off");
        }
        if !st.coeffs[m_prime2 - r].agrees_with(&theta_f) {
            return fail("quasi-Shintani top coefficient is not the input");
        }
    }
    // Depth-graded sequence: each step removes exactly the lifted top.
    let g = lift_err(quasipoly::xi_lift(&form_delta(12), 3))?;
    let seq = lift_err(halfint::g_sequence(&g))?;
    if seq.len() != 4 {
        return fail("sequence length is off");
    }
    for (l, gl) in seq.iter().enumerate() {
        if gl.depth() != 3 - l {
            return fail("sequence depth bookkeeping is off");
        }
        if l + 1 < seq.len() {
            let ml = gl.depth();
            let top = lift_err(quasipoly::s_r(gl, ml))?;
            let lifted =
                lift_err(quasipoly::xi_lift_s(&top, gl.weight - 2 * ml as i64, ml))?;
            let diff = gl.sub(&lifted);
            if !diff.coeffs[ml].is_zero() {
                return fail("step top coefficient does not vanish");
            }
            let trimmed = QuasiPolynomial::new(diff.weight, diff.coeffs[..ml].to_vec());
            if !trimmed.agrees_with(&seq[l + 1]) {
                return fail("sequence step disagrees with the direct subtraction");
            }
        }
    }
    Ok("convolution identity to n = 60 and quasi-lifting bookkeeping exact".into())
}

const CHECKS: &[(usize, &str, fn() -> Check)] = &[
    (1, "generators", check_generators),
    (2, "normalization", check_normalization),
    (3, "lifting-round-trips", check_lifting_round_trips),
    (4, "projection-diagrams", check_projection_diagrams),
    (5, "certification-closure", check_certification_closure),
    (6, "hecke", check_hecke),
    (7, "operator-algebra", check_operator_algebra),
    (8, "bracket-compatibility", check_bracket_compatibility),
    (9, "heat-operator", check_heat_operator),
    (10, "rankin-cohen", check_rankin_cohen),
    (11, "e2-family", check_e2_family),
    (12, "shimura", check_shimura),
];

/// Run every built-in check, collecting one outcome per check.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(id, name, f)| match f() {
            Ok(detail) => CheckOutcome {
                id: *id,
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                id: *id,
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

/// Run a single check by id (1-12).
pub fn run_one(id: usize) -> Option<CheckOutcome> {
    CHECKS.iter().find(|(i, _, _)| *i == id).map(|(i, name, f)| match f() {
        Ok(detail) => CheckOutcome {
            id: *i,
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckOutcome {
            id: *i,
            name,
            passed: false,
            detail,
        },
    })
}
