//! Jacobi-like forms as truncated X-power series: the Cohen-Kuznetsov and
//! hatted-Xi liftings, the projection to quasimodular polynomials, the
//! canonical lifting recursion and its transfer maps, the weight-2 family
//! with offset −1, head certification, and the Hecke action.

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::modforms::ModularForm;
use crate::qseries::QSeries;
use crate::quasipoly::{self, QuasiPolynomial};
use crate::rat::{factorial, rat, rat_pow, Rat};
use num::One;

/// Truncated series Φ(z,X) = Σ φ_k(z) X^{k+δ}: `coeffs[k]` is φ_k, the
/// coefficient of X^{k+δ}.  The offset δ is normally ≥ 0; −1 is admitted for
/// the weight-2 family produced by `phi_e2`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiLikeForm {
    pub weight: i64,
    pub offset: i64,
    pub coeffs: Vec<QSeries>,
}

impl JacobiLikeForm {
    pub fn new(weight: i64, offset: i64, coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty(), "a form stores at least one coefficient");
        JacobiLikeForm {
            weight,
            offset,
            coeffs,
        }
    }

    /// Number of stored X-coefficients.
    pub fn xtrunc(&self) -> usize {
        self.coeffs.len()
    }

    /// Minimum q-precision over the stored coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    pub fn truncated(&self, prec: usize) -> JacobiLikeForm {
        JacobiLikeForm {
            weight: self.weight,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c.truncated(prec)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> JacobiLikeForm {
        JacobiLikeForm {
            weight: self.weight,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &JacobiLikeForm) -> JacobiLikeForm {
        assert_eq!(self.offset, other.offset, "offsets must match to add");
        let k = self.xtrunc().min(other.xtrunc());
        let prec = self.prec().min(other.prec());
        JacobiLikeForm {
            weight: self.weight,
            offset: self.offset,
            coeffs: (0..k)
                .map(|i| {
                    self.coeffs[i]
                        .truncated(prec)
                        .add(&other.coeffs[i].truncated(prec))
                })
                .collect(),
        }
    }

    pub fn agrees_with(&self, other: &JacobiLikeForm) -> bool {
        if self.offset != other.offset {
            return false;
        }
        let k = self.xtrunc().min(other.xtrunc());
        (0..k).all(|i| self.coeffs[i].agrees_with(&other.coeffs[i]))
    }
}

/// Product of the underlying X-series: offsets add, weights add, and the
/// output keeps the coefficients fully determined by both factors.
pub fn jl_mul(a: &JacobiLikeForm, b: &JacobiLikeForm) -> JacobiLikeForm {
    let k = a.xtrunc().min(b.xtrunc());
    let prec = a.prec().min(b.prec());
    let mut coeffs = vec![QSeries::zero(prec); k];
    for i in 0..k {
        for j in 0..k - i {
            coeffs[i + j] = coeffs[i + j].add(
                &a.coeffs[i]
                    .truncated(prec)
                    .mul(&b.coeffs[j].truncated(prec)),
            );
        }
    }
    JacobiLikeForm::new(a.weight + b.weight, a.offset + b.offset, coeffs)
}

/// Projection Π^δ_m: the polynomial with X^r coefficient (1/r!)·φ_{m−r},
/// of weight λ+2m+2δ and depth bound m.
pub fn pi_map(phi: &JacobiLikeForm, m: usize) -> Result<QuasiPolynomial> {
    if m >= phi.xtrunc() {
        return Err(Error::InsufficientPrecision {
            needed: m + 1,
            available: phi.xtrunc(),
        });
    }
    let coeffs = (0..=m)
        .map(|r| phi.coeffs[m - r].scale(&(Rat::one() / factorial(r as i64))))
        .collect();
    Ok(QuasiPolynomial::new(
        phi.weight + 2 * m as i64 + 2 * phi.offset,
        coeffs,
    ))
}

/// Top extraction: reads the coefficient of X^δ, the left inverse of the
/// hatted-Xi lifting.
pub fn s_hat(phi: &JacobiLikeForm) -> QSeries {
    phi.coeffs[0].clone()
}

/// Cohen-Kuznetsov lifting of a modular form f of weight 2w+λ: the X^{ℓ+δ}
/// coefficient is D^{ℓ+δ−w}f / ((ℓ+δ−w)!(ℓ+δ+w+λ−1)!), with any term whose
/// factorial argument is negative dropped.
pub fn ck_lift(
    f: &ModularForm,
    w: i64,
    lambda: i64,
    delta: i64,
    xtrunc: usize,
) -> Result<JacobiLikeForm> {
    if f.weight != 2 * w + lambda {
        return Err(Error::Inconsistent(format!(
            "form weight {} does not equal 2w+lambda = {}",
            f.weight,
            2 * w + lambda
        )));
    }
    let prec = f.series.prec();
    let mut coeffs = Vec::with_capacity(xtrunc);
    for l in 0..xtrunc as i64 {
        let a = l + delta - w;
        let b = l + delta + w + lambda - 1;
        if a < 0 || b < 0 {
            coeffs.push(QSeries::zero(prec));
            continue;
        }
        let c = Rat::one() / (factorial(a) * factorial(b));
        coeffs.push(f.series.derive_n(a as usize).scale(&c));
    }
    Ok(JacobiLikeForm::new(lambda, delta, coeffs))
}

/// Hatted-Xi lifting of a modular form f of weight λ+2δ ≥ 2: the scaled
/// Cohen-Kuznetsov series with X^{ℓ+δ} coefficient
/// (λ+2δ−1)!·D^ℓf / (ℓ!(ℓ+λ+2δ−1)!).
pub fn xi_hat(f: &ModularForm, delta: i64, xtrunc: usize) -> Result<JacobiLikeForm> {
    let w = f.weight;
    if w < 2 {
        return Err(Error::UnsupportedWeight {
            weight: w,
            reason: "hatted-Xi lifting needs weight at least 2".into(),
        });
    }
    let lambda = w - 2 * delta;
    let scale = factorial(w - 1);
    let lifted = ck_lift(f, delta, lambda, delta, xtrunc)?;
    Ok(lifted.scale(&scale))
}

/// Canonical lifting: the section of Π^δ_m built from depth reduction plus
/// derivative coefficients.  Requires ξ > 2m; produces weight ξ−2m−2δ with
/// offset δ and `xtrunc` stored coefficients satisfying pi_map(·, m) = F.
pub fn canonical_lift(
    f: &QuasiPolynomial,
    delta: i64,
    xtrunc: usize,
) -> Result<JacobiLikeForm> {
    let xi = f.weight;
    let m = f.depth();
    if xi <= 2 * m as i64 {
        return Err(Error::UnsupportedWeight {
            weight: xi,
            reason: format!("canonical lifting needs weight above {}", 2 * m),
        });
    }
    if xtrunc <= m {
        return Err(Error::Range(format!(
            "need at least {} stored coefficients for depth bound {}",
            m + 1,
            m
        )));
    }
    // F-sequence: f_seq[j] has depth bound j, obtained by peeling depth from
    // the top.
    let mut f_seq: Vec<QuasiPolynomial> = vec![f.clone()];
    for _ in (1..=m).rev() {
        let next = quasipoly::depth_reduce(f_seq.last().unwrap())?;
        f_seq.push(next);
    }
    f_seq.reverse(); // f_seq[j] now has depth bound j

    let prec = f.prec();
    // Level-j recursion: phi[k] at level j holds
    //   j!(ξ−2j−1)!/(k!(k+ξ−2j−1)!)·D^k(S_j F_j) + (level j−1)[k−1],
    // carried up to k < xtrunc−(m−j).
    let mut prev: Vec<QSeries> = Vec::new();
    for j in 0..=m {
        let top = f_seq[j].coeffs[j].clone();
        let w = xi - 2 * j as i64;
        let n_here = xtrunc - (m - j);
        let mut cur = Vec::with_capacity(n_here);
        for k in 0..n_here as i64 {
            let c = factorial(j as i64) * factorial(w - 1) / (factorial(k) * factorial(k + w - 1));
            let mut term = top.derive_n(k as usize).scale(&c);
            if j > 0 && k >= 1 {
                term = term.add(&prev[(k - 1) as usize]);
            }
            term = term.truncated(prec);
            cur.push(term);
        }
        prev = cur;
    }
    Ok(JacobiLikeForm::new(
        xi - 2 * m as i64 - 2 * delta,
        delta,
        prev,
    ))
}

/// Transfer between depth pictures: project the canonical lifting back at a
/// different depth bound n.  Weight becomes ξ+2n−2m.
pub fn transfer(f: &QuasiPolynomial, n: usize, delta: i64) -> Result<QuasiPolynomial> {
    let xtrunc = f.depth().max(n) + 1;
    let lifted = canonical_lift(f, delta, xtrunc)?;
    pi_map(&lifted, n)
}

/// Head certification: for every k below the truncation, the polynomial
/// Σ_r (1/r!)·φ_{k−r}·X^r (the head projection at depth k) must certify as a
/// quasimodular polynomial of weight λ+2k+2δ.
pub fn jl_check(phi: &JacobiLikeForm) -> Result<Certificate> {
    for k in 0..phi.xtrunc() {
        let head = pi_map(phi, k)?;
        match quasipoly::certify_quasimodular(&head)? {
            c if c.is_valid() => {}
            _ => {
                return Ok(Certificate::NotJacobiLike {
                    weight: phi.weight,
                    offset: phi.offset,
                    failing_head: k,
                })
            }
        }
    }
    Ok(Certificate::JacobiLike {
        weight: phi.weight,
        offset: phi.offset,
        heads_checked: phi.xtrunc(),
    })
}

/// The weight-2, offset-(−1) family attached to E2: coefficients
/// 12, E2, DE2/2, D²E2/12, …, i.e. φ_k = D^{k−1}E2/((k−1)!·k!) for k ≥ 1.
pub fn phi_e2(prec: usize, xtrunc: usize) -> JacobiLikeForm {
    let e2 = crate::modforms::e2(prec);
    let mut coeffs = Vec::with_capacity(xtrunc);
    coeffs.push(QSeries::constant(rat(12), prec));
    for k in 1..xtrunc as i64 {
        let c = Rat::one() / (factorial(k - 1) * factorial(k));
        coeffs.push(e2.derive_n((k - 1) as usize).scale(&c));
    }
    JacobiLikeForm::new(2, -1, coeffs)
}

/// Hecke operator on the X-series picture: coefficientwise
/// φ_k ↦ p^{−k}·(U_p + p^{(λ+2k+2δ)−1}·V_p)·φ_k, the rational normalization
/// under which projecting at depth m and applying the polynomial-picture
/// operator agree up to the global factor p^m.
pub fn hecke_tj(p: usize, phi: &JacobiLikeForm) -> Result<JacobiLikeForm> {
    if phi.prec() < p {
        return Err(Error::InsufficientPrecision {
            needed: p,
            available: phi.prec(),
        });
    }
    let out_prec = phi.prec() / p;
    let mut coeffs = Vec::with_capacity(phi.xtrunc());
    for (k, c) in phi.coeffs.iter().enumerate() {
        let w = phi.weight + 2 * k as i64 + 2 * phi.offset;
        let u = c.u_op(p);
        let v = c.v_op(p).scale(&rat_pow(p as i64, w - 1));
        coeffs.push(
            u.truncated(out_prec)
                .add(&v.truncated(out_prec))
                .scale(&rat_pow(p as i64, -(k as i64))),
        );
    }
    Ok(JacobiLikeForm::new(phi.weight, phi.offset, coeffs))
}

/// Reread an offset-δ form as an offset-ε form (ε ≤ δ): the same X-series,
/// stored with δ−ε leading zero coefficients.
pub fn reoffset(phi: &JacobiLikeForm, new_offset: i64) -> Result<JacobiLikeForm> {
    if new_offset > phi.offset {
        return Err(Error::Range(
            "reoffset can only lower the offset".into(),
        ));
    }
    let shift = (phi.offset - new_offset) as usize;
    let prec = phi.prec();
    let mut coeffs = vec![QSeries::zero(prec); shift];
    coeffs.extend(phi.coeffs.iter().cloned());
    Ok(JacobiLikeForm::new(phi.weight, new_offset, coeffs))
}
