//! The bracket families: the power-series Lie bracket on the X-picture, the
//! Lie bracket on quasimodular polynomials, the radial heat operator with its
//! closed-form iterates, and the Rankin-Cohen brackets on Jacobi-like forms
//! and quasimodular polynomials (composition and closed-form paths).

use crate::error::{Error, Result};
use crate::jacobilike::{self, JacobiLikeForm};
use crate::qseries::QSeries;
use crate::quasipoly::QuasiPolynomial;
use crate::rat::{binom, binom_rat, factorial, rat, rat_pow, rising, Rat};
use num::One;

/// Parameter bag for the Rankin-Cohen brackets: order n, the two heat
/// parameters μ_i (half-integers are legal), the weights λ_i and offsets δ_i
/// of the Jacobi-like picture.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketParams {
    pub n: usize,
    pub mu1: Rat,
    pub mu2: Rat,
    pub lambda1: i64,
    pub lambda2: i64,
    pub delta1: i64,
    pub delta2: i64,
}

/// The structure constant
/// Ξ^{r,p,q}_{α,β} = (r−p+α)!(r−p+q+α−1)!(p−q+β)!(p−q+β−1)! / (q!(r+α+β)!(r+α+β−1)!)
/// for r ≥ p ≥ q ≥ 0 and α, β ≥ 1.
pub fn xi_coeff(r: i64, p: i64, q: i64, alpha: i64, beta: i64) -> Result<Rat> {
    if !(r >= p && p >= q && q >= 0) {
        return Err(Error::Range(format!(
            "need r >= p >= q >= 0, got ({}, {}, {})",
            r, p, q
        )));
    }
    if alpha < 1 || beta < 1 {
        return Err(Error::Range(format!(
            "need alpha, beta >= 1, got ({}, {})",
            alpha, beta
        )));
    }
    Ok(
        factorial(r - p + alpha) * factorial(r - p + q + alpha - 1) * factorial(p - q + beta)
            * factorial(p - q + beta - 1)
            / (factorial(q) * factorial(r + alpha + beta) * factorial(r + alpha + beta - 1)),
    )
}

/// Lie bracket on the X-series picture: the X^{r+δ₁+δ₂} coefficient is
/// Σ_{p,q} (Ξ^{r,p,q}_{a,b}·f_{r−p}·D^q g_{p−q} − Ξ^{r,p,q}_{b,a}·g_{r−p}·D^q f_{p−q})
/// with a = δ₁+ξ₁, b = δ₂+ξ₂.  The output weight tag is λ₁+λ₂.
pub fn series_lie_bracket(
    f: &JacobiLikeForm,
    g: &JacobiLikeForm,
    xi1: i64,
    xi2: i64,
) -> Result<JacobiLikeForm> {
    let a = f.offset + xi1;
    let b = g.offset + xi2;
    if a < 1 || b < 1 {
        return Err(Error::Range(
            "series bracket needs offset + xi >= 1 on both slots".into(),
        ));
    }
    let k = f.xtrunc().min(g.xtrunc());
    let prec = f.prec().min(g.prec());
    let mut coeffs = Vec::with_capacity(k);
    for r in 0..k as i64 {
        let mut acc = QSeries::zero(prec);
        for p in 0..=r {
            for q in 0..=p {
                let c1 = xi_coeff(r, p, q, a, b)?;
                let t1 = f.coeffs[(r - p) as usize]
                    .truncated(prec)
                    .mul(&g.coeffs[(p - q) as usize].derive_n(q as usize).truncated(prec))
                    .scale(&c1);
                let c2 = xi_coeff(r, p, q, b, a)?;
                let t2 = g.coeffs[(r - p) as usize]
                    .truncated(prec)
                    .mul(&f.coeffs[(p - q) as usize].derive_n(q as usize).truncated(prec))
                    .scale(&c2);
                acc = acc.add(&t1).sub(&t2);
            }
        }
        coeffs.push(acc);
    }
    Ok(JacobiLikeForm::new(
        f.weight + g.weight,
        f.offset + g.offset,
        coeffs,
    ))
}

/// Lie bracket on quasimodular polynomials of common depth bound m and
/// weights 2ξ_i: the X^r coefficient is
/// Σ_{p=0}^{m−r} Σ_{q=0}^{p} ((r+p)!(m−p+q)!/r!)·
/// (Ξ^{m−r,p,q}_{a,b}·f_{1,r+p}·D^q f_{2,m−p+q} − Ξ^{m−r,p,q}_{b,a}·f_{2,r+p}·D^q f_{1,m−p+q}).
/// Output weight 2ξ₁+2ξ₂−2m, depth bound m (top coefficient exactly zero).
pub fn lie_bracket_q(
    f1: &QuasiPolynomial,
    f2: &QuasiPolynomial,
    delta1: i64,
    delta2: i64,
    xi1: i64,
    xi2: i64,
) -> Result<QuasiPolynomial> {
    if f1.depth() != f2.depth() {
        return Err(Error::Inconsistent(
            "polynomial bracket needs a common depth bound".into(),
        ));
    }
    if f1.weight != 2 * xi1 || f2.weight != 2 * xi2 {
        return Err(Error::Inconsistent(
            "polynomial bracket needs weights 2*xi1 and 2*xi2".into(),
        ));
    }
    if delta1 < 0 || delta2 < 0 {
        return Err(Error::Range(
            "polynomial bracket needs nonnegative offsets".into(),
        ));
    }
    let m = f1.depth() as i64;
    // The structure constants carry the parameters of the lifted X-series
    // picture: a depth-m polynomial of weight 2ξ lifts at offset δ to an
    // X-series of weight 2(ξ−m−δ) read at offset δ, whose bracket parameter
    // is ξ−m regardless of δ.  This also makes the subtop coefficient land
    // in the first Rankin-Cohen combination, hence modular.
    let a = xi1 - m;
    let b = xi2 - m;
    if a < 1 || b < 1 {
        return Err(Error::Range(
            "polynomial bracket needs xi > depth on both slots".into(),
        ));
    }
    let prec = f1.prec().min(f2.prec());
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for r in 0..=m {
        let mut acc = QSeries::zero(prec);
        for p in 0..=(m - r) {
            for q in 0..=p {
                let scale = factorial(r + p) * factorial(m - p + q) / factorial(r);
                let c1 = xi_coeff(m - r, p, q, a, b)? * &scale;
                let t1 = f1.coeffs[(r + p) as usize]
                    .truncated(prec)
                    .mul(
                        &f2.coeffs[(m - p + q) as usize]
                            .derive_n(q as usize)
                            .truncated(prec),
                    )
                    .scale(&c1);
                let c2 = xi_coeff(m - r, p, q, b, a)? * &scale;
                let t2 = f2.coeffs[(r + p) as usize]
                    .truncated(prec)
                    .mul(
                        &f1.coeffs[(m - p + q) as usize]
                            .derive_n(q as usize)
                            .truncated(prec),
                    )
                    .scale(&c2);
                acc = acc.add(&t1).sub(&t2);
            }
        }
        coeffs.push(acc);
    }
    Ok(QuasiPolynomial::new(2 * xi1 + 2 * xi2 - 2 * m, coeffs))
}

/// One application of the radial heat operator with parameter μ: the
/// X^{k+δ} coefficient becomes Dφ_k − (k+δ+1)(k+δ+μ)·φ_{k+1}.  The output
/// keeps the offset and stores one fewer coefficient; the weight tag rises
/// by 2.
pub fn heat_apply(phi: &JacobiLikeForm, mu: &Rat) -> Result<JacobiLikeForm> {
    if phi.xtrunc() < 2 {
        return Err(Error::InsufficientPrecision {
            needed: 2,
            available: phi.xtrunc(),
        });
    }
    let d = phi.offset;
    let mut coeffs = Vec::with_capacity(phi.xtrunc() - 1);
    for k in 0..phi.xtrunc() - 1 {
        let c = rat(k as i64 + d + 1) * (rat(k as i64 + d) + mu);
        coeffs.push(phi.coeffs[k].derive().sub(&phi.coeffs[k + 1].scale(&c)));
    }
    Ok(JacobiLikeForm::new(phi.weight + 2, d, coeffs))
}

/// Closed form for the ℓ-fold heat iterate: the X^{k+δ} coefficient is
/// Σ_{j=0}^{ℓ} (−1)^{ℓ−j}·C(ℓ,j)·(k+δ+1)⋯(k+δ+ℓ−j)·(k+δ+μ)⋯(k+δ+μ+ℓ−j−1)·D^j φ_{k+ℓ−j},
/// the half-integer μ entering only through rising products.
pub fn heat_coeffs(phi: &JacobiLikeForm, mu: &Rat, l: usize) -> Result<JacobiLikeForm> {
    if phi.xtrunc() < l + 1 {
        return Err(Error::InsufficientPrecision {
            needed: l + 1,
            available: phi.xtrunc(),
        });
    }
    let d = phi.offset;
    let prec = phi.prec();
    let mut coeffs = Vec::with_capacity(phi.xtrunc() - l);
    for k in 0..phi.xtrunc() - l {
        let mut acc = QSeries::zero(prec);
        for j in 0..=l {
            let drop = (l - j) as i64;
            let sign = if drop % 2 == 0 { Rat::one() } else { -Rat::one() };
            let c = sign
                * binom(l as i64, j as i64)
                * rising(&rat(k as i64 + d + 1), drop)
                * rising(&(rat(k as i64 + d) + mu), drop);
            acc = acc.add(&phi.coeffs[k + l - j].derive_n(j).scale(&c));
        }
        coeffs.push(acc);
    }
    Ok(JacobiLikeForm::new(phi.weight + 2 * l as i64, d, coeffs))
}

/// Heat coefficient table entry [Φ]^{ℓ,t}: the t-th output coefficient of the
/// ℓ-fold closed-form iterate.
fn heat_entry(table: &[JacobiLikeForm], l: usize, t: usize) -> &QSeries {
    &table[l].coeffs[t]
}

/// n-th Rankin-Cohen bracket on Jacobi-like forms: the X^{u+δ₁+δ₂}
/// coefficient is
/// 2^{−u}·Σ_{t=0}^{u} Σ_{ℓ=0}^{n} (−1)^ℓ·C(n+λ₁−μ₁−1, n−ℓ)·C(n+λ₂−μ₂−1, ℓ)·[Φ₁]^{ℓ,t}·[Φ₂]^{n−ℓ,u−t}.
/// Output weight λ₁+λ₂+2n, offset δ₁+δ₂.
///
/// The 2^{−u} factor substitutes X → X/2: a two-slot product doubles the
/// exponential cocycle of the transformation law, and the substitution
/// renormalizes the result to the standard action so the output is again
/// Jacobi-like.
pub fn rc_bracket_j(
    phi1: &JacobiLikeForm,
    phi2: &JacobiLikeForm,
    n: usize,
    mu1: &Rat,
    mu2: &Rat,
) -> Result<JacobiLikeForm> {
    if phi1.offset < 0 || phi2.offset < 0 {
        return Err(Error::Range("bracket needs nonnegative offsets".into()));
    }
    // Work with the offset-zero embeddings so the heat operator keeps every
    // coefficient it produces (it lowers the X-degree below the offset).
    let p1 = jacobilike::reoffset(phi1, 0)?;
    let p2 = jacobilike::reoffset(phi2, 0)?;
    let k_raw = p1.xtrunc().min(p2.xtrunc());
    if k_raw <= n {
        return Err(Error::InsufficientPrecision {
            needed: n + 1,
            available: k_raw,
        });
    }
    let k_raw = k_raw - n;
    // Degrees below δ₁+δ₂−n cannot occur, so the result carries that offset.
    let eps = (phi1.offset + phi2.offset - n as i64).max(0) as usize;
    if k_raw <= eps {
        return Err(Error::InsufficientPrecision {
            needed: eps + 1,
            available: k_raw,
        });
    }
    let prec = p1.prec().min(p2.prec());
    let t1: Vec<JacobiLikeForm> = (0..=n)
        .map(|l| heat_coeffs(&p1, mu1, l))
        .collect::<Result<_>>()?;
    let t2: Vec<JacobiLikeForm> = (0..=n)
        .map(|l| heat_coeffs(&p2, mu2, l))
        .collect::<Result<_>>()?;
    let top1 = rat(n as i64 + phi1.weight) - mu1 - Rat::one();
    let top2 = rat(n as i64 + phi2.weight) - mu2 - Rat::one();
    let mut coeffs = Vec::with_capacity(k_raw - eps);
    for u in 0..k_raw {
        let mut acc = QSeries::zero(prec);
        for t in 0..=u {
            for l in 0..=n {
                let sign = if l % 2 == 0 { Rat::one() } else { -Rat::one() };
                let c = sign
                    * binom_rat(&top1, (n - l) as i64)
                    * binom_rat(&top2, l as i64);
                let prod = heat_entry(&t1, l, t)
                    .truncated(prec)
                    .mul(&heat_entry(&t2, n - l, u - t).truncated(prec))
                    .scale(&c);
                acc = acc.add(&prod);
            }
        }
        if u < eps {
            debug_assert!(acc.is_zero(), "coefficient below the output offset");
            continue;
        }
        coeffs.push(acc.scale(&rat_pow(2, -(u as i64))));
    }
    Ok(JacobiLikeForm::new(
        phi1.weight + phi2.weight + 2 * n as i64,
        eps as i64,
        coeffs,
    ))
}

/// n-th Rankin-Cohen bracket on quasimodular polynomials: lift both inputs
/// canonically, bracket on the X-series picture, and project back at depth
/// m₁+m₂.  Input weights must be λ_i+2(m_i+δ_i); the output has weight
/// λ₁+λ₂+2(m₁+m₂+n+ε) with ε = max(0, δ₁+δ₂−n), and depth bound m₁+m₂.
pub fn rc_bracket_qp(
    f1: &QuasiPolynomial,
    f2: &QuasiPolynomial,
    p: &BracketParams,
) -> Result<QuasiPolynomial> {
    let (m1, m2) = (f1.depth(), f2.depth());
    check_rc_weights(f1, f2, p)?;
    let k = m1 + m2 + p.n + 1;
    let l1 = jacobilike::canonical_lift(f1, p.delta1, k)?;
    let l2 = jacobilike::canonical_lift(f2, p.delta2, k)?;
    let bracket = rc_bracket_j(&l1, &l2, p.n, &p.mu1, &p.mu2)?;
    jacobilike::pi_map(&bracket, m1 + m2)
}

fn check_rc_weights(
    f1: &QuasiPolynomial,
    f2: &QuasiPolynomial,
    p: &BracketParams,
) -> Result<()> {
    let w1 = p.lambda1 + 2 * (f1.depth() as i64 + p.delta1);
    let w2 = p.lambda2 + 2 * (f2.depth() as i64 + p.delta2);
    if f1.weight != w1 || f2.weight != w2 {
        return Err(Error::Inconsistent(format!(
            "input weights ({}, {}) do not match lambda + 2(m + delta) = ({}, {})",
            f1.weight, f2.weight, w1, w2
        )));
    }
    Ok(())
}

/// Fixed-target-depth Rankin-Cohen bracket via the composition path: lift,
/// bracket, and project at depth m.
pub fn rc_bracket_qp_m(
    f1: &QuasiPolynomial,
    f2: &QuasiPolynomial,
    m: usize,
    p: &BracketParams,
) -> Result<QuasiPolynomial> {
    check_rc_weights(f1, f2, p)?;
    let k = f1.depth().max(f2.depth()).max(m) + p.n + 1;
    let l1 = jacobilike::canonical_lift(f1, p.delta1, k)?;
    let l2 = jacobilike::canonical_lift(f2, p.delta2, k)?;
    let bracket = rc_bracket_j(&l1, &l2, p.n, &p.mu1, &p.mu2)?;
    jacobilike::pi_map(&bracket, m)
}

/// Heat-iterate coefficient of the offset-zero embedding of a canonical
/// lifting, expressed directly in the polynomial's coefficients: with q the
/// depth bound of G, the X^k entry of the ℓ-th heat iterate is
/// Σ_{j=0}^{ℓ} (−1)^{ℓ−j}·C(ℓ,j)·(k+1)⋯(k+ℓ−j)·(k+μ)⋯(k+μ+ℓ−j−1)·
/// (q+δ−k−ℓ+j)!·D^j g_{q+δ−k−ℓ+j}, terms with an index outside 0..q dropped
/// (an index above q corresponds to a zero coefficient below the embedding
/// offset δ).
pub fn gg_coeff(g: &QuasiPolynomial, l: usize, k: usize, mu: &Rat, delta: i64) -> QSeries {
    let q = g.depth() as i64;
    let prec = g.prec();
    let mut acc = QSeries::zero(prec);
    for j in 0..=l {
        let gi = q + delta - k as i64 - l as i64 + j as i64;
        if gi < 0 || gi > q {
            continue;
        }
        let drop = (l - j) as i64;
        let sign = if drop % 2 == 0 { Rat::one() } else { -Rat::one() };
        let c = sign
            * binom(l as i64, j as i64)
            * rising(&rat(k as i64 + 1), drop)
            * rising(&(rat(k as i64) + mu), drop)
            * factorial(gi);
        acc = acc.add(&g.coeffs[gi as usize].derive_n(j).scale(&c).truncated(prec));
    }
    acc
}

/// Fixed-target-depth Rankin-Cohen bracket in closed form, valid under
/// m + 2n ≤ min(m₁, m₂) and m + n + ε ≤ min(m₁+δ₁, m₂+δ₂), where
/// ε = max(0, δ₁+δ₂−n) is the bracket's output offset: the X^r coefficient
/// (r ≤ m) is 2^{−(m−r+ε)}·Σ_{ℓ} Σ_{t} ((−1)^ℓ/r!)·C(n+λ₁−μ₁−1, n−ℓ)·
/// C(n+λ₂−μ₂−1, ℓ)·gg(F₁; ℓ, t)·gg(F₂; n−ℓ, m−r+ε−t), with the same X → X/2
/// normalization as the X-series bracket.
pub fn rc_bracket_qp_m_closed(
    f1: &QuasiPolynomial,
    f2: &QuasiPolynomial,
    m: usize,
    p: &BracketParams,
) -> Result<QuasiPolynomial> {
    check_rc_weights(f1, f2, p)?;
    let (m1, m2) = (f1.depth(), f2.depth());
    if m + 2 * p.n > m1.min(m2) {
        return Err(Error::Range(format!(
            "closed form needs m + 2n <= min(m1, m2) = {}",
            m1.min(m2)
        )));
    }
    let n = p.n;
    let eps = (p.delta1 + p.delta2 - n as i64).max(0) as usize;
    let top_index = (m1 as i64 + p.delta1).min(m2 as i64 + p.delta2);
    if (m + n + eps) as i64 > top_index {
        return Err(Error::Range(format!(
            "closed form needs m + n + eps <= min(m1 + delta1, m2 + delta2) = {}",
            top_index
        )));
    }
    let prec = f1.prec().min(f2.prec());
    let top1 = rat(n as i64 + p.lambda1) - &p.mu1 - Rat::one();
    let top2 = rat(n as i64 + p.lambda2) - &p.mu2 - Rat::one();
    let mut coeffs = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let u = m - r + eps;
        let mut acc = QSeries::zero(prec);
        for l in 0..=n {
            let sign = if l % 2 == 0 { Rat::one() } else { -Rat::one() };
            let outer = sign
                * binom_rat(&top1, (n - l) as i64)
                * binom_rat(&top2, l as i64)
                * rat_pow(2, -(u as i64))
                / factorial(r as i64);
            for t in 0..=u {
                let a = gg_coeff(f1, l, t, &p.mu1, p.delta1);
                let b = gg_coeff(f2, n - l, u - t, &p.mu2, p.delta2);
                acc = acc.add(&a.truncated(prec).mul(&b.truncated(prec)).scale(&outer));
            }
        }
        coeffs.push(acc);
    }
    Ok(QuasiPolynomial::new(
        p.lambda1 + p.lambda2 + 2 * (m as i64 + n as i64 + eps as i64),
        coeffs,
    ))
}
