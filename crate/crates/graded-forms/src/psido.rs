//! Formal pseudodifferential operators Ψ(z) = Σ ψ_k(z) ∂^{−k−ε}: the Leibniz
//! product, the commutator bracket (direct and closed-form), the pair of
//! isomorphisms with the X-series picture and their C_η constants, the
//! operator-side projection to quasimodular polynomials, and its lifting.

use crate::error::{Error, Result};
use crate::jacobilike::{self, JacobiLikeForm};
use crate::qseries::QSeries;
use crate::quasipoly::QuasiPolynomial;
use crate::rat::{binom_rat, factorial, rat, Rat};
use num::One;

/// Truncated operator with leading order −ε (ε ≥ 1): `coeffs[k]` is ψ_k, the
/// coefficient of ∂^{−k−ε}.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiDO {
    pub offset: i64,
    pub coeffs: Vec<QSeries>,
}

impl PsiDO {
    pub fn new(offset: i64, coeffs: Vec<QSeries>) -> Self {
        assert!(offset >= 1, "leading order must be negative (offset >= 1)");
        assert!(!coeffs.is_empty());
        PsiDO { offset, coeffs }
    }

    pub fn xtrunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn prec(&self) -> usize {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> PsiDO {
        PsiDO {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &PsiDO) -> PsiDO {
        assert_eq!(self.offset, other.offset, "offsets must match to add");
        let k = self.xtrunc().min(other.xtrunc());
        let prec = self.prec().min(other.prec());
        PsiDO {
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

    pub fn sub(&self, other: &PsiDO) -> PsiDO {
        self.add(&other.scale(&(-Rat::one())))
    }

    pub fn agrees_with(&self, other: &PsiDO) -> bool {
        if self.offset != other.offset {
            return false;
        }
        let k = self.xtrunc().min(other.xtrunc());
        (0..k).all(|i| self.coeffs[i].agrees_with(&other.coeffs[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// C_η = (−1)^η·η!·(η−1)! for η ≥ 1.
pub fn c_const(eta: i64) -> Result<Rat> {
    if eta < 1 {
        return Err(Error::Range(format!("C_eta needs eta >= 1, got {}", eta)));
    }
    let sign = if eta % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(sign * factorial(eta) * factorial(eta - 1))
}

/// Leibniz product: the coefficient of ∂^{−r−ε₁−ε₂} is
/// Σ_{p=0}^{r} Σ_{q=0}^{p} C(−(r−p)−ε₁, q)·ψ_{r−p}·D^q φ_{p−q}.
pub fn psido_mul(a: &PsiDO, b: &PsiDO) -> PsiDO {
    let k = a.xtrunc().min(b.xtrunc());
    let prec = a.prec().min(b.prec());
    let mut coeffs = Vec::with_capacity(k);
    for r in 0..k as i64 {
        let mut acc = QSeries::zero(prec);
        for p in 0..=r {
            for q in 0..=p {
                let c = binom_rat(&rat(-(r - p) - a.offset), q);
                let t = a.coeffs[(r - p) as usize]
                    .truncated(prec)
                    .mul(&b.coeffs[(p - q) as usize].derive_n(q as usize).truncated(prec))
                    .scale(&c);
                acc = acc.add(&t);
            }
        }
        coeffs.push(acc);
    }
    PsiDO::new(a.offset + b.offset, coeffs)
}

/// Commutator as a literal difference of Leibniz products.
pub fn psido_bracket(a: &PsiDO, b: &PsiDO) -> PsiDO {
    psido_mul(a, b).sub(&psido_mul(b, a))
}

/// Commutator in closed form: the coefficient of ∂^{−r−ε₁−ε₂} is the
/// antisymmetrized double sum
/// Σ_{p,q} (C(−r−ε₁+p, q)·ψ_{r−p}·D^qφ_{p−q} − C(−r−ε₂+p, q)·φ_{r−p}·D^qψ_{p−q}).
pub fn psido_bracket_closed(a: &PsiDO, b: &PsiDO) -> PsiDO {
    let k = a.xtrunc().min(b.xtrunc());
    let prec = a.prec().min(b.prec());
    let mut coeffs = Vec::with_capacity(k);
    for r in 0..k as i64 {
        let mut acc = QSeries::zero(prec);
        for p in 0..=r {
            for q in 0..=p {
                let c1 = binom_rat(&rat(-r - a.offset + p), q);
                let t1 = a.coeffs[(r - p) as usize]
                    .truncated(prec)
                    .mul(&b.coeffs[(p - q) as usize].derive_n(q as usize).truncated(prec))
                    .scale(&c1);
                let c2 = binom_rat(&rat(-r - b.offset + p), q);
                let t2 = b.coeffs[(r - p) as usize]
                    .truncated(prec)
                    .mul(&a.coeffs[(p - q) as usize].derive_n(q as usize).truncated(prec))
                    .scale(&c2);
                acc = acc.add(&t1).sub(&t2);
            }
        }
        coeffs.push(acc);
    }
    PsiDO::new(a.offset + b.offset, coeffs)
}

/// From the X-series picture: ψ_k = C_{k+δ+ξ}·f_k at ∂^{−k−δ−ξ}.
/// Needs δ+ξ ≥ 1 so every constant is defined.
pub fn from_series(f: &JacobiLikeForm, xi: i64) -> Result<PsiDO> {
    let eps = f.offset + xi;
    if eps < 1 {
        return Err(Error::Range(format!(
            "operator picture needs offset + xi >= 1, got {}",
            eps
        )));
    }
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| Ok(c.scale(&c_const(k as i64 + eps)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiDO::new(eps, coeffs))
}

/// To the X-series picture: f_k = ψ_k / C_{k+ε} at X^{k+ε−ξ}, tagged with
/// weight 2ξ.  Needs ξ ≤ ε for a legal output offset.
pub fn to_series(psi: &PsiDO, xi: i64) -> Result<JacobiLikeForm> {
    if xi < 0 || xi > psi.offset {
        return Err(Error::Range(format!(
            "series picture needs 0 <= xi <= {}, got {}",
            psi.offset, xi
        )));
    }
    let coeffs = psi
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| Ok(c.scale(&(Rat::one() / c_const(k as i64 + psi.offset)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(JacobiLikeForm::new(2 * xi, psi.offset - xi, coeffs))
}

/// Operator-side projection: the polynomial with X^r coefficient
/// ψ_{m−r}/(r!·C_{m−r+ε}), of weight 2m+2ε and depth bound m.
pub fn pi_partial(psi: &PsiDO, m: usize) -> Result<QuasiPolynomial> {
    if m >= psi.xtrunc() {
        return Err(Error::InsufficientPrecision {
            needed: m + 1,
            available: psi.xtrunc(),
        });
    }
    let coeffs = (0..=m)
        .map(|r| {
            let c = Rat::one() / (factorial(r as i64) * c_const((m - r) as i64 + psi.offset)?);
            Ok(psi.coeffs[m - r].scale(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuasiPolynomial::new(
        2 * m as i64 + 2 * psi.offset,
        coeffs,
    ))
}

/// Lifting to the operator picture: the canonical lifting followed by the
/// isomorphism with superscript ε−δ.  Input weight must be 2m+2ε; the result
/// has offset ε and satisfies pi_partial(·, m) = F.
pub fn psido_lift(
    f: &QuasiPolynomial,
    delta: i64,
    eps: i64,
    xtrunc: usize,
) -> Result<PsiDO> {
    let m = f.depth() as i64;
    if f.weight != 2 * m + 2 * eps {
        return Err(Error::Inconsistent(format!(
            "weight {} does not match 2m+2eps = {}",
            f.weight,
            2 * m + 2 * eps
        )));
    }
    if eps - delta < 1 {
        return Err(Error::Range(
            "operator lifting needs eps - delta >= 1".into(),
        ));
    }
    let lifted = jacobilike::canonical_lift(f, delta, xtrunc)?;
    from_series(&lifted, eps - delta)
}
