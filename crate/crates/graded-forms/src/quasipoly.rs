//! Quasimodular polynomials F(z,X) = Σ f_r(z) X^r: coefficient extraction,
//! the Xi lifting of modular forms, derivative polynomials, structural
//! certification via the E2-decomposition, depth reduction, and the Hecke
//! action on the polynomial picture.

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::modforms::{self, ModularForm};
use crate::qseries::QSeries;
use crate::rat::{binom, factorial, rat, rat_pow, Rat};
use num::One;

/// Weight-tagged polynomial in X over q-series; `coeffs[r]` is f_r, so the
/// depth bound is `coeffs.len() - 1`.  The trailing coefficient may vanish
/// (depth "at most m"); `trim` normalizes that away explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPolynomial {
    pub weight: i64,
    pub coeffs: Vec<QSeries>,
}

impl QuasiPolynomial {
    pub fn new(weight: i64, coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial stores at least f_0");
        QuasiPolynomial { weight, coeffs }
    }

    /// Depth bound m (coefficients run f_0 … f_m).
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Minimum precision over the stored coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    /// Copy with every coefficient truncated to `prec`.
    pub fn truncated(&self, prec: usize) -> QuasiPolynomial {
        QuasiPolynomial {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|c| c.truncated(prec)).collect(),
        }
    }

    pub fn add(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        assert_eq!(self.weight, other.weight, "weights must match to add");
        let m = self.depth().max(other.depth());
        let prec = self.prec().min(other.prec());
        let mut coeffs = Vec::with_capacity(m + 1);
        for r in 0..=m {
            let a = self
                .coeffs
                .get(r)
                .cloned()
                .unwrap_or_else(|| QSeries::zero(prec));
            let b = other
                .coeffs
                .get(r)
                .cloned()
                .unwrap_or_else(|| QSeries::zero(prec));
            coeffs.push(a.truncated(prec).add(&b.truncated(prec)));
        }
        QuasiPolynomial::new(self.weight, coeffs)
    }

    pub fn sub(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        self.add(&other.scale(&(-Rat::one())))
    }

    pub fn scale(&self, c: &Rat) -> QuasiPolynomial {
        QuasiPolynomial {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Exact equality of all coefficients on the common precision.
    pub fn agrees_with(&self, other: &QuasiPolynomial) -> bool {
        if self.depth() != other.depth() {
            // Compare after padding with zeros: trailing zero coefficients are
            // legal and should not break equality of the underlying object.
            let m = self.depth().max(other.depth());
            let prec = self.prec().min(other.prec());
            for r in 0..=m {
                let z = QSeries::zero(prec);
                let a = self.coeffs.get(r).unwrap_or(&z);
                let b = other.coeffs.get(r).unwrap_or(&z);
                if !a.agrees_with(b) {
                    return false;
                }
            }
            return true;
        }
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| a.agrees_with(b))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drop trailing identically-zero coefficients (keeps at least f_0).
    pub fn trim(&self) -> QuasiPolynomial {
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        QuasiPolynomial::new(self.weight, coeffs)
    }
}

/// Coefficient extraction S_r F = f_r.
pub fn s_r(f: &QuasiPolynomial, r: usize) -> Result<QSeries> {
    if r > f.depth() {
        return Err(Error::Range(format!(
            "coefficient index {} exceeds depth bound {}",
            r,
            f.depth()
        )));
    }
    Ok(f.coeffs[r].clone())
}

/// The weight-2 polynomial E2 + 12X carried by the E2 cocycle.
pub fn e2_polynomial(prec: usize) -> QuasiPolynomial {
    QuasiPolynomial::new(
        2,
        vec![modforms::e2(prec), QSeries::constant(rat(12), prec)],
    )
}

/// Xi lifting driven by the superscript s (the weight of h in the integral
/// case): coefficient of X^r is m!(s−1)!/(r!(m−r)!(m−r+s−1)!)·D^{m−r}h.
/// Output weight s+2m, depth bound m.
pub fn xi_lift_s(h: &QSeries, s: i64, m: usize) -> Result<QuasiPolynomial> {
    if s < 2 {
        return Err(Error::UnsupportedWeight {
            weight: s,
            reason: "Xi lifting needs superscript at least 2".into(),
        });
    }
    let mi = m as i64;
    let mut coeffs = Vec::with_capacity(m + 1);
    for r in 0..=mi {
        let c = factorial(mi) * factorial(s - 1)
            / (factorial(r) * factorial(mi - r) * factorial(mi - r + s - 1));
        coeffs.push(h.derive_n((mi - r) as usize).scale(&c));
    }
    Ok(QuasiPolynomial::new(s + 2 * mi, coeffs))
}

/// Xi lifting of a modular form of weight w ≥ 2 to a quasimodular polynomial
/// of weight w+2m with top coefficient h.
pub fn xi_lift(h: &ModularForm, m: usize) -> Result<QuasiPolynomial> {
    xi_lift_s(&h.series, h.weight, m)
}

/// The polynomial packaging the m-th derivative of a weight-w modular form:
/// coefficient of X^k is k!·C(m,k)·C(w+m−1,k)·D^{m−k}f.
pub fn derivative_polynomial(f: &ModularForm, m: usize) -> Result<QuasiPolynomial> {
    if f.weight <= 0 || m == 0 {
        return Err(Error::Range(
            "derivative polynomial needs positive weight and m >= 1".into(),
        ));
    }
    let w = f.weight;
    let mi = m as i64;
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=mi {
        let c = factorial(k) * binom(mi, k) * binom(w + mi - 1, k);
        coeffs.push(f.series.derive_n((mi - k) as usize).scale(&c));
    }
    Ok(QuasiPolynomial::new(w + 2 * mi, coeffs))
}

/// Polynomial product: weights add, depth bounds add.
pub fn qp_mul(f: &QuasiPolynomial, g: &QuasiPolynomial) -> QuasiPolynomial {
    let m = f.depth() + g.depth();
    let prec = f.prec().min(g.prec());
    let mut coeffs = vec![QSeries::zero(prec); m + 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        for (j, b) in g.coeffs.iter().enumerate() {
            coeffs[i + j] = coeffs[i + j].add(&a.truncated(prec).mul(&b.truncated(prec)));
        }
    }
    QuasiPolynomial::new(f.weight + g.weight, coeffs)
}

/// Certify the E2-decomposition: F is quasimodular of weight ξ iff there are
/// modular h_s of weight ξ−2s with f_r = 12^r Σ_{s≥r} C(s,r)·h_s·E2^{s−r}.
/// Solves for the h_s descending from the top and certifies each one.
pub fn certify_quasimodular(f: &QuasiPolynomial) -> Result<Certificate> {
    let xi = f.weight;
    let m = f.depth();
    let prec = f.prec();
    let bound = modforms::sturm_bound(xi);
    if prec < bound {
        return Err(Error::InsufficientPrecision {
            needed: bound,
            available: prec,
        });
    }
    let e2 = modforms::e2(prec);
    // E2 powers up to E2^m.
    let mut e2_pows = vec![QSeries::one(prec)];
    for _ in 0..m {
        e2_pows.push(e2_pows.last().unwrap().mul(&e2));
    }
    let mut comps: Vec<Option<QSeries>> = vec![None; m + 1];
    for r in (0..=m).rev() {
        // h_r = f_r/12^r − Σ_{s>r} C(s,r)·h_s·E2^{s−r}.
        let mut h = f.coeffs[r]
            .truncated(prec)
            .scale(&(Rat::one() / rat_pow(12, r as i64)));
        for s in (r + 1)..=m {
            let t = comps[s]
                .as_ref()
                .unwrap()
                .mul(&e2_pows[s - r])
                .scale(&binom(s as i64, r as i64));
            h = h.sub(&t);
        }
        match modforms::is_modular(&h, xi - 2 * r as i64)? {
            Certificate::Modular { .. } => comps[r] = Some(h),
            _ => {
                return Ok(Certificate::NotQuasiModular {
                    weight: xi,
                    failing_depth: r,
                })
            }
        }
    }
    Ok(Certificate::QuasiModular {
        weight: xi,
        sturm_bound: bound,
        components: comps.into_iter().map(|c| c.unwrap()).collect(),
    })
}

/// Subtract the Xi lifting of the top coefficient, lowering the depth bound by
/// one.  The subtracted X^m coefficient is exactly f_m, so the cancellation is
/// verified and the trailing zero dropped.
pub fn depth_reduce(f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    let m = f.depth();
    if m == 0 {
        return Err(Error::Range(
            "depth reduction needs depth bound at least 1".into(),
        ));
    }
    let xi = f.weight;
    if xi - 2 * (m as i64) < 2 {
        return Err(Error::UnsupportedWeight {
            weight: xi,
            reason: format!("depth reduction at depth {} needs weight at least {}", m, 2 * m + 2),
        });
    }
    let lift = xi_lift_s(&f.coeffs[m], xi - 2 * m as i64, m)?;
    let g = f.sub(&lift);
    debug_assert!(g.coeffs[m].is_zero());
    let mut coeffs = g.coeffs;
    coeffs.pop();
    Ok(QuasiPolynomial::new(xi, coeffs))
}

/// Hecke operator on the polynomial picture: coefficient r maps to
/// p^r·(U_p + p^{(ξ−2r)−1}·V_p) f_r.  Precision drops to floor(prec/p).
pub fn hecke_tp(p: usize, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    if f.prec() < p {
        return Err(Error::InsufficientPrecision {
            needed: p,
            available: f.prec(),
        });
    }
    let xi = f.weight;
    let out_prec = f.prec() / p;
    let mut coeffs = Vec::with_capacity(f.depth() + 1);
    for (r, fr) in f.coeffs.iter().enumerate() {
        let u = fr.u_op(p);
        let v = fr.v_op(p).scale(&rat_pow(p as i64, xi - 2 * r as i64 - 1));
        coeffs.push(
            u.truncated(out_prec)
                .add(&v.truncated(out_prec))
                .scale(&rat_pow(p as i64, r as i64)),
        );
    }
    Ok(QuasiPolynomial::new(xi, coeffs))
}
