//! Half-integral-weight arithmetic: the theta series, Kronecker symbols and
//! Dirichlet characters, the Shimura coefficient map realized through its
//! Dirichlet-convolution identity, the quasimodular Shimura and Shintani
//! compositions, and the depth-graded sequence feeding their direct sums.

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::quasipoly::{self, QuasiPolynomial};
use crate::rat::{rat, rat_pow, Rat};
use num::Zero;

/// A half-integral-weight q-expansion: the weight is `twice_weight`/2 with
/// `twice_weight` odd, on Γ₀(level) with 4 | level.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfIntForm {
    pub twice_weight: i64,
    pub level: i64,
    pub series: QSeries,
}

impl HalfIntForm {
    pub fn new(twice_weight: i64, level: i64, series: QSeries) -> Result<Self> {
        if twice_weight % 2 == 0 || twice_weight <= 0 {
            return Err(Error::Inconsistent(
                "half-integral weight needs odd positive twice_weight".into(),
            ));
        }
        if level % 4 != 0 {
            return Err(Error::Inconsistent("level must be divisible by 4".into()));
        }
        Ok(HalfIntForm {
            twice_weight,
            level,
            series,
        })
    }
}

/// A polynomial in X over q-series tagged with a half-integral weight
/// (stored as twice the weight) and a level.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfIntPolynomial {
    pub twice_weight: i64,
    pub level: i64,
    pub coeffs: Vec<QSeries>,
}

impl HalfIntPolynomial {
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// θ = 1 + 2Σ_{n≥1} q^{n²}.
pub fn theta(prec: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); prec];
    if prec > 0 {
        coeffs[0] = rat(1);
    }
    let mut n = 1usize;
    while n * n < prec {
        coeffs[n * n] = rat(2);
        n += 1;
    }
    QSeries::new(coeffs)
}

/// Kronecker symbol (a/n), fully extended (n may be zero, negative or even).
pub fn kronecker(mut a: i64, mut n: i64) -> i64 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    let mut k = if v % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        }
    };
    if k == 0 {
        return 0;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n odd and positive: Jacobi symbol by reciprocity.
    loop {
        if n == 1 {
            return k;
        }
        a = a.rem_euclid(n);
        if a == 0 {
            return 0;
        }
        let mut v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 && matches!(n % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
    }
}

/// Principal Dirichlet character modulo `modulus`: 1 on units, 0 elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    pub modulus: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl DirichletCharacter {
    pub fn principal(modulus: i64) -> Self {
        DirichletCharacter { modulus }
    }

    pub fn eval(&self, n: i64) -> i64 {
        if gcd(n, self.modulus) == 1 {
            1
        } else {
            0
        }
    }
}

/// The twisted character ψ_t(n) = χ(n)·(−1/n)^k·(t/n).
pub fn psi_t(chi: &DirichletCharacter, t: i64, k: i64, n: i64) -> i64 {
    let base = chi.eval(n);
    if base == 0 {
        return 0;
    }
    let minus = if k % 2 == 0 { 1 } else { kronecker(-1, n) };
    base * minus * kronecker(t, n)
}

/// Shimura coefficients via the Dirichlet-convolution identity:
/// A_t(n) = Σ_{d|n} ψ_t(d)·d^{k−1}·b(t·(n/d)²), with A_t(0) = 0.
/// Produces `prec_out` coefficients (indices 0 … prec_out−1).
pub fn shimura_coeffs(
    b: &QSeries,
    t: i64,
    k: i64,
    chi: &DirichletCharacter,
    prec_out: usize,
) -> Result<QSeries> {
    if t <= 0 || k <= 0 {
        return Err(Error::Range("need t >= 1 and k >= 1".into()));
    }
    let max_n = prec_out.saturating_sub(1) as i64;
    let needed = (t * max_n * max_n + 1) as usize;
    if b.prec() < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            available: b.prec(),
        });
    }
    let mut coeffs = vec![Rat::zero(); prec_out];
    for n in 1..=max_n {
        let mut acc = Rat::zero();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let e = n / d;
            let psi = psi_t(chi, t, k, d);
            if psi == 0 {
                continue;
            }
            acc += rat(psi) * rat_pow(d, k - 1) * b.coeff((t * e * e) as usize);
        }
        coeffs[n as usize] = acc;
    }
    Ok(QSeries::new(coeffs))
}

/// Quasimodular Shimura map: read the top coefficient of the half-integral
/// polynomial, apply the coefficient map, and Xi-lift the image to depth
/// m′−r.  The input stores depth bound m−r with twice_weight 2λ+4m; the
/// output is an integral-weight polynomial of weight 2(λ+m′+r)−1.
pub fn q_shimura(
    f: &HalfIntPolynomial,
    t: i64,
    chi: &DirichletCharacter,
    m: usize,
    m_prime: usize,
    r: usize,
    prec_out: usize,
) -> Result<QuasiPolynomial> {
    if r > m.min(m_prime) {
        return Err(Error::Range("need r <= min(m, m')".into()));
    }
    if f.depth() != m - r {
        return Err(Error::Inconsistent(format!(
            "input depth bound {} does not equal m - r = {}",
            f.depth(),
            m - r
        )));
    }
    let tw_lambda = f.twice_weight - 4 * m as i64;
    if tw_lambda % 2 == 0 || tw_lambda <= 0 {
        return Err(Error::Inconsistent(
            "twice_weight must be 2*lambda + 4m with lambda genuinely half-integral".into(),
        ));
    }
    // The coefficient map in weight lambda + 2r lands in weight 2k with
    // k = lambda + 2r - 1/2.
    let k = (tw_lambda + 4 * r as i64 - 1) / 2;
    let top = &f.coeffs[m - r];
    let image = shimura_coeffs(top, t, k, chi, prec_out)?;
    quasipoly::xi_lift_s(&image, 2 * k, m_prime - r)
}

/// Quasimodular Shintani map: Xi-lift an externally supplied modular-level
/// image (a half-integral-weight q-series of weight λ+r, twice_weight
/// tw_lambda + 2r) to depth m′−r.  The output is a half-integral polynomial
/// of twice_weight tw_lambda + 4m′ − 2r.
pub fn q_shintani(
    theta_f: &QSeries,
    tw_lambda: i64,
    level: i64,
    m: usize,
    m_prime: usize,
    r: usize,
) -> Result<HalfIntPolynomial> {
    if r > m.min(m_prime) {
        return Err(Error::Range("need r <= min(m, m')".into()));
    }
    let s = tw_lambda + 2 * r as i64;
    let lifted = quasipoly::xi_lift_s(theta_f, s, m_prime - r)?;
    Ok(HalfIntPolynomial {
        twice_weight: tw_lambda + 4 * m_prime as i64 - 2 * r as i64,
        level,
        coeffs: lifted.coeffs,
    })
}

/// Depth-graded sequence G₀ = G, G_{ℓ+1} = depth_reduce(G_ℓ): the ℓ-th entry
/// has depth bound m−ℓ and the last is depth 0.
pub fn g_sequence(g: &QuasiPolynomial) -> Result<Vec<QuasiPolynomial>> {
    let mut out = vec![g.clone()];
    for _ in 0..g.depth() {
        let next = quasipoly::depth_reduce(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}
