//! Level-one modular forms as q-expansions: Eisenstein generators, the graded
//! monomial bases, Sturm-bound certification, and classical Hecke operators.

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rat::{rat, rat_pow, Rat};
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct ModularForm {
    pub weight: i64,
    pub series: QSeries,
}

impl ModularForm {
    pub fn new(weight: i64, series: QSeries) -> Self {
        ModularForm { weight, series }
    }
}

/// σ_k(n) = Σ_{d|n} d^k.
fn sigma(n: usize, k: u32) -> Rat {
    let mut acc = Rat::zero();
    for d in 1..=n {
        if n % d == 0 {
            acc += rat_pow(d as i64, k as i64);
        }
    }
    acc
}

/// E2 = 1 − 24Σσ1(n)qⁿ, E4 = 1 + 240Σσ3(n)qⁿ, E6 = 1 − 504Σσ5(n)qⁿ.
pub fn eisenstein(k: u32, prec: usize) -> Result<QSeries> {
    let (c, pow): (i64, u32) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => {
            return Err(Error::UnsupportedWeight {
                weight: k as i64,
                reason: "Eisenstein generators exist for k in {2, 4, 6}".into(),
            })
        }
    };
    let mut coeffs = Vec::with_capacity(prec);
    for n in 0..prec {
        if n == 0 {
            coeffs.push(Rat::one());
        } else {
            coeffs.push(rat(c) * sigma(n, pow));
        }
    }
    Ok(QSeries::new(coeffs))
}

pub fn e2(prec: usize) -> QSeries {
    eisenstein(2, prec).expect("k=2 is supported")
}
pub fn e4(prec: usize) -> QSeries {
    eisenstein(4, prec).expect("k=4 is supported")
}
pub fn e6(prec: usize) -> QSeries {
    eisenstein(6, prec).expect("k=6 is supported")
}

/// Δ = (E4³ − E6²)/1728, the weight-12 cusp form.
pub fn delta(prec: usize) -> Result<ModularForm> {
    if prec < 2 {
        return Err(Error::InsufficientPrecision {
            needed: 2,
            available: prec,
        });
    }
    let a = e4(prec);
    let b = e6(prec);
    let num = a.mul(&a).mul(&a).sub(&b.mul(&b));
    Ok(ModularForm::new(
        12,
        num.scale(&(Rat::one() / rat(1728))),
    ))
}

/// Exponent pairs (a, b) with 4a + 6b = k, lexicographically by decreasing a.
pub fn basis_exponents(k: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if k < 0 || k % 2 != 0 || k == 2 {
        return out;
    }
    let mut a = k / 4;
    loop {
        let rem = k - 4 * a;
        if rem % 6 == 0 {
            out.push((a as u32, (rem / 6) as u32));
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    out
}

/// Monomial basis E4^a E6^b of the level-one weight-k space.  Empty for k odd,
/// negative, or k = 2 (that space is zero).
pub fn basis(k: i64, prec: usize) -> Vec<QSeries> {
    let ea = e4(prec);
    let eb = e6(prec);
    basis_exponents(k)
        .into_iter()
        .map(|(a, b)| {
            let mut acc = QSeries::one(prec);
            for _ in 0..a {
                acc = acc.mul(&ea);
            }
            for _ in 0..b {
                acc = acc.mul(&eb);
            }
            acc
        })
        .collect()
}

/// Sturm bound for level one: enough coefficients to pin a weight-k form.
pub fn sturm_bound(k: i64) -> usize {
    if k <= 0 {
        2
    } else {
        (k / 12) as usize + 2
    }
}

/// Solve the exact linear system `mat · x = rhs` (rows ≥ cols, full column
/// rank expected).  Returns None when the system is inconsistent on the given
/// rows or the columns are dependent.
fn solve_exact(mut mat: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let mut piv = None;
        for i in r..rows {
            if !mat[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let piv = piv?;
        mat.swap(r, piv);
        rhs.swap(r, piv);
        let inv = Rat::one() / mat[r][c].clone();
        for j in c..cols {
            mat[r][j] = &mat[r][j] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] = &mat[i][j] - &t;
                }
                let t = &rhs[r] * &f;
                rhs[i] = &rhs[i] - &t;
            }
        }
        pivot_row_of_col[c] = r;
        r += 1;
    }
    // Any leftover nonzero rhs row means inconsistency on the solved rows.
    for i in r..rows {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    Some((0..cols).map(|c| rhs[pivot_row_of_col[c]].clone()).collect())
}

/// Certify that `s` lies in the level-one weight-k space: solve for the
/// monomial-basis coordinates on the first sturm_bound(k) coefficients, then
/// verify the decomposition on every available coefficient.
pub fn is_modular(s: &QSeries, k: i64) -> Result<Certificate> {
    let monomials = basis_exponents(k);
    if monomials.is_empty() {
        // The space is zero: membership means the series vanishes identically.
        return Ok(match s.coeffs().iter().position(|c| !c.is_zero()) {
            None => Certificate::Modular {
                weight: k,
                sturm_bound: 0,
                decomposition: vec![],
            },
            Some(i) => Certificate::NotModular {
                weight: k,
                first_mismatch: i,
            },
        });
    }
    let bound = sturm_bound(k);
    if s.prec() < bound {
        return Err(Error::InsufficientPrecision {
            needed: bound,
            available: s.prec(),
        });
    }
    let gens = basis(k, s.prec());
    let mat: Vec<Vec<Rat>> = (0..bound)
        .map(|n| gens.iter().map(|g| g.coeff(n).clone()).collect())
        .collect();
    let rhs: Vec<Rat> = (0..bound).map(|n| s.coeff(n).clone()).collect();
    let coords = match solve_exact(mat, rhs) {
        Some(c) => c,
        None => {
            // Locate the first coefficient that cannot be matched by re-solving
            // prefix systems of growing length.
            for n in 0..bound {
                let m: Vec<Vec<Rat>> = (0..=n)
                    .map(|i| gens.iter().map(|g| g.coeff(i).clone()).collect())
                    .collect();
                let r: Vec<Rat> = (0..=n).map(|i| s.coeff(i).clone()).collect();
                if solve_least_squares_consistent(&m, &r).is_none() {
                    return Ok(Certificate::NotModular {
                        weight: k,
                        first_mismatch: n,
                    });
                }
            }
            return Ok(Certificate::NotModular {
                weight: k,
                first_mismatch: bound - 1,
            });
        }
    };
    // Verify on all available coefficients.
    let mut recon = QSeries::zero(s.prec());
    for (g, c) in gens.iter().zip(coords.iter()) {
        recon = recon.add(&g.scale(c));
    }
    if let Some(n) = recon.first_mismatch(s) {
        return Ok(Certificate::NotModular {
            weight: k,
            first_mismatch: n,
        });
    }
    Ok(Certificate::Modular {
        weight: k,
        sturm_bound: bound,
        decomposition: coords,
    })
}

/// Consistency probe: does `mat · x = rhs` admit any solution?
fn solve_least_squares_consistent(mat: &[Vec<Rat>], rhs: &[Rat]) -> Option<()> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut aug: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let piv = (r..rows).find(|&i| !aug[i][c].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        aug.swap(r, piv);
        let inv = Rat::one() / aug[r][c].clone();
        for j in c..=cols {
            aug[r][j] = &aug[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let t = &aug[r][j] * &f;
                    aug[i][j] = &aug[i][j] - &t;
                }
            }
        }
        r += 1;
    }
    for i in r..rows {
        if !aug[i][cols].is_zero() {
            return None;
        }
    }
    Some(())
}

/// Classical Hecke operator T̂_p in weight k on a q-expansion:
/// b(n) = a(pn) + p^{k−1} a(n/p) (second term only when p | n).
pub fn hecke_t(p: usize, k: i64, s: &QSeries) -> Result<QSeries> {
    hecke_t_n(p, k, s)
}

/// Hecke operator T̂_n for general n ≥ 1 in weight k:
/// b(m) = Σ_{d | gcd(n,m)} d^{k−1} a(nm/d²).
pub fn hecke_t_n(n: usize, k: i64, s: &QSeries) -> Result<QSeries> {
    if n == 0 || s.prec() < n {
        return Err(Error::InsufficientPrecision {
            needed: n.max(1),
            available: s.prec(),
        });
    }
    let out_prec = s.prec() / n;
    let mut coeffs = Vec::with_capacity(out_prec);
    for m in 0..out_prec {
        let mut c = Rat::zero();
        for d in 1..=n {
            if n % d != 0 || (m > 0 && m % d != 0) {
                continue;
            }
            // For m = 0, gcd(n, 0) = n: every divisor of n contributes.
            c += rat_pow(d as i64, k - 1) * s.coeff(n * m / (d * d));
        }
        coeffs.push(c);
    }
    Ok(QSeries::new(coeffs))
}
