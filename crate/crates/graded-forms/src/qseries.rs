//! Truncated q-expansions with exact rational coefficients.
//!
//! A `QSeries` knows its first `prec` coefficients, i.e. the series modulo
//! q^prec.  Binary operations return the minimum of the operand precisions;
//! no operation ever reads an index at or beyond an operand's precision.

use crate::rat::{rat, Rat};
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Series from an explicit coefficient list; prec = list length.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        QSeries { coeffs }
    }

    /// Series with integer coefficients (test/CLI convenience).
    pub fn from_ints(coeffs: &[i64]) -> Self {
        QSeries {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
        }
    }

    /// The zero series known to the given precision.
    pub fn zero(prec: usize) -> Self {
        QSeries {
            coeffs: vec![Rat::zero(); prec],
        }
    }

    /// The constant series c + 0·q + ... to the given precision.
    pub fn constant(c: Rat, prec: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); prec];
        if prec > 0 {
            coeffs[0] = c;
        }
        QSeries { coeffs }
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Rat::one(), prec)
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of q^n (n < prec).
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated to at most `prec` coefficients.
    pub fn truncated(&self, prec: usize) -> QSeries {
        QSeries {
            coeffs: self.coeffs[..prec.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the minimum precision.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        let mut coeffs = vec![Rat::zero(); n];
        for i in 0..n.min(self.prec()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        QSeries { coeffs }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// D = q·d/dq: the n-th coefficient becomes n·a(n).  Precision preserved.
    pub fn derive(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat(n as i64))
                .collect(),
        }
    }

    /// k-fold derivative.
    pub fn derive_n(&self, k: usize) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * crate::rat::rat_pow(n as i64, k as i64))
                .collect(),
        }
    }

    /// U_d: b(n) = a(dn); prec = floor(prec/d).
    pub fn u_op(&self, d: usize) -> QSeries {
        assert!(d >= 1);
        let n = self.prec() / d;
        QSeries {
            coeffs: (0..n).map(|i| self.coeffs[i * d].clone()).collect(),
        }
    }

    /// V_d: b(dn) = a(n), other coefficients zero.  Output precision is kept at
    /// the input precision (conservative contract: the zero-padding beyond it is
    /// discarded), so that U_d∘V_d = id on the overlap.
    pub fn v_op(&self, d: usize) -> QSeries {
        assert!(d >= 1);
        let n = self.prec();
        let mut coeffs = vec![Rat::zero(); n];
        for i in 0..n {
            if i * d >= n {
                break;
            }
            coeffs[i * d] = self.coeffs[i].clone();
        }
        QSeries { coeffs }
    }

    /// Exact equality of the overlapping known coefficients.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let n = self.prec().min(other.prec());
        (0..n).all(|i| self.coeffs[i] == other.coeffs[i])
    }

    /// Index of the first coefficient differing from `other` on the overlap.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<usize> {
        let n = self.prec().min(other.prec());
        (0..n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}
