//! Certificates: the structural evidence returned by the membership checkers.
//!
//! A certificate is either positive (carrying the exact decomposition data and
//! the Sturm bound that pinned it) or negative (carrying the first index or
//! component where the structure fails).  "Not a member" is a certificate, not
//! an error; errors are reserved for inputs the checker cannot decide at all
//! (e.g. too few coefficients).

use crate::qseries::QSeries;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// The series lies in the level-one weight-k space; `decomposition` holds
    /// the coordinates on the monomial basis E4^a E6^b (4a+6b = k).
    Modular {
        weight: i64,
        sturm_bound: usize,
        decomposition: Vec<Rat>,
    },
    /// First coefficient index at which the candidate leaves the span.
    NotModular { weight: i64, first_mismatch: usize },

    /// Quasimodular polynomial of the given weight: `components[s]` is the
    /// modular form h_s of weight ξ−2s in the E2-decomposition
    /// f_r = 12^r Σ_{s≥r} C(s,r) h_s E2^{s−r}.
    QuasiModular {
        weight: i64,
        sturm_bound: usize,
        components: Vec<QSeries>,
    },
    /// Depth index r whose E2-component fails to be modular.
    NotQuasiModular { weight: i64, failing_depth: usize },

    /// Jacobi-like form: every head projection through the stored truncation
    /// certified quasimodular.
    JacobiLike {
        weight: i64,
        offset: i64,
        heads_checked: usize,
    },
    /// First head index k whose projection fails.
    NotJacobiLike {
        weight: i64,
        offset: i64,
        failing_head: usize,
    },
}

impl Certificate {
    /// True for the positive outcomes.
    pub fn is_valid(&self) -> bool {
        matches!(
            self,
            Certificate::Modular { .. }
                | Certificate::QuasiModular { .. }
                | Certificate::JacobiLike { .. }
        )
    }
}
