//! JSON encoding of every domain type.  All big integers travel as decimal
//! strings; a rational is the two-element array [numerator, denominator].
//! Integers that fit machine words (weights, offsets, levels) are plain JSON
//! numbers.

use crate::brackets::BracketParams;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::halfint::{HalfIntForm, HalfIntPolynomial};
use crate::jacobilike::JacobiLikeForm;
use crate::psido::PsiDO;
use crate::qseries::QSeries;
use crate::quasipoly::QuasiPolynomial;
use crate::rat::Rat;
use num::bigint::BigInt;
use serde_json::{json, Map, Value};
use std::str::FromStr;

pub fn rat_to_json(x: &Rat) -> Value {
    json!([x.numer().to_string(), x.denom().to_string()])
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Malformed("rational must be [num, den]".into()))?;
    if arr.len() != 2 {
        return Err(Error::Malformed("rational must have two entries".into()));
    }
    let part = |u: &Value| -> Result<BigInt> {
        let s = u
            .as_str()
            .ok_or_else(|| Error::Malformed("rational entries must be decimal strings".into()))?;
        BigInt::from_str(s).map_err(|_| Error::Malformed(format!("bad integer literal: {}", s)))
    };
    let num = part(&arr[0])?;
    let den = part(&arr[1])?;
    if den == BigInt::from(0) {
        return Err(Error::Malformed("zero denominator".into()));
    }
    Ok(Rat::new(num, den))
}

pub fn qseries_to_json(s: &QSeries) -> Value {
    json!({ "coeffs": s.coeffs().iter().map(rat_to_json).collect::<Vec<_>>() })
}

pub fn qseries_from_json(v: &Value) -> Result<QSeries> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("series must carry a coeffs array".into()))?;
    Ok(QSeries::new(
        coeffs.iter().map(rat_from_json).collect::<Result<Vec<_>>>()?,
    ))
}

fn int_field(v: &Value, key: &str) -> Result<i64> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Malformed(format!("missing integer field: {}", key)))
}

fn series_list(v: &Value) -> Result<Vec<QSeries>> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing coeffs array".into()))?;
    if coeffs.is_empty() {
        return Err(Error::Malformed("coeffs array may not be empty".into()));
    }
    coeffs.iter().map(qseries_from_json).collect()
}

pub fn qp_to_json(f: &QuasiPolynomial) -> Value {
    json!({
        "weight": f.weight,
        "coeffs": f.coeffs.iter().map(qseries_to_json).collect::<Vec<_>>(),
    })
}

pub fn qp_from_json(v: &Value) -> Result<QuasiPolynomial> {
    Ok(QuasiPolynomial::new(int_field(v, "weight")?, series_list(v)?))
}

pub fn jl_to_json(f: &JacobiLikeForm) -> Value {
    json!({
        "weight": f.weight,
        "offset": f.offset,
        "coeffs": f.coeffs.iter().map(qseries_to_json).collect::<Vec<_>>(),
    })
}

pub fn jl_from_json(v: &Value) -> Result<JacobiLikeForm> {
    Ok(JacobiLikeForm::new(
        int_field(v, "weight")?,
        int_field(v, "offset")?,
        series_list(v)?,
    ))
}

pub fn psido_to_json(p: &PsiDO) -> Value {
    json!({
        "offset": p.offset,
        "coeffs": p.coeffs.iter().map(qseries_to_json).collect::<Vec<_>>(),
    })
}

pub fn psido_from_json(v: &Value) -> Result<PsiDO> {
    let offset = int_field(v, "offset")?;
    if offset < 1 {
        return Err(Error::Malformed("operator offset must be >= 1".into()));
    }
    Ok(PsiDO::new(offset, series_list(v)?))
}

pub fn halfint_to_json(f: &HalfIntForm) -> Value {
    json!({
        "twice_weight": f.twice_weight,
        "level": f.level,
        "series": qseries_to_json(&f.series),
    })
}

pub fn halfint_from_json(v: &Value) -> Result<HalfIntForm> {
    let series = v
        .get("series")
        .ok_or_else(|| Error::Malformed("missing series field".into()))?;
    HalfIntForm::new(
        int_field(v, "twice_weight")?,
        int_field(v, "level")?,
        qseries_from_json(series)?,
    )
}

pub fn halfint_poly_to_json(f: &HalfIntPolynomial) -> Value {
    json!({
        "twice_weight": f.twice_weight,
        "level": f.level,
        "coeffs": f.coeffs.iter().map(qseries_to_json).collect::<Vec<_>>(),
    })
}

pub fn halfint_poly_from_json(v: &Value) -> Result<HalfIntPolynomial> {
    Ok(HalfIntPolynomial {
        twice_weight: int_field(v, "twice_weight")?,
        level: int_field(v, "level")?,
        coeffs: series_list(v)?,
    })
}

/// Bracket parameters; μ values travel as twice-values to stay integral.
pub fn params_from_json(v: &Value) -> Result<BracketParams> {
    Ok(BracketParams {
        n: int_field(v, "n")? as usize,
        mu1: Rat::new(BigInt::from(int_field(v, "mu1_twice")?), BigInt::from(2)),
        mu2: Rat::new(BigInt::from(int_field(v, "mu2_twice")?), BigInt::from(2)),
        lambda1: int_field(v, "lambda1")?,
        lambda2: int_field(v, "lambda2")?,
        delta1: int_field(v, "delta1")?,
        delta2: int_field(v, "delta2")?,
    })
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    let mut m = Map::new();
    m.insert("valid".into(), json!(c.is_valid()));
    match c {
        Certificate::Modular {
            weight,
            sturm_bound,
            decomposition,
        } => {
            m.insert("kind".into(), json!("modular"));
            m.insert("weight".into(), json!(weight));
            m.insert("sturm_bound".into(), json!(sturm_bound));
            m.insert(
                "decomposition".into(),
                json!(decomposition.iter().map(rat_to_json).collect::<Vec<_>>()),
            );
        }
        Certificate::NotModular {
            weight,
            first_mismatch,
        } => {
            m.insert("kind".into(), json!("not_modular"));
            m.insert("weight".into(), json!(weight));
            m.insert("first_mismatch".into(), json!(first_mismatch));
        }
        Certificate::QuasiModular {
            weight,
            sturm_bound,
            components,
        } => {
            m.insert("kind".into(), json!("quasimodular"));
            m.insert("weight".into(), json!(weight));
            m.insert("sturm_bound".into(), json!(sturm_bound));
            m.insert(
                "components".into(),
                json!(components.iter().map(qseries_to_json).collect::<Vec<_>>()),
            );
        }
        Certificate::NotQuasiModular {
            weight,
            failing_depth,
        } => {
            m.insert("kind".into(), json!("not_quasimodular"));
            m.insert("weight".into(), json!(weight));
            m.insert("failing_depth".into(), json!(failing_depth));
        }
        Certificate::JacobiLike {
            weight,
            offset,
            heads_checked,
        } => {
            m.insert("kind".into(), json!("jacobi_like"));
            m.insert("weight".into(), json!(weight));
            m.insert("offset".into(), json!(offset));
            m.insert("heads_checked".into(), json!(heads_checked));
        }
        Certificate::NotJacobiLike {
            weight,
            offset,
            failing_head,
        } => {
            m.insert("kind".into(), json!("not_jacobi_like"));
            m.insert("weight".into(), json!(weight));
            m.insert("offset".into(), json!(offset));
            m.insert("failing_head".into(), json!(failing_head));
        }
    }
    Value::Object(m)
}
