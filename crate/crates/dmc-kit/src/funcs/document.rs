//! JSON function-description documents.
//!
//! Top-level object: `{"kind": ..., "dim": n, ...payload..., "box": {...}}`.
//! Kinds: `quadratic`, `separable`, `table`, `indicator`, `linear_on_set`,
//! `sum`, `translate`, `permute`, `negate`, `scale`; composition kinds nest
//! child documents under `f` (or `f1`/`f2`). Rational literals are integers
//! or `"p/q"` strings; decimal floats are rejected so exact boundary cases
//! never pass through binary floating point.

use num_rational::BigRational;
use serde_json::Value;

use crate::dmcset::PointSet;
use crate::error::{Error, Result};
use crate::funcs::{
    negate_all, permute, scale_fn, translate, weighted_sum, IndicatorFn, LinearOnSetFn, Oracle,
    QuadraticFn, RationalMatrix, SeparableConvexFn, TableFn, Univariate,
};
use crate::lattice::{ext_value_from_json, rational_from_json, ExtValue, LatticeBox, LatticePoint};

/// Parses a function document from JSON text.
pub fn parse_function(text: &str) -> Result<Oracle> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    oracle_from_value(&v)
}

/// Loads a function document from a file path.
pub fn load_function(path: &std::path::Path) -> Result<Oracle> {
    let text = std::fs::read_to_string(path)?;
    parse_function(&text)
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn obj(v: &Value) -> Result<&serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| doc_err("function document must be a JSON object"))
}

fn field<'a>(m: &'a serde_json::Map<String, Value>, k: &str) -> Result<&'a Value> {
    m.get(k)
        .ok_or_else(|| doc_err(format!("missing field {k:?}")))
}

fn dim_of(m: &serde_json::Map<String, Value>) -> Result<usize> {
    let d = field(m, "dim")?
        .as_u64()
        .ok_or_else(|| doc_err("\"dim\" must be a positive integer"))?;
    if d == 0 {
        return Err(doc_err("\"dim\" must be at least 1"));
    }
    Ok(d as usize)
}

fn point_from(v: &Value, dim: usize) -> Result<LatticePoint> {
    let arr = v
        .as_array()
        .ok_or_else(|| doc_err("expected a coordinate array"))?;
    if arr.len() != dim {
        return Err(doc_err(format!(
            "point has {} coordinates, expected {dim}",
            arr.len()
        )));
    }
    let coords = arr
        .iter()
        .map(|c| {
            c.as_i64()
                .ok_or_else(|| doc_err("coordinates must be integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticePoint::new(coords))
}

fn box_from(v: &Value, dim: usize) -> Result<LatticeBox> {
    let m = obj(v)?;
    let lo = point_from(field(m, "lo")?, dim)?;
    let hi = point_from(field(m, "hi")?, dim)?;
    LatticeBox::new(lo, hi)
}

fn points_from(v: &Value, dim: usize) -> Result<Vec<LatticePoint>> {
    v.as_array()
        .ok_or_else(|| doc_err("expected an array of points"))?
        .iter()
        .map(|p| point_from(p, dim))
        .collect()
}

fn rationals_from(v: &Value) -> Result<Vec<BigRational>> {
    v.as_array()
        .ok_or_else(|| doc_err("expected an array of rationals"))?
        .iter()
        .map(rational_from_json)
        .collect()
}

fn oracle_from_value(v: &Value) -> Result<Oracle> {
    let m = obj(v)?;
    let kind = field(m, "kind")?
        .as_str()
        .ok_or_else(|| doc_err("\"kind\" must be a string"))?;
    let dim = dim_of(m)?;
    let check_dim = |o: &Oracle| -> Result<()> {
        if o.dim() != dim {
            return Err(doc_err(format!(
                "declared dim {dim} but payload has dimension {}",
                o.dim()
            )));
        }
        Ok(())
    };
    let oracle = match kind {
        "quadratic" => {
            let rows_v = field(m, "Q")?
                .as_array()
                .ok_or_else(|| doc_err("\"Q\" must be an array of rows"))?;
            let rows = rows_v
                .iter()
                .map(rationals_from)
                .collect::<Result<Vec<_>>>()?;
            if rows.len() != dim {
                return Err(doc_err(format!(
                    "Q has {} rows, expected {dim}",
                    rows.len()
                )));
            }
            let matrix = RationalMatrix::symmetric(rows)?;
            let domain = match m.get("box") {
                Some(b) => Some(box_from(b, dim)?),
                None => None,
            };
            QuadraticFn::oracle(matrix, domain)?
        }
        "separable" => {
            let phis_v = field(m, "phis")?
                .as_array()
                .ok_or_else(|| doc_err("\"phis\" must be an array"))?;
            if phis_v.len() != dim {
                return Err(doc_err(format!(
                    "{} univariate tables, expected {dim}",
                    phis_v.len()
                )));
            }
            let phis = phis_v
                .iter()
                .map(|p| -> Result<Univariate> {
                    let pm = obj(p)?;
                    let lo = field(pm, "lo")?
                        .as_i64()
                        .ok_or_else(|| doc_err("\"lo\" must be an integer"))?;
                    let values = field(pm, "values")?
                        .as_array()
                        .ok_or_else(|| doc_err("\"values\" must be an array"))?
                        .iter()
                        .map(ext_value_from_json)
                        .collect::<Result<Vec<_>>>()?;
                    Univariate::new(lo, values)
                })
                .collect::<Result<Vec<_>>>()?;
            SeparableConvexFn::oracle(phis)?
        }
        "table" => {
            let bounds = box_from(field(m, "box")?, dim)?;
            let entries = field(m, "entries")?
                .as_array()
                .ok_or_else(|| doc_err("\"entries\" must be an array"))?
                .iter()
                .map(|e| -> Result<(LatticePoint, ExtValue)> {
                    let em = obj(e)?;
                    Ok((
                        point_from(field(em, "x")?, dim)?,
                        ext_value_from_json(field(em, "v")?)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            TableFn::oracle(bounds, entries)?
        }
        "indicator" => {
            let points = points_from(field(m, "points")?, dim)?;
            IndicatorFn::oracle(PointSet::new(dim, points)?)?
        }
        "linear_on_set" => {
            let cost = rationals_from(field(m, "c")?)?;
            let points = points_from(field(m, "points")?, dim)?;
            LinearOnSetFn::oracle(cost, PointSet::new(dim, points)?)?
        }
        "sum" => {
            let a1 = rational_from_json(field(m, "a1")?)?;
            let a2 = rational_from_json(field(m, "a2")?)?;
            let f1 = oracle_from_value(field(m, "f1")?)?;
            let f2 = oracle_from_value(field(m, "f2")?)?;
            weighted_sum(a1, a2, &f1, &f2)?
        }
        "translate" => {
            let z = point_from(field(m, "z")?, dim)?;
            let f = oracle_from_value(field(m, "f")?)?;
            translate(&f, &z)?
        }
        "permute" => {
            // 1-based in documents, matching the usual written convention
            let sigma_1 = field(m, "sigma")?
                .as_array()
                .ok_or_else(|| doc_err("\"sigma\" must be an array"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| doc_err("sigma entries must be positive integers"))
                })
                .collect::<Result<Vec<_>>>()?;
            if sigma_1.contains(&0) {
                return Err(doc_err("sigma entries are 1-based"));
            }
            let sigma: Vec<usize> = sigma_1.iter().map(|&i| (i - 1) as usize).collect();
            let f = oracle_from_value(field(m, "f")?)?;
            permute(&f, &sigma)?
        }
        "negate" => {
            let f = oracle_from_value(field(m, "f")?)?;
            negate_all(&f)
        }
        "scale" => {
            let alpha = field(m, "alpha")?
                .as_i64()
                .ok_or_else(|| doc_err("\"alpha\" must be an integer"))?;
            let f = oracle_from_value(field(m, "f")?)?;
            scale_fn(&f, alpha)?
        }
        other => return Err(doc_err(format!("unknown function kind {other:?}"))),
    };
    check_dim(&oracle)?;
    Ok(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::from(v)
    }

    #[test]
    fn quadratic_document() {
        let f =
            parse_function(r#"{"kind":"quadratic","dim":2,"Q":[[1,"4/5"],["4/5",1]]}"#).unwrap();
        assert_eq!(f.dim(), 2);
        // (1,1) Q (1,1) = 2 + 2*(4/5) = 18/5
        assert_eq!(f.eval(&pt(&[1, 1])), ExtValue::parse("18/5").unwrap());
    }

    #[test]
    fn table_document() {
        let f = parse_function(
            r#"{"kind":"table","dim":2,"box":{"lo":[0,0],"hi":[0,0]},"entries":[{"x":[0,0],"v":0}]}"#,
        )
        .unwrap();
        assert_eq!(f.eval(&pt(&[0, 0])), ExtValue::zero());
        assert_eq!(f.eval(&pt(&[1, 0])), ExtValue::Infinite);
    }

    #[test]
    fn indicator_document() {
        let f = parse_function(r#"{"kind":"indicator","dim":2,"points":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(f.eval(&pt(&[1, 0])), ExtValue::zero());
        assert_eq!(f.eval(&pt(&[0, 0])), ExtValue::Infinite);
    }

    #[test]
    fn rejects_floats_and_asymmetry() {
        assert!(parse_function(r#"{"kind":"quadratic","dim":2,"Q":[[1,0.5],[0.5,1]]}"#).is_err());
        assert!(parse_function(r#"{"kind":"quadratic","dim":2,"Q":[[1,2],[3,1]]}"#).is_err());
        assert!(parse_function(r#"{"kind":"quadratic","dim":3,"Q":[[1,0],[0,1]]}"#).is_err());
        assert!(parse_function(r#"{"kind":"mystery","dim":1}"#).is_err());
    }

    #[test]
    fn loaded_oracles_are_deterministic() {
        let f = parse_function(
            r#"{"kind":"sum","dim":2,"a1":"2/3","a2":1,
                "f1":{"kind":"quadratic","dim":2,"Q":[[2,"-1/3"],["-1/3",1]]},
                "f2":{"kind":"indicator","dim":2,"points":[[0,0],[1,0],[2,-1]]}}"#,
        )
        .unwrap();
        for p in crate::lattice::LatticeBox::centered(2, 3).iter_points() {
            assert_eq!(f.eval(&p), f.eval(&p));
        }
    }

    #[test]
    fn nested_composition_document() {
        let f = parse_function(
            r#"{"kind":"scale","dim":1,"alpha":2,
                "f":{"kind":"indicator","dim":1,"points":[[0],[2],[4]]}}"#,
        )
        .unwrap();
        let dom: Vec<i64> = (-2..=4)
            .filter(|&t| f.eval(&pt(&[t])).is_finite())
            .collect();
        assert_eq!(dom, vec![0, 1, 2]);
    }
}
