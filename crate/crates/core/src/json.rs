//! JSON instance format.
//!
//! ```text
//! { "name": ..., "dim": n, "basis_labels": [...],
//!   "mult": n x n x n of [re, im], "coproduct": n x n x n of [re, im],
//!   "unit", "counit", "haar": n of [re, im],
//!   "antipode", "star": n x n of [re, im] }
//! ```

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{QgError, Result};
use crate::linalg::{CMat, C64};
use crate::quantum_group::{FiniteQuantumGroup, StructureData};

fn schema(field: &str, message: impl Into<String>) -> QgError {
    QgError::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn vec_json(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

fn mat_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn tensor_json(t: &[C64], n: usize) -> Value {
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| vec_json(&t[(i * n + j) * n..(i * n + j + 1) * n]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn to_value(g: &FiniteQuantumGroup) -> Value {
    let d = g.data();
    let n = g.dim();
    let mut m = Map::new();
    m.insert("name".into(), json!(d.name));
    m.insert("dim".into(), json!(n));
    m.insert("basis_labels".into(), json!(d.basis_labels));
    m.insert("mult".into(), tensor_json(&d.mult, n));
    m.insert("unit".into(), vec_json(&d.unit));
    m.insert("coproduct".into(), tensor_json(&d.coproduct, n));
    m.insert("counit".into(), vec_json(&d.counit));
    m.insert("antipode".into(), mat_json(&d.antipode));
    m.insert("star".into(), mat_json(&d.star));
    m.insert("haar".into(), vec_json(&d.haar));
    Value::Object(m)
}

pub fn to_string(g: &FiniteQuantumGroup) -> String {
    serde_json::to_string_pretty(&to_value(g)).expect("instance values are finite")
}

fn get<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Value> {
    obj.get(field).ok_or_else(|| schema(field, "missing field"))
}

fn parse_complex(v: &Value, field: &str) -> Result<C64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| schema(field, "complex numbers must be [re, im] pairs"))?;
    let part = |x: &Value| -> Result<f64> {
        let f = x
            .as_f64()
            .ok_or_else(|| schema(field, format!("expected a number, found {x}")))?;
        if f.is_finite() {
            Ok(f)
        } else {
            Err(schema(field, "non-finite number"))
        }
    };
    Ok(C64::new(part(&arr[0])?, part(&arr[1])?))
}

fn parse_array<'a>(v: &'a Value, len: usize, field: &str) -> Result<&'a Vec<Value>> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(field, "expected an array"))?;
    if arr.len() != len {
        return Err(schema(field, format!("expected {len} entries, found {}", arr.len())));
    }
    Ok(arr)
}

fn parse_vec(v: &Value, n: usize, field: &str) -> Result<Vec<C64>> {
    parse_array(v, n, field)?
        .iter()
        .map(|z| parse_complex(z, field))
        .collect()
}

fn parse_mat(v: &Value, n: usize, field: &str) -> Result<CMat> {
    let rows = parse_array(v, n, field)?;
    let mut m = CMat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in parse_vec(row, n, field)?.into_iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    Ok(m)
}

fn parse_tensor(v: &Value, n: usize, field: &str) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(n * n * n);
    for plane in parse_array(v, n, field)? {
        for row in parse_array(plane, n, field)? {
            out.extend(parse_vec(row, n, field)?);
        }
    }
    Ok(out)
}

pub fn from_value(v: &Value) -> Result<FiniteQuantumGroup> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("<root>", "expected a JSON object"))?;
    let name = get(obj, "name")?
        .as_str()
        .ok_or_else(|| schema("name", "expected a string"))?
        .to_string();
    let n = get(obj, "dim")?
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| schema("dim", "expected a positive integer"))? as usize;
    let basis_labels = parse_array(get(obj, "basis_labels")?, n, "basis_labels")?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema("basis_labels", "expected strings"))
        })
        .collect::<Result<_>>()?;
    let data = StructureData {
        name,
        basis_labels,
        mult: parse_tensor(get(obj, "mult")?, n, "mult")?,
        unit: parse_vec(get(obj, "unit")?, n, "unit")?,
        coproduct: parse_tensor(get(obj, "coproduct")?, n, "coproduct")?,
        counit: parse_vec(get(obj, "counit")?, n, "counit")?,
        antipode: parse_mat(get(obj, "antipode")?, n, "antipode")?,
        star: parse_mat(get(obj, "star")?, n, "star")?,
        haar: parse_vec(get(obj, "haar")?, n, "haar")?,
    };
    FiniteQuantumGroup::new(data)
}

pub fn from_str(s: &str) -> Result<FiniteQuantumGroup> {
    let v: Value = serde_json::from_str(s).map_err(|e| schema("<document>", e.to_string()))?;
    from_value(&v)
}

pub fn load(path: impl AsRef<Path>) -> Result<FiniteQuantumGroup> {
    from_str(&std::fs::read_to_string(path)?)
}

pub fn save(g: &FiniteQuantumGroup, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_string(g) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_bit_exact() {
        let kp = FiniteQuantumGroup::kac_paljutkin();
        let back = from_str(&to_string(&kp)).unwrap();
        assert_eq!(back.data(), kp.data());
        let odd = kp.with_haar(vec![C64::new(0.1, 1.0 / 3.0); 8]).unwrap();
        let back = from_str(&to_string(&odd)).unwrap();
        assert_eq!(back.data(), odd.data());
    }

    #[test]
    fn missing_field_is_named() {
        let mut v = to_value(&FiniteQuantumGroup::kac_paljutkin());
        v.as_object_mut().unwrap().remove("haar");
        match from_value(&v) {
            Err(QgError::Schema { field, .. }) => assert_eq!(field, "haar"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncated_document_is_schema_error() {
        let s = to_string(&FiniteQuantumGroup::kac_paljutkin());
        let cut = &s[..s.len() / 2];
        assert!(matches!(from_str(cut), Err(QgError::Schema { .. })));
    }
}
