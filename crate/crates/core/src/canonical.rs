//! Canonical JSON: every floating-point number is rounded to three decimals
//! (1/1000 ft for coordinates), integers are left alone, and map keys come
//! out in a fixed order. Identical values always produce identical bytes.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Number, Value};

pub const DECIMALS: i32 = 3;

pub fn round3(x: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS);
    let r = (x * scale).round() / scale;
    // Avoid emitting "-0.0".
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round3).and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_canonical_value<T: Serialize>(value: &T) -> serde_json::Result<Value> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(v)
}

pub fn to_canonical_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    to_canonical_value(value).map(|v| v.to_string())
}

/// Round-trips a value through its canonical form so that its in-memory
/// representation matches what a client decodes.
pub fn canonicalize<T: Serialize + DeserializeOwned>(value: &T) -> serde_json::Result<T> {
    serde_json::from_value(to_canonical_value(value)?)
}
