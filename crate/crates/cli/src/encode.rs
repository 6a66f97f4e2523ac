//! JSON encodings. Numbers are exact coefficient vectors such as
//! `"[1/4, 0, -1/8]"`, which parse back to the same value.

use ietlab::iet::{Iet, Interval, IntervalSet};
use ietlab::numfield::{AlgebraicNumber, Field};
use serde_json::{json, Value};

pub fn number(x: &AlgebraicNumber) -> Value {
    Value::String(x.to_coeff_string())
}

pub fn numbers(xs: &[AlgebraicNumber]) -> Value {
    Value::Array(xs.iter().map(number).collect())
}

pub fn interval(iv: &Interval) -> Value {
    json!([number(&iv.start), number(&iv.end)])
}

pub fn interval_set(s: &IntervalSet) -> Value {
    Value::Array(s.intervals().iter().map(interval).collect())
}

pub fn iet(f: &Iet) -> Value {
    json!({ "cuts": numbers(f.cuts()), "translations": numbers(f.translations()) })
}

pub fn field(f: &Field) -> Value {
    let spec = f.spec();
    let poly: Vec<String> = spec
        .minimal_polynomial
        .iter()
        .map(ToString::to_string)
        .collect();
    json!({
        "minpoly": poly,
        "interval": [spec.isolating_interval.0.to_string(), spec.isolating_interval.1.to_string()],
    })
}

/// `[a, b) ∪ [c, d)` with numbers in readable form.
pub fn set_text(s: &IntervalSet) -> String {
    format!("{s:?}")
}

/// One row per interval of `f`: domain, translation.
pub fn iet_table(f: &Iet) -> String {
    let mut out = String::new();
    for i in 0..f.interval_count() {
        out.push_str(&format!(
            "  {:?}  shift {}\n",
            f.interval(i),
            f.translations()[i]
        ));
    }
    out
}
