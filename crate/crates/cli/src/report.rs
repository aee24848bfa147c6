use nilsum::limit::LimitElement;
use nilsum::nilsum::NilSumWitness;
use nilsum::ExactMatrix;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    /// A proof that the requested decomposition does not exist.
    Obstruction,
    /// The command ran but a check it reports on came out negative.
    Failure,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub inputs: Value,
    pub result: Value,
    pub verification: Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `{domain, rows}` with the domain line and entries of the text format,
/// so a matrix can be read back.
pub fn matrix_json(m: &ExactMatrix) -> Value {
    json!({ "domain": m.domain().spec_line(), "rows": m.format_rows() })
}

pub fn element_json(e: &LimitElement) -> Value {
    json!({ "level": e.level(), "matrix": matrix_json(e.matrix()) })
}

/// Recomputes a witness from scratch: the sum and a vanishing power of
/// each summand. Fails if anything does not check out.
pub fn verify_witness(target: &ExactMatrix, w: &NilSumWitness) -> Result<Value, String> {
    let sum_ok = w.first.add(&w.second).map_err(|e| e.to_string())? == *target;
    let power_zero = |m: &ExactMatrix, k: usize| m.pow(k as u32).is_ok_and(|p| p.is_zero());
    let first_ok = power_zero(&w.first, w.first_cert.index);
    let second_ok = power_zero(&w.second, w.second_cert.index);
    if !(sum_ok && first_ok && second_ok && w.verify(target)) {
        return Err("witness failed re-verification".into());
    }
    Ok(json!({
        "sum_equals_input": sum_ok,
        "first_power_vanishes": first_ok,
        "second_power_vanishes": second_ok,
    }))
}
