//! Machine-readable reports. The JSON output is deterministic: keys are
//! emitted in sorted order, every number is an exact decimal string, and the
//! command echo records only the semantic parameters (never output paths),
//! so re-running on the same input reproduces the bytes.

use ceresa_core::{ConstantFormX, FluxVerdict, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub struct Report {
    pub command: Value,
    pub input_digest: Option<String>,
    pub results: Value,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone());
        top.insert("exact_arithmetic".into(), Value::Bool(true));
        if let Some(d) = &self.input_digest {
            top.insert("input_digest".into(), Value::String(d.clone()));
        }
        top.insert("results".into(), self.results.clone());
        Value::Object(top)
    }

    pub fn write(&self, path: &std::path::Path) -> Result<(), String> {
        let text = serde_json::to_string_pretty(&self.to_value())
            .expect("report serialization cannot fail");
        std::fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("sha256:{:x}", h.finalize())
}

pub fn bigint_str(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn rational_str(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

pub fn scalar_str(s: &Scalar, names: &[String]) -> Value {
    Value::String(s.render(names))
}

pub fn matrix_json(m: &[Vec<Scalar>], names: &[String]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|s| scalar_str(s, names)).collect()))
            .collect(),
    )
}

/// Renders a flux verdict together with its certificate data and the result
/// of re-verifying that certificate against the original value.
pub fn verdict_json(verdict: &FluxVerdict, verified: bool) -> Value {
    match verdict {
        FluxVerdict::InLattice { coefficients } => json!({
            "kind": "in_lattice",
            "coefficients": coefficients.iter().map(bigint_str).collect::<Vec<_>>(),
            "verified": verified,
        }),
        FluxVerdict::Torsion { order, witness } => json!({
            "kind": "torsion",
            "order": bigint_str(order),
            "witness": witness.iter().map(rational_str).collect::<Vec<_>>(),
            "verified": verified,
        }),
        FluxVerdict::InfiniteOrder { certificate } => json!({
            "kind": "infinite_order",
            "certificate": certificate.iter().map(bigint_str).collect::<Vec<_>>(),
            "verified": verified,
        }),
    }
}

pub fn verdict_name(verdict: &FluxVerdict) -> &'static str {
    match verdict {
        FluxVerdict::InLattice { .. } => "InLattice",
        FluxVerdict::Torsion { .. } => "Torsion",
        FluxVerdict::InfiniteOrder { .. } => "InfiniteOrder",
    }
}

/// Renders a constant form on the symplectic torus: terms like
/// `dx1^dp2 - dx2^dp1`, with the coordinate split at `n`.
pub fn render_form_x(alpha: &ConstantFormX) -> String {
    let n = alpha.n;
    let mut parts: Vec<String> = Vec::new();
    for (idx, coeff) in alpha.el.terms() {
        if coeff.is_zero() {
            continue;
        }
        let wedge = idx
            .iter()
            .map(|&i| {
                if i <= n {
                    format!("dx{i}")
                } else {
                    format!("dp{}", i - n)
                }
            })
            .collect::<Vec<_>>()
            .join("^");
        let rendered = coeff.render(&[]);
        let lead = if parts.is_empty() {
            match rendered.as_str() {
                "1" => wedge.clone(),
                "-1" => format!("-{wedge}"),
                r => format!("{r}*{wedge}"),
            }
        } else {
            match rendered.as_str() {
                "1" => format!("+ {wedge}"),
                "-1" => format!("- {wedge}"),
                r if r.starts_with('-') => format!("- {}*{wedge}", &r[1..]),
                r => format!("+ {r}*{wedge}"),
            }
        };
        parts.push(lead);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ceresa_core::exterior::ExteriorElement;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(b"abc"),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn forms_render_with_split_coordinates() {
        let mut el = ExteriorElement::zero(4, 2);
        el.insert_add(vec![1, 3], Scalar::from_int(1, 0));
        el.insert_add(vec![2, 4], Scalar::from_int(-1, 0));
        let alpha = ConstantFormX { n: 2, el };
        assert_eq!(render_form_x(&alpha), "dx1^dp1 - dx2^dp2");
    }
}
