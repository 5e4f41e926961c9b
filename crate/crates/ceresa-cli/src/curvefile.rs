//! Curve file ingestion: a JSON description of a metric graph with exact
//! rational or symbolic edge lengths.

use ceresa_core::graph::Edge;
use ceresa_core::{MetricGraph, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub basepoint: String,
    #[serde(default)]
    pub basepoint2: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub name: String,
    pub from: String,
    pub to: String,
    pub length: String,
}

/// Parses an exact rational literal: an optional sign, digits, and an
/// optional /denominator. Returns None when the text is not a number.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let looks_numeric = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !looks_numeric(num) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if looks_numeric(d) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Validates a parsed curve file and builds the metric graph.
pub fn curve_to_graph(file: &CurveFile) -> Result<MetricGraph, String> {
    if file.vertices.is_empty() {
        return Err("the curve needs at least one vertex".into());
    }
    let mut vertex_index = BTreeMap::new();
    for (i, v) in file.vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), i).is_some() {
            return Err(format!("duplicate vertex name {v:?}"));
        }
    }
    let mut edge_names = BTreeMap::new();
    for e in &file.edges {
        if edge_names.insert(e.name.clone(), ()).is_some() {
            return Err(format!("duplicate edge name {:?}", e.name));
        }
    }

    // variable table: the declared list, or first-appearance inference
    let mut var_names: Vec<String> = Vec::new();
    let mut declared = false;
    if let Some(vars) = &file.variables {
        declared = true;
        for v in vars {
            if !is_identifier(v) {
                return Err(format!("variable name {v:?} is not an identifier"));
            }
            if var_names.contains(v) {
                return Err(format!("duplicate variable name {v:?}"));
            }
            var_names.push(v.clone());
        }
    } else {
        for e in &file.edges {
            if parse_rational(&e.length).is_none()
                && is_identifier(&e.length)
                && !var_names.contains(&e.length)
            {
                var_names.push(e.length.clone());
            }
        }
    }
    let nvars = var_names.len();

    let mut edges = Vec::new();
    for e in &file.edges {
        let from = *vertex_index
            .get(&e.from)
            .ok_or_else(|| format!("edge {:?} starts at unknown vertex {:?}", e.name, e.from))?;
        let to = *vertex_index
            .get(&e.to)
            .ok_or_else(|| format!("edge {:?} ends at unknown vertex {:?}", e.name, e.to))?;
        let length = if let Some(r) = parse_rational(&e.length) {
            if !r.is_positive() {
                return Err(format!("edge {:?} has non-positive length {}", e.name, e.length));
            }
            Scalar::from_rational(r, nvars)
        } else if is_identifier(&e.length) {
            match var_names.iter().position(|v| v == &e.length) {
                Some(i) => Scalar::var(i, nvars),
                None => {
                    debug_assert!(declared, "inference collects every identifier");
                    return Err(format!(
                        "edge {:?} uses undeclared variable {:?}",
                        e.name, e.length
                    ));
                }
            }
        } else {
            return Err(format!(
                "edge {:?} has length {:?}, expected a rational like \"3/2\" or a variable name",
                e.name, e.length
            ));
        };
        edges.push(Edge { name: e.name.clone(), from, to, length });
    }

    let basepoint = *vertex_index
        .get(&file.basepoint)
        .ok_or_else(|| format!("unknown basepoint {:?}", file.basepoint))?;
    let basepoint2 = match &file.basepoint2 {
        Some(b) => Some(
            *vertex_index
                .get(b)
                .ok_or_else(|| format!("unknown second basepoint {b:?}"))?,
        ),
        None => None,
    };

    let graph = MetricGraph {
        vertex_names: file.vertices.clone(),
        var_names,
        edges,
        basepoint,
        basepoint2,
    };
    if !graph.is_connected() {
        return Err("the curve must be connected".into());
    }
    Ok(graph)
}
