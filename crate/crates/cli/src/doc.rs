//! Input documents (schema 1).
//!
//! ```json
//! {
//!   "schema": 1,
//!   "name": "sl2-mod-torus",
//!   "group": { "factors": [{ "type": "A", "rank": 1 }], "central_rank": 0 },
//!   "weights": { "alpha": [2] },
//!   "monoid_generators": ["alpha"],
//!   "spherical_roots": ["a1"],
//!   "divisors": [{ "phi": ["1/2"], "removed": [1] }],
//!   "base_weight": [0],
//!   "orders": [0, 1]
//! }
//! ```
//!
//! Weights are integer vectors in fundamental-weight coordinates followed by the
//! central coordinates. `a<i>` and `w<i>` name the simple roots and fundamental
//! weights of the semisimple part and need not be declared. A divisor gives its
//! valuation as a covector on the same coordinates (so `[1]` is the simple coroot
//! of `A_1`) and its stabilizer by the simple roots it removes, numbered from 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use luna_core::num::{Int, Rat};
use luna_core::rootsys::{DynkinType, GroupSpec, RootData};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::json::{int_of, parse_strict, rat_of};

pub const SCHEMA_VERSION: u64 = 1;

const KNOWN_FIELDS: &[&str] =
    &["schema", "name", "group", "weights", "monoid_generators", "spherical_roots", "divisors", "base_weight", "orders"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Field path such as `monoid_generators[1]`, or `line 3, column 5` for syntax errors.
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(location: impl Into<String>, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { location: location.into(), message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSpec {
    /// Covector on the weight coordinates.
    pub phi: Vec<Rat>,
    /// Removed simple roots, 0-based.
    pub removed: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub name: Option<String>,
    pub spec: GroupSpec,
    pub weights: BTreeMap<String, Vec<Int>>,
    pub monoid_generators: Vec<Vec<Int>>,
    pub spherical_roots: Vec<Vec<Int>>,
    pub divisors: Option<Vec<DivisorSpec>>,
    pub base_weight: Option<Vec<Int>>,
    pub orders: Option<Vec<Int>>,
    /// SHA-256 of the compact, key-sorted serialization of the document.
    pub digest: String,
}

impl InputDocument {
    pub fn root_data(&self) -> RootData {
        RootData::new(self.spec.clone()).expect("group validated while parsing")
    }
}

fn parse_group(v: &Value) -> Result<GroupSpec, ParseError> {
    let Value::Object(o) = v else { return err("group", "expected an object") };
    for k in o.keys() {
        if k != "factors" && k != "central_rank" {
            return err(format!("group.{}", k), "unknown field");
        }
    }
    let mut factors = Vec::new();
    match o.get("factors") {
        None => {}
        Some(Value::Array(fs)) => {
            for (i, f) in fs.iter().enumerate() {
                let at = format!("group.factors[{}]", i);
                let Value::Object(fo) = f else { return err(at, "expected an object with `type` and `rank`") };
                let kind = match fo.get("type") {
                    Some(Value::String(s)) if s.chars().count() == 1 => DynkinType::from_char(s.chars().next().unwrap_or(' ')),
                    _ => None,
                };
                let Some(kind) = kind else {
                    return err(format!("{}.type", at), "unknown Dynkin type (expected one of A, B, C, D, E, F, G)");
                };
                let Some(rank) = fo.get("rank").and_then(Value::as_u64) else {
                    return err(format!("{}.rank", at), "expected a positive integer");
                };
                if !kind.admits_rank(rank as usize) {
                    return err(format!("{}.rank", at), format!("type {} does not exist in rank {}", kind.as_char(), rank));
                }
                factors.push((kind, rank as usize));
            }
        }
        Some(_) => return err("group.factors", "expected an array"),
    }
    let central = match o.get("central_rank") {
        None => 0,
        Some(c) => match c.as_u64() {
            Some(c) => c as usize,
            None => return err("group.central_rank", "expected a nonnegative integer"),
        },
    };
    let spec = GroupSpec::new(&factors, central);
    if let Err(e) = spec.validate() {
        return err("group", e.to_string());
    }
    Ok(spec)
}

fn int_vector(v: &Value, dim: usize, at: &str) -> Result<Vec<Int>, ParseError> {
    let Value::Array(a) = v else { return err(at, "expected an array of integers") };
    if a.len() != dim {
        return err(at, format!("expected {} coordinates, found {}", dim, a.len()));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| int_of(x).map_or_else(|| err(format!("{}[{}]", at, i), "non-integer coordinate"), Ok))
        .collect()
}

fn rat_vector(v: &Value, dim: usize, at: &str) -> Result<Vec<Rat>, ParseError> {
    let Value::Array(a) = v else { return err(at, "expected an array of rationals") };
    if a.len() != dim {
        return err(at, format!("expected {} coordinates, found {}", dim, a.len()));
    }
    a.iter()
        .enumerate()
        .map(|(i, x)| rat_of(x).map_or_else(|| err(format!("{}[{}]", at, i), "expected an integer or a fraction such as \"1/2\""), Ok))
        .collect()
}

/// Simple roots `a<i>` and fundamental weights `w<i>`.
fn builtin_weights(rd: &RootData) -> BTreeMap<String, Vec<Int>> {
    let mut out = BTreeMap::new();
    for i in 0..rd.rank() {
        out.insert(format!("a{}", i + 1), rd.simple_roots[i].to_ints().expect("simple roots are integral"));
        let mut w = vec![Int::from(0); rd.dim()];
        w[i] = Int::from(1);
        out.insert(format!("w{}", i + 1), w);
    }
    out
}

fn resolve(v: &Value, names: &BTreeMap<String, Vec<Int>>, dim: usize, at: &str) -> Result<Vec<Int>, ParseError> {
    match v {
        Value::String(s) => match names.get(s) {
            Some(w) => Ok(w.clone()),
            None => err(at, format!("unknown weight name `{}`", s)),
        },
        _ => int_vector(v, dim, at),
    }
}

fn weight_list(o: &serde_json::Map<String, Value>, key: &str, names: &BTreeMap<String, Vec<Int>>, dim: usize) -> Result<Vec<Vec<Int>>, ParseError> {
    match o.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(a)) => a.iter().enumerate().map(|(i, x)| resolve(x, names, dim, &format!("{}[{}]", key, i))).collect(),
        Some(_) => err(key, "expected an array of weight names or vectors"),
    }
}

pub fn digest_of(v: &Value) -> String {
    let canonical = serde_json::to_string(v).expect("values serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let v = parse_strict(text).map_err(|e| ParseError { location: format!("line {}, column {}", e.line(), e.column()), message: e.to_string() })?;
    let Value::Object(o) = &v else { return err("document", "expected a JSON object") };
    for k in o.keys() {
        if !KNOWN_FIELDS.contains(&k.as_str()) {
            return err(k.clone(), "unknown field");
        }
    }
    match o.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(n) => return err("schema", format!("unsupported schema version {}", n)),
        None => return err("schema", "missing or not an integer (expected 1)"),
    }
    let name = match o.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return err("name", "expected a string"),
    };
    let spec = parse_group(o.get("group").ok_or(ParseError { location: "group".into(), message: "missing".into() })?)?;
    let rd = RootData::new(spec.clone()).map_err(|e| ParseError { location: "group".into(), message: e.to_string() })?;
    let dim = rd.dim();

    let mut names = builtin_weights(&rd);
    let mut weights = BTreeMap::new();
    match o.get("weights") {
        None => {}
        Some(Value::Object(w)) => {
            for (k, x) in w {
                let at = format!("weights.{}", k);
                if names.contains_key(k) {
                    return err(at, format!("weight name `{}` is reserved for a simple root or fundamental weight", k));
                }
                weights.insert(k.clone(), int_vector(x, dim, &at)?);
            }
        }
        Some(_) => return err("weights", "expected an object mapping names to vectors"),
    }
    names.extend(weights.iter().map(|(k, w)| (k.clone(), w.clone())));

    let monoid_generators = weight_list(o, "monoid_generators", &names, dim)?;
    let spherical_roots = weight_list(o, "spherical_roots", &names, dim)?;

    let divisors = match o.get("divisors") {
        None => None,
        Some(Value::Array(a)) => {
            let mut out = Vec::new();
            for (i, d) in a.iter().enumerate() {
                let at = format!("divisors[{}]", i);
                let Value::Object(dobj) = d else { return err(at, "expected an object with `phi` and `removed`") };
                for k in dobj.keys() {
                    if k != "phi" && k != "removed" {
                        return err(format!("{}.{}", at, k), "unknown field");
                    }
                }
                let phi = rat_vector(dobj.get("phi").unwrap_or(&Value::Null), dim, &format!("{}.phi", at))?;
                let mut removed = BTreeSet::new();
                match dobj.get("removed") {
                    None => {}
                    Some(Value::Array(r)) => {
                        for (j, x) in r.iter().enumerate() {
                            match x.as_u64() {
                                Some(n) if n >= 1 && (n as usize) <= rd.rank() => {
                                    removed.insert(n as usize - 1);
                                }
                                _ => return err(format!("{}.removed[{}]", at, j), format!("expected a simple root number between 1 and {}", rd.rank())),
                            }
                        }
                    }
                    Some(_) => return err(format!("{}.removed", at), "expected an array of simple root numbers"),
                }
                out.push(DivisorSpec { phi, removed });
            }
            Some(out)
        }
        Some(_) => return err("divisors", "expected an array"),
    };

    let base_weight = match o.get("base_weight") {
        None => None,
        Some(x) => Some(resolve(x, &names, dim, "base_weight")?),
    };
    let orders = match o.get("orders") {
        None => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .enumerate()
                .map(|(i, x)| int_of(x).map_or_else(|| err(format!("orders[{}]", i), "expected an integer"), Ok))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return err("orders", "expected an array of integers"),
    };

    Ok(InputDocument {
        name,
        spec,
        weights,
        monoid_generators,
        spherical_roots,
        divisors,
        base_weight,
        orders,
        digest: digest_of(&v),
    })
}
