//! JSON form of finite hypergroups.
//!
//! ```json
//! { "elements": ["e","s"], "unit": "e", "inverse": {"e":"e","s":"s"},
//!   "table": {"e|e":["e"], "e|s":["s"], "s|e":["s"], "s|s":["e"]},
//!   "dims": {"e":1,"s":1}, "exact_dims": true }
//! ```
//!
//! Table keys join two labels with a literal `|`. Serialization is
//! canonical: elements, keys and product arrays are sorted.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FiniteHypergroup, Hypergroup};
use crate::error::{HgError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergroupDocument {
    pub elements: Vec<String>,
    pub unit: String,
    pub inverse: BTreeMap<String, String>,
    pub table: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exact_dims: bool,
}

impl HypergroupDocument {
    pub fn from_hypergroup(h: &FiniteHypergroup) -> Self {
        let elements = h.labels().to_vec();
        let inverse = elements
            .iter()
            .map(|x| (x.clone(), h.inverse_of(x)))
            .collect();
        let mut table = BTreeMap::new();
        for x in &elements {
            for y in &elements {
                table.insert(format!("{x}|{y}"), h.product(x, y).into_iter().collect());
            }
        }
        let dims = h.has_dims().then(|| {
            elements
                .iter()
                .map(|x| (x.clone(), h.dimension(x).unwrap_or(1)))
                .collect()
        });
        HypergroupDocument {
            elements,
            unit: h.unit(),
            inverse,
            table,
            dims,
            exact_dims: h.exact_dims(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("document serializes")
    }
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| HgError::schema(path, "expected a string"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| HgError::schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| HgError::schema(path, "expected an array"))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| HgError::schema(format!("/{key}"), "missing field"))
}

/// Parses a hypergroup document from a JSON value.
pub fn hypergroup_from_value(doc: &Value) -> Result<FiniteHypergroup> {
    let root = as_object(doc, "/")?;

    let mut elements = Vec::new();
    for (i, v) in as_array(field(root, "elements")?, "/elements")?.iter().enumerate() {
        elements.push(as_str(v, &format!("/elements/{i}"))?.to_string());
    }
    let known: BTreeSet<&str> = elements.iter().map(String::as_str).collect();
    let require_known = |label: &str, path: String| -> Result<()> {
        if known.contains(label) {
            Ok(())
        } else {
            Err(HgError::schema(path, format!("unknown label `{label}`")))
        }
    };

    let unit = as_str(field(root, "unit")?, "/unit")?;
    require_known(unit, "/unit".into())?;

    let mut inverse = BTreeMap::new();
    for (k, v) in as_object(field(root, "inverse")?, "/inverse")? {
        let path = format!("/inverse/{k}");
        require_known(k, path.clone())?;
        let y = as_str(v, &path)?;
        require_known(y, path)?;
        inverse.insert(k.clone(), y.to_string());
    }

    let mut table = BTreeMap::new();
    for (k, v) in as_object(field(root, "table")?, "/table")? {
        let path = format!("/table/{k}");
        let (x, y) = k
            .split_once('|')
            .ok_or_else(|| HgError::schema(&path, "key must have the form `x|y`"))?;
        require_known(x, path.clone())?;
        require_known(y, path.clone())?;
        let mut set = BTreeSet::new();
        for (i, z) in as_array(v, &path)?.iter().enumerate() {
            let z = as_str(z, &format!("{path}/{i}"))?;
            require_known(z, format!("{path}/{i}"))?;
            set.insert(z.to_string());
        }
        table.insert((x.to_string(), y.to_string()), set);
    }

    let dims = match root.get("dims") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let mut d = BTreeMap::new();
            for (k, n) in as_object(v, "/dims")? {
                let path = format!("/dims/{k}");
                require_known(k, path.clone())?;
                let n = n
                    .as_u64()
                    .ok_or_else(|| HgError::schema(&path, "dimension must be a positive integer"))?;
                d.insert(k.clone(), n);
            }
            Some(d)
        }
    };
    let exact_dims = match root.get("exact_dims") {
        None | Some(Value::Null) => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| HgError::schema("/exact_dims", "expected a boolean"))?,
    };

    FiniteHypergroup::from_parts(elements, unit, &inverse, &table, dims.as_ref(), exact_dims)
}

/// Parses a hypergroup document. Algebraic axioms are not checked here.
pub fn parse_hypergroup(text: &str) -> Result<FiniteHypergroup> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| HgError::schema("/", e.to_string()))?;
    hypergroup_from_value(&value)
}

/// Canonical pretty-printed JSON for a finite hypergroup.
pub fn serialize_hypergroup(h: &FiniteHypergroup) -> String {
    serde_json::to_string_pretty(&HypergroupDocument::from_hypergroup(h)).expect("serializable")
}
