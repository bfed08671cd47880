//! Shipped example rings and ring-file loading.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, RingRef, RingSpec};

const SHIPPED: &[(&str, &str)] = &[
    ("laurent_z", include_str!("../rings/laurent_z.json")),
    ("poly_q2", include_str!("../rings/poly_q2.json")),
    ("veronese_q", include_str!("../rings/veronese_q.json")),
];

fn table() -> &'static BTreeMap<&'static str, RingRef> {
    static TABLE: OnceLock<BTreeMap<&'static str, RingRef>> = OnceLock::new();
    TABLE.get_or_init(|| {
        SHIPPED
            .iter()
            .map(|(name, json)| {
                let spec: RingSpec = serde_json::from_str(json).expect("shipped ring file parses");
                (*name, GradedRing::from_spec(name, spec).expect("shipped ring validates"))
            })
            .collect()
    })
}

pub fn names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn shipped(name: &str) -> Result<RingRef> {
    table()
        .get(name)
        .cloned()
        .ok_or_else(|| Error::Unknown { kind: "ring", name: name.to_string() })
}

pub fn all() -> Vec<RingRef> {
    table().values().cloned().collect()
}

pub fn from_json(name: &str, json: &str) -> Result<RingRef> {
    let spec: RingSpec = serde_json::from_str(json).map_err(|e| Error::InvalidRing(e.to_string()))?;
    GradedRing::from_spec(name, spec)
}

/// A shipped ring name, or a path to a ring description file.
pub fn resolve(name_or_path: &str) -> Result<RingRef> {
    if let Ok(r) = shipped(name_or_path) {
        return Ok(r);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::Unknown { kind: "ring", name: name_or_path.to_string() });
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidRing(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name_or_path);
    from_json(name, &text)
}
