//! JSON file formats for polytopes and Y-tables. Rationals are `"p/q"` strings.

use crate::error::{Error, Result};
use crate::expr::parse_expr;
use crate::polytope::{DelzantPolytope, Facet};
use crate::quantum::YTable;
use crate::rational::{fmt_rat, parse_rat, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetEntry {
    pub normal: Vec<i64>,
    pub support: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub name: String,
    pub dim: usize,
    pub facets: Vec<FacetEntry>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &DelzantPolytope) -> Self {
        PolytopeFile {
            name: p.name.clone(),
            dim: p.dim,
            facets: p
                .facets
                .iter()
                .map(|f| FacetEntry { normal: f.normal.clone(), support: fmt_rat(&f.support), label: f.label.clone() })
                .collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<DelzantPolytope> {
        let facets = self
            .facets
            .iter()
            .map(|f| Ok(Facet { normal: f.normal.clone(), support: parse_rat(&f.support)?, label: f.label.clone() }))
            .collect::<Result<Vec<_>>>()?;
        DelzantPolytope::new(&self.name, self.dim, facets)
    }
}

pub fn parse_polytope(json: &str) -> Result<DelzantPolytope> {
    let file: PolytopeFile = serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
    file.to_polytope()
}

pub fn polytope_to_json(p: &DelzantPolytope) -> String {
    serde_json::to_string_pretty(&PolytopeFile::from_polytope(p)).expect("plain data serializes")
}

/// `{"y": {"1": "x1", "2": "x2 / (1 - t^{1})"}}` with 1-based facet keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YTableFile {
    pub y: BTreeMap<String, String>,
}

pub fn parse_ytable(json: &str, nvars: usize, cutoff: &Rat) -> Result<YTable> {
    let file: YTableFile = serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut entries = BTreeMap::new();
    for (k, v) in &file.y {
        let i: usize = k.parse().map_err(|_| Error::Malformed(format!("Y-table key {k:?} is not a facet number")))?;
        if i == 0 || i > nvars {
            return Err(Error::Malformed(format!("Y-table key {i} out of range")));
        }
        entries.insert(i - 1, parse_expr(v, nvars, cutoff)?);
    }
    Ok(YTable { entries })
}

pub fn ytable_json(entries: &[(usize, String)]) -> String {
    let file = YTableFile { y: entries.iter().map(|(i, s)| ((i + 1).to_string(), s.clone())).collect() };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::{int, rat};

    #[test]
    fn polytope_round_trip() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let json = polytope_to_json(&p);
        assert!(json.contains("\"7/20\""));
        let q = parse_polytope(&json).unwrap();
        assert_eq!(q.facets, p.facets);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_polytope("{\"name\": 1}"), Err(Error::Malformed(_))));
        let bad = r#"{"name":"x","dim":1,"facets":[{"normal":[1],"support":"0.5"},{"normal":[-1],"support":"1"}]}"#;
        assert!(parse_polytope(bad).is_err());
    }

    #[test]
    fn ytable_round_trip() {
        let mu = int(2);
        let p = examples::hirzebruch2(&mu).unwrap();
        let json = ytable_json(&examples::hirzebruch2_ytable(&mu));
        let y = parse_ytable(&json, p.num_facets(), &int(5)).unwrap();
        assert_eq!(y.entries.len(), 4);
        assert!(parse_ytable(r#"{"y": {"9": "x1"}}"#, 4, &int(5)).is_err());
    }
}
