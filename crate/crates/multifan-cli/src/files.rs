//! JSON input formats: fans, polytopes and support levels.

use std::collections::BTreeMap;

use serde::Deserialize;

use multifan::cohomology::XiClass;
use multifan::rat::{parse_rat, Int, Rat};
use multifan::{HRepPolytope, SimplicialMultiFan};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rank: usize,
    pub edges: Vec<EdgeEntry>,
    pub cones: Vec<ConeEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub vector: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeEntry {
    pub edges: Vec<String>,
    #[serde(default = "default_weight")]
    pub weight: i64,
}

fn default_weight() -> i64 {
    1
}

/// Rational values are written as `"p/q"` strings or plain integers.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Text(String),
}

impl RatValue {
    pub fn to_rat(&self) -> Result<Rat, String> {
        match self {
            RatValue::Int(n) => Ok(multifan::rat::rat(*n)),
            RatValue::Text(s) => parse_rat(s).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub rank: usize,
    pub facets: Vec<FacetEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetEntry {
    pub normal: Vec<i64>,
    pub offset: RatValue,
}

/// Support levels keyed by edge id.
pub type XiFile = BTreeMap<String, RatValue>;

/// A fan together with its edge-name table, in file order.
pub struct NamedFan {
    pub fan: SimplicialMultiFan,
    pub edge_names: Vec<String>,
}

impl NamedFan {
    pub fn edge_index(&self, name: &str) -> Result<usize, String> {
        self.edge_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| format!("unknown edge id {name:?}"))
    }

    /// Parse a comma-separated list of edge ids; empty means the base
    /// point.
    pub fn parse_face(&self, spec: &str) -> Result<multifan::Simplex, String> {
        let mut ids = Vec::new();
        for token in spec.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            ids.push(self.edge_index(token)?);
        }
        Ok(multifan::Simplex::new(ids))
    }
}

impl FanFile {
    pub fn build(&self) -> Result<NamedFan, String> {
        let mut names = Vec::new();
        for e in &self.edges {
            if names.contains(&e.id) {
                return Err(format!("duplicate edge id {:?}", e.id));
            }
            names.push(e.id.clone());
        }
        let edges: Vec<Vec<Int>> = self
            .edges
            .iter()
            .map(|e| e.vector.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let mut cones = Vec::new();
        for c in &self.cones {
            let mut ids = Vec::new();
            for name in &c.edges {
                ids.push(
                    names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| format!("cone references unknown edge {name:?}"))?,
                );
            }
            cones.push((ids, c.weight));
        }
        let fan = SimplicialMultiFan::new(self.rank, edges, cones).map_err(|e| e.to_string())?;
        Ok(NamedFan {
            fan,
            edge_names: names,
        })
    }
}

impl PolytopeFile {
    pub fn build(&self) -> Result<HRepPolytope, String> {
        let mut facets = Vec::new();
        for f in &self.facets {
            let normal: Vec<Int> = f.normal.iter().map(|&x| Int::from(x)).collect();
            facets.push((normal, f.offset.to_rat()?));
        }
        HRepPolytope::new(self.rank, facets).map_err(|e| e.to_string())
    }
}

/// Resolve a xi file against a fan's edge table; every edge must be
/// covered and no unknown ids may appear.
pub fn resolve_xi(named: &NamedFan, file: &XiFile) -> Result<XiClass, String> {
    let mut coeffs = vec![None; named.edge_names.len()];
    for (id, value) in file {
        let idx = named.edge_index(id)?;
        coeffs[idx] = Some(value.to_rat()?);
    }
    let mut out = Vec::new();
    for (i, c) in coeffs.into_iter().enumerate() {
        match c {
            Some(c) => out.push(c),
            None => {
                return Err(format!(
                    "xi file misses edge id {:?}",
                    named.edge_names[i]
                ))
            }
        }
    }
    Ok(XiClass::new(out))
}
