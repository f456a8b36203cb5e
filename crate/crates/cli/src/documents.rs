//! Input documents (TOML) and their conversion to library types.

use serde::Deserialize;
use serde_json::{json, Value};

use lgw_core::arith::{parse_rational, PhaseVector};
use lgw_core::graph::{DecoratedGraph, Edge, Tail};
use lgw_core::lg::{parse_polynomial, GroupSpec, LgError, LgSpace, WeightSystem};

use crate::report::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub n: usize,
    pub polynomial: String,
    #[serde(default = "default_group")]
    pub group: GroupField,
    pub weights: Option<WeightsField>,
}

fn default_group() -> GroupField {
    GroupField::Named("aut".into())
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupField {
    Named(String),
    Generators(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsField {
    pub d: u64,
    pub delta: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexField>,
    #[serde(default)]
    pub edges: Vec<EdgeField>,
    #[serde(default)]
    pub tails: Vec<TailField>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexField {
    pub genus: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeField {
    pub tail: usize,
    pub head: usize,
    pub decoration: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailField {
    pub vertex: usize,
    pub decoration: Vec<String>,
}

pub fn parse_space_document(text: &str) -> Result<SpaceDocument, Failure> {
    toml::from_str(text).map_err(|e| Failure::Parse(format!("space document: {e}")))
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument, Failure> {
    toml::from_str(text).map_err(|e| Failure::Parse(format!("graph document: {e}")))
}

pub fn lg_failure(e: LgError) -> Failure {
    match e {
        LgError::Syntax { .. } => Failure::Parse(e.to_string()),
        LgError::Arith(lgw_core::arith::ArithError::CapExceeded { .. }) => Failure::Cap(e.to_string()),
        other => Failure::Semantic(other.to_string()),
    }
}

fn phase_vector(parts: &[String]) -> Result<PhaseVector, Failure> {
    parts
        .iter()
        .map(|p| parse_rational(p).map_err(|e| Failure::Parse(e.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(PhaseVector::from_rationals)
}

impl SpaceDocument {
    pub fn group_spec(&self) -> Result<GroupSpec, Failure> {
        match &self.group {
            GroupField::Named(s) if s == "aut" => Ok(GroupSpec::Aut),
            GroupField::Named(s) if s == "minimal" => Ok(GroupSpec::Minimal),
            GroupField::Named(s) => Err(Failure::Parse(format!(
                "group must be \"aut\", \"minimal\" or a list of phase vectors, found {s:?}"
            ))),
            GroupField::Generators(list) => list
                .iter()
                .map(|g| {
                    let v = PhaseVector::parse(g).map_err(|e| Failure::Parse(e.to_string()))?;
                    if v.dim() != self.n {
                        return Err(Failure::Parse(format!(
                            "generator {g} has {} entries, expected {}",
                            v.dim(),
                            self.n
                        )));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, _>>()
                .map(GroupSpec::Generators),
        }
    }

    pub fn build(&self) -> Result<LgSpace, Failure> {
        let poly = parse_polynomial(&self.polynomial, self.n).map_err(lg_failure)?;
        let spec = self.group_spec()?;
        match &self.weights {
            None => LgSpace::build(poly, &spec).map_err(lg_failure),
            Some(w) => {
                let ws = WeightSystem::new(w.d, w.delta.clone()).map_err(lg_failure)?;
                LgSpace::build_with_weights(poly, ws, &spec).map_err(lg_failure)
            }
        }
    }
}

impl GraphDocument {
    pub fn to_graph(&self) -> Result<DecoratedGraph, Failure> {
        let genera = self.vertices.iter().map(|v| v.genus).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(Edge::new(e.tail, e.head, phase_vector(&e.decoration)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        let tails = self
            .tails
            .iter()
            .map(|t| Ok(Tail::new(t.vertex, phase_vector(&t.decoration)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok(DecoratedGraph::new(genera, edges, tails))
    }
}

pub fn graph_json(g: &DecoratedGraph) -> Value {
    json!({
        "vertices": g.genera.iter().map(|&genus| json!({ "genus": genus })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!({
            "tail": e.tail,
            "head": e.head,
            "decoration": e.decoration.to_strings(),
        })).collect::<Vec<_>>(),
        "tails": g.tails.iter().map(|t| json!({
            "vertex": t.vertex,
            "decoration": t.decoration.to_strings(),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_document_forms() {
        let d = parse_space_document("n = 1\npolynomial = \"x1^3\"\n").unwrap();
        assert!(matches!(d.group_spec(), Ok(GroupSpec::Aut)));
        let d = parse_space_document("n = 2\npolynomial = \"x1^3 + x2^3\"\ngroup = [\"(1/3, 1/3)\"]\n").unwrap();
        assert!(matches!(d.group_spec(), Ok(GroupSpec::Generators(g)) if g.len() == 1));
        let d = parse_space_document("n = 1\npolynomial = \"x1^3\"\ngroup = \"tiny\"\n").unwrap();
        assert!(matches!(d.group_spec(), Err(Failure::Parse(_))));
        assert!(matches!(parse_space_document("n = "), Err(Failure::Parse(_))));
        assert!(matches!(
            parse_space_document("n = 1\npolynomial = \"x\"\ncolour = 1\n"),
            Err(Failure::Parse(_))
        ));
    }

    #[test]
    fn graph_round_trip() {
        let text = r#"
vertices = [{ genus = 0 }, { genus = 1 }]
edges = [{ tail = 0, head = 1, decoration = ["1/3"] }]
tails = [{ vertex = 0, decoration = ["2/3"] }]
"#;
        let g = parse_graph_document(text).unwrap().to_graph().unwrap();
        let v = graph_json(&g);
        assert_eq!(v["edges"][0]["decoration"][0], "1/3");
        assert_eq!(v["tails"][0]["vertex"], 0);
    }
}
