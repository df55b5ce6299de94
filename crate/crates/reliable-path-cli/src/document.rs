//! On-disk formats: the network JSON document, the flow text file, template
//! lists, and DIMACS-style CNF.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use reliable_path::model::{Edge, Network};
use reliable_path::reductions::{CnfFormula, ReductionArtifact, TemplateSet};
use reliable_path::rounding::Flow;

pub const FORMAT_VERSION: u32 = 1;

/// Errors raised while reading any of the text formats.
#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Whether a document's per-edge values are survival or failure
/// probabilities. Failure probabilities are complemented once at ingestion;
/// in memory and on output everything is a reliability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilityConvention {
    Reliability,
    Failure,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub id: String,
    pub from: String,
    pub to: String,
    pub reliability: Vec<f64>,
}

/// The self-describing network document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub format_version: u32,
    pub state_count: usize,
    pub prior: Vec<f64>,
    pub vertices: Vec<String>,
    pub source: String,
    pub sink: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<ProbabilityConvention>,
    pub edges: Vec<EdgeDocument>,
}

impl NetworkDocument {
    pub fn from_network(net: &Network) -> Self {
        NetworkDocument {
            format_version: FORMAT_VERSION,
            state_count: net.state_count,
            prior: net.prior.clone(),
            vertices: net.vertices.clone(),
            source: net.source.clone(),
            sink: net.sink.clone(),
            probabilities: None,
            edges: net
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    reliability: e.reliability.clone(),
                })
                .collect(),
        }
    }

    pub fn into_network(self) -> Network {
        let complement = self.probabilities == Some(ProbabilityConvention::Failure);
        Network {
            state_count: self.state_count,
            prior: self.prior,
            vertices: self.vertices,
            source: self.source,
            sink: self.sink,
            edges: self
                .edges
                .into_iter()
                .map(|e| {
                    let reliability = if complement {
                        e.reliability.iter().map(|&p| 1.0 - p).collect()
                    } else {
                        e.reliability
                    };
                    Edge::new(e.id, e.from, e.to, reliability)
                })
                .collect(),
        }
    }
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let doc: NetworkDocument =
        serde_json::from_str(text).map_err(|e| ParseError(format!("invalid network JSON: {e}")))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(ParseError(format!(
            "unsupported format_version {} (this build reads {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    Ok(doc.into_network())
}

pub fn serialize_network(net: &Network) -> String {
    let doc = NetworkDocument::from_network(net);
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

/// Bit-position/edge mapping emitted alongside generated reduction networks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactDocument {
    pub width: usize,
    pub template_count: usize,
    pub templates: Vec<String>,
    pub bit_to_edges: Vec<(String, String)>,
}

impl ArtifactDocument {
    pub fn from_artifact(ts: &TemplateSet, art: &ReductionArtifact) -> Self {
        ArtifactDocument {
            width: ts.width,
            template_count: art.template_count,
            templates: ts.templates.clone(),
            bit_to_edges: art.bit_to_edges.clone(),
        }
    }
}

pub fn serialize_artifact(doc: &ArtifactDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
    text.push('\n');
    text
}

/// Flow text file: a `network <file>` header naming the network the flow
/// refers to, then one `edge_id value` record per edge. Blank lines and
/// `#` comments are skipped.
pub fn parse_flow(text: &str) -> Result<(String, Flow), ParseError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ParseError("flow file is empty".into()))?;
    let network = header
        .strip_prefix("network ")
        .ok_or_else(|| ParseError(format!("expected `network <file>` header, got `{header}`")))?
        .trim()
        .to_string();
    let mut values = BTreeMap::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (Some(edge), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError(format!(
                "expected `edge_id value`, got `{line}`"
            )));
        };
        let value: f64 = value
            .parse()
            .map_err(|e| ParseError(format!("bad flow value `{value}`: {e}")))?;
        if values.insert(edge.to_string(), value).is_some() {
            return Err(ParseError(format!("edge `{edge}` listed twice")));
        }
    }
    Ok((network, Flow::new(values)))
}

pub fn serialize_flow(network_name: &str, flow: &Flow) -> String {
    let mut text = format!("network {network_name}\n");
    for (edge, value) in &flow.values {
        text.push_str(&format!("{edge} {value}\n"));
    }
    text
}

/// Template list: one template per line; blank lines and `#` comments are
/// skipped. The width is taken from the first template.
pub fn parse_templates(text: &str) -> Result<TemplateSet, ParseError> {
    let templates: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect();
    let width = templates
        .first()
        .map(|t| t.chars().count())
        .ok_or_else(|| ParseError("template file contains no templates".into()))?;
    TemplateSet::new(width, templates).map_err(|e| ParseError(e.to_string()))
}

/// DIMACS-style clause list: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, then one 0-terminated clause per line. Clauses must have exactly
/// three distinct variables.
pub fn parse_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(ParseError(format!("expected `p cnf ...`, got `{line}`")));
            }
            let vars = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| ParseError(format!("bad variable count in `{line}`")))?;
            let count = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| ParseError(format!("bad clause count in `{line}`")))?;
            header = Some((vars, count));
            continue;
        }
        let mut literals = Vec::new();
        for token in line.split_whitespace() {
            let literal: i32 = token
                .parse()
                .map_err(|e| ParseError(format!("bad literal `{token}`: {e}")))?;
            if literal == 0 {
                break;
            }
            literals.push(literal);
        }
        if literals.len() != 3 {
            return Err(ParseError(format!(
                "clause `{line}` has {} literals; exactly 3 required",
                literals.len()
            )));
        }
        clauses.push([literals[0], literals[1], literals[2]]);
    }
    let (variable_count, declared) =
        header.ok_or_else(|| ParseError("missing `p cnf <vars> <clauses>` header".into()))?;
    if clauses.len() != declared {
        return Err(ParseError(format!(
            "header declares {declared} clauses but {} found",
            clauses.len()
        )));
    }
    CnfFormula::new(variable_count, clauses).map_err(|e| ParseError(e.to_string()))
}
