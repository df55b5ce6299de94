//! Core data model: networks over a hidden discrete state, paths, and
//! log-domain reliability values.
//!
//! A [`Network`] is a directed acyclic graph in which every edge carries one
//! reliability (probability of *not* failing) per value of a hidden state
//! variable. Failures of distinct edges are independent only conditionally on
//! that state, so a path's marginal reliability is a mixture over states of
//! per-state products.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use crate::error::{Error, Result};

/// Tolerance used when checking that a prior sums to one.
pub const PRIOR_SUM_TOLERANCE: f64 = 1e-9;

/// A log-domain reliability: either a finite nonpositive log-probability or
/// the sentinel for probability zero.
///
/// `Impossible` absorbs addition and compares below every finite value, so
/// maximizations over log-domain path values stay well defined when some
/// paths have probability zero.
#[derive(Debug, Clone, Copy)]
pub enum LogReliability {
    /// log 0; the corresponding probability is exactly zero.
    Impossible,
    /// A finite natural log of a probability, always <= 0.
    Finite(f64),
}

impl LogReliability {
    /// Natural log of a probability, mapping exactly-zero input to
    /// `Impossible`.
    pub fn from_prob(p: f64) -> Self {
        if p == 0.0 {
            LogReliability::Impossible
        } else {
            LogReliability::Finite(p.ln())
        }
    }

    /// Back to a probability; `Impossible` maps to exactly 0.
    pub fn exp(self) -> f64 {
        match self {
            LogReliability::Impossible => 0.0,
            LogReliability::Finite(v) => v.exp(),
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            LogReliability::Impossible => None,
            LogReliability::Finite(v) => Some(v),
        }
    }

    pub fn is_impossible(self) -> bool {
        matches!(self, LogReliability::Impossible)
    }

    /// Multiply by a nonnegative weight, with the convention 0 * log 0 = 0:
    /// a zero weight yields `Finite(0.0)` even on `Impossible`.
    pub fn scale(self, weight: f64) -> Self {
        if weight == 0.0 {
            return LogReliability::Finite(0.0);
        }
        match self {
            LogReliability::Impossible => LogReliability::Impossible,
            LogReliability::Finite(v) => LogReliability::Finite(weight * v),
        }
    }

    /// `self <= other + tol`, treating `Impossible` as minus infinity.
    pub fn le_with_tol(self, other: LogReliability, tol: f64) -> bool {
        match (self, other) {
            (LogReliability::Impossible, _) => true,
            (LogReliability::Finite(_), LogReliability::Impossible) => false,
            (LogReliability::Finite(a), LogReliability::Finite(b)) => a <= b + tol,
        }
    }
}

impl Add for LogReliability {
    type Output = LogReliability;

    fn add(self, rhs: LogReliability) -> LogReliability {
        match (self, rhs) {
            (LogReliability::Finite(a), LogReliability::Finite(b)) => LogReliability::Finite(a + b),
            _ => LogReliability::Impossible,
        }
    }
}

impl Sum for LogReliability {
    fn sum<I: Iterator<Item = LogReliability>>(iter: I) -> LogReliability {
        iter.fold(LogReliability::Finite(0.0), Add::add)
    }
}

impl PartialEq for LogReliability {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LogReliability {}

impl PartialOrd for LogReliability {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogReliability {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogReliability::Impossible, LogReliability::Impossible) => Ordering::Equal,
            (LogReliability::Impossible, LogReliability::Finite(_)) => Ordering::Less,
            (LogReliability::Finite(_), LogReliability::Impossible) => Ordering::Greater,
            (LogReliability::Finite(a), LogReliability::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for LogReliability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogReliability::Impossible => write!(f, "impossible"),
            LogReliability::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A directed edge with one reliability per hidden-state value.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
    /// Entry `k` is the probability the edge has not failed given state `k`.
    pub reliability: Vec<f64>,
}

impl Edge {
    pub fn new(
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        reliability: Vec<f64>,
    ) -> Self {
        Edge {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            reliability,
        }
    }
}

/// A directed acyclic network with hidden-state-conditioned edge
/// reliabilities.
///
/// Construction does not reject invalid data; [`Network::validate`] reports
/// every violated invariant instead, so that ill-formed instances can be
/// loaded, inspected, and diagnosed. All solver entry points assume a
/// network whose report is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    /// Number of values the hidden state takes (d >= 1).
    pub state_count: usize,
    /// Prior over hidden states; must sum to one.
    pub prior: Vec<f64>,
    /// Vertex identifiers; list position breaks ties in topological sorts.
    pub vertices: Vec<String>,
    pub source: String,
    pub sink: String,
    pub edges: Vec<Edge>,
}

/// A source-to-sink path given as the sequence of edge identifiers it uses.
/// Edge-based so parallel edges stay distinguishable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub edge_ids: Vec<String>,
}

impl Path {
    pub fn new<I, S>(edge_ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Path {
            edge_ids: edge_ids.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.edge_ids.join(","))
    }
}

/// One violated network invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `state_count` is zero.
    NoStates,
    /// Prior length differs from `state_count`.
    PriorLength { expected: usize, actual: usize },
    /// A prior entry is outside [0, 1].
    PriorRange { state: usize, value: f64 },
    /// The prior does not sum to one within tolerance.
    PriorSum { sum: f64 },
    /// A vertex identifier appears more than once.
    DuplicateVertex { vertex: String },
    /// An edge identifier appears more than once.
    DuplicateEdgeId { edge: String },
    /// An edge endpoint is not a listed vertex.
    DanglingEndpoint { edge: String, vertex: String },
    /// An edge reliability vector has the wrong length.
    ReliabilityLength {
        edge: String,
        expected: usize,
        actual: usize,
    },
    /// A reliability entry is outside [0, 1] (checked exactly).
    ReliabilityRange { edge: String, state: usize, value: f64 },
    /// The source vertex is missing from the vertex list.
    MissingSource { vertex: String },
    /// The sink vertex is missing from the vertex list.
    MissingSink { vertex: String },
    /// Source and sink coincide.
    SourceIsSink,
    /// The directed graph contains a cycle.
    Cycle,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "state_count must be positive"),
            Violation::PriorLength { expected, actual } => {
                write!(f, "prior has {actual} entries, expected {expected}")
            }
            Violation::PriorRange { state, value } => {
                write!(f, "prior entry {state} is {value}, outside [0, 1]")
            }
            Violation::PriorSum { sum } => write!(f, "prior sums to {sum}, not 1"),
            Violation::DuplicateVertex { vertex } => write!(f, "duplicate vertex `{vertex}`"),
            Violation::DuplicateEdgeId { edge } => write!(f, "duplicate edge id `{edge}`"),
            Violation::DanglingEndpoint { edge, vertex } => {
                write!(f, "edge `{edge}` references unknown vertex `{vertex}`")
            }
            Violation::ReliabilityLength {
                edge,
                expected,
                actual,
            } => write!(
                f,
                "edge `{edge}` has {actual} reliability entries, expected {expected}"
            ),
            Violation::ReliabilityRange { edge, state, value } => write!(
                f,
                "edge `{edge}` reliability for state {state} is {value}, outside [0, 1]"
            ),
            Violation::MissingSource { vertex } => write!(f, "source `{vertex}` is not a vertex"),
            Violation::MissingSink { vertex } => write!(f, "sink `{vertex}` is not a vertex"),
            Violation::SourceIsSink => write!(f, "source and sink must be distinct"),
            Violation::Cycle => write!(f, "graph contains a cycle"),
        }
    }
}

/// The outcome of validating a network: empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Network {
    pub fn new(
        state_count: usize,
        prior: Vec<f64>,
        vertices: Vec<impl Into<String>>,
        source: impl Into<String>,
        sink: impl Into<String>,
        edges: Vec<Edge>,
    ) -> Self {
        Network {
            state_count,
            prior,
            vertices: vertices.into_iter().map(Into::into).collect(),
            source: source.into(),
            sink: sink.into(),
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Checks every structural and probabilistic invariant, returning all
    /// violations found. Violations are data, not failures.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        if self.state_count == 0 {
            violations.push(Violation::NoStates);
        }
        if self.prior.len() != self.state_count {
            violations.push(Violation::PriorLength {
                expected: self.state_count,
                actual: self.prior.len(),
            });
        }
        for (k, &p) in self.prior.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                violations.push(Violation::PriorRange { state: k, value: p });
            }
        }
        let sum: f64 = self.prior.iter().sum();
        if (sum - 1.0).abs() > PRIOR_SUM_TOLERANCE {
            violations.push(Violation::PriorSum { sum });
        }

        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                violations.push(Violation::DuplicateVertex { vertex: v.clone() });
            }
        }

        if !seen.contains(self.source.as_str()) {
            violations.push(Violation::MissingSource {
                vertex: self.source.clone(),
            });
        }
        if !seen.contains(self.sink.as_str()) {
            violations.push(Violation::MissingSink {
                vertex: self.sink.clone(),
            });
        }
        if self.source == self.sink {
            violations.push(Violation::SourceIsSink);
        }

        let mut edge_ids = HashSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                violations.push(Violation::DuplicateEdgeId { edge: e.id.clone() });
            }
            for endpoint in [&e.from, &e.to] {
                if !seen.contains(endpoint.as_str()) {
                    violations.push(Violation::DanglingEndpoint {
                        edge: e.id.clone(),
                        vertex: endpoint.clone(),
                    });
                }
            }
            if e.reliability.len() != self.state_count {
                violations.push(Violation::ReliabilityLength {
                    edge: e.id.clone(),
                    expected: self.state_count,
                    actual: e.reliability.len(),
                });
            }
            for (k, &r) in e.reliability.iter().enumerate() {
                if !(0.0..=1.0).contains(&r) || r.is_nan() {
                    violations.push(Violation::ReliabilityRange {
                        edge: e.id.clone(),
                        state: k,
                        value: r,
                    });
                }
            }
        }

        if self.has_cycle() {
            violations.push(Violation::Cycle);
        }

        ValidationReport { violations }
    }

    fn has_cycle(&self) -> bool {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (Some(&u), Some(&v)) = (index.get(e.from.as_str()), index.get(e.to.as_str()))
            else {
                continue; // dangling endpoints are reported separately
            };
            out[u].push(v);
            indegree[v] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut placed = 0usize;
        while let Some(u) = ready.pop() {
            placed += 1;
            for &v in &out[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.push(v);
                }
            }
        }
        placed != n
    }

    /// Topological order of all vertices with the source first; among the
    /// vertices ready at each step, the one earliest in the vertex list is
    /// placed next.
    ///
    /// Fails on a cyclic graph, and on an acyclic graph whose source has an
    /// incoming edge (no order can then start at the source).
    pub fn topo_order(&self) -> Result<Vec<String>> {
        if self.has_cycle() {
            return Err(Error::Cycle);
        }
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let source = *index
            .get(self.source.as_str())
            .ok_or_else(|| Error::UnknownVertex(self.source.clone()))?;
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (Some(&u), Some(&v)) = (index.get(e.from.as_str()), index.get(e.to.as_str()))
            else {
                return Err(Error::UnknownVertex(e.from.clone()));
            };
            out[u].push(v);
            indegree[v] += 1;
        }
        if indegree[source] != 0 {
            return Err(Error::NoOrderFromSource(self.source.clone()));
        }

        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        order.push(source);
        placed[source] = true;
        for &v in &out[source] {
            indegree[v] -= 1;
        }
        loop {
            // smallest vertex-list index among unplaced, zero-indegree vertices
            let next = (0..n).find(|&v| !placed[v] && indegree[v] == 0);
            let Some(u) = next else { break };
            order.push(u);
            placed[u] = true;
            for &v in &out[u] {
                indegree[v] -= 1;
            }
        }
        debug_assert_eq!(order.len(), n, "acyclic graph must order completely");
        Ok(order.into_iter().map(|i| self.vertices[i].clone()).collect())
    }

    /// Verifies that `path` is a well-formed source-to-sink path: every edge
    /// exists, consecutive edges chain head-to-tail, the first edge leaves
    /// the source, the last enters the sink, and no vertex repeats.
    pub fn check_path(&self, path: &Path) -> Result<()> {
        if path.is_empty() {
            return Err(Error::InvalidPath("path has no edges".into()));
        }
        let mut visited = HashSet::new();
        let mut current = self.source.as_str();
        visited.insert(current);
        for id in &path.edge_ids {
            let edge = self
                .edge(id)
                .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
            if edge.from != current {
                return Err(Error::InvalidPath(format!(
                    "edge `{id}` leaves `{}` but the path is at `{current}`",
                    edge.from
                )));
            }
            current = edge.to.as_str();
            if !visited.insert(current) {
                return Err(Error::InvalidPath(format!(
                    "vertex `{current}` repeats on the path"
                )));
            }
        }
        if current != self.sink {
            return Err(Error::InvalidPath(format!(
                "path ends at `{current}`, not at sink `{}`",
                self.sink
            )));
        }
        Ok(())
    }

    /// Probability the whole path survives given hidden state `state`
    /// (0-based): the product of per-edge reliabilities for that state.
    pub fn conditional_path_reliability(&self, path: &Path, state: usize) -> Result<f64> {
        self.check_path(path)?;
        if state >= self.state_count {
            return Err(Error::BadParameter(format!(
                "state {state} out of range (d = {})",
                self.state_count
            )));
        }
        let mut product = 1.0;
        for id in &path.edge_ids {
            let edge = self.edge(id).expect("checked above");
            product *= edge.reliability[state];
        }
        Ok(product)
    }

    /// Marginal path reliability: the prior-weighted mixture of the
    /// conditional reliabilities.
    pub fn path_reliability(&self, path: &Path) -> Result<f64> {
        self.check_path(path)?;
        let mut conditionals = vec![1.0; self.state_count];
        for id in &path.edge_ids {
            let edge = self.edge(id).expect("checked above");
            for (c, &r) in conditionals.iter_mut().zip(&edge.reliability) {
                *c *= r;
            }
        }
        Ok(mixture(&self.prior, &conditionals))
    }

    /// Natural log of one edge's conditional reliability, with reliability
    /// zero mapped to [`LogReliability::Impossible`].
    pub fn edge_log_reliability(&self, edge_id: &str, state: usize) -> Result<LogReliability> {
        let edge = self
            .edge(edge_id)
            .ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
        if state >= self.state_count {
            return Err(Error::BadParameter(format!(
                "state {state} out of range (d = {})",
                self.state_count
            )));
        }
        Ok(LogReliability::from_prob(edge.reliability[state]))
    }
}

/// Prior-weighted mixture of per-state values, summed in state order.
pub(crate) fn mixture(prior: &[f64], conditionals: &[f64]) -> f64 {
    prior
        .iter()
        .zip(conditionals)
        .map(|(&p, &c)| p * c)
        .sum()
}

/// Validates a network; provided as a free function to mirror the method.
pub fn validate_network(net: &Network) -> ValidationReport {
    net.validate()
}

/// Precomputed lookups shared by the solver modules: vertex/edge indices and
/// adjacency lists. Edge order inside each adjacency list follows the
/// network's edge-list order; callers re-sort when they need another order.
#[derive(Debug)]
pub(crate) struct NetworkIndex<'a> {
    pub net: &'a Network,
    pub vertex_of: HashMap<&'a str, usize>,
    pub out_edges: Vec<Vec<usize>>,
    pub in_edges: Vec<Vec<usize>>,
}

impl<'a> NetworkIndex<'a> {
    pub fn new(net: &'a Network) -> Result<Self> {
        let vertex_of: HashMap<&str, usize> = net
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let n = net.vertices.len();
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in net.edges.iter().enumerate() {
            let u = *vertex_of
                .get(e.from.as_str())
                .ok_or_else(|| Error::UnknownVertex(e.from.clone()))?;
            let v = *vertex_of
                .get(e.to.as_str())
                .ok_or_else(|| Error::UnknownVertex(e.to.clone()))?;
            out_edges[u].push(i);
            in_edges[v].push(i);
        }
        Ok(NetworkIndex {
            net,
            vertex_of,
            out_edges,
            in_edges,
        })
    }

    pub fn source(&self) -> usize {
        self.vertex_of[self.net.source.as_str()]
    }

    pub fn sink(&self) -> usize {
        self.vertex_of[self.net.sink.as_str()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{diamond_d1, single_edge_net};

    #[test]
    fn minimal_valid_network_has_empty_report() {
        let net = single_edge_net(vec![0.5]);
        assert!(net.validate().is_valid());
    }

    #[test]
    fn prior_sum_violation_is_reported() {
        let mut net = single_edge_net(vec![0.5]);
        net.state_count = 2;
        net.prior = vec![0.6, 0.6];
        net.edges[0].reliability = vec![0.5, 0.5];
        let report = net.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PriorSum { .. })));
    }

    #[test]
    fn two_cycle_is_reported() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a"],
            "s",
            "a",
            vec![
                Edge::new("e1", "s", "a", vec![0.5]),
                Edge::new("e2", "a", "s", vec![0.5]),
            ],
        );
        let report = net.validate();
        assert!(report.violations.contains(&Violation::Cycle));
    }

    #[test]
    fn chain_topo_order_is_unique() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.5]),
                Edge::new("e2", "a", "t", vec![0.5]),
            ],
        );
        assert_eq!(net.topo_order().unwrap(), vec!["s", "a", "t"]);
    }

    #[test]
    fn diamond_topo_order_breaks_ties_by_vertex_list() {
        let net = diamond_d1(0.9, 1.0, 0.5, 1.0);
        assert_eq!(net.topo_order().unwrap(), vec!["s", "a", "b", "t"]);
    }

    #[test]
    fn reversed_edge_blocks_order_from_source() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "t"],
            "s",
            "t",
            vec![Edge::new("e1", "t", "s", vec![0.5])],
        );
        assert!(matches!(
            net.topo_order(),
            Err(Error::NoOrderFromSource(_))
        ));
    }

    #[test]
    fn cycle_beats_source_check_in_topo_order() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.5]),
                Edge::new("e2", "a", "s", vec![0.5]),
                Edge::new("e3", "a", "t", vec![0.5]),
            ],
        );
        assert!(matches!(net.topo_order(), Err(Error::Cycle)));
    }

    #[test]
    fn conditional_reliability_multiplies_edge_entries() {
        let net = single_edge_net(vec![0.5]);
        let path = Path::new(["e1"]);
        assert_eq!(net.conditional_path_reliability(&path, 0).unwrap(), 0.5);

        let chain = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.8]),
                Edge::new("e2", "a", "t", vec![0.5]),
            ],
        );
        let path = Path::new(["e1", "e2"]);
        let got = chain.conditional_path_reliability(&path, 0).unwrap();
        assert!((got - 0.4).abs() < 1e-15);
    }

    #[test]
    fn zero_reliability_annihilates_conditional() {
        let chain = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.8]),
                Edge::new("e2", "a", "t", vec![0.0]),
            ],
        );
        let path = Path::new(["e1", "e2"]);
        assert_eq!(chain.conditional_path_reliability(&path, 0).unwrap(), 0.0);
    }

    #[test]
    fn path_reliability_reduces_to_product_when_d_is_one() {
        let chain = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.8]),
                Edge::new("e2", "a", "t", vec![0.5]),
            ],
        );
        let got = chain.path_reliability(&Path::new(["e1", "e2"])).unwrap();
        assert!((got - 0.4).abs() < 1e-15);
    }

    #[test]
    fn path_reliability_mixes_states() {
        let net = Network::new(
            2,
            vec![0.5, 0.5],
            vec!["s", "t"],
            "s",
            "t",
            vec![Edge::new("e1", "s", "t", vec![1.0, 0.0])],
        );
        assert_eq!(net.path_reliability(&Path::new(["e1"])).unwrap(), 0.5);
    }

    #[test]
    fn path_reliability_matches_hand_mixture() {
        // 0.5 * (0.5 * 1.0) + 0.5 * (0.25 * 1.0) = 0.375
        let net = Network::new(
            2,
            vec![0.5, 0.5],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.5, 0.25]),
                Edge::new("e2", "a", "t", vec![1.0, 1.0]),
            ],
        );
        let got = net.path_reliability(&Path::new(["e1", "e2"])).unwrap();
        assert_eq!(got, 0.375);
    }

    #[test]
    fn edge_log_reliability_handles_one_zero_and_grid_values() {
        let net = Network::new(
            3,
            vec![0.5, 0.25, 0.25],
            vec!["s", "t"],
            "s",
            "t",
            vec![Edge::new("e1", "s", "t", vec![1.0, 0.0, (-2.0f64).exp()])],
        );
        assert_eq!(
            net.edge_log_reliability("e1", 0).unwrap(),
            LogReliability::Finite(0.0)
        );
        assert!(net.edge_log_reliability("e1", 1).unwrap().is_impossible());
        let v = net.edge_log_reliability("e1", 2).unwrap().value().unwrap();
        assert!((v - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn unknown_edge_is_an_input_error() {
        let net = single_edge_net(vec![0.5]);
        assert!(matches!(
            net.edge_log_reliability("missing", 0),
            Err(Error::UnknownEdge(_))
        ));
        assert!(matches!(
            net.path_reliability(&Path::new(["missing"])),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn broken_chain_is_an_input_error() {
        let net = diamond_d1(0.9, 1.0, 0.5, 1.0);
        // e_at does not start at the source
        assert!(matches!(
            net.path_reliability(&Path::new(["e_at"])),
            Err(Error::InvalidPath(_))
        ));
        // two upper edges in the wrong order
        assert!(matches!(
            net.check_path(&Path::new(["e_at", "e_sa"])),
            Err(Error::InvalidPath(_))
        ));
    }

    #[test]
    fn path_reliability_is_invariant_under_relabeling() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let relabeled = Network::new(
            net.state_count,
            net.prior.clone(),
            net.vertices.iter().map(|v| format!("x_{v}")).collect::<Vec<_>>(),
            format!("x_{}", net.source),
            format!("x_{}", net.sink),
            net.edges
                .iter()
                .map(|e| {
                    Edge::new(
                        format!("y_{}", e.id),
                        format!("x_{}", e.from),
                        format!("x_{}", e.to),
                        e.reliability.clone(),
                    )
                })
                .collect(),
        );
        let p = Path::new(["e_sa", "e_at"]);
        let q = Path::new(["y_e_sa", "y_e_at"]);
        assert_eq!(
            net.path_reliability(&p).unwrap(),
            relabeled.path_reliability(&q).unwrap()
        );
    }

    #[test]
    fn log_reliability_ordering_and_absorption() {
        use LogReliability::*;
        assert!(Impossible < Finite(-100.0));
        assert_eq!(Impossible + Finite(-1.0), Impossible);
        assert_eq!(Finite(-1.0) + Finite(-2.0), Finite(-3.0));
        assert_eq!(Impossible.exp(), 0.0);
        assert_eq!(Impossible.scale(0.0), Finite(0.0));
        assert_eq!(Impossible.scale(0.5), Impossible);
        assert_eq!(Finite(-4.0).scale(0.5), Finite(-2.0));
    }

    #[test]
    fn exp_of_summed_logs_matches_conditional_product() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let path = Path::new(["e_sa", "e_at"]);
        let summed: LogReliability = path
            .edge_ids
            .iter()
            .map(|id| net.edge_log_reliability(id, 0).unwrap())
            .sum();
        let direct = net.conditional_path_reliability(&path, 0).unwrap();
        assert!((summed.exp() - direct).abs() < 1e-9);
    }

    #[test]
    fn appending_an_edge_never_increases_conditional_reliability() {
        let chain = Network::new(
            2,
            vec![0.5, 0.5],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![
                Edge::new("e1", "s", "a", vec![0.8, 0.9]),
                Edge::new("e2", "a", "t", vec![0.5, 1.0]),
            ],
        );
        // compare prefix-product against full-product per state
        for k in 0..2 {
            let prefix = chain.edges[0].reliability[k];
            let full = chain
                .conditional_path_reliability(&Path::new(["e1", "e2"]), k)
                .unwrap();
            assert!(full <= prefix);
        }
    }

    #[test]
    fn mixture_reliability_lies_between_conditional_extremes() {
        let net = Network::new(
            2,
            vec![0.3, 0.7],
            vec!["s", "t"],
            "s",
            "t",
            vec![Edge::new("e1", "s", "t", vec![0.9, 0.2])],
        );
        let path = Path::new(["e1"]);
        let c0 = net.conditional_path_reliability(&path, 0).unwrap();
        let c1 = net.conditional_path_reliability(&path, 1).unwrap();
        let mixed = net.path_reliability(&path).unwrap();
        assert!(mixed >= c0.min(c1) && mixed <= c0.max(c1));
    }
}
