//! Fractional edge flows and randomized rounding.
//!
//! The relaxation of the path integer program replaces the 0/1 edge
//! indicators with values in [0, 1] under unit source-to-sink conservation.
//! Any feasible flow decomposes greedily into a convex combination of paths;
//! sampling a path from that combination gives, in expectation, at least the
//! relaxed objective (Jensen's inequality on the convex exp), so a flow that
//! is optimal for the relaxation rounds to an optimal path. The convex
//! maximization itself is out of scope here: flows arrive from files, from
//! [`mix_paths`], or from external tools.

use std::collections::BTreeMap;
use std::fmt;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{LogReliability, Network, NetworkIndex, Path};

/// Tolerance for conservation, range, and marginal-recovery checks.
pub const FLOW_TOLERANCE: f64 = 1e-9;

/// A fractional edge flow; edges absent from the map carry zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Flow {
    pub values: BTreeMap<String, f64>,
}

impl Flow {
    pub fn new(values: BTreeMap<String, f64>) -> Self {
        Flow { values }
    }

    pub fn value(&self, edge_id: &str) -> f64 {
        self.values.get(edge_id).copied().unwrap_or(0.0)
    }
}

/// One violated flow constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum FlowViolation {
    /// Net out-flow minus in-flow differs from the required value.
    Conservation {
        vertex: String,
        required: f64,
        actual: f64,
    },
    /// An edge value lies outside [0, 1].
    Range { edge: String, value: f64 },
    /// The flow names an edge the network does not have.
    UnknownEdge { edge: String },
}

impl fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowViolation::Conservation {
                vertex,
                required,
                actual,
            } => write!(
                f,
                "conservation at `{vertex}`: net out-flow {actual}, required {required}"
            ),
            FlowViolation::Range { edge, value } => {
                write!(f, "edge `{edge}` carries {value}, outside [0, 1]")
            }
            FlowViolation::UnknownEdge { edge } => write!(f, "unknown edge `{edge}`"),
        }
    }
}

/// Flow validation outcome; empty means feasible.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlowReport {
    pub violations: Vec<FlowViolation>,
}

impl FlowReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks unit conservation at every vertex and the [0, 1] range on every
/// edge, within [`FLOW_TOLERANCE`]. Violations are data, not failures.
pub fn validate_flow(net: &Network, flow: &Flow) -> FlowReport {
    let mut violations = Vec::new();
    for (edge_id, &value) in &flow.values {
        if net.edge(edge_id).is_none() {
            violations.push(FlowViolation::UnknownEdge {
                edge: edge_id.clone(),
            });
        }
        if !(-FLOW_TOLERANCE..=1.0 + FLOW_TOLERANCE).contains(&value) || value.is_nan() {
            violations.push(FlowViolation::Range {
                edge: edge_id.clone(),
                value,
            });
        }
    }
    for vertex in &net.vertices {
        let out: f64 = net
            .edges
            .iter()
            .filter(|e| &e.from == vertex)
            .map(|e| flow.value(&e.id))
            .sum();
        let inflow: f64 = net
            .edges
            .iter()
            .filter(|e| &e.to == vertex)
            .map(|e| flow.value(&e.id))
            .sum();
        let required = if *vertex == net.source {
            1.0
        } else if *vertex == net.sink {
            -1.0
        } else {
            0.0
        };
        let actual = out - inflow;
        if (actual - required).abs() > FLOW_TOLERANCE {
            violations.push(FlowViolation::Conservation {
                vertex: vertex.clone(),
                required,
                actual,
            });
        }
    }
    FlowReport { violations }
}

fn require_feasible(net: &Network, flow: &Flow) -> Result<()> {
    let report = validate_flow(net, flow);
    if report.is_feasible() {
        Ok(())
    } else {
        let listed = report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::InfeasibleFlow(listed))
    }
}

/// The relaxed mixture objective
/// `sum_k prior[k] * exp(sum_e log r_e(k) * x_e)`. An edge of reliability
/// zero under some state zeroes that state's term whenever it carries
/// positive flow.
pub fn relaxed_objective(net: &Network, flow: &Flow) -> Result<f64> {
    require_feasible(net, flow)?;
    let mut total = 0.0;
    for (state, &weight) in net.prior.iter().enumerate() {
        let mut exponent = LogReliability::Finite(0.0);
        for edge in &net.edges {
            let x = flow.value(&edge.id);
            if x > 0.0 {
                exponent = exponent + LogReliability::from_prob(edge.reliability[state]).scale(x);
            }
        }
        total += weight * exponent.exp();
    }
    Ok(total)
}

/// A convex combination of source-to-sink paths with positive weights
/// summing to one. Zero-weight entries are dropped at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PathDistribution {
    entries: Vec<(Path, f64)>,
}

impl PathDistribution {
    pub fn new(entries: Vec<(Path, f64)>) -> Result<Self> {
        let entries: Vec<(Path, f64)> = entries.into_iter().filter(|(_, w)| *w > 0.0).collect();
        let total: f64 = entries.iter().map(|(_, w)| w).sum();
        if entries.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if (total - 1.0).abs() > FLOW_TOLERANCE {
            return Err(Error::BadParameter(format!(
                "path weights sum to {total}, not 1"
            )));
        }
        Ok(PathDistribution { entries })
    }

    pub fn entries(&self) -> &[(Path, f64)] {
        &self.entries
    }

    /// Per-edge weighted membership sums: the flow this distribution mixes
    /// back to.
    pub fn edge_marginals(&self) -> BTreeMap<String, f64> {
        let mut marginals = BTreeMap::new();
        for (path, weight) in &self.entries {
            for id in &path.edge_ids {
                *marginals.entry(id.clone()).or_insert(0.0) += weight;
            }
        }
        marginals
    }
}

/// Greedy path decomposition: repeatedly walk from the source along the
/// positive-residual out-edge with the largest residual (ties to the
/// lexicographically smallest edge id), subtract the path's minimum residual
/// from its edges, and record the path with that weight. Stops when the
/// residual out-flow at the source drops below tolerance; final weights are
/// renormalized to sum to one.
pub fn decompose_flow(net: &Network, flow: &Flow) -> Result<PathDistribution> {
    require_feasible(net, flow)?;
    let index = NetworkIndex::new(net)?;
    let mut residual: Vec<f64> = net.edges.iter().map(|e| flow.value(&e.id)).collect();
    let mut entries: Vec<(Path, f64)> = Vec::new();

    loop {
        let source_residual: f64 = index.out_edges[index.source()]
            .iter()
            .map(|&e| residual[e])
            .sum();
        if source_residual < FLOW_TOLERANCE {
            break;
        }
        if entries.len() > net.edges.len() {
            return Err(Error::Decomposition(format!(
                "extracted more than {} paths; residual flow is numerically degenerate",
                net.edges.len()
            )));
        }

        let mut edges = Vec::new();
        let mut vertex = index.source();
        while vertex != index.sink() {
            let next = index.out_edges[vertex]
                .iter()
                .copied()
                .filter(|&e| residual[e] > FLOW_TOLERANCE)
                .max_by(|&a, &b| {
                    residual[a]
                        .total_cmp(&residual[b])
                        // on residual ties prefer the smaller edge id
                        .then_with(|| net.edges[b].id.cmp(&net.edges[a].id))
                });
            let Some(e) = next else {
                return Err(Error::Decomposition(format!(
                    "no positive-residual edge leaves `{}` while residual flow remains",
                    net.vertices[vertex]
                )));
            };
            edges.push(e);
            vertex = index.vertex_of[net.edges[e].to.as_str()];
        }

        let weight = edges
            .iter()
            .map(|&e| residual[e])
            .fold(f64::INFINITY, f64::min);
        for &e in &edges {
            residual[e] -= weight;
        }
        let path = Path {
            edge_ids: edges.iter().map(|&e| net.edges[e].id.clone()).collect(),
        };
        entries.push((path, weight));
    }

    let total: f64 = entries.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return Err(Error::Decomposition(
            "no paths extracted from the flow".into(),
        ));
    }
    for (_, w) in &mut entries {
        *w /= total;
    }
    PathDistribution::new(entries)
}

/// Builds the feasible flow carried by a convex combination of paths:
/// each edge's value is the summed weight of the paths containing it.
pub fn mix_paths(net: &Network, paths: &[Path], weights: &[f64]) -> Result<Flow> {
    if paths.len() != weights.len() {
        return Err(Error::BadParameter(format!(
            "{} paths but {} weights",
            paths.len(),
            weights.len()
        )));
    }
    if paths.is_empty() {
        return Err(Error::BadParameter("no paths to mix".into()));
    }
    for &w in weights {
        if !(w > 0.0) {
            return Err(Error::BadParameter(format!(
                "weights must be positive, got {w}"
            )));
        }
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > FLOW_TOLERANCE {
        return Err(Error::BadParameter(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let mut values: BTreeMap<String, f64> = BTreeMap::new();
    for (path, &weight) in paths.iter().zip(weights) {
        net.check_path(path)?;
        for id in &path.edge_ids {
            *values.entry(id.clone()).or_insert(0.0) += weight;
        }
    }
    Ok(Flow { values })
}

/// Draws one path with probability equal to its weight, by inverse CDF over
/// the entries in stored order. All randomness comes from `seed`, so equal
/// seeds give equal paths on every platform.
pub fn sample_path(dist: &PathDistribution, seed: u64) -> Result<Path> {
    let entries = dist.entries();
    if entries.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    for (path, weight) in entries {
        cumulative += weight;
        if u < cumulative {
            return Ok(path.clone());
        }
    }
    Ok(entries.last().expect("nonempty").0.clone())
}

/// Both sides of the rounding inequality for a feasible flow.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingCertificate {
    /// `sum_i weight_i * reliability(path_i)` over the decomposition: the
    /// expected objective of a sampled path.
    pub expected_path_objective: f64,
    /// The relaxed mixture objective of the flow itself.
    pub relaxed: f64,
}

impl RoundingCertificate {
    /// The Jensen direction: a sampled path is at least as good in
    /// expectation as the fractional flow.
    pub fn jensen_holds(&self, tol: f64) -> bool {
        self.expected_path_objective >= self.relaxed - tol
    }
}

/// Decomposes the flow and compares the expected sampled-path reliability
/// with the relaxed objective. For a flow that is optimal for the
/// relaxation, both sides bound OPT from above and below respectively, which
/// forces every decomposed path to be optimal; for arbitrary feasible flows
/// only the Jensen direction is asserted.
pub fn rounding_certificate(net: &Network, flow: &Flow) -> Result<RoundingCertificate> {
    let dist = decompose_flow(net, flow)?;
    let mut expected = 0.0;
    for (path, weight) in dist.entries() {
        expected += weight * net.path_reliability(path)?;
    }
    Ok(RoundingCertificate {
        expected_path_objective: expected,
        relaxed: relaxed_objective(net, flow)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Edge;
    use crate::oracle::{brute_force_best, enumerate_paths};
    use crate::test_util::{diamond_d1, random_network};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn disjoint_pair() -> Network {
        // two disjoint d = 1 chains with reliabilities e^-2 and e^-4
        Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "b", "t"],
            "s",
            "t",
            vec![
                Edge::new("e_sa", "s", "a", vec![(-1.0f64).exp()]),
                Edge::new("e_at", "a", "t", vec![(-1.0f64).exp()]),
                Edge::new("e_sb", "s", "b", vec![(-2.0f64).exp()]),
                Edge::new("e_bt", "b", "t", vec![(-2.0f64).exp()]),
            ],
        )
    }

    fn flow_of(pairs: &[(&str, f64)]) -> Flow {
        Flow::new(
            pairs
                .iter()
                .map(|(id, v)| (id.to_string(), *v))
                .collect(),
        )
    }

    #[test]
    fn integral_flow_objective_equals_path_reliability() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let flow = flow_of(&[("e_sa", 1.0), ("e_at", 1.0)]);
        let relaxed = relaxed_objective(&net, &flow).unwrap();
        let direct = net.path_reliability(&Path::new(["e_sa", "e_at"])).unwrap();
        assert!((relaxed - direct).abs() < 1e-12);
    }

    #[test]
    fn all_ones_flow_has_objective_one() {
        let net = diamond_d1(1.0, 1.0, 1.0, 1.0);
        let flow = flow_of(&[("e_sa", 0.5), ("e_at", 0.5), ("e_sb", 0.5), ("e_bt", 0.5)]);
        assert!((relaxed_objective(&net, &flow).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_flow_matches_hand_computed_exponent() {
        let net = disjoint_pair();
        let flow = flow_of(&[("e_sa", 0.5), ("e_at", 0.5), ("e_sb", 0.5), ("e_bt", 0.5)]);
        let relaxed = relaxed_objective(&net, &flow).unwrap();
        // exp(0.5 * -2 + 0.5 * -4) = e^-3
        assert!((relaxed - (-3.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn validate_flow_reports_conservation_and_range() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);

        let good = flow_of(&[("e_sa", 1.0), ("e_at", 1.0)]);
        assert!(validate_flow(&net, &good).is_feasible());

        let half = flow_of(&[("e_sa", 0.5), ("e_at", 0.5)]);
        let report = validate_flow(&net, &half);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            FlowViolation::Conservation { vertex, .. } if vertex == "s"
        )));

        let out_of_range = flow_of(&[("e_sa", 1.2), ("e_at", 1.2)]);
        let report = validate_flow(&net, &out_of_range);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, FlowViolation::Range { .. })));
    }

    #[test]
    fn integral_flow_decomposes_to_a_single_path() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let flow = flow_of(&[("e_sa", 1.0), ("e_at", 1.0)]);
        let dist = decompose_flow(&net, &flow).unwrap();
        assert_eq!(
            dist.entries(),
            &[(Path::new(["e_sa", "e_at"]), 1.0)]
        );
    }

    #[test]
    fn symmetric_split_decomposes_evenly() {
        let net = disjoint_pair();
        let flow = flow_of(&[("e_sa", 0.5), ("e_at", 0.5), ("e_sb", 0.5), ("e_bt", 0.5)]);
        let dist = decompose_flow(&net, &flow).unwrap();
        assert_eq!(dist.entries().len(), 2);
        for (_, w) in dist.entries() {
            assert!((w - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn decomposition_recovers_the_mixed_marginals() {
        // overlapping middle edge: two paths share e_mid
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "b", "m", "t"],
            "s",
            "t",
            vec![
                Edge::new("e_sa", "s", "a", vec![0.9]),
                Edge::new("e_sb", "s", "b", vec![0.8]),
                Edge::new("e_am", "a", "m", vec![0.7]),
                Edge::new("e_bm", "b", "m", vec![0.6]),
                Edge::new("e_mt", "m", "t", vec![0.5]),
            ],
        );
        let pa = Path::new(["e_sa", "e_am", "e_mt"]);
        let pb = Path::new(["e_sb", "e_bm", "e_mt"]);
        let flow = mix_paths(&net, &[pa, pb], &[0.3, 0.7]).unwrap();
        assert!((flow.value("e_mt") - 1.0).abs() < 1e-12);

        let dist = decompose_flow(&net, &flow).unwrap();
        for (edge, marginal) in dist.edge_marginals() {
            assert!(
                (marginal - flow.value(&edge)).abs() < FLOW_TOLERANCE,
                "edge {edge}: {marginal} vs {}",
                flow.value(&edge)
            );
        }
    }

    #[test]
    fn infeasible_flow_is_rejected_with_details() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let flow = flow_of(&[("e_sa", 0.5), ("e_at", 0.5)]);
        let err = decompose_flow(&net, &flow).unwrap_err();
        assert!(matches!(err, Error::InfeasibleFlow(_)));
        assert!(err.to_string().contains("conservation"));
    }

    #[test]
    fn mix_paths_examples() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let upper = Path::new(["e_sa", "e_at"]);
        let lower = Path::new(["e_sb", "e_bt"]);

        let integral = mix_paths(&net, std::slice::from_ref(&upper), &[1.0]).unwrap();
        assert_eq!(integral.value("e_sa"), 1.0);
        assert_eq!(integral.value("e_sb"), 0.0);

        let split = mix_paths(&net, &[upper.clone(), lower.clone()], &[0.5, 0.5]).unwrap();
        for id in ["e_sa", "e_at", "e_sb", "e_bt"] {
            assert_eq!(split.value(id), 0.5);
        }
        assert!(validate_flow(&net, &split).is_feasible());

        let bad = mix_paths(&net, &[upper, lower], &[0.5, 0.4]);
        assert!(matches!(bad, Err(Error::BadParameter(_))));
    }

    #[test]
    fn shared_edge_weights_sum() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "m", "a", "b", "c", "t"],
            "s",
            "t",
            vec![
                Edge::new("e_sm", "s", "m", vec![0.9]),
                Edge::new("e_ma", "m", "a", vec![0.9]),
                Edge::new("e_mb", "m", "b", vec![0.9]),
                Edge::new("e_mc", "m", "c", vec![0.9]),
                Edge::new("e_at", "a", "t", vec![0.9]),
                Edge::new("e_bt", "b", "t", vec![0.9]),
                Edge::new("e_ct", "c", "t", vec![0.9]),
            ],
        );
        let paths = [
            Path::new(["e_sm", "e_ma", "e_at"]),
            Path::new(["e_sm", "e_mb", "e_bt"]),
            Path::new(["e_sm", "e_mc", "e_ct"]),
        ];
        let flow = mix_paths(&net, &paths, &[0.2, 0.3, 0.5]).unwrap();
        assert!((flow.value("e_sm") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_a_singleton_is_deterministic() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let path = Path::new(["e_sa", "e_at"]);
        let dist = PathDistribution::new(vec![(path.clone(), 1.0)]).unwrap();
        for seed in [0u64, 1, 99, 72_057] {
            assert_eq!(sample_path(&dist, seed).unwrap(), path);
        }
        let _ = net;
    }

    #[test]
    fn sampling_frequencies_match_weights() {
        let upper = Path::new(["e_sa", "e_at"]);
        let lower = Path::new(["e_sb", "e_bt"]);
        let dist =
            PathDistribution::new(vec![(upper.clone(), 0.5), (lower, 0.5)]).unwrap();
        let hits = (0..10_000)
            .filter(|&seed| sample_path(&dist, seed).unwrap() == upper)
            .count();
        let frequency = hits as f64 / 10_000.0;
        assert!(
            (frequency - 0.5).abs() < 0.02,
            "frequency {frequency} drifted from 0.5"
        );
    }

    #[test]
    fn zero_weight_entries_are_dropped_at_construction() {
        let upper = Path::new(["e_sa", "e_at"]);
        let lower = Path::new(["e_sb", "e_bt"]);
        let dist = PathDistribution::new(vec![(upper.clone(), 1.0), (lower, 0.0)]).unwrap();
        assert_eq!(dist.entries().len(), 1);
        for seed in 0..50 {
            assert_eq!(sample_path(&dist, seed).unwrap(), upper);
        }
    }

    #[test]
    fn empty_distribution_is_an_input_error() {
        assert!(matches!(
            PathDistribution::new(vec![]),
            Err(Error::EmptyDistribution)
        ));
    }

    #[test]
    fn certificate_is_degenerate_on_integral_flows() {
        let net = diamond_d1(0.9, 0.8, 0.7, 0.6);
        let flow = flow_of(&[("e_sa", 1.0), ("e_at", 1.0)]);
        let cert = rounding_certificate(&net, &flow).unwrap();
        assert!((cert.expected_path_objective - cert.relaxed).abs() < 1e-12);
    }

    #[test]
    fn certificate_matches_hand_computed_split() {
        let net = disjoint_pair();
        let flow = flow_of(&[("e_sa", 0.5), ("e_at", 0.5), ("e_sb", 0.5), ("e_bt", 0.5)]);
        let cert = rounding_certificate(&net, &flow).unwrap();
        let expected = 0.5 * (-2.0f64).exp() + 0.5 * (-4.0f64).exp();
        assert!((cert.expected_path_objective - expected).abs() < 1e-12);
        assert!((cert.relaxed - (-3.0f64).exp()).abs() < 1e-12);
        assert!(cert.jensen_holds(1e-9));
        assert!(cert.expected_path_objective > cert.relaxed);
    }

    #[test]
    fn jensen_holds_on_random_mixes_of_enumerated_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..30 {
            let net = random_network(seed, 8, 2, false, (0.05, 1.0));
            let paths: Vec<Path> = enumerate_paths(&net).unwrap().collect();
            if paths.is_empty() {
                continue;
            }
            let take = rng.random_range(1..=paths.len().min(4));
            let chosen: Vec<Path> = paths.into_iter().take(take).collect();
            let raw: Vec<f64> = (0..take).map(|_| rng.random_range(0.1..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let head: f64 = weights[..take - 1].iter().sum();
            weights[take - 1] = 1.0 - head;

            let flow = mix_paths(&net, &chosen, &weights).unwrap();
            let cert = rounding_certificate(&net, &flow).unwrap();
            assert!(cert.jensen_holds(1e-9), "seed {seed}: {cert:?}");

            let dist = decompose_flow(&net, &flow).unwrap();
            assert!(dist.entries().len() <= net.edges.len());
            for (edge, marginal) in dist.edge_marginals() {
                assert!((marginal - flow.value(&edge)).abs() < FLOW_TOLERANCE);
            }
        }
    }

    #[test]
    fn optimal_mix_decomposes_into_optimal_paths_only() {
        // every path has the same reliability, so every path is optimal
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "b", "t"],
            "s",
            "t",
            vec![
                Edge::new("e_sa", "s", "a", vec![0.7]),
                Edge::new("e_at", "a", "t", vec![0.7]),
                Edge::new("e_sb", "s", "b", vec![0.7]),
                Edge::new("e_bt", "b", "t", vec![0.7]),
            ],
        );
        let opt = brute_force_best(&net).unwrap().reliability;
        let flow = mix_paths(
            &net,
            &[Path::new(["e_sa", "e_at"]), Path::new(["e_sb", "e_bt"])],
            &[0.25, 0.75],
        )
        .unwrap();
        let dist = decompose_flow(&net, &flow).unwrap();
        for (path, _) in dist.entries() {
            assert_eq!(net.path_reliability(path).unwrap(), opt);
        }
    }
}
