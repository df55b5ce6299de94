//! Lower bounds on the optimal path reliability.
//!
//! For a path `pi`, `f(pi)` is the log of its marginal reliability and
//! `g(pi)` is the prior-weighted sum of its conditional log-reliabilities.
//! Jensen's inequality on the concave log gives `g <= f`. Unlike `f`, `g`
//! is additive over edges, so its maximizer `sigma*` is computable by a
//! longest-path sweep over the DAG; evaluating both functions at `sigma*`
//! and at the true optimum `pi*` yields the sandwich
//! `g(pi*) <= g(sigma*) <= f(sigma*) <= f(pi*)`.

use crate::error::{Error, Result};
use crate::model::{LogReliability, Network, NetworkIndex, Path};
use crate::oracle::{brute_force_best, Method};

/// Log of the path's marginal reliability; `Impossible` when that
/// probability is zero.
pub fn f_value(net: &Network, path: &Path) -> Result<LogReliability> {
    Ok(LogReliability::from_prob(net.path_reliability(path)?))
}

/// Prior-weighted sum of conditional log-reliabilities. States with zero
/// prior contribute nothing (the 0 * log 0 = 0 convention), so only a
/// zero-reliability edge under a positively weighted state makes the value
/// `Impossible`.
pub fn g_value(net: &Network, path: &Path) -> Result<LogReliability> {
    net.check_path(path)?;
    let mut total = LogReliability::Finite(0.0);
    for (state, &weight) in net.prior.iter().enumerate() {
        let conditional = net.conditional_path_reliability(path, state)?;
        total = total + LogReliability::from_prob(conditional).scale(weight);
    }
    Ok(total)
}

/// Per-edge additive cost of `g`: the prior-weighted sum of the edge's
/// conditional log-reliabilities. Summing this over a path's edges gives
/// `g_value` of the path.
pub fn edge_g_cost(net: &Network, edge_id: &str) -> Result<LogReliability> {
    let edge = net
        .edge(edge_id)
        .ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
    let mut total = LogReliability::Finite(0.0);
    for (state, &weight) in net.prior.iter().enumerate() {
        total = total + LogReliability::from_prob(edge.reliability[state]).scale(weight);
    }
    Ok(total)
}

/// The `g`-maximizing path and its two objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundResult {
    /// `sigma*`; absent when the sink is unreachable.
    pub path: Option<Path>,
    /// `g(sigma*)` as accumulated by the dynamic program.
    pub g: LogReliability,
    /// `f(sigma*)`, recomputed from the network.
    pub f: LogReliability,
}

/// Maximizes `g` exactly by a single-source longest-path sweep over the DAG
/// with additive [`edge_g_cost`] weights.
///
/// Among predecessors achieving the maximum at a vertex, the one earliest in
/// topological order wins (and among parallel edges from it, the earliest in
/// the edge list), so the returned path is deterministic.
pub fn lower_bound_dp(net: &Network) -> Result<LowerBoundResult> {
    let order = net.topo_order()?;
    let index = NetworkIndex::new(net)?;
    let n = net.vertices.len();

    let mut rank = vec![usize::MAX; n];
    for (r, name) in order.iter().enumerate() {
        rank[index.vertex_of[name.as_str()]] = r;
    }
    let costs: Vec<LogReliability> = net
        .edges
        .iter()
        .map(|e| edge_g_cost(net, &e.id))
        .collect::<Result<_>>()?;

    // best[v] = (g of the best s-to-v path, incoming edge on it)
    let mut best: Vec<Option<(LogReliability, Option<usize>)>> = vec![None; n];
    best[index.source()] = Some((LogReliability::Finite(0.0), None));
    for name in &order {
        let v = index.vertex_of[name.as_str()];
        if v == index.source() {
            continue;
        }
        let mut in_edges = index.in_edges[v].clone();
        in_edges.sort_by_key(|&e| (rank[index.vertex_of[net.edges[e].from.as_str()]], e));
        let mut incumbent: Option<(LogReliability, Option<usize>)> = None;
        for e in in_edges {
            let u = index.vertex_of[net.edges[e].from.as_str()];
            let Some((g_u, _)) = best[u] else { continue };
            let cand = g_u + costs[e];
            let better = match incumbent {
                None => true,
                Some((g_inc, _)) => cand > g_inc,
            };
            if better {
                incumbent = Some((cand, Some(e)));
            }
        }
        best[v] = incumbent;
    }

    let Some((g, _)) = best[index.sink()] else {
        return Ok(LowerBoundResult {
            path: None,
            g: LogReliability::Impossible,
            f: LogReliability::Impossible,
        });
    };

    let mut edges_rev = Vec::new();
    let mut v = index.sink();
    while v != index.source() {
        let (_, Some(e)) = best[v].expect("reachable vertex has an entry") else {
            unreachable!("non-source entries carry a back edge");
        };
        edges_rev.push(net.edges[e].id.clone());
        v = index.vertex_of[net.edges[e].from.as_str()];
    }
    edges_rev.reverse();
    let path = Path {
        edge_ids: edges_rev,
    };
    let f = f_value(net, &path)?;
    Ok(LowerBoundResult {
        path: Some(path),
        g,
        f,
    })
}

/// The four values of the sandwich `g(pi*) <= g(sigma*) <= f(sigma*) <=
/// f(pi*)`, with `pi*` found by the brute-force oracle and `sigma*` by
/// [`lower_bound_dp`].
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichCertificate {
    pub g_pi_star: LogReliability,
    pub g_sigma_star: LogReliability,
    pub f_sigma_star: LogReliability,
    pub f_pi_star: LogReliability,
    pub pi_star: Path,
    pub sigma_star: Path,
}

impl SandwichCertificate {
    /// Whether the inequality chain holds, allowing `tol` slack in the
    /// comparisons that mix independently computed quantities.
    pub fn chain_holds(&self, tol: f64) -> bool {
        self.g_pi_star.le_with_tol(self.g_sigma_star, tol)
            && self.g_sigma_star.le_with_tol(self.f_sigma_star, tol)
            && self.f_sigma_star.le_with_tol(self.f_pi_star, tol)
    }
}

/// Evaluates both objectives at both maximizers. Desk-scale only: `pi*`
/// comes from the brute-force oracle, whose path-count guard may fire.
pub fn sandwich_certificate(net: &Network) -> Result<SandwichCertificate> {
    let brute = brute_force_best(net)?;
    debug_assert_eq!(brute.method, Method::Brute);
    let Some(pi_star) = brute.path else {
        return Err(Error::NoPath);
    };
    let lower = lower_bound_dp(net)?;
    let Some(sigma_star) = lower.path else {
        return Err(Error::NoPath);
    };
    Ok(SandwichCertificate {
        g_pi_star: g_value(net, &pi_star)?,
        g_sigma_star: lower.g,
        f_sigma_star: lower.f,
        f_pi_star: f_value(net, &pi_star)?,
        pi_star,
        sigma_star,
    })
}
