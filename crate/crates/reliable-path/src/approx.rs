//! Approximation by grid coarsening.
//!
//! Flooring every log-reliability onto a uniform grid of unit `k` shrinks
//! each edge's per-state reliability by a factor of at most `e^-k`, so with
//! `k = -log(1 - epsilon) / n` the basic scheme loses at most a factor
//! `1 - epsilon` on any path of at most `n` edges. The pruned scheme removes
//! the dependence of the table size on how unreliable edges get: for each
//! candidate threshold `a` (a conditional edge reliability occurring in the
//! network) it deletes all edges worse than `a`, scales the grid to
//! `k = epsilon * (-log a) / n`, solves, and keeps the best candidate path
//! over all thresholds, which achieves reliability at least
//! `OPT^(1 + epsilon)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_dp::{dp_solve_with, DpOptions, GridCost, IntegerCostNetwork};
use crate::model::{Network, NetworkIndex, Path};

/// Which coarsening scheme produced an [`ApproxResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxVariant {
    Basic,
    Pruned,
}

/// Outcome of an approximate solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    /// The winning path; absent when no source-to-sink path survives.
    pub path: Option<Path>,
    /// The path's reliability on the original network.
    pub true_reliability: f64,
    /// The grid mixture objective the path won with; never exceeds the true
    /// reliability, since flooring only shrinks log-reliabilities.
    pub coarsened_value: f64,
    pub epsilon: f64,
    pub variant: ApproxVariant,
    /// Threshold iterations that ran a DP solve (pruned variant only).
    pub prunings_evaluated: usize,
    /// Threshold iterations skipped because the per-iteration table guard
    /// fired (pruned variant only).
    pub prunings_skipped: usize,
}

/// Floors every finite log-reliability onto the grid of unit `k`:
/// `log a` becomes the integer `floor(log a / k)` at unit `k`. Zero
/// reliabilities stay impossible. Values within `1e-9` of a grid point are
/// treated as exactly on it, so grid-exact inputs do not lose a notch to
/// floating-point dust.
pub fn coarsen(net: &Network, unit: f64) -> Result<IntegerCostNetwork> {
    if !(unit > 0.0) {
        return Err(Error::BadParameter(format!(
            "grid unit must be positive, got {unit}"
        )));
    }
    let mut costs = Vec::with_capacity(net.edges.len());
    for edge in &net.edges {
        let per_state = edge
            .reliability
            .iter()
            .map(|&r| {
                if r == 0.0 {
                    GridCost::Impossible
                } else {
                    let ratio = r.ln() / unit;
                    let mut cost = ratio.floor();
                    if ratio - cost > 1.0 - 1e-9 {
                        cost += 1.0;
                    }
                    GridCost::Finite(cost as i64)
                }
            })
            .collect();
        costs.push(per_state);
    }
    Ok(IntegerCostNetwork {
        base: net.clone(),
        unit,
        costs,
    })
}

/// The basic coarsening scheme: grid unit `-log(1 - epsilon) / n` with `n`
/// the vertex count, then one exact DP on the coarsened costs. The returned
/// path's true reliability is at least `(1 - epsilon) * OPT`.
pub fn approx_solve_basic(net: &Network, epsilon: f64) -> Result<ApproxResult> {
    approx_solve_basic_with(net, epsilon, &DpOptions::default())
}

/// [`approx_solve_basic`] with explicit DP options.
pub fn approx_solve_basic_with(
    net: &Network,
    epsilon: f64,
    opts: &DpOptions,
) -> Result<ApproxResult> {
    check_epsilon(epsilon)?;
    let n = net.vertices.len() as f64;
    let unit = -(1.0 - epsilon).ln() / n;
    let icnet = coarsen(net, unit)?;
    let solved = dp_solve_with(&icnet, opts)?;
    let coarsened_value = grid_value_of(&icnet, solved.path.as_ref());
    Ok(ApproxResult {
        true_reliability: solved.reliability,
        path: solved.path,
        coarsened_value,
        epsilon,
        variant: ApproxVariant::Basic,
        prunings_evaluated: 0,
        prunings_skipped: 0,
    })
}

/// Deletes every edge having at least one conditional reliability strictly
/// below `threshold`; vertices are kept. With the threshold equal to the
/// smallest conditional reliability over an optimal path's (edge, state)
/// pairs, no edge of that path is deleted.
pub fn prune_below(net: &Network, threshold: f64) -> Network {
    let mut pruned = net.clone();
    pruned
        .edges
        .retain(|e| e.reliability.iter().all(|&r| r >= threshold));
    pruned
}

/// The threshold-pruning scheme. The sorted distinct conditional edge
/// reliabilities in (0, 1) drive one pruned, rescaled DP each; reliability
/// one is handled by an exact pass over the always-reliable subgraph, and
/// zero never prunes anything so it is not a useful threshold. Iterations
/// run in parallel; the reduction is a deterministic argmax over true
/// reliability with ties going to the smaller threshold.
pub fn approx_solve_pruned(net: &Network, epsilon: f64) -> Result<ApproxResult> {
    approx_solve_pruned_with(net, epsilon, &DpOptions::default())
}

/// [`approx_solve_pruned`] with explicit per-iteration DP options. A table
/// guard trip skips that iteration (counted in the result) instead of
/// failing the solve.
pub fn approx_solve_pruned_with(
    net: &Network,
    epsilon: f64,
    opts: &DpOptions,
) -> Result<ApproxResult> {
    check_epsilon(epsilon)?;

    // exact pass: a path that is reliable under every state wins outright
    if let Some(path) = sure_path(net)? {
        return Ok(ApproxResult {
            path: Some(path),
            true_reliability: 1.0,
            coarsened_value: 1.0,
            epsilon,
            variant: ApproxVariant::Pruned,
            prunings_evaluated: 0,
            prunings_skipped: 0,
        });
    }

    let mut thresholds: Vec<f64> = net
        .edges
        .iter()
        .flat_map(|e| e.reliability.iter().copied())
        .filter(|&r| r > 0.0 && r < 1.0)
        .collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let n = net.vertices.len() as f64;
    let candidates: Vec<Result<Option<(Path, f64, f64)>>> = thresholds
        .par_iter()
        .map(|&threshold| -> Result<Option<(Path, f64, f64)>> {
            let pruned = prune_below(net, threshold);
            let q = -threshold.ln();
            let unit = epsilon * q / n;
            let icnet = coarsen(&pruned, unit)?;
            let solved = match dp_solve_with(&icnet, opts) {
                Ok(solved) => solved,
                Err(Error::ResourceLimit(_)) => return Ok(None),
                Err(other) => return Err(other),
            };
            Ok(solved.path.map(|path| {
                let coarse = grid_value_of(&icnet, Some(&path));
                (path, solved.reliability, coarse)
            }))
        })
        .collect();

    let mut best: Option<(Path, f64, f64)> = None;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;
    for candidate in candidates {
        match candidate? {
            None => skipped += 1,
            Some((path, reliability, coarse)) => {
                evaluated += 1;
                let better = match &best {
                    None => true,
                    Some((_, incumbent, _)) => reliability > *incumbent,
                };
                if better {
                    best = Some((path, reliability, coarse));
                }
            }
        }
    }

    Ok(match best {
        Some((path, true_reliability, coarsened_value)) => ApproxResult {
            path: Some(path),
            true_reliability,
            coarsened_value,
            epsilon,
            variant: ApproxVariant::Pruned,
            prunings_evaluated: evaluated,
            prunings_skipped: skipped,
        },
        None => ApproxResult {
            path: None,
            true_reliability: 0.0,
            coarsened_value: 0.0,
            epsilon,
            variant: ApproxVariant::Pruned,
            prunings_evaluated: evaluated,
            prunings_skipped: skipped,
        },
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::BadParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    Ok(())
}

fn grid_value_of(icnet: &IntegerCostNetwork, path: Option<&Path>) -> f64 {
    let Some(path) = path else { return 0.0 };
    let mut vector = crate::exact_dp::CostVector::zeros(icnet.base.state_count);
    for id in &path.edge_ids {
        let e = icnet
            .base
            .edges
            .iter()
            .position(|e| &e.id == id)
            .expect("path edges exist in the base network");
        vector = vector.plus(&icnet.costs[e]);
    }
    icnet.grid_objective(&vector)
}

/// Deterministic search for a source-to-sink path using only edges that are
/// reliable under every state; `None` when no such path exists.
fn sure_path(net: &Network) -> Result<Option<Path>> {
    let index = NetworkIndex::new(net)?;
    let sink = index.sink();
    let n = net.vertices.len();
    let mut back: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut stack = vec![index.source()];
    visited[index.source()] = true;
    while let Some(u) = stack.pop() {
        if u == sink {
            let mut edges_rev = Vec::new();
            let mut v = sink;
            while let Some(e) = back[v] {
                edges_rev.push(net.edges[e].id.clone());
                v = index.vertex_of[net.edges[e].from.as_str()];
            }
            edges_rev.reverse();
            return Ok(Some(Path {
                edge_ids: edges_rev,
            }));
        }
        // reverse edge order so the lexicographically earlier edge pops first
        let mut out: Vec<usize> = index.out_edges[u]
            .iter()
            .copied()
            .filter(|&e| net.edges[e].reliability.iter().all(|&r| r == 1.0))
            .collect();
        out.sort_by(|&a, &b| net.edges[b].id.cmp(&net.edges[a].id));
        for e in out {
            let v = index.vertex_of[net.edges[e].to.as_str()];
            if !visited[v] {
                visited[v] = true;
                back[v] = Some(e);
                stack.push(v);
            }
        }
    }
    Ok(None)
}
