//! Brute-force reference solver: exhaustive path enumeration and exact
//! argmax by marginal reliability.
//!
//! Intentionally exponential; a path-count guard keeps it a desk-scale tool.
//! Every other solver in this crate is tested against the values produced
//! here.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{mixture, Network, NetworkIndex, Path};

/// Default cap on the number of paths [`brute_force_best`] will examine.
pub const DEFAULT_PATH_LIMIT: usize = 1_000_000;

/// Which algorithm produced a [`SolveResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    LowerBound,
    Dp,
    ApproxBasic,
    ApproxPruned,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Brute => "brute",
            Method::LowerBound => "lower-bound",
            Method::Dp => "dp",
            Method::ApproxBasic => "approx-basic",
            Method::ApproxPruned => "approx-pruned",
        };
        write!(f, "{name}")
    }
}

/// A solver's answer: the winning path (absent when the sink is
/// unreachable) and its marginal reliability, recomputed from the network's
/// stored probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub path: Option<Path>,
    pub reliability: f64,
    pub method: Method,
}

/// Lazily enumerates every simple source-to-sink path in
/// lexicographic-by-edge-id depth-first order.
pub struct PathEnumerator<'a> {
    net: &'a Network,
    sink: usize,
    sorted_out: Vec<Vec<usize>>,
    edge_heads: Vec<usize>,
    stack: Vec<Frame>,
    path_edges: Vec<usize>,
    on_path: Vec<bool>,
    /// Running per-state conditional reliability of the path prefix ending
    /// at each stack frame's vertex.
    products: Vec<Vec<f64>>,
    done: bool,
}

struct Frame {
    vertex: usize,
    cursor: usize,
}

impl<'a> PathEnumerator<'a> {
    fn new(net: &'a Network) -> Result<Self> {
        let index = NetworkIndex::new(net)?;
        let n = net.vertices.len();
        let mut sorted_out = index.out_edges.clone();
        for list in &mut sorted_out {
            list.sort_by(|&a, &b| net.edges[a].id.cmp(&net.edges[b].id));
        }
        let edge_heads = net
            .edges
            .iter()
            .map(|e| index.vertex_of[e.to.as_str()])
            .collect();
        let source = index.source();
        let sink = index.sink();
        let mut on_path = vec![false; n];
        on_path[source] = true;
        Ok(PathEnumerator {
            net,
            sink,
            sorted_out,
            edge_heads,
            stack: vec![Frame {
                vertex: source,
                cursor: 0,
            }],
            path_edges: Vec::new(),
            on_path,
            products: vec![vec![1.0; net.state_count]],
            done: false,
        })
    }

    /// Next path together with its per-state conditional reliabilities
    /// (accumulated edge by edge, in the same order `path_reliability`
    /// multiplies them).
    pub(crate) fn next_with_conditionals(&mut self) -> Option<(Path, Vec<f64>)> {
        if self.done {
            return None;
        }
        loop {
            let Some(frame) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let out = &self.sorted_out[frame.vertex];
            if frame.cursor >= out.len() {
                // exhausted this vertex; retract the edge that reached it
                let finished = self.stack.pop().expect("frame exists");
                if !self.stack.is_empty() {
                    self.on_path[finished.vertex] = false;
                    self.path_edges.pop();
                    self.products.pop();
                }
                continue;
            }
            let edge_idx = out[frame.cursor];
            frame.cursor += 1;
            let head = self.edge_heads[edge_idx];
            if self.on_path[head] {
                continue; // simple paths only (unreachable on a DAG)
            }
            let prev = self.products.last().expect("product per frame");
            let mut conds = prev.clone();
            for (c, &r) in conds.iter_mut().zip(&self.net.edges[edge_idx].reliability) {
                *c *= r;
            }
            if head == self.sink {
                let mut edge_ids: Vec<String> = self
                    .path_edges
                    .iter()
                    .map(|&i| self.net.edges[i].id.clone())
                    .collect();
                edge_ids.push(self.net.edges[edge_idx].id.clone());
                return Some((Path { edge_ids }, conds));
            }
            self.on_path[head] = true;
            self.path_edges.push(edge_idx);
            self.products.push(conds);
            self.stack.push(Frame {
                vertex: head,
                cursor: 0,
            });
        }
    }
}

impl Iterator for PathEnumerator<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        self.next_with_conditionals().map(|(path, _)| path)
    }
}

/// Streams every simple source-to-sink path exactly once, in deterministic
/// lexicographic-by-edge-id depth-first order. Empty when the sink is
/// unreachable.
pub fn enumerate_paths(net: &Network) -> Result<PathEnumerator<'_>> {
    PathEnumerator::new(net)
}

/// Exhaustive argmax of marginal reliability over all source-to-sink paths.
/// Ties go to the path enumerated first.
pub fn brute_force_best(net: &Network) -> Result<SolveResult> {
    brute_force_best_with_limit(net, DEFAULT_PATH_LIMIT)
}

/// [`brute_force_best`] with an explicit path-count guard.
pub fn brute_force_best_with_limit(net: &Network, path_limit: usize) -> Result<SolveResult> {
    let mut paths = enumerate_paths(net)?;
    let mut best: Option<(Path, f64)> = None;
    let mut count = 0usize;
    while let Some((path, conds)) = paths.next_with_conditionals() {
        count += 1;
        if count > path_limit {
            return Err(Error::ResourceLimit(format!(
                "more than {path_limit} source-to-sink paths"
            )));
        }
        let reliability = mixture(&net.prior, &conds);
        let better = match &best {
            None => true,
            Some((_, incumbent)) => reliability > *incumbent,
        };
        if better {
            best = Some((path, reliability));
        }
    }
    Ok(match best {
        Some((path, reliability)) => SolveResult {
            path: Some(path),
            reliability,
            method: Method::Brute,
        },
        None => SolveResult {
            path: None,
            reliability: 0.0,
            method: Method::Brute,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Edge, LogReliability};
    use crate::test_util::{
        diamond_d1, fg_gap_diamond, random_network, single_edge_net, stacked_diamonds,
    };

    #[test]
    fn single_edge_yields_one_path() {
        let net = single_edge_net(vec![0.5]);
        let paths: Vec<Path> = enumerate_paths(&net).unwrap().collect();
        assert_eq!(paths, vec![Path::new(["e1"])]);
    }

    #[test]
    fn diamond_yields_two_paths_in_lexicographic_order() {
        let net = diamond_d1(0.9, 1.0, 0.5, 1.0);
        let paths: Vec<Path> = enumerate_paths(&net).unwrap().collect();
        assert_eq!(
            paths,
            vec![Path::new(["e_sa", "e_at"]), Path::new(["e_sb", "e_bt"])]
        );
    }

    #[test]
    fn stacked_diamonds_yield_four_paths() {
        let net = stacked_diamonds();
        assert_eq!(enumerate_paths(&net).unwrap().count(), 4);
    }

    #[test]
    fn unreachable_sink_yields_empty_stream_and_absent_result() {
        let net = Network::new(
            1,
            vec![1.0],
            vec!["s", "a", "t"],
            "s",
            "t",
            vec![Edge::new("e1", "s", "a", vec![0.5])],
        );
        assert_eq!(enumerate_paths(&net).unwrap().count(), 0);
        let result = brute_force_best(&net).unwrap();
        assert_eq!(result.path, None);
        assert_eq!(result.reliability, 0.0);
    }

    #[test]
    fn brute_force_picks_more_reliable_diamond_arm() {
        let net = diamond_d1(0.9, 1.0, 0.5, 1.0);
        let result = brute_force_best(&net).unwrap();
        assert_eq!(result.path, Some(Path::new(["e_sa", "e_at"])));
        assert!((result.reliability - 0.9).abs() < 1e-15);
    }

    #[test]
    fn all_ones_ties_break_by_enumeration_order() {
        let net = diamond_d1(1.0, 1.0, 1.0, 1.0);
        let result = brute_force_best(&net).unwrap();
        assert_eq!(result.path, Some(Path::new(["e_sa", "e_at"])));
        assert_eq!(result.reliability, 1.0);
    }

    #[test]
    fn mixture_objective_beats_per_state_favourite() {
        // upper arm: 0.5 * 1 + 0.5 * 0 = 0.5; lower arm: 0.36
        let net = fg_gap_diamond();
        let result = brute_force_best(&net).unwrap();
        assert_eq!(result.path, Some(Path::new(["e_sa", "e_at"])));
        assert!((result.reliability - 0.5).abs() < 1e-15);
    }

    #[test]
    fn path_limit_guard_fires() {
        let net = stacked_diamonds();
        assert!(matches!(
            brute_force_best_with_limit(&net, 3),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn reported_reliability_matches_model_recomputation() {
        for seed in 0..20 {
            let net = random_network(seed, 8, 2, false, (0.05, 1.0));
            let result = brute_force_best(&net).unwrap();
            if let Some(path) = &result.path {
                let recomputed = net.path_reliability(path).unwrap();
                assert!((result.reliability - recomputed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn every_enumerated_path_is_at_most_the_optimum() {
        for seed in 0..20 {
            let net = random_network(seed, 8, 2, false, (0.05, 1.0));
            let best = brute_force_best(&net).unwrap().reliability;
            for path in enumerate_paths(&net).unwrap() {
                assert!(net.path_reliability(&path).unwrap() <= best + 1e-12);
            }
        }
    }

    #[test]
    fn hidden_state_relabeling_preserves_the_optimum() {
        for seed in 0..10 {
            let net = random_network(seed, 7, 3, false, (0.05, 1.0));
            let mut permuted = net.clone();
            permuted.prior.rotate_left(1);
            for e in &mut permuted.edges {
                e.reliability.rotate_left(1);
            }
            let a = brute_force_best(&net).unwrap();
            let b = brute_force_best(&permuted).unwrap();
            // state permutation reorders the mixture sum, so allow rounding dust
            assert!((a.reliability - b.reliability).abs() < 1e-12);
            let b_path = b.path.expect("permuted net has the same paths");
            let on_original = net.path_reliability(&b_path).unwrap();
            assert!((on_original - a.reliability).abs() < 1e-12);
        }
    }

    /// Independent check for d = 1: an additive shortest-path sweep on costs
    /// -log r over the topological order.
    fn additive_best_log_reliability(net: &Network) -> LogReliability {
        let order = net.topo_order().unwrap();
        let mut best: Vec<Option<LogReliability>> = vec![None; net.vertices.len()];
        let pos = |name: &str| net.vertex_index(name).unwrap();
        best[pos(&net.source)] = Some(LogReliability::Finite(0.0));
        for v in &order {
            let Some(value) = best[pos(v)] else { continue };
            for e in net.edges.iter().filter(|e| &e.from == v) {
                let cand = value + LogReliability::from_prob(e.reliability[0]);
                let slot = &mut best[pos(&e.to)];
                if slot.is_none() || cand > slot.unwrap() {
                    *slot = Some(cand);
                }
            }
        }
        best[pos(&net.sink)].unwrap_or(LogReliability::Impossible)
    }

    #[test]
    fn d1_brute_force_agrees_with_additive_shortest_path() {
        for seed in 0..30 {
            let net = random_network(seed, 9, 1, false, (0.05, 1.0));
            let brute = brute_force_best(&net).unwrap().reliability;
            let additive = additive_best_log_reliability(&net).exp();
            assert!(
                (brute - additive).abs() < 1e-9,
                "seed {seed}: brute {brute} vs additive {additive}"
            );
        }
    }
}
