//! Fixtures and seeded instance generators shared by the unit tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::model::{Edge, Network};

/// d = 1 network with one edge s -> t.
pub fn single_edge_net(reliability: Vec<f64>) -> Network {
    let d = reliability.len();
    let prior = vec![1.0 / d as f64; d];
    Network::new(
        d,
        prior,
        vec!["s", "t"],
        "s",
        "t",
        vec![Edge::new("e1", "s", "t", reliability)],
    )
}

/// d = 1 diamond: s -> a -> t (upper) and s -> b -> t (lower), with the four
/// edge reliabilities given in order e_sa, e_at, e_sb, e_bt.
pub fn diamond_d1(sa: f64, at: f64, sb: f64, bt: f64) -> Network {
    Network::new(
        1,
        vec![1.0],
        vec!["s", "a", "b", "t"],
        "s",
        "t",
        vec![
            Edge::new("e_sa", "s", "a", vec![sa]),
            Edge::new("e_at", "a", "t", vec![at]),
            Edge::new("e_sb", "s", "b", vec![sb]),
            Edge::new("e_bt", "b", "t", vec![bt]),
        ],
    )
}

/// d = 2 diamond with per-path per-edge reliability vectors.
pub fn diamond_d2(upper: [f64; 2], lower: [f64; 2]) -> Network {
    Network::new(
        2,
        vec![0.5, 0.5],
        vec!["s", "a", "b", "t"],
        "s",
        "t",
        vec![
            Edge::new("e_sa", "s", "a", upper.to_vec()),
            Edge::new("e_at", "a", "t", upper.to_vec()),
            Edge::new("e_sb", "s", "b", lower.to_vec()),
            Edge::new("e_bt", "b", "t", lower.to_vec()),
        ],
    )
}

/// The fixture where the g-maximizer and the f-maximizer differ: the upper
/// path is impossible under state 2 (so g is impossible there) but has the
/// better mixture value 0.5; the lower path has mixture 0.36.
pub fn fg_gap_diamond() -> Network {
    diamond_d2([1.0, 0.0], [0.6, 0.6])
}

/// Two diamonds in series; 4 source-to-sink paths.
pub fn stacked_diamonds() -> Network {
    Network::new(
        1,
        vec![1.0],
        vec!["s", "a", "b", "m", "c", "d", "t"],
        "s",
        "t",
        vec![
            Edge::new("e1", "s", "a", vec![0.9]),
            Edge::new("e2", "s", "b", vec![0.8]),
            Edge::new("e3", "a", "m", vec![0.7]),
            Edge::new("e4", "b", "m", vec![0.6]),
            Edge::new("e5", "m", "c", vec![0.5]),
            Edge::new("e6", "m", "d", vec![0.4]),
            Edge::new("e7", "c", "t", vec![0.3]),
            Edge::new("e8", "d", "t", vec![0.2]),
        ],
    )
}

/// Random layered DAG that always connects source to sink. Reliabilities are
/// drawn uniformly from `rel_range`; with `grid: true` they are instead drawn
/// from {e^0, e^-1, e^-2, e^-3} so unit-1 quantization is exact.
pub fn random_network(
    seed: u64,
    n: usize,
    d: usize,
    grid: bool,
    rel_range: (f64, f64),
) -> Network {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = vec!["s".to_string()];
    for i in 0..n - 2 {
        vertices.push(format!("v{i}"));
    }
    vertices.push("t".to_string());

    // split the middle vertices into layers of width at most 3
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    let mut next = 1;
    while next < n - 1 {
        let width = (rng.random_range(1..=3usize)).min(n - 1 - next);
        layers.push((next..next + width).collect());
        next += width;
    }
    layers.push(vec![n - 1]);

    let mut draw_rel = |rng: &mut ChaCha8Rng| -> f64 {
        if grid {
            let exponent = rng.random_range(0..=3i32);
            (-exponent as f64).exp()
        } else {
            rng.random_range(rel_range.0..=rel_range.1)
        }
    };

    let mut edges = Vec::new();
    let mut counter = 0usize;
    for w in 0..layers.len() - 1 {
        let (from_layer, to_layer) = (&layers[w], &layers[w + 1]);
        // every vertex in the next layer gets at least one incoming edge and
        // every vertex in this layer at least one outgoing edge
        let mut covered_out = vec![false; from_layer.len()];
        for (j, &v) in to_layer.iter().enumerate() {
            let pick = rng.random_range(0..from_layer.len());
            covered_out[pick] = true;
            let reliability = (0..d).map(|_| draw_rel(&mut rng)).collect();
            edges.push(Edge::new(
                format!("e{counter}"),
                vertices[from_layer[pick]].clone(),
                vertices[v].clone(),
                reliability,
            ));
            counter += 1;
            let _ = j;
        }
        for (i, &u) in from_layer.iter().enumerate() {
            if !covered_out[i] {
                let pick = rng.random_range(0..to_layer.len());
                let reliability = (0..d).map(|_| draw_rel(&mut rng)).collect();
                edges.push(Edge::new(
                    format!("e{counter}"),
                    vertices[u].clone(),
                    vertices[to_layer[pick]].clone(),
                    reliability,
                ));
                counter += 1;
            }
        }
        // extra random edges for density
        for &u in from_layer {
            for &v in to_layer {
                if rng.random_bool(0.4) {
                    let reliability = (0..d).map(|_| draw_rel(&mut rng)).collect();
                    edges.push(Edge::new(
                        format!("e{counter}"),
                        vertices[u].clone(),
                        vertices[v].clone(),
                        reliability,
                    ));
                    counter += 1;
                }
            }
        }
    }

    let prior = random_prior(&mut rng, d);
    Network::new(d, prior, vertices, "s", "t", edges)
}

fn random_prior(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut prior: Vec<f64> = raw.iter().map(|x| x / total).collect();
    // renormalize the last entry so the sum is exact to within one rounding
    let head: f64 = prior[..d - 1].iter().sum();
    prior[d - 1] = 1.0 - head;
    prior
}
