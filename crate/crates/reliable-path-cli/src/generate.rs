//! Seeded random instance generation.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use reliable_path::model::{Edge, Network};

/// Parameters of the layered random family. The generated DAG always
/// connects the source to the sink; `density` adds extra edges between
/// consecutive layers on top of the connectivity backbone.
#[derive(Debug, Clone)]
pub struct RandomNetParams {
    pub vertices: usize,
    pub layer_width: usize,
    pub density: f64,
    pub states: usize,
    pub rel_min: f64,
    pub rel_max: f64,
    pub seed: u64,
}

impl Default for RandomNetParams {
    fn default() -> Self {
        RandomNetParams {
            vertices: 8,
            layer_width: 3,
            density: 0.5,
            states: 2,
            rel_min: 0.05,
            rel_max: 1.0,
            seed: 0,
        }
    }
}

/// Builds one instance deterministically from the parameters: same seed,
/// same network, byte for byte.
pub fn random_network(params: &RandomNetParams) -> Result<Network, String> {
    let RandomNetParams {
        vertices: n,
        layer_width,
        density,
        states: d,
        rel_min,
        rel_max,
        seed,
    } = *params;
    if n < 2 {
        return Err(format!("at least 2 vertices required, got {n}"));
    }
    if layer_width == 0 {
        return Err("layer width must be positive".into());
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(format!("density must lie in [0, 1], got {density}"));
    }
    if d == 0 {
        return Err("state count must be positive".into());
    }
    if !(0.0 <= rel_min && rel_min <= rel_max && rel_max <= 1.0) {
        return Err(format!(
            "need 0 <= rel-min <= rel-max <= 1, got [{rel_min}, {rel_max}]"
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = vec!["s".to_string()];
    for i in 0..n - 2 {
        vertices.push(format!("v{i}"));
    }
    vertices.push("t".to_string());

    // source alone, middle vertices in layers of at most layer_width, sink alone
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    let mut next = 1;
    while next < n - 1 {
        let width = layer_width.min(n - 1 - next);
        layers.push((next..next + width).collect());
        next += width;
    }
    layers.push(vec![n - 1]);

    let mut edges = Vec::new();
    let mut counter = 0usize;
    for w in 0..layers.len() - 1 {
        let (from_layer, to_layer) = (&layers[w], &layers[w + 1]);
        let mut covered_out = vec![false; from_layer.len()];
        let mut covered_in = vec![false; to_layer.len()];
        let mut add = |rng: &mut ChaCha8Rng, edges: &mut Vec<Edge>, u: usize, v: usize| {
            let reliability = (0..d).map(|_| rng.random_range(rel_min..=rel_max)).collect();
            edges.push(Edge::new(
                format!("e{counter}"),
                vertices[u].clone(),
                vertices[v].clone(),
                reliability,
            ));
            counter += 1;
        };
        for (i, &u) in from_layer.iter().enumerate() {
            for (j, &v) in to_layer.iter().enumerate() {
                if rng.random_bool(density) {
                    add(&mut rng, &mut edges, u, v);
                    covered_out[i] = true;
                    covered_in[j] = true;
                }
            }
        }
        for (i, &u) in from_layer.iter().enumerate() {
            if !covered_out[i] {
                let j = rng.random_range(0..to_layer.len());
                add(&mut rng, &mut edges, u, to_layer[j]);
                covered_in[j] = true;
            }
        }
        for (j, &v) in to_layer.iter().enumerate() {
            if !covered_in[j] {
                let i = rng.random_range(0..from_layer.len());
                add(&mut rng, &mut edges, from_layer[i], v);
            }
        }
    }

    let prior = if d == 1 {
        vec![1.0]
    } else {
        let raw: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let mut prior: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let head: f64 = prior[..d - 1].iter().sum();
        prior[d - 1] = 1.0 - head;
        prior
    };

    Ok(Network::new(d, prior, vertices, "s", "t", edges))
}
