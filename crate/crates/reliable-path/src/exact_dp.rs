//! Exact dynamic program over per-state integer log-cost vectors.
//!
//! When every edge log-reliability is an integer multiple of a common grid
//! unit, the d-tuple of a path's per-state integer costs is a sufficient DP
//! state: two paths to the same vertex with the same cost vector are
//! interchangeable downstream. The table is built sparsely by pushing
//! `parent + edge` vectors forward along a topological order, which visits
//! exactly the vectors realized by actual paths instead of the full grid.
//!
//! Entries additionally carry the retained path's per-state reliability
//! products. Mathematically all paths behind one cost vector tie, but their
//! floating-point products can differ in the last bit; keeping the
//! componentwise-largest products and selecting the sink entry by true
//! reliability makes the answer agree bit for bit with the brute-force
//! oracle's recomputation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{mixture, LogReliability, Network, NetworkIndex, Path};
use crate::oracle::{Method, SolveResult};

/// Default cap on the total number of table entries across all vertices.
pub const DEFAULT_TABLE_LIMIT: usize = 10_000_000;

/// One integer grid cost: a nonpositive multiple of the grid unit, or the
/// sentinel for a zero-reliability edge. `Impossible` sorts below every
/// finite cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GridCost {
    Impossible,
    Finite(i64),
}

impl GridCost {
    fn add(self, rhs: GridCost) -> GridCost {
        match (self, rhs) {
            (GridCost::Finite(a), GridCost::Finite(b)) => GridCost::Finite(a + b),
            _ => GridCost::Impossible,
        }
    }

    /// The log-reliability this cost stands for, at grid unit `unit`.
    pub fn to_log(self, unit: f64) -> LogReliability {
        match self {
            GridCost::Impossible => LogReliability::Impossible,
            GridCost::Finite(c) => LogReliability::Finite(unit * c as f64),
        }
    }
}

/// A path's per-state integer costs; the DP table key. Ordering is
/// lexicographic with `Impossible` smallest, which also defines the
/// deterministic tie-break at the sink.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CostVector(pub Vec<GridCost>);

impl CostVector {
    pub fn zeros(d: usize) -> Self {
        CostVector(vec![GridCost::Finite(0); d])
    }

    pub(crate) fn plus(&self, edge_costs: &[GridCost]) -> CostVector {
        CostVector(
            self.0
                .iter()
                .zip(edge_costs)
                .map(|(&a, &b)| a.add(b))
                .collect(),
        )
    }

    /// Component-wise domination: `self` is at least as good everywhere and
    /// strictly better somewhere (`Impossible` being the worst value).
    pub fn dominates(&self, other: &CostVector) -> bool {
        let mut strict = false;
        for (&a, &b) in self.0.iter().zip(&other.0) {
            if a < b {
                return false;
            }
            if a > b {
                strict = true;
            }
        }
        strict
    }
}

/// A network whose per-state log-reliabilities are exact integer multiples
/// of a grid unit. Costs are stored per edge in edge-list order; the base
/// network is retained so solvers can report true reliabilities.
#[derive(Debug, Clone)]
pub struct IntegerCostNetwork {
    pub base: Network,
    pub unit: f64,
    pub costs: Vec<Vec<GridCost>>,
}

impl IntegerCostNetwork {
    /// The grid-domain mixture objective of a sink cost vector:
    /// `sum_k prior[k] * exp(unit * c_k)`.
    pub fn grid_objective(&self, vector: &CostVector) -> f64 {
        self.base
            .prior
            .iter()
            .zip(&vector.0)
            .map(|(&p, &c)| p * c.to_log(self.unit).exp())
            .sum()
    }
}

/// Back-pointer for one table entry: the edge that produced it and the
/// predecessor entry it extends.
#[derive(Debug, Clone)]
pub struct BackPointer {
    pub edge: usize,
    pub from: usize,
    pub prev: CostVector,
}

/// One table entry: the retained path's per-state conditional reliabilities
/// (accumulated edge by edge along the path, so they are bitwise what
/// `path_reliability` recomputes) and how the path reaches this vertex.
/// Among paths sharing a cost vector, the one with componentwise-largest
/// products is retained; the first arrival wins when incomparable.
#[derive(Debug, Clone)]
pub struct Entry {
    pub products: Vec<f64>,
    pub back: Option<BackPointer>,
}

/// The DP table: per vertex, a map from realized cost vector to its
/// retained entry (the source's zero vector has no back-pointer).
pub type DpTable = Vec<BTreeMap<CostVector, Entry>>;

/// Converts a real-valued network to grid costs, requiring every finite
/// log-reliability to already lie on the grid: within `1e-9` of an integer
/// multiple of `unit`. Off-grid values are errors naming the edge and state;
/// use [`crate::approx::coarsen`] to round instead.
pub fn quantize_exact(net: &Network, unit: f64) -> Result<IntegerCostNetwork> {
    if !(unit > 0.0) {
        return Err(Error::BadParameter(format!(
            "grid unit must be positive, got {unit}"
        )));
    }
    let mut costs = Vec::with_capacity(net.edges.len());
    for edge in &net.edges {
        let mut per_state = Vec::with_capacity(edge.reliability.len());
        for (state, &r) in edge.reliability.iter().enumerate() {
            if r == 0.0 {
                per_state.push(GridCost::Impossible);
                continue;
            }
            let log_value = r.ln();
            let rounded = (log_value / unit).round();
            let offset = (log_value - rounded * unit).abs();
            if offset > 1e-9 {
                return Err(Error::OffGrid {
                    edge: edge.id.clone(),
                    state,
                    log_value,
                    unit,
                    offset,
                });
            }
            per_state.push(GridCost::Finite(rounded as i64));
        }
        costs.push(per_state);
    }
    Ok(IntegerCostNetwork {
        base: net.clone(),
        unit,
        costs,
    })
}

/// Options for [`dp_solve_with`].
#[derive(Debug, Clone)]
pub struct DpOptions {
    /// Apply Pareto dominance pruning at each vertex before expanding it.
    /// Sound for the mixture objective, which is nondecreasing in every
    /// cost component; provided as a switch for fidelity experiments.
    pub prune: bool,
    /// Abort with a resource error when the table grows past this many
    /// entries in total.
    pub table_limit: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            prune: true,
            table_limit: DEFAULT_TABLE_LIMIT,
        }
    }
}

/// Removes every cost vector Pareto-dominated by another vector at the same
/// vertex. The mixture objective is nondecreasing in every component, so a
/// dominated vector can never beat its dominator downstream and the optimal
/// value is unchanged.
pub fn dominance_prune(slice: &mut BTreeMap<CostVector, Entry>) {
    let keys: Vec<CostVector> = slice.keys().cloned().collect();
    for candidate in &keys {
        if keys.iter().any(|other| other.dominates(candidate)) {
            slice.remove(candidate);
        }
    }
}

/// Runs the exact DP with default options (pruning on).
pub fn dp_solve(icnet: &IntegerCostNetwork) -> Result<SolveResult> {
    dp_solve_with(icnet, &DpOptions::default())
}

/// Builds the cost-vector table in topological order and returns the most
/// reliable of the sink entries, with reliability recomputed from the base
/// network's stored probabilities, not from the grid. Ties at the sink go
/// to the lexicographically largest cost vector.
pub fn dp_solve_with(icnet: &IntegerCostNetwork, opts: &DpOptions) -> Result<SolveResult> {
    let (table, index) = build_table(icnet, opts)?;
    let sink = index.vertex_of[icnet.base.sink.as_str()];

    let mut best: Option<(&CostVector, f64)> = None;
    // descending key order: on reliability ties the lexicographically
    // largest vector is seen first and kept
    for (vector, entry) in table[sink].iter().rev() {
        let reliability = mixture(&icnet.base.prior, &entry.products);
        let better = match best {
            None => true,
            Some((_, incumbent)) => reliability > incumbent,
        };
        if better {
            best = Some((vector, reliability));
        }
    }
    let Some((vector, _)) = best else {
        return Ok(SolveResult {
            path: None,
            reliability: 0.0,
            method: Method::Dp,
        });
    };

    let path = reconstruct(&table, &index, sink, vector);
    let reliability = icnet.base.path_reliability(&path)?;
    Ok(SolveResult {
        path: Some(path),
        reliability,
        method: Method::Dp,
    })
}

/// Builds the full table (for solvers and for tests that inspect it).
/// Entries map realized cost vectors to the back-pointer that first reached
/// them; the returned table is indexed by vertex-list position.
pub fn dp_table(icnet: &IntegerCostNetwork, opts: &DpOptions) -> Result<DpTable> {
    build_table(icnet, opts).map(|(table, _)| table)
}

fn build_table<'a>(
    icnet: &'a IntegerCostNetwork,
    opts: &DpOptions,
) -> Result<(DpTable, NetworkIndex<'a>)> {
    let net = &icnet.base;
    let order_names = net.topo_order()?;
    let index = NetworkIndex::new(net)?;
    let order: Vec<usize> = order_names
        .iter()
        .map(|name| index.vertex_of[name.as_str()])
        .collect();

    let mut table: DpTable = vec![BTreeMap::new(); net.vertices.len()];
    table[index.source()].insert(
        CostVector::zeros(net.state_count),
        Entry {
            products: vec![1.0; net.state_count],
            back: None,
        },
    );
    let mut total_entries = 1usize;

    for &u in &order {
        if opts.prune {
            dominance_prune(&mut table[u]);
        }
        if table[u].is_empty() {
            continue;
        }
        // expanding u never touches table[u] again: edges go forward in
        // topological order
        let entries: Vec<(CostVector, Vec<f64>)> = table[u]
            .iter()
            .map(|(vector, entry)| (vector.clone(), entry.products.clone()))
            .collect();
        for &e in &index.out_edges[u] {
            let v = index.vertex_of[net.edges[e].to.as_str()];
            for (vector, products) in &entries {
                let next = vector.plus(&icnet.costs[e]);
                let mut next_products = products.clone();
                for (p, &r) in next_products.iter_mut().zip(&net.edges[e].reliability) {
                    *p *= r;
                }
                let candidate = Entry {
                    products: next_products,
                    back: Some(BackPointer {
                        edge: e,
                        from: u,
                        prev: vector.clone(),
                    }),
                };
                match table[v].entry(next) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(candidate);
                        total_entries += 1;
                        if total_entries > opts.table_limit {
                            return Err(Error::ResourceLimit(format!(
                                "cost-vector table exceeded {} entries",
                                opts.table_limit
                            )));
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        if componentwise_above(&candidate.products, &slot.get().products) {
                            slot.insert(candidate);
                        }
                    }
                }
            }
        }
    }
    Ok((table, index))
}

/// `a >= b` everywhere and `a > b` somewhere: replacing `b`'s path with
/// `a`'s cannot lower any downstream product (float multiplication by a
/// nonnegative factor is monotone), so retention stays optimal.
fn componentwise_above(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

fn reconstruct(table: &DpTable, index: &NetworkIndex, sink: usize, vector: &CostVector) -> Path {
    let net = index.net;
    let mut edges_rev = Vec::new();
    let mut vertex = sink;
    let mut key = vector.clone();
    while let Some(Entry { back: Some(bp), .. }) = table[vertex].get(&key) {
        edges_rev.push(net.edges[bp.edge].id.clone());
        vertex = bp.from;
        key = bp.prev.clone();
    }
    edges_rev.reverse();
    Path {
        edge_ids: edges_rev,
    }
}
