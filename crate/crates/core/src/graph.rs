//! Per-person directed mobility graphs and their node-layer descriptors:
//! trip entropy, trip Gini, and global/mean-local clustering on the
//! undirected simple projection.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::CodeId;
use crate::error::{CoreError, Result};
use crate::ingest::Trip;

/// Directed multigraph of purpose nodes; edges are OD purpose pairs with
/// trip counts accumulated over the observation period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobilityGraph {
    pub nodes: BTreeSet<CodeId>,
    pub edge_counts: BTreeMap<(CodeId, CodeId), u64>,
}

impl MobilityGraph {
    pub fn from_trips(trips: &[Trip]) -> Result<Self> {
        if trips.is_empty() {
            return Err(CoreError::EmptyPerson);
        }
        let mut edge_counts: BTreeMap<(CodeId, CodeId), u64> = BTreeMap::new();
        let mut nodes = BTreeSet::new();
        for trip in trips {
            nodes.insert(trip.origin_purpose);
            nodes.insert(trip.dest_purpose);
            *edge_counts
                .entry((trip.origin_purpose, trip.dest_purpose))
                .or_insert(0) += 1;
        }
        Ok(MobilityGraph { nodes, edge_counts })
    }

    pub fn from_edges(edges: &[(CodeId, CodeId, u64)]) -> Self {
        let mut edge_counts = BTreeMap::new();
        let mut nodes = BTreeSet::new();
        for &(o, d, c) in edges {
            nodes.insert(o);
            nodes.insert(d);
            *edge_counts.entry((o, d)).or_insert(0) += c;
        }
        MobilityGraph { nodes, edge_counts }
    }

    /// Number of distinct OD purpose pairs.
    pub fn n_pairs(&self) -> usize {
        self.edge_counts.len()
    }

    /// Total trip count.
    pub fn total_trips(&self) -> u64 {
        self.edge_counts.values().sum()
    }
}

/// Shannon entropy (bits) of the OD-pair frequency vector. Bounded by
/// log2(N); zero when all trips share one OD pair.
pub fn trip_entropy(graph: &MobilityGraph) -> f64 {
    let total = graph.total_trips() as f64;
    debug_assert!(total >= 1.0);
    let mut h = 0.0;
    for &count in graph.edge_counts.values() {
        if count == 0 {
            continue;
        }
        let p = count as f64 / total;
        h -= p * p.log2();
    }
    h.max(0.0)
}

/// Gini coefficient of OD-pair counts; 0 is perfect equality.
pub fn trip_gini(graph: &MobilityGraph) -> f64 {
    let mut counts: Vec<u64> = graph.edge_counts.values().copied().collect();
    counts.sort_unstable();
    let n = counts.len() as f64;
    let total: u64 = counts.iter().sum();
    let t = total as f64;
    debug_assert!(t >= 1.0);
    let mut cumulative = 0u64;
    let mut cum_sum = 0.0;
    for c in counts {
        cumulative += c;
        cum_sum += cumulative as f64;
    }
    1.0 + 1.0 / n - (2.0 / (n * t)) * cum_sum
}

/// Undirected simple projection: direction and multiplicity collapsed,
/// self-loops removed. Nodes that only carried self-loops stay as isolated
/// vertices so the local-clustering mean keeps its full denominator.
#[derive(Debug, Clone)]
pub struct UndirectedProjection {
    /// Ascending node ids.
    pub nodes: Vec<CodeId>,
    /// Neighbor sets, indexed like `nodes`.
    pub adjacency: Vec<BTreeSet<usize>>,
}

impl UndirectedProjection {
    pub fn from_graph(graph: &MobilityGraph) -> Self {
        let nodes: Vec<CodeId> = graph.nodes.iter().copied().collect();
        let index: BTreeMap<CodeId, usize> =
            nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut adjacency = vec![BTreeSet::new(); nodes.len()];
        for &(o, d) in graph.edge_counts.keys() {
            if o == d {
                continue;
            }
            let (i, j) = (index[&o], index[&d]);
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
        UndirectedProjection { nodes, adjacency }
    }

    pub fn from_undirected_edges(n_nodes: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![BTreeSet::new(); n_nodes];
        for &(i, j) in edges {
            if i == j {
                continue;
            }
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
        UndirectedProjection { nodes: (0..n_nodes).collect(), adjacency }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Number of triangles through node `v`.
    pub fn triangles_at(&self, v: usize) -> usize {
        let neighbors: Vec<usize> = self.adjacency[v].iter().copied().collect();
        let mut t = 0;
        for (a, &u) in neighbors.iter().enumerate() {
            for &w in &neighbors[a + 1..] {
                if self.adjacency[u].contains(&w) {
                    t += 1;
                }
            }
        }
        t
    }

    /// Connected-triplet (wedge) count: sum over nodes of C(k_v, 2).
    pub fn wedge_count(&self) -> u64 {
        (0..self.nodes.len())
            .map(|v| {
                let k = self.degree(v) as u64;
                k * (k.saturating_sub(1)) / 2
            })
            .sum()
    }

    /// Closed-triplet (triangle) count.
    pub fn triangle_count(&self) -> u64 {
        let per_node: u64 = (0..self.nodes.len()).map(|v| self.triangles_at(v) as u64).sum();
        debug_assert_eq!(per_node % 3, 0);
        per_node / 3
    }
}

/// Global clustering coefficient 3*triangles/wedges; 0 when the graph has
/// no wedges.
pub fn global_clustering(projection: &UndirectedProjection) -> f64 {
    let wedges = projection.wedge_count();
    if wedges == 0 {
        return 0.0;
    }
    3.0 * projection.triangle_count() as f64 / wedges as f64
}

/// Mean local clustering coefficient: average over all nodes of
/// 2*t_v/(k_v*(k_v-1)), with the per-node term 0 when degree < 2.
pub fn mean_local_clustering(projection: &UndirectedProjection) -> f64 {
    let n = projection.nodes.len();
    if n == 0 {
        return 0.0;
    }
    let sum: f64 = (0..n)
        .map(|v| {
            let k = projection.degree(v);
            if k < 2 {
                0.0
            } else {
                2.0 * projection.triangles_at(v) as f64 / (k as f64 * (k as f64 - 1.0))
            }
        })
        .sum();
    sum / n as f64
}
