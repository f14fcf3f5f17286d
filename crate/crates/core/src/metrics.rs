//! Network measures: degree, average degree, shortest-path distances, average
//! path length, diameter, and clustering.
//!
//! Distances are exact hop counts from one BFS per source node. Sources are
//! processed in parallel; path sums are integers, so the totals do not depend
//! on how work is split across threads. Clustering values are computed per
//! node in parallel and summed in node order.
//!
//! Conventions on top of the textbook formulas:
//!
//! * `L` is the mean over ordered pairs `(i, j)`, `i != j`, with a finite
//!   distance. The fully literal `sum_ij d_ij / N^2` is kept as `l_literal`;
//!   on a connected graph it equals `L * (N - 1) / N`.
//! * `D` is the largest finite pairwise distance.
//! * Directed clustering takes the union of in- and out-neighbors (size `k`),
//!   counts the directed links among them and divides by `k (k - 1)`.
//! * Nodes with fewer than two neighbors have clustering 0 and still count in
//!   the average.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LexnetError, Result};
use crate::graph::{Directedness, LexNetwork, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub directedness: Directedness,
    pub n: usize,
    pub k: usize,
    /// `2K/N` for undirected graphs, `K/N` for directed ones.
    pub avg_degree: f64,
    /// `2K/N`: mean of in-degree plus out-degree.
    pub avg_total_degree: f64,
    pub c: f64,
    pub l: Option<f64>,
    pub l_literal: Option<f64>,
    pub d: Option<u32>,
    pub reachable_pairs: u64,
    pub component_count: usize,
    pub largest_component_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree {
    pub in_degree: usize,
    pub out_degree: usize,
    pub total: usize,
}

/// BFS distances from one source. Targets that cannot be reached are left out.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceRow {
    pub source: NodeId,
    /// `(target, hops)` sorted by target.
    pub distances: Vec<(NodeId, u32)>,
    pub mean: Option<f64>,
}

/// Totals over all reachable ordered pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PathSummary {
    pub sum: u64,
    pub pairs: u64,
    pub max: u32,
}

impl PathSummary {
    fn merge(self, other: PathSummary) -> PathSummary {
        PathSummary {
            sum: self.sum + other.sum,
            pairs: self.pairs + other.pairs,
            max: self.max.max(other.max),
        }
    }
}

/// Compressed adjacency: successors for directed graphs, neighbors otherwise.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn forward(g: &LexNetwork) -> Csr {
        let mut offsets = Vec::with_capacity(g.n() + 1);
        let mut targets = Vec::with_capacity(if g.is_directed() { g.k() } else { 2 * g.k() });
        offsets.push(0);
        for u in g.nodes() {
            targets.extend(g.out_neighbors(u).iter().map(|v| v.0));
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }
}

struct Bfs {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![u32::MAX; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Leaves the visit order in `queue` and distances in `dist`; call
    /// `reset` before the next run.
    fn run(&mut self, csr: &Csr, source: usize) {
        self.queue.clear();
        self.dist[source] = 0;
        self.queue.push(source as u32);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let next = self.dist[u] + 1;
            for &v in csr.neighbors(u) {
                let slot = &mut self.dist[v as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    self.queue.push(v);
                }
            }
        }
    }

    fn summary(&self) -> PathSummary {
        let mut s = PathSummary::default();
        // queue[0] is the source itself
        for &v in &self.queue[1..] {
            let d = self.dist[v as usize];
            s.sum += u64::from(d);
            s.max = s.max.max(d);
        }
        s.pairs = (self.queue.len() - 1) as u64;
        s
    }

    fn reset(&mut self) {
        for &v in &self.queue {
            self.dist[v as usize] = u32::MAX;
        }
    }
}

fn check_node(g: &LexNetwork, node: NodeId) -> Result<()> {
    if node.index() < g.n() {
        Ok(())
    } else {
        Err(LexnetError::NodeOutOfRange { node, n: g.n() })
    }
}

pub fn degree(g: &LexNetwork, node: NodeId) -> Result<Degree> {
    check_node(g, node)?;
    let out_degree = g.out_neighbors(node).len();
    Ok(if g.is_directed() {
        let in_degree = g.in_neighbors(node).len();
        Degree {
            in_degree,
            out_degree,
            total: in_degree + out_degree,
        }
    } else {
        Degree {
            in_degree: out_degree,
            out_degree,
            total: out_degree,
        }
    })
}

/// Average degree as tabulated: `2K/N` undirected, `K/N` directed.
pub fn avg_degree(g: &LexNetwork) -> Result<f64> {
    if g.n() == 0 {
        return Err(LexnetError::EmptyGraph);
    }
    let factor = if g.is_directed() { 1.0 } else { 2.0 };
    Ok(factor * g.k() as f64 / g.n() as f64)
}

/// `2K/N` regardless of direction.
pub fn avg_total_degree(g: &LexNetwork) -> Result<f64> {
    if g.n() == 0 {
        return Err(LexnetError::EmptyGraph);
    }
    Ok(2.0 * g.k() as f64 / g.n() as f64)
}

/// Lazily yields one [`DistanceRow`] per source node, in node order.
pub fn all_pairs_distances(g: &LexNetwork) -> impl Iterator<Item = DistanceRow> {
    let csr = Csr::forward(g);
    let mut bfs = Bfs::new(csr.len());
    (0..csr.len()).map(move |src| {
        bfs.run(&csr, src);
        let mut distances: Vec<(NodeId, u32)> = bfs.queue[1..]
            .iter()
            .map(|&v| (NodeId(v), bfs.dist[v as usize]))
            .collect();
        distances.sort_unstable_by_key(|&(v, _)| v);
        let s = bfs.summary();
        bfs.reset();
        DistanceRow {
            source: NodeId(src as u32),
            mean: (s.pairs > 0).then(|| s.sum as f64 / s.pairs as f64),
            distances,
        }
    })
}

/// Sum, count and maximum of all finite pairwise distances.
pub fn path_summary(g: &LexNetwork) -> PathSummary {
    let csr = Csr::forward(g);
    let n = csr.len();
    (0..n)
        .into_par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, src| {
                bfs.run(&csr, src);
                let s = bfs.summary();
                bfs.reset();
                s
            },
        )
        .reduce(PathSummary::default, PathSummary::merge)
}

fn mean_path(s: &PathSummary) -> Result<f64> {
    if s.pairs == 0 {
        return Err(LexnetError::NoPaths);
    }
    Ok(s.sum as f64 / s.pairs as f64)
}

pub fn avg_path_length(g: &LexNetwork) -> Result<f64> {
    mean_path(&path_summary(g))
}

pub fn diameter(g: &LexNetwork) -> Result<u32> {
    let s = path_summary(g);
    if s.pairs == 0 {
        return Err(LexnetError::NoPaths);
    }
    Ok(s.max)
}

struct Marks {
    stamp: Vec<u32>,
    current: u32,
    members: Vec<u32>,
}

impl Marks {
    fn new(n: usize) -> Self {
        Marks {
            stamp: vec![0; n],
            current: 0,
            members: Vec::new(),
        }
    }

    fn clustering(&mut self, g: &LexNetwork, node: NodeId) -> f64 {
        self.current += 1;
        self.members.clear();
        let cur = self.current;
        for &v in g.out_neighbors(node).iter().chain(g.in_neighbors(node)) {
            let slot = &mut self.stamp[v.index()];
            if *slot != cur {
                *slot = cur;
                self.members.push(v.0);
            }
        }
        let k = self.members.len();
        if k < 2 {
            return 0.0;
        }
        let mut hits = 0u64;
        for &u in &self.members {
            for w in g.out_neighbors(NodeId(u)) {
                if self.stamp[w.index()] == cur {
                    hits += 1;
                }
            }
        }
        // Undirected: each link among neighbors was seen from both ends, so
        // hits = 2E and hits / k(k-1) is 2E / k(k-1). Directed: hits = E.
        hits as f64 / (k * (k - 1)) as f64
    }
}

pub fn local_clustering(g: &LexNetwork, node: NodeId) -> Result<f64> {
    check_node(g, node)?;
    Ok(Marks::new(g.n()).clustering(g, node))
}

/// Clustering of every node, in node order.
pub fn local_clustering_all(g: &LexNetwork) -> Vec<f64> {
    let n = g.n();
    (0..n as u32)
        .into_par_iter()
        .map_init(|| Marks::new(n), |marks, u| marks.clustering(g, NodeId(u)))
        .collect()
}

pub fn avg_clustering(g: &LexNetwork) -> Result<f64> {
    if g.n() == 0 {
        return Err(LexnetError::EmptyGraph);
    }
    Ok(mean_in_order(&local_clustering_all(g)))
}

fn mean_in_order(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Weakly connected components: `(count, size of the largest)`.
pub fn weak_components(g: &LexNetwork) -> (usize, usize) {
    let n = g.n();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for &(u, v) in g.links() {
        let (a, b) = (find(&mut parent, u.0), find(&mut parent, v.0));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut sizes = vec![0usize; n];
    for x in 0..n as u32 {
        let r = find(&mut parent, x);
        sizes[r as usize] += 1;
    }
    let count = sizes.iter().filter(|&&s| s > 0).count();
    (count, sizes.into_iter().max().unwrap_or(0))
}

/// Every measure at once. A graph without any connected pair gets `None` for
/// `l`, `l_literal` and `d`; the diagnostics are always filled in.
pub fn compute_metrics(g: &LexNetwork) -> MetricsRecord {
    let n = g.n();
    let paths = path_summary(g);
    let (component_count, largest_component_size) = weak_components(g);
    let defined = paths.pairs > 0;
    MetricsRecord {
        directedness: g.directedness(),
        n,
        k: g.k(),
        avg_degree: avg_degree(g).unwrap_or(0.0),
        avg_total_degree: avg_total_degree(g).unwrap_or(0.0),
        c: if n == 0 {
            0.0
        } else {
            mean_in_order(&local_clustering_all(g))
        },
        l: mean_path(&paths).ok(),
        l_literal: defined.then(|| paths.sum as f64 / (n as f64 * n as f64)),
        d: defined.then_some(paths.max),
        reachable_pairs: paths.pairs,
        component_count,
        largest_component_size,
    }
}
