//! Host graphs, demand multigraphs, path systems, and the realization
//! verifier that the rest of the toolkit trusts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::Error;

/// The simple graph supplying capacity-1 edges.
///
/// Vertices are dense integers `0..n`. For the bipartite kind the left side
/// is `0..a` and the right side is `a..a+b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HostGraph {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Explicit { n: usize, edges: BTreeSet<(usize, usize)> },
}

impl HostGraph {
    pub fn complete(n: usize) -> Self {
        HostGraph::Complete { n }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        HostGraph::CompleteBipartite { a, b }
    }

    /// Builds an explicit host, normalizing each pair to `u < v`.
    /// Loops and out-of-range endpoints are rejected; duplicates collapse.
    pub fn explicit(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let w = u.max(v);
            if w >= n {
                return Err(Error::VertexOutOfRange { v: w, n });
            }
            edges.insert((u.min(v), u.max(v)));
        }
        Ok(HostGraph::Explicit { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n,
            HostGraph::CompleteBipartite { a, b } => a + b,
            HostGraph::Explicit { n, .. } => n,
        }
    }

    /// Total over u≠v; false for loops and out-of-range vertices.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.vertex_count() || v >= self.vertex_count() {
            return false;
        }
        match self {
            HostGraph::Complete { .. } => true,
            HostGraph::CompleteBipartite { a, .. } => (u < *a) != (v < *a),
            HostGraph::Explicit { edges, .. } => edges.contains(&(u.min(v), u.max(v))),
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n * (n - 1) / 2,
            HostGraph::CompleteBipartite { a, b } => a * b,
            HostGraph::Explicit { ref edges, .. } => edges.len(),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            HostGraph::Complete { n } => {
                let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
                for u in 0..*n {
                    for v in u + 1..*n {
                        out.push((u, v));
                    }
                }
                out
            }
            HostGraph::CompleteBipartite { a, b } => {
                let mut out = Vec::with_capacity(a * b);
                for u in 0..*a {
                    for v in *a..*a + *b {
                        out.push((u, v));
                    }
                }
                out
            }
            HostGraph::Explicit { edges, .. } => edges.iter().copied().collect(),
        }
    }
}

/// One aggregated demand entry: `mult` parallel demand edges between `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandEdge {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
}

/// Multigraph of endpoint pairs to be connected, on the host's vertex set.
///
/// Entries are normalized `u < v`, pair-unique, and sorted; parallel copies
/// are kept as multiplicities and expanded to instances only when routing
/// or verifying.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandGraph {
    n: usize,
    edges: Vec<DemandEdge>,
}

/// A single routable demand edge copy, in canonical (pair, copy) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instance {
    pub u: usize,
    pub v: usize,
    pub copy: u32,
}

impl DemandGraph {
    /// Normalizes an arbitrary entry list: orientation fixed to `u < v`,
    /// duplicate pairs merged by summing multiplicities, entries sorted.
    /// Zero-multiplicity entries are dropped.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self, Error> {
        let mut merged: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (u, v, mult) in entries {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let w = u.max(v);
            if w >= n {
                return Err(Error::VertexOutOfRange { v: w, n });
            }
            if mult == 0 {
                continue;
            }
            *merged.entry((u.min(v), u.max(v))).or_insert(0) += mult;
        }
        Ok(DemandGraph {
            n,
            edges: merged
                .into_iter()
                .map(|((u, v), mult)| DemandEdge { u, v, mult })
                .collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[DemandEdge] {
        &self.edges
    }

    /// e(D): total number of demand edge instances.
    pub fn edge_total(&self) -> usize {
        self.edges.iter().map(|e| e.mult as usize).sum()
    }

    /// Δ(D): multiplicity-weighted maximum degree; 0 for empty demand.
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            deg[e.u] += e.mult as usize;
            deg[e.v] += e.mult as usize;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Expands to instances ordered by (u, v) lexicographic, then copy index.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::with_capacity(self.edge_total());
        for e in &self.edges {
            for copy in 0..e.mult {
                out.push(Instance { u: e.u, v: e.v, copy });
            }
        }
        out
    }

    /// Image of the demand under a vertex permutation (`perm[old] = new`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "permutation has length {} but demand has {} vertices",
                perm.len(),
                self.n
            )));
        }
        DemandGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| (perm[e.u], perm[e.v], e.mult)),
        )
    }
}

/// One host path per demand edge instance, aligned with the canonical
/// instance order of the demand graph it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    paths: Vec<Vec<usize>>,
}

impl PathSystem {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathSystem { paths }
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Total host edges consumed (sum of path lengths).
    pub fn total_edge_use(&self) -> usize {
        self.paths.iter().map(|p| p.len().saturating_sub(1)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Path endpoints do not match the demand instance at this position.
    EndpointMismatch { instance: usize },
    /// A consecutive pair of the path is not a host edge (loops included).
    NonHostEdge { instance: usize, pair: (usize, usize) },
    /// A host edge occurs in more than one path position system-wide.
    EdgeReused { pair: (usize, usize) },
    /// Number of paths differs from e(D).
    InstanceCountMismatch { expected: usize, actual: usize },
    /// The vertex sequence revisits a vertex (walks are rejected).
    NotSimplePath { instance: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// path length → number of paths of that length, counted only for
    /// structurally well-formed paths (host edges, no vertex repeats).
    pub length_histogram: BTreeMap<usize, usize>,
}

/// Checks a claimed realization. All failures are reported, never thrown;
/// the report is valid iff the violation list is empty.
pub fn verify_realization(
    host: &HostGraph,
    demand: &DemandGraph,
    paths: &PathSystem,
) -> RealizationReport {
    let instances = demand.instances();
    let mut violations = Vec::new();
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();

    // Endpoint checks are positional and only meaningful when the counts
    // line up; a short or long system reports the count mismatch instead.
    let aligned = paths.len() == instances.len();
    if !aligned {
        violations.push(Violation::InstanceCountMismatch {
            expected: instances.len(),
            actual: paths.len(),
        });
    }

    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, path) in paths.paths().iter().enumerate() {
        let mut well_formed = path.len() >= 2;

        // Structure: consecutive pairs must be distinct host edges.
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !host.has_edge(a, b) {
                violations.push(Violation::NonHostEdge {
                    instance: i,
                    pair: (a.min(b), a.max(b)),
                });
                well_formed = false;
            }
        }

        // Simple paths only: no vertex may repeat.
        let mut seen = BTreeSet::new();
        if !path.iter().all(|&v| seen.insert(v)) {
            violations.push(Violation::NotSimplePath { instance: i });
            well_formed = false;
        }

        if let Some(inst) = instances.get(i).filter(|_| aligned) {
            let (first, last) = match (path.first(), path.last()) {
                (Some(&f), Some(&l)) if path.len() >= 2 => (f, l),
                _ => (usize::MAX, usize::MAX),
            };
            let forward = first == inst.u && last == inst.v;
            let backward = first == inst.v && last == inst.u;
            if !forward && !backward {
                violations.push(Violation::EndpointMismatch { instance: i });
            }
        }

        // Global edge-disjointness (also catches repeats within one path).
        for w in path.windows(2) {
            let pair = (w[0].min(w[1]), w[0].max(w[1]));
            if w[0] != w[1] && !used.insert(pair) {
                violations.push(Violation::EdgeReused { pair });
            }
        }

        if well_formed {
            *histogram.entry(path.len() - 1).or_insert(0) += 1;
        }
    }

    RealizationReport {
        valid: violations.is_empty(),
        violations,
        length_histogram: histogram,
    }
}
