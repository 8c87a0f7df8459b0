//! Exact decision procedure for realizability plus a fast greedy realizer.
//!
//! The search expands the demand to instances in canonical (pair, copy)
//! order, maintains the residual host edge set, and routes one instance at
//! a time by enumerating simple paths length-ascending, then lexicographic.
//! Everything is deterministic for a fixed config.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::constructions::canonical_triples;
use crate::graph::{DemandGraph, HostGraph, Instance, PathSystem};
use crate::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const DEFAULT_GREEDY_RETRIES: u32 = 32;

#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Longest path to consider; `None` means n−1 (complete search).
    pub max_path_len: Option<usize>,
    /// Search node budget; one node per attempted path placement.
    pub node_budget: u64,
    /// Counting-based refutation before search and pruning inside it.
    pub use_counting_prune: bool,
    /// Seed for a randomized instance routing order; `None` = canonical.
    pub randomize: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_path_len: None,
            node_budget: DEFAULT_NODE_BUDGET,
            use_counting_prune: true,
            randomize: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Realizable(PathSystem),
    NotRealizable {
        /// The full search tree (paths up to max_path_len) was explored.
        search_exhausted: bool,
        /// Pure counting refuted the instance before any search.
        refuted_by_counting: bool,
    },
    /// Node budget hit before a decision was reached.
    Exhausted,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

struct Residual {
    n: usize,
    present: Vec<bool>,
    remaining: usize,
}

impl Residual {
    fn from_host(host: &HostGraph) -> Self {
        let n = host.vertex_count();
        let mut present = vec![false; n * n];
        let mut remaining = 0;
        for (u, v) in host.edges() {
            present[u * n + v] = true;
            present[v * n + u] = true;
            remaining += 1;
        }
        Residual { n, present, remaining }
    }

    #[inline]
    fn has(&self, u: usize, v: usize) -> bool {
        self.present[u * self.n + v]
    }

    #[inline]
    fn take(&mut self, u: usize, v: usize) {
        debug_assert!(self.has(u, v));
        self.present[u * self.n + v] = false;
        self.present[v * self.n + u] = false;
        self.remaining -= 1;
    }

    #[inline]
    fn put(&mut self, u: usize, v: usize) {
        self.present[u * self.n + v] = true;
        self.present[v * self.n + u] = true;
        self.remaining += 1;
    }

    fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has(u, v)).count()
    }
}

/// Minimum residual edges the unrouted instances still need: one per
/// instance, two once the pair's direct edge is missing or spoken for.
fn remaining_lower_bound(residual: &Residual, instances: &[Instance], from: usize) -> usize {
    let mut bound = 0;
    let mut i = from;
    while i < instances.len() {
        let Instance { u, v, .. } = instances[i];
        let mut count = 1;
        while i + count < instances.len()
            && instances[i + count].u == u
            && instances[i + count].v == v
        {
            count += 1;
        }
        bound += if residual.has(u, v) {
            1 + 2 * (count - 1)
        } else {
            2 * count
        };
        i += count;
    }
    bound
}

/// Triangle-family detection: demand equals `triangle_demand(n, q)` on the
/// canonical triples, for some even q. Returns q when it does.
fn triangle_family_q(demand: &DemandGraph) -> Option<usize> {
    let n = demand.vertex_count();
    if n == 0 || n % 3 != 0 || demand.edges().len() != n {
        return None;
    }
    let mult = demand.edges().first()?.mult;
    let triples = canonical_triples(n).ok()?;
    for e in demand.edges() {
        if e.mult != mult || triples.triple_of(e.u) != triples.triple_of(e.v) {
            return None;
        }
    }
    Some(2 * mult as usize)
}

enum SearchResult {
    Found,
    Exhausted,
    BudgetHit,
}

struct Search<'a> {
    residual: Residual,
    instances: &'a [Instance],
    /// Routing order: positions into `instances`.
    order: &'a [usize],
    paths: Vec<Vec<usize>>,
    max_path_len: usize,
    node_budget: u64,
    use_counting_prune: bool,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn route(&mut self, depth: usize) -> SearchResult {
        if depth == self.order.len() {
            return SearchResult::Found;
        }
        if self.use_counting_prune {
            // Instances still ahead of us, in canonical order so that same
            // pairs stay adjacent for the direct-edge reservation bound.
            let ahead: Vec<Instance> = self.order[depth..]
                .iter()
                .map(|&i| self.instances[i])
                .collect();
            if remaining_lower_bound(&self.residual, &ahead, 0) > self.residual.remaining {
                return SearchResult::Exhausted;
            }
        }
        let inst = self.instances[self.order[depth]];
        let max_len = self.max_path_len;
        for len in 1..=max_len {
            let mut prefix = vec![inst.u];
            match self.extend(depth, &mut prefix, inst.v, len) {
                SearchResult::Found => return SearchResult::Found,
                SearchResult::BudgetHit => return SearchResult::BudgetHit,
                SearchResult::Exhausted => {}
            }
        }
        SearchResult::Exhausted
    }

    /// Grows `prefix` by exactly `remaining` more edges to reach `target`,
    /// trying next vertices in ascending order.
    fn extend(
        &mut self,
        depth: usize,
        prefix: &mut Vec<usize>,
        target: usize,
        remaining: usize,
    ) -> SearchResult {
        let last = *prefix.last().unwrap();
        if remaining == 1 {
            if !self.residual.has(last, target) {
                return SearchResult::Exhausted;
            }
            self.nodes += 1;
            if self.nodes > self.node_budget {
                return SearchResult::BudgetHit;
            }
            let mut path = prefix.clone();
            path.push(target);
            for w in path.windows(2) {
                self.residual.take(w[0], w[1]);
            }
            self.paths.push(path.clone());
            let result = self.route(depth + 1);
            if matches!(result, SearchResult::Exhausted) {
                self.paths.pop();
                for w in path.windows(2) {
                    self.residual.put(w[0], w[1]);
                }
            }
            return result;
        }
        for w in 0..self.residual.n {
            if w == target || !self.residual.has(last, w) || prefix.contains(&w) {
                continue;
            }
            prefix.push(w);
            match self.extend(depth, prefix, target, remaining - 1) {
                SearchResult::Exhausted => {
                    prefix.pop();
                }
                other => return other,
            }
        }
        SearchResult::Exhausted
    }
}

/// Sound and complete within budget: a `Realizable` outcome carries a
/// certificate in canonical instance order; `NotRealizable` with
/// `search_exhausted` means no system with paths of length ≤ max_path_len
/// exists (unconditional when max_path_len = n−1).
pub fn decide_realizable(
    host: &HostGraph,
    demand: &DemandGraph,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, Error> {
    let start = Instant::now();
    if demand.vertex_count() != host.vertex_count() {
        return Err(Error::DimensionMismatch {
            demand: demand.vertex_count(),
            host: host.vertex_count(),
        });
    }
    let n = host.vertex_count();
    let instances = demand.instances();

    if cfg.use_counting_prune {
        let residual = Residual::from_host(host);
        let mut refuted =
            remaining_lower_bound(&residual, &instances, 0) > residual.remaining;
        if !refuted {
            if let HostGraph::Complete { .. } = host {
                if let Some(q) = triangle_family_q(demand) {
                    refuted = !bounds::counting_feasible(n, q)?;
                }
            }
        }
        if refuted {
            return Ok(SolveOutcome {
                status: SolveStatus::NotRealizable {
                    search_exhausted: false,
                    refuted_by_counting: true,
                },
                nodes_explored: 0,
                elapsed: start.elapsed(),
            });
        }
    }

    let mut order: Vec<usize> = (0..instances.len()).collect();
    if let Some(seed) = cfg.randomize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }

    let mut search = Search {
        residual: Residual::from_host(host),
        instances: &instances,
        order: &order,
        paths: Vec::with_capacity(instances.len()),
        max_path_len: cfg.max_path_len.unwrap_or(n.saturating_sub(1)).max(1),
        node_budget: cfg.node_budget,
        use_counting_prune: cfg.use_counting_prune,
        nodes: 0,
    };
    let result = search.route(0);
    let nodes_explored = search.nodes;
    let status = match result {
        SearchResult::Found => {
            // Undo the routing-order permutation before emitting.
            let mut canonical = vec![Vec::new(); instances.len()];
            for (slot, path) in order.iter().zip(search.paths) {
                canonical[*slot] = path;
            }
            SolveStatus::Realizable(PathSystem::new(canonical))
        }
        SearchResult::Exhausted => SolveStatus::NotRealizable {
            search_exhausted: true,
            refuted_by_counting: false,
        },
        SearchResult::BudgetHit => SolveStatus::Exhausted,
    };
    Ok(SolveOutcome {
        status,
        nodes_explored,
        elapsed: start.elapsed(),
    })
}

/// Heuristic realizer: direct edges, then cherries, then shortest residual
/// paths; on failure, seeded retries over permuted instance orders. Never
/// returns a certificate that fails verification; deterministic per seed.
pub fn greedy_realize(
    host: &HostGraph,
    demand: &DemandGraph,
    seed: Option<u64>,
    retries: u32,
) -> Result<Option<PathSystem>, Error> {
    if demand.vertex_count() != host.vertex_count() {
        return Err(Error::DimensionMismatch {
            demand: demand.vertex_count(),
            host: host.vertex_count(),
        });
    }
    let instances = demand.instances();
    let canonical: Vec<usize> = (0..instances.len()).collect();
    if let Some(paths) = greedy_attempt(host, &instances, &canonical) {
        return Ok(Some(paths));
    }
    let base = seed.unwrap_or(0);
    for attempt in 0..retries {
        let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(attempt as u64));
        let mut order = canonical.clone();
        order.shuffle(&mut rng);
        if let Some(paths) = greedy_attempt(host, &instances, &order) {
            return Ok(Some(paths));
        }
    }
    Ok(None)
}

fn greedy_attempt(
    host: &HostGraph,
    instances: &[Instance],
    order: &[usize],
) -> Option<PathSystem> {
    let n = host.vertex_count();
    let mut residual = Residual::from_host(host);
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; instances.len()];

    // Phase 1: direct edges.
    for &i in order {
        let Instance { u, v, .. } = instances[i];
        if residual.has(u, v) {
            residual.take(u, v);
            paths[i] = Some(vec![u, v]);
        }
    }
    // Phase 2: cherries through the best-connected middle.
    for &i in order {
        if paths[i].is_some() {
            continue;
        }
        let Instance { u, v, .. } = instances[i];
        let middle = (0..n)
            .filter(|&w| w != u && w != v && residual.has(u, w) && residual.has(w, v))
            .max_by_key(|&w| (residual.degree(w), std::cmp::Reverse(w)));
        if let Some(w) = middle {
            residual.take(u, w);
            residual.take(w, v);
            paths[i] = Some(vec![u, w, v]);
        }
    }
    // Phase 3: shortest residual path.
    for &i in order {
        if paths[i].is_some() {
            continue;
        }
        let Instance { u, v, .. } = instances[i];
        let path = shortest_residual_path(&residual, u, v)?;
        for w in path.windows(2) {
            residual.take(w[0], w[1]);
        }
        paths[i] = Some(path);
    }
    Some(PathSystem::new(
        paths.into_iter().map(|p| p.unwrap()).collect(),
    ))
}

/// BFS in the residual graph, ascending neighbor order for determinism.
fn shortest_residual_path(residual: &Residual, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = residual.n;
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    prev[from] = from;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in 0..n {
            if residual.has(u, w) && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bipartite_one_factor_demand, one_factor_demand, triangle_demand};
    use crate::graph::verify_realization;

    fn decide(host: &HostGraph, demand: &DemandGraph) -> SolveOutcome {
        decide_realizable(host, demand, &SolveConfig::default()).unwrap()
    }

    #[test]
    fn triangle_3_2_realizable_by_direct_edges() {
        let host = HostGraph::complete(3);
        let demand = triangle_demand(3, 2).unwrap();
        let out = decide(&host, &demand);
        match out.status {
            SolveStatus::Realizable(paths) => {
                assert!(paths.paths().iter().all(|p| p.len() == 2));
                assert!(verify_realization(&host, &demand, &paths).valid);
            }
            other => panic!("expected realizable, got {other:?}"),
        }
    }

    #[test]
    fn triangle_6_4_not_realizable() {
        let host = HostGraph::complete(6);
        let demand = triangle_demand(6, 4).unwrap();
        let out = decide(&host, &demand);
        match out.status {
            SolveStatus::NotRealizable {
                search_exhausted,
                refuted_by_counting,
            } => assert!(search_exhausted || refuted_by_counting),
            other => panic!("expected not realizable, got {other:?}"),
        }
    }

    #[test]
    fn triangle_9_4_realizable() {
        let host = HostGraph::complete(9);
        let demand = triangle_demand(9, 4).unwrap();
        let out = decide(&host, &demand);
        match out.status {
            SolveStatus::Realizable(paths) => {
                assert!(verify_realization(&host, &demand, &paths).valid);
            }
            other => panic!("expected realizable, got {other:?}"),
        }
    }

    #[test]
    fn search_without_counting_prune_agrees() {
        let host = HostGraph::complete(6);
        let demand = triangle_demand(6, 4).unwrap();
        let cfg = SolveConfig {
            use_counting_prune: false,
            ..SolveConfig::default()
        };
        let out = decide_realizable(&host, &demand, &cfg).unwrap();
        assert!(matches!(
            out.status,
            SolveStatus::NotRealizable { search_exhausted: true, .. }
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported_as_exhausted() {
        let host = HostGraph::complete(9);
        let demand = triangle_demand(9, 4).unwrap();
        let cfg = SolveConfig {
            node_budget: 3,
            ..SolveConfig::default()
        };
        let out = decide_realizable(&host, &demand, &cfg).unwrap();
        assert!(matches!(out.status, SolveStatus::Exhausted));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let host = HostGraph::complete(6);
        let demand = triangle_demand(9, 4).unwrap();
        assert!(matches!(
            decide_realizable(&host, &demand, &SolveConfig::default()),
            Err(Error::DimensionMismatch { demand: 9, host: 6 })
        ));
    }

    #[test]
    fn determinism_nodes_and_certificate() {
        let host = HostGraph::complete(9);
        let demand = triangle_demand(9, 4).unwrap();
        let a = decide(&host, &demand);
        let b = decide(&host, &demand);
        assert_eq!(a.nodes_explored, b.nodes_explored);
        assert_eq!(a.status, b.status);
    }

    #[test]
    fn one_factor_6_2_realizable() {
        let host = HostGraph::complete(6);
        let demand = one_factor_demand(6, 2).unwrap();
        let out = decide(&host, &demand);
        match out.status {
            SolveStatus::Realizable(paths) => {
                assert!(verify_realization(&host, &demand, &paths).valid);
                // 3 direct + 3 cherries: 9 host edges out of 15.
                assert_eq!(paths.total_edge_use(), 9);
            }
            other => panic!("expected realizable, got {other:?}"),
        }
    }

    #[test]
    fn one_factor_4_2_not_realizable() {
        // Edge budget forces directs 01, 23 plus two cherries using the four
        // remaining K4 edges, and every cherry pair shares an edge.
        let host = HostGraph::complete(4);
        let demand = one_factor_demand(4, 2).unwrap();
        assert!(matches!(
            decide(&host, &demand).status,
            SolveStatus::NotRealizable { search_exhausted: true, .. }
        ));
    }

    #[test]
    fn bipartite_matching_realizable() {
        for n in [3, 6] {
            let host = HostGraph::complete_bipartite(n, n);
            let demand = bipartite_one_factor_demand(n).unwrap();
            let out = decide(&host, &demand);
            match out.status {
                SolveStatus::Realizable(paths) => {
                    assert!(verify_realization(&host, &demand, &paths).valid);
                }
                other => panic!("expected realizable at n={n}, got {other:?}"),
            }
        }
    }

    #[test]
    fn greedy_solves_small_triangles() {
        let host = HostGraph::complete(3);
        let demand = triangle_demand(3, 2).unwrap();
        let paths = greedy_realize(&host, &demand, None, 0).unwrap().unwrap();
        assert!(paths.paths().iter().all(|p| p.len() == 2));
        assert!(verify_realization(&host, &demand, &paths).valid);
    }

    #[test]
    fn greedy_solves_triangle_9_4() {
        let host = HostGraph::complete(9);
        let demand = triangle_demand(9, 4).unwrap();
        let paths = greedy_realize(&host, &demand, Some(0), DEFAULT_GREEDY_RETRIES)
            .unwrap()
            .expect("direct + cherry phases should suffice");
        assert!(verify_realization(&host, &demand, &paths).valid);
    }

    #[test]
    fn greedy_fails_cleanly_on_triangle_6_4() {
        let host = HostGraph::complete(6);
        let demand = triangle_demand(6, 4).unwrap();
        assert!(greedy_realize(&host, &demand, Some(0), 8).unwrap().is_none());
    }

    #[test]
    fn triangle_family_detection() {
        assert_eq!(triangle_family_q(&triangle_demand(9, 4).unwrap()), Some(4));
        assert_eq!(triangle_family_q(&one_factor_demand(6, 2).unwrap()), None);
        let relabeled = triangle_demand(9, 4)
            .unwrap()
            .relabel(&crate::constructions::seeded_permutation(9, 1))
            .unwrap();
        // A scrambled labeling no longer matches the canonical triples.
        assert_eq!(triangle_family_q(&relabeled), None);
    }

    #[test]
    fn relabeling_preserves_verdicts() {
        for seed in [1, 2] {
            let host = HostGraph::complete(9);
            let demand = triangle_demand(9, 4)
                .unwrap()
                .relabel(&crate::constructions::seeded_permutation(9, seed))
                .unwrap();
            let out = decide(&host, &demand);
            assert!(matches!(out.status, SolveStatus::Realizable(_)));
        }
    }
}
