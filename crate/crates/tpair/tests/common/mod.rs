//! Shared test support: an independent brute-force realizability oracle and
//! exhaustive enumerators for small hosts and demands.
//!
//! The oracle deliberately shares no code with the solver: it enumerates
//! every assignment of edge-disjoint simple paths by plain recursion, with
//! no ordering heuristics, counting pruning, or budgets.

use std::collections::BTreeSet;

use tpair::graph::{DemandGraph, HostGraph};

/// All simple paths from `from` to `to` avoiding `used` edges.
fn all_paths(
    host: &HostGraph,
    from: usize,
    to: usize,
    used: &BTreeSet<(usize, usize)>,
) -> Vec<Vec<usize>> {
    fn walk(
        host: &HostGraph,
        to: usize,
        used: &BTreeSet<(usize, usize)>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *current.last().unwrap();
        for next in 0..host.vertex_count() {
            if current.contains(&next) || !host.has_edge(last, next) {
                continue;
            }
            let e = (last.min(next), last.max(next));
            if used.contains(&e) {
                continue;
            }
            current.push(next);
            if next == to {
                out.push(current.clone());
            } else {
                walk(host, to, used, current, out);
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    walk(host, to, used, &mut vec![from], &mut out);
    out
}

pub fn brute_force_realizable(host: &HostGraph, demand: &DemandGraph) -> bool {
    fn assign(
        host: &HostGraph,
        instances: &[(usize, usize)],
        used: &mut BTreeSet<(usize, usize)>,
    ) -> bool {
        let Some(&(u, v)) = instances.first() else {
            return true;
        };
        for path in all_paths(host, u, v, used) {
            let edges: Vec<(usize, usize)> = path
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            for &e in &edges {
                used.insert(e);
            }
            if assign(host, &instances[1..], used) {
                return true;
            }
            for &e in &edges {
                used.remove(&e);
            }
        }
        false
    }
    let instances: Vec<(usize, usize)> = demand
        .instances()
        .into_iter()
        .map(|i| (i.u, i.v))
        .collect();
    assign(host, &instances, &mut BTreeSet::new())
}

/// Every demand multigraph on `n` vertices with e(D) ≤ `max_total` and per
/// pair multiplicity ≤ `max_mult`.
pub fn all_demands(n: usize, max_total: u32, max_mult: u32) -> Vec<DemandGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize, u32)> = Vec::new();
    fn fill(
        pairs: &[(usize, usize)],
        idx: usize,
        budget: u32,
        max_mult: u32,
        n: usize,
        current: &mut Vec<(usize, usize, u32)>,
        out: &mut Vec<DemandGraph>,
    ) {
        if idx == pairs.len() {
            out.push(DemandGraph::new(n, current.iter().copied()).unwrap());
            return;
        }
        for mult in 0..=max_mult.min(budget) {
            if mult > 0 {
                current.push((pairs[idx].0, pairs[idx].1, mult));
            }
            fill(pairs, idx + 1, budget - mult, max_mult, n, current, out);
            if mult > 0 {
                current.pop();
            }
        }
    }
    fill(&pairs, 0, max_total, max_mult, n, &mut current, &mut out);
    out
}

/// All explicit hosts on `n` vertices, one representative per isomorphism
/// class (canonical form = lexicographically smallest edge bitmask over all
/// vertex permutations).
pub fn all_hosts_up_to_iso(n: usize) -> Vec<HostGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let bit = |u: usize, v: usize, pairs: &[(usize, usize)]| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = perms
            .iter()
            .map(|perm| {
                let mut m = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        m |= 1 << bit(perm[u], perm[v], &pairs);
                    }
                }
                m
            })
            .min()
            .unwrap();
        if canonical == mask {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            out.push(HostGraph::explicit(n, edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}
