//! Cherry statistics of a concrete realization of the triangle family, and
//! the per-instance counting assertions they must satisfy.
//!
//! α and β count demand edge instances: a length-2 path whose middle vertex
//! lies outside the demand edge's own triple contributes once to the β of
//! its own triple and once to the α of the middle's triple, so
//! Σ(αᵢ+βᵢ) = 2·t2_inter exactly. Cherries with the middle inside the own
//! triple go into `short_realizations` instead.

use serde::Serialize;

use crate::bounds::cherry_lower_bound;
use crate::constructions::TriplePartition;
use crate::graph::{DemandGraph, PathSystem};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CherryStats {
    /// All length-2 paths.
    pub t: usize,
    /// Length-2 paths whose middle vertex lies outside the own triple.
    pub t2_inter: usize,
    /// α_i: instances of other triples realized as cherries with middle in T_i.
    pub alpha: Vec<usize>,
    /// β_i: instances of T_i realized as cherries with middle outside T_i.
    pub beta: Vec<usize>,
    /// Entry (i, j): cherries realizing an instance of T_i with middle in T_j.
    pub pair_cherries: Vec<Vec<usize>>,
    /// Instances realized by one edge or a cherry inside the own triple.
    pub short_realizations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub passed: bool,
    pub failed_assertions: Vec<String>,
}

/// Classifies the paths of a valid realization of an intra-triple demand.
///
/// Structural mismatches (wrong counts, wrong endpoints, walks) and demand
/// edges crossing triples are rejected; full host-edge verification is the
/// caller's job via `verify_realization`.
pub fn classify_paths(
    demand: &DemandGraph,
    triples: &TriplePartition,
    paths: &PathSystem,
) -> Result<CherryStats, Error> {
    if triples.vertex_count() != demand.vertex_count() {
        return Err(Error::DimensionMismatch {
            demand: demand.vertex_count(),
            host: triples.vertex_count(),
        });
    }
    let instances = demand.instances();
    if paths.len() != instances.len() {
        return Err(Error::InvalidInput(format!(
            "realization has {} paths for {} demand instances",
            paths.len(),
            instances.len()
        )));
    }
    let k = triples.triple_count();
    let mut stats = CherryStats {
        t: 0,
        t2_inter: 0,
        alpha: vec![0; k],
        beta: vec![0; k],
        pair_cherries: vec![vec![0; k]; k],
        short_realizations: 0,
    };
    for (inst, path) in instances.iter().zip(paths.paths()) {
        if path.len() < 2 {
            return Err(Error::InvalidInput("degenerate path".into()));
        }
        let (first, last) = (path[0], *path.last().unwrap());
        if !(first == inst.u && last == inst.v) && !(first == inst.v && last == inst.u) {
            return Err(Error::InvalidInput(format!(
                "path endpoints ({first}, {last}) do not match instance ({}, {})",
                inst.u, inst.v
            )));
        }
        let own = triples.triple_of(inst.u);
        if triples.triple_of(inst.v) != own {
            return Err(Error::InvalidInput(format!(
                "demand edge ({}, {}) crosses triples",
                inst.u, inst.v
            )));
        }
        match path.len() - 1 {
            1 => stats.short_realizations += 1,
            2 => {
                stats.t += 1;
                let mid = triples.triple_of(path[1]);
                if mid == own {
                    stats.short_realizations += 1;
                } else {
                    stats.t2_inter += 1;
                    stats.beta[own] += 1;
                    stats.alpha[mid] += 1;
                    stats.pair_cherries[own][mid] += 1;
                }
            }
            _ => {}
        }
    }
    Ok(stats)
}

/// Asserts the counting statements on a concrete realization of
/// `triangle_demand(n, q)`. Any genuine violation on a verified realization
/// indicates an implementation bug: these are theorems.
pub fn check_counting_argument(stats: &CherryStats, n: usize, q: usize) -> CountingReport {
    let mut failed = Vec::new();
    let k = stats.alpha.len();

    let sum_ab: usize = stats.alpha.iter().chain(stats.beta.iter()).sum();
    if sum_ab != 2 * stats.t2_inter {
        failed.push(format!(
            "double count: sum(alpha)+sum(beta) = {sum_ab} != 2*t2_inter = {}",
            2 * stats.t2_inter
        ));
    }

    let t_bound = if n % 3 == 0 && n > 0 && q % 2 == 0 && q > 0 {
        cherry_lower_bound(n, q).unwrap_or(0)
    } else {
        0
    };
    if (stats.t as i64) < t_bound {
        failed.push(format!(
            "cherry count: t = {} below lower bound {t_bound}",
            stats.t
        ));
    }

    if k > 0 {
        let max_ab = (0..k).map(|i| stats.alpha[i] + stats.beta[i]).max().unwrap();
        let pigeonhole = sum_ab.div_ceil(k);
        if max_ab < pigeonhole {
            failed.push(format!(
                "pigeonhole: max(alpha_i+beta_i) = {max_ab} below ceil({sum_ab}/{k}) = {pigeonhole}"
            ));
        }
    }

    for i in 0..k {
        for j in i + 1..k {
            let both = stats.pair_cherries[i][j] + stats.pair_cherries[j][i];
            if both > 4 {
                failed.push(format!(
                    "pair bound: {both} cherries between triples {i} and {j} (max 4)"
                ));
            }
        }
    }

    if stats.short_realizations > n {
        failed.push(format!(
            "short realizations: {} exceeds n = {n}",
            stats.short_realizations
        ));
    }

    CountingReport {
        passed: failed.is_empty(),
        failed_assertions: failed,
    }
}
