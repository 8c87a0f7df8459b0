//! Generators for the extremal demand families and the triple partition
//! they are built on.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::DemandGraph;
use crate::Error;

/// Partition of `0..n` into consecutive triples `{3i, 3i+1, 3i+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePartition {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TriplePartition {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    /// Index of the triple containing `v`.
    pub fn triple_of(&self, v: usize) -> usize {
        v / 3
    }
}

pub fn canonical_triples(n: usize) -> Result<TriplePartition, Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    let triples = (0..n / 3).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    Ok(TriplePartition { n, triples })
}

/// Perfect matching `(2i, 2i+1)` with every edge given multiplicity `q`.
pub fn one_factor_demand(n: usize, q: u32) -> Result<DemandGraph, Error> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddVertexCount(n));
    }
    if q == 0 {
        return Err(Error::InvalidInput("q must be positive".into()));
    }
    DemandGraph::new(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1, q)))
}

/// A triangle of multiplicity q/2 on each canonical triple; Δ(D) = q.
pub fn triangle_demand(n: usize, q: u32) -> Result<DemandGraph, Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    if q == 0 || q % 2 != 0 {
        return Err(Error::OddMultiplicity(q as usize));
    }
    let m = q / 2;
    let mut entries = Vec::with_capacity(n);
    for i in 0..n / 3 {
        let [a, b, c] = [3 * i, 3 * i + 1, 3 * i + 2];
        entries.push((a, b, m));
        entries.push((a, c, m));
        entries.push((b, c, m));
    }
    DemandGraph::new(n, entries)
}

/// Identity perfect matching of `K_{n,n}` with every edge at multiplicity
/// n/3, on vertex set `0..2n` (left `0..n`, right `n..2n`).
pub fn bipartite_one_factor_demand(n: usize) -> Result<DemandGraph, Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    let m = (n / 3) as u32;
    DemandGraph::new(2 * n, (0..n).map(|i| (i, n + i, m)))
}

/// Explicit realization of `triangle_demand(n, 4)` for n ≥ 9: one copy of
/// each edge routed directly, the second as a cherry through the next
/// triple cyclically, with distinct middles. Paths are in the canonical
/// instance order of the demand.
pub fn cyclic_cherry_witness(n: usize) -> Result<crate::graph::PathSystem, Error> {
    if n % 3 != 0 || n < 9 {
        return Err(Error::InvalidInput(format!(
            "cyclic cherry witness needs n divisible by 3 and at least 9, got {n}"
        )));
    }
    let mut paths = Vec::with_capacity(2 * n);
    for i in 0..n / 3 {
        let (a, b, c) = (3 * i, 3 * i + 1, 3 * i + 2);
        let j = (i + 1) % (n / 3);
        let (x, y, z) = (3 * j, 3 * j + 1, 3 * j + 2);
        paths.push(vec![a, b]);
        paths.push(vec![a, x, b]);
        paths.push(vec![a, c]);
        paths.push(vec![a, y, c]);
        paths.push(vec![b, c]);
        paths.push(vec![b, z, c]);
    }
    Ok(crate::graph::PathSystem::new(paths))
}

/// Deterministic vertex permutation for relabeling robustness checks.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perm.shuffle(&mut rng);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DemandGraph;

    #[test]
    fn one_factor_examples() {
        let d = one_factor_demand(2, 1).unwrap();
        assert_eq!(d.edges().len(), 1);
        assert_eq!((d.edges()[0].u, d.edges()[0].v, d.edges()[0].mult), (0, 1, 1));

        let d = one_factor_demand(6, 3).unwrap();
        let expect = DemandGraph::new(6, [(0, 1, 3), (2, 3, 3), (4, 5, 3)]).unwrap();
        assert_eq!(d, expect);
        assert_eq!(d.edge_total(), 9);

        let d = one_factor_demand(4, 2).unwrap();
        assert_eq!(d.max_degree(), 2);
        assert_eq!(d.edge_total(), 4);

        assert!(one_factor_demand(5, 2).is_err());
    }

    #[test]
    fn triangle_examples() {
        let d = triangle_demand(3, 2).unwrap();
        let expect = DemandGraph::new(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
        assert_eq!(d, expect);
        assert_eq!(d.edge_total(), 3);

        let d = triangle_demand(6, 4).unwrap();
        assert_eq!(d.edges().len(), 6);
        assert!(d.edges().iter().all(|e| e.mult == 2));
        assert_eq!(d.edge_total(), 12);
        assert_eq!(d.max_degree(), 4);

        let d = triangle_demand(27, 14).unwrap();
        assert_eq!(d.edge_total(), 189);
        assert_eq!(d.max_degree(), 14);

        assert!(triangle_demand(7, 2).is_err());
        assert!(triangle_demand(6, 3).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let d = bipartite_one_factor_demand(3).unwrap();
        let expect = DemandGraph::new(6, [(0, 3, 1), (1, 4, 1), (2, 5, 1)]).unwrap();
        assert_eq!(d, expect);

        let d = bipartite_one_factor_demand(6).unwrap();
        assert_eq!(d.edges().len(), 6);
        assert!(d.edges().iter().all(|e| e.mult == 2));
        assert_eq!(d.edge_total(), 12);

        let d = bipartite_one_factor_demand(9).unwrap();
        assert_eq!(d.max_degree(), 3);
        assert_eq!(d.edge_total(), 27);

        assert!(bipartite_one_factor_demand(4).is_err());
    }

    #[test]
    fn canonical_triples_examples() {
        assert_eq!(canonical_triples(3).unwrap().triples(), &[[0, 1, 2]]);
        assert_eq!(
            canonical_triples(6).unwrap().triples(),
            &[[0, 1, 2], [3, 4, 5]]
        );
        let t = canonical_triples(9).unwrap();
        assert_eq!(t.triple_count(), 3);
        let mut seen = vec![false; 9];
        for triple in t.triples() {
            for &v in triple {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
        assert!(canonical_triples(10).is_err());
    }

    #[test]
    fn families_witness_their_degree() {
        for (n, q) in [(6, 2), (12, 4), (30, 10)] {
            assert_eq!(one_factor_demand(n, q).unwrap().max_degree(), q as usize);
        }
        for (n, q) in [(3, 2), (9, 4), (27, 14)] {
            assert_eq!(triangle_demand(n, q).unwrap().max_degree(), q as usize);
            assert_eq!(
                triangle_demand(n, q).unwrap().edge_total(),
                n * q as usize / 2
            );
        }
    }

    #[test]
    fn triangle_edges_stay_inside_one_triple() {
        for (n, q) in [(9, 4), (12, 6), (27, 14)] {
            let d = triangle_demand(n, q).unwrap();
            let t = canonical_triples(n).unwrap();
            for e in d.edges() {
                assert_eq!(t.triple_of(e.u), t.triple_of(e.v));
            }
        }
    }

    #[test]
    fn bipartite_edges_cross_partition() {
        for n in [3, 6, 9, 12] {
            let d = bipartite_one_factor_demand(n).unwrap();
            for e in d.edges() {
                assert!(e.u < n && e.v >= n);
            }
        }
    }

    #[test]
    fn seeded_permutation_is_deterministic() {
        assert_eq!(seeded_permutation(9, 7), seeded_permutation(9, 7));
        let mut p = seeded_permutation(9, 7);
        p.sort_unstable();
        assert_eq!(p, (0..9).collect::<Vec<_>>());
    }
}
