//! Closed-form counting bounds for the triangle and one-factor demand
//! families, in exact integer/rational arithmetic.
//!
//! `feasible_by_counting` is one-directional: `false` means the counting
//! argument refutes realizability, `true` only means "not refuted".
//!
//! The refutation chain counts every short realization (a single edge, or a
//! cherry inside its own triple) as using at least one host edge, which is
//! sound and slightly stronger than counting them as free. With e = nq/2 and
//! at most n short realizations, the number of inter-triple cherries in any
//! realization satisfies t2 ≥ 3e − 2n − n(n−1)/2 = n(3q−n−3)/2, the double
//! count gives Σ(αᵢ+βᵢ) = 2·t2, and some triple must carry 3(3q−n−3) of it,
//! against a capacity of 4(n/3 − 1).

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::Error;

/// Exact fraction for JSON output, always reduced with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl From<Ratio<i64>> for Frac {
    fn from(r: Ratio<i64>) -> Self {
        Frac { num: *r.numer(), den: *r.denom() }
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceLines {
    /// n/(4+2√3), the known realizability threshold; display-only float.
    pub cs_lower: f64,
    /// n/3, the best known lower bound on q for complete hosts.
    pub tpc_lower: Frac,
    /// n/4, the bipartite realizability threshold.
    pub bip_lower: Frac,
    /// n/3, the bipartite one-factor upper threshold.
    pub bip_upper: Frac,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub q: usize,
    pub e_demand: i64,
    pub host_edges: i64,
    /// Lower bound on the number of length-2 paths: max(0, ⌈n(3q−n−5)/2⌉).
    pub t_min: i64,
    /// Lower bound on Σ(αᵢ+βᵢ): max(0, n(3q−n−5)).
    pub sum_alpha_beta_min: i64,
    /// Pigeonhole per-triple load: max(0, 3(3q−n−5)).
    pub per_triangle_min: i64,
    /// Cherry capacity of one triple against all others: 4(n/3 − 1).
    pub pair_cap_total: i64,
    pub feasible_by_counting: bool,
    pub q_max_triangle: Frac,
    pub q_max_one_factor: Frac,
    pub reference_lines: ReferenceLines,
}

fn check_triangle_params(n: usize, q: usize) -> Result<(i64, i64), Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    if q == 0 || q % 2 != 0 {
        return Err(Error::OddMultiplicity(q));
    }
    Ok((n as i64, q as i64))
}

/// General capacity check: total edge use of the histogram must fit into
/// the n(n−1)/2 host edges. The histogram must account for all nq/2
/// instances.
pub fn edge_count_feasible(
    n: usize,
    q: usize,
    lengths: &BTreeMap<usize, usize>,
) -> Result<bool, Error> {
    let (n, q) = check_triangle_params(n, q)?;
    let total: i64 = lengths.values().map(|&c| c as i64).sum();
    let expected = n * q / 2;
    if total != expected {
        return Err(Error::HistogramMismatch { total, expected });
    }
    let edge_use: i64 = lengths.iter().map(|(&l, &c)| (l as i64) * (c as i64)).sum();
    Ok(edge_use <= n * (n - 1) / 2)
}

/// t ≥ n(3q−n−5)/2, clamped at zero.
pub fn cherry_lower_bound(n: usize, q: usize) -> Result<i64, Error> {
    let (n, q) = check_triangle_params(n, q)?;
    let raw = n * (3 * q - n - 5);
    Ok(((raw + 1).div_euclid(2)).max(0))
}

/// 13n/27 + 1 as an exact rational.
pub fn triangle_q_upper_bound(n: usize) -> Result<Ratio<i64>, Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    Ok(Ratio::new(13 * n as i64, 27) + Ratio::from_integer(1))
}

/// n/2 as an exact rational; the one-factor family forces q ≤ n/2.
pub fn one_factor_q_upper_bound(n: usize) -> Result<Ratio<i64>, Error> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddVertexCount(n));
    }
    Ok(Ratio::new(n as i64, 2))
}

/// 4(n/3 − 1): demand edges of one triple solvable via cherries against all
/// other triples (at most 4 per pair of triples, 9 inter edges each).
pub fn pair_cherry_capacity(n: usize) -> Result<i64, Error> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotDivisibleBy3(n));
    }
    Ok(4 * (n as i64 / 3 - 1))
}

/// The minimum total edge use of any realization of the triangle family:
/// at most n instances can be short (≥ 1 edge each), the rest need ≥ 2.
fn min_edge_use(n: i64, e: i64) -> i64 {
    e + (e - n).max(0)
}

/// Counting refutation for the triangle family, see the module docs for the
/// exact chain. Returns true iff the argument does not refute (n, q).
pub fn counting_feasible(n: usize, q: usize) -> Result<bool, Error> {
    let (n, q) = check_triangle_params(n, q)?;
    let e = n * q / 2;
    let host = n * (n - 1) / 2;
    if min_edge_use(n, e) > host {
        return Ok(false);
    }
    let per_triangle = 3 * (3 * q - n - 3);
    if per_triangle > 4 * (n / 3 - 1) {
        return Ok(false);
    }
    Ok(true)
}

pub fn bounds_report(n: usize, q: usize) -> Result<BoundsReport, Error> {
    let (ni, qi) = check_triangle_params(n, q)?;
    let e = ni * qi / 2;
    Ok(BoundsReport {
        n,
        q,
        e_demand: e,
        host_edges: ni * (ni - 1) / 2,
        t_min: cherry_lower_bound(n, q)?,
        sum_alpha_beta_min: (ni * (3 * qi - ni - 5)).max(0),
        per_triangle_min: (3 * (3 * qi - ni - 5)).max(0),
        pair_cap_total: pair_cherry_capacity(n)?,
        feasible_by_counting: counting_feasible(n, q)?,
        q_max_triangle: triangle_q_upper_bound(n)?.into(),
        q_max_one_factor: Ratio::new(ni, 2).into(),
        reference_lines: reference_lines(n),
    })
}

pub fn reference_lines(n: usize) -> ReferenceLines {
    ReferenceLines {
        cs_lower: n as f64 / (4.0 + 2.0 * 3.0_f64.sqrt()),
        tpc_lower: Ratio::new(n as i64, 3).into(),
        bip_lower: Ratio::new(n as i64, 4).into(),
        bip_upper: Ratio::new(n as i64, 3).into(),
    }
}
