//! Depth-graded census of the Weyl orbit of the Weyl vector.
//!
//! Two independent routes: [`bfs_orbit`] walks the orbit itself, and
//! [`count_via_permutation_weights`] only looks at dominant finite weights
//! and decides membership by straightening.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{AffineAlgebra, AlgebraId};
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::weight::{AffineWeight, FiniteWeight};

pub const DEFAULT_NODE_BUDGET: u128 = 100_000_000;

/// Environment variable consulted for the default node budget.
pub const NODE_BUDGET_ENV: &str = "QPOINCARE_NODE_BUDGET";

pub fn default_node_budget() -> u128 {
    std::env::var(NODE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// `|W_M(rho)|` for `M = 0..=max_depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthCensus {
    pub algebra: AlgebraId,
    pub max_depth: usize,
    pub counts: Vec<BigUint>,
    /// Permutation-weight counts; `c[0] = 1`.
    pub c: Vec<u64>,
}

impl DepthCensus {
    fn empty(algebra: AlgebraId, max_depth: usize) -> Self {
        DepthCensus {
            algebra,
            max_depth,
            counts: vec![BigUint::zero(); max_depth + 1],
            c: vec![0; max_depth + 1],
        }
    }
}

/// A dominant finite weight `lambda^+` such that
/// `lambda^+ + k Lambda_0 - M delta` lies in the orbit of the Weyl vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationWeightRecord {
    pub depth: i64,
    pub dominant: FiniteWeight,
    pub orbit_size: BigUint,
    /// Reflections taking the Weyl vector to the record, `word[0]` applied first.
    pub word: Vec<usize>,
}

impl PermutationWeightRecord {
    /// The word written as a product `sigma_{i1} sigma_{i2} ... sigma_{ik}`
    /// acting on the Weyl vector (rightmost factor acts first).
    pub fn sigma_word(&self) -> Vec<usize> {
        self.word.iter().rev().copied().collect()
    }

    pub fn affine_weight(&self, alg: &AffineAlgebra) -> AffineWeight {
        alg.embed(&self.dominant, self.depth)
    }
}

/// Output of the breadth-first walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOrbit {
    pub census: DepthCensus,
    /// `(depth, finite part)` of every visited node with a regular dominant
    /// finite part and positive depth, sorted.
    pub permutation_weights: Vec<(i64, FiniteWeight)>,
    pub nodes: u64,
}

fn check_budget(alg: &AffineAlgebra, max_depth: usize, budget: u128) -> Result<()> {
    let w = alg.weyl_order().to_u128().unwrap_or(u128::MAX);
    let required = w.saturating_mul(max_depth as u128 + 1);
    if required > budget {
        return Err(Error::NodeBudget { required, budget });
    }
    Ok(())
}

/// Exact census by breadth-first closure from the Weyl vector.
///
/// Only length-increasing reflections (`a_i > 0`) are followed, so layer `l`
/// holds exactly the orbit points of Weyl length `l` and deduplication per
/// layer is complete. Depth never decreases along such an edge, which makes
/// pruning at `max_depth` safe; this is checked on every edge.
pub fn bfs_orbit(alg: &AffineAlgebra, max_depth: usize, budget: u128) -> Result<BfsOrbit> {
    check_budget(alg, max_depth, budget)?;
    let n = alg.nodes();
    let max = max_depth as i64;
    let mut census = DepthCensus::empty(alg.id, max_depth);
    let mut perm = Vec::new();
    let mut layer: Vec<AffineWeight> = vec![alg.weyl_vector()];
    let mut nodes = 0u64;
    while !layer.is_empty() {
        let mut next: HashSet<AffineWeight> = HashSet::new();
        for w in &layer {
            nodes += 1;
            census.counts[w.depth as usize] += 1u32;
            if w.labels[1..].iter().all(|&a| a > 0) {
                census.c[w.depth as usize] += 1;
                if w.depth > 0 {
                    perm.push((w.depth, w.finite_part()));
                }
            }
            for i in 0..n {
                if w.labels[i] <= 0 {
                    continue;
                }
                let child = alg.reflect(w, i);
                if child.depth < w.depth {
                    return Err(Error::Internal(format!(
                        "depth decreased along a length-increasing edge at {w:?}"
                    )));
                }
                if child.depth <= max {
                    next.insert(child);
                }
            }
        }
        if nodes as u128 > budget {
            return Err(Error::NodeBudget {
                required: nodes as u128,
                budget,
            });
        }
        let mut v: Vec<AffineWeight> = next.into_iter().collect();
        v.sort_unstable();
        layer = v;
    }
    // each depth slice is a union of regular finite orbits
    let w = alg.weyl_order();
    for m in 0..=max_depth {
        if census.counts[m] != w * census.c[m] {
            return Err(Error::Internal(format!(
                "depth {m}: {} orbit points but {} permutation weights",
                census.counts[m], census.c[m]
            )));
        }
    }
    perm.sort();
    Ok(BfsOrbit {
        census,
        permutation_weights: perm,
        nodes,
    })
}

pub fn enumerate_bfs(alg: &AffineAlgebra, max_depth: usize, budget: u128) -> Result<DepthCensus> {
    Ok(bfs_orbit(alg, max_depth, budget)?.census)
}

/// Number of affine Weyl group elements of each length `0..=max_length`,
/// counted as orbit points of the (regular) Weyl vector.
pub fn length_census(alg: &AffineAlgebra, max_length: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(max_length + 1);
    let mut layer = vec![alg.weyl_vector()];
    for len in 0..=max_length {
        out.push(layer.len() as u64);
        if len == max_length {
            break;
        }
        let mut next = HashSet::new();
        for w in &layer {
            for i in 0..alg.nodes() {
                if w.labels[i] > 0 {
                    next.insert(alg.reflect(w, i));
                }
            }
        }
        layer = next.into_iter().collect();
    }
    out
}

/// Regular dominant finite weights of norm at most `(rho,rho) + 2k max_depth`,
/// paired with their depth from the norm relation (`None` if not integral).
///
/// Norms are coordinate-monotone on dominant weights because every gram
/// entry is positive, so the search raises one label at a time from 1 and
/// stops as soon as the partial norm (remaining labels at 1) exceeds the bound.
pub fn candidate_weights(
    alg: &AffineAlgebra,
    max_depth: usize,
) -> Vec<(FiniteWeight, Option<i64>)> {
    let n = alg.rank();
    let bound =
        alg.rho_norm_scaled + 2 * alg.weyl_level() * alg.gram_denominator * max_depth as i64;
    let mut labels = vec![1i64; n];
    let mut out = Vec::new();
    scan(alg, 0, &mut labels, bound, &mut out);
    out.into_iter()
        .map(|l| {
            let f = FiniteWeight::new(l);
            let d = alg.depth_from_norm(&f);
            (f, d)
        })
        .collect()
}

fn scan(
    alg: &AffineAlgebra,
    idx: usize,
    labels: &mut Vec<i64>,
    bound: i64,
    out: &mut Vec<Vec<i64>>,
) {
    if idx == labels.len() {
        out.push(labels.clone());
        return;
    }
    let mut v = 1;
    loop {
        labels[idx] = v;
        if alg.finite_norm_scaled(labels) > bound {
            break;
        }
        scan(alg, idx + 1, labels, bound, out);
        v += 1;
    }
    labels[idx] = 1;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationWeightCensus {
    pub census: DepthCensus,
    /// Sorted by `(depth, labels)`.
    pub records: Vec<PermutationWeightRecord>,
}

impl PermutationWeightCensus {
    pub fn records_at(&self, depth: i64) -> impl Iterator<Item = &PermutationWeightRecord> {
        self.records.iter().filter(move |r| r.depth == depth)
    }
}

fn test_candidate(
    alg: &AffineAlgebra,
    f: FiniteWeight,
    depth: i64,
) -> Result<Option<PermutationWeightRecord>> {
    let lifted = alg.embed(&f, 0);
    let s = alg.straighten(&lifted)?;
    if s.dominant.labels.iter().any(|&a| a != 1) {
        return Ok(None);
    }
    if s.dominant.depth != -depth {
        return Err(Error::Internal(format!(
            "{:?}: norm predicts depth {depth}, straightening gives {}",
            f.labels, -s.dominant.depth
        )));
    }
    let orbit_size = alg.finite_orbit_size(&f)?;
    let mut word = s.word;
    word.reverse();
    Ok(Some(PermutationWeightRecord {
        depth,
        dominant: f,
        orbit_size,
        word,
    }))
}

/// Census from permutation weights: `|W_M| = sum of finite orbit sizes` of
/// the dominant weights at depth `M` that straighten to the Weyl vector.
/// Never materializes the orbit.
pub fn count_via_permutation_weights(
    alg: &AffineAlgebra,
    max_depth: usize,
) -> Result<PermutationWeightCensus> {
    let candidates: Vec<(FiniteWeight, i64)> = candidate_weights(alg, max_depth)
        .into_iter()
        .filter_map(|(f, d)| {
            d.filter(|&m| m >= 1 && m <= max_depth as i64)
                .map(|m| (f, m))
        })
        .collect();
    let found: Result<Vec<Option<PermutationWeightRecord>>> = candidates
        .into_par_iter()
        .map(|(f, m)| test_candidate(alg, f, m))
        .collect();
    let mut records: Vec<PermutationWeightRecord> = found?.into_iter().flatten().collect();
    records.sort_by(|a, b| (a.depth, &a.dominant).cmp(&(b.depth, &b.dominant)));

    let mut census = DepthCensus::empty(alg.id, max_depth);
    census.counts[0] = alg.weyl_order().clone();
    census.c[0] = 1;
    for r in &records {
        census.counts[r.depth as usize] += &r.orbit_size;
        census.c[r.depth as usize] += 1;
    }
    Ok(PermutationWeightCensus { census, records })
}

pub fn census_to_series(census: &DepthCensus) -> QSeries {
    QSeries::from_coeffs(
        census.counts.iter().cloned().map(num_bigint::BigInt::from),
        census.max_depth,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> AffineAlgebra {
        AffineAlgebra::parse(s).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn bfs_a1_triangular() {
        let c = enumerate_bfs(&alg("A1~1"), 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c.counts, big(&[2, 2, 0, 2, 0, 0, 2, 0, 0, 0, 2]));
        assert_eq!(c.c, vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn depth_zero_is_the_finite_orbit() {
        for name in ["A3~1", "G2~1", "D4~3", "A4~2"] {
            let a = alg(name);
            let c = enumerate_bfs(&a, 0, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(c.counts, vec![a.weyl_order().clone()]);
            let p = count_via_permutation_weights(&a, 0).unwrap();
            assert_eq!(p.census, c);
        }
    }

    #[test]
    fn bfs_budget() {
        let e8 = alg("E8~1");
        assert!(matches!(
            enumerate_bfs(&e8, 6, DEFAULT_NODE_BUDGET),
            Err(Error::NodeBudget { .. })
        ));
        assert!(matches!(
            enumerate_bfs(&alg("A2~1"), 3, 10),
            Err(Error::NodeBudget { .. })
        ));
    }

    #[test]
    fn permw_a1() {
        let a = alg("A1~1");
        let p = count_via_permutation_weights(&a, 10).unwrap();
        let depths: Vec<i64> = p.records.iter().map(|r| r.depth).collect();
        assert_eq!(depths, vec![1, 3, 6, 10]);
        assert!(p
            .records
            .iter()
            .all(|r| r.orbit_size == BigUint::from(2u32)));
        assert_eq!(p.records[0].dominant.labels, vec![3]);
        assert_eq!(p.census.c, vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
        let short = count_via_permutation_weights(&a, 2).unwrap();
        assert_eq!(short.records.len(), 1);
    }

    #[test]
    fn permw_e6_depth_one_is_rho_plus_theta() {
        let e6 = alg("E6~1");
        let p = count_via_permutation_weights(&e6, 1).unwrap();
        assert_eq!(p.records.len(), 1);
        let r = &p.records[0];
        // theta = lambda_6 in Kac numbering (node 6 is attached to node 0)
        assert_eq!(r.dominant.labels, vec![1, 1, 1, 1, 1, 2]);
        assert_eq!(r.word, vec![0]);
    }

    #[test]
    fn records_replay_from_the_weyl_vector() {
        for name in ["E6~1", "A4~2", "G2~1", "D4~3"] {
            let a = alg(name);
            for r in count_via_permutation_weights(&a, 8).unwrap().records {
                let w = a.apply_word(&a.weyl_vector(), &r.word);
                assert_eq!(w, r.affine_weight(&a), "{name}");
                assert!(r.dominant.is_regular_dominant());
                assert_eq!(a.depth_from_norm(&r.dominant), Some(r.depth));
                assert_eq!(r.word.len(), r.sigma_word().len());
            }
        }
    }

    #[test]
    fn census_series() {
        let a = alg("A1~1");
        let c = enumerate_bfs(&a, 6, DEFAULT_NODE_BUDGET).unwrap();
        let s = census_to_series(&c);
        assert_eq!(s, QSeries::from_coeffs([2, 2, 0, 2, 0, 0, 2], 6));
        let c0 = enumerate_bfs(&a, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(census_to_series(&c0), QSeries::from_coeffs([2], 0));
    }

    #[test]
    fn length_census_of_affine_a1() {
        assert_eq!(length_census(&alg("A1~1"), 5), vec![1, 2, 2, 2, 2, 2]);
    }
}
