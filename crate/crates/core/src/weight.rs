//! Affine weights in Dynkin labels with explicit depth bookkeeping.
//!
//! An affine weight `lambda + k Lambda_0 - M delta` is stored as its labels
//! `a_0..a_N` together with the depth `M`. The level `k` is recovered from
//! the labels; `delta` has all labels zero, so it is carried only by `depth`.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::One;

use crate::algebra::{classify_component, diagram_components, AffineAlgebra};
use crate::error::{Error, Result};

pub const DEFAULT_STEP_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    pub labels: Vec<i64>,
    pub depth: i64,
}

impl AffineWeight {
    pub fn new(labels: Vec<i64>, depth: i64) -> Self {
        AffineWeight { labels, depth }
    }

    pub fn finite_part(&self) -> FiniteWeight {
        FiniteWeight::new(self.labels[1..].to_vec())
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 0)
    }
}

/// Weight of the horizontal algebra, labels `a_1..a_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeight {
    pub labels: Vec<i64>,
}

impl FiniteWeight {
    pub fn new(labels: Vec<i64>) -> Self {
        FiniteWeight { labels }
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.labels.iter().all(|&a| a >= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenResult {
    pub dominant: AffineWeight,
    /// Reflection indices in the order they were applied.
    pub word: Vec<usize>,
    pub steps: u64,
}

impl AffineAlgebra {
    /// `rho-hat`: every label 1, depth 0.
    pub fn weyl_vector(&self) -> AffineWeight {
        AffineWeight::new(vec![1; self.nodes()], 0)
    }

    #[inline]
    pub(crate) fn reflect_in_place(&self, labels: &mut [i64], depth: &mut i64, i: usize) {
        let a = labels[i];
        if a == 0 {
            return;
        }
        for (k, l) in labels.iter_mut().enumerate() {
            *l -= a * self.affine.cartan[k][i];
        }
        if i == 0 {
            *depth += a;
        }
    }

    /// Simple reflection `s_i`: subtracts `a_i` times the labels of `alpha_i`.
    pub fn reflect(&self, w: &AffineWeight, i: usize) -> AffineWeight {
        let mut out = w.clone();
        self.reflect_in_place(&mut out.labels, &mut out.depth, i);
        out
    }

    /// Applies `word[0]` first.
    pub fn apply_word(&self, w: &AffineWeight, word: &[usize]) -> AffineWeight {
        let mut out = w.clone();
        for &i in word {
            self.reflect_in_place(&mut out.labels, &mut out.depth, i);
        }
        out
    }

    pub fn level(&self, w: &AffineWeight) -> i64 {
        w.labels
            .iter()
            .zip(&self.affine.comarks)
            .map(|(a, c)| a * c)
            .sum()
    }

    /// Level of the Weyl vector, the comark sum.
    pub fn weyl_level(&self) -> i64 {
        self.affine.dual_coxeter
    }

    pub(crate) fn finite_norm_scaled(&self, labels: &[i64]) -> i64 {
        let g = &self.gram_scaled;
        let mut total = 0i64;
        for (i, &a) in labels.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row: i64 = labels.iter().zip(&g[i]).map(|(b, x)| b * x).sum();
            total += a * row;
        }
        total
    }

    /// `(f, f)` with the horizontal gram matrix.
    pub fn finite_norm(&self, f: &FiniteWeight) -> Rational64 {
        Rational64::new(self.finite_norm_scaled(&f.labels), self.gram_denominator)
    }

    /// Depth at which a finite part can occur in the orbit of the Weyl
    /// vector: `((f,f) - (rho,rho)) / (2 k)`, if a nonnegative integer.
    pub fn depth_from_norm(&self, f: &FiniteWeight) -> Option<i64> {
        let diff = self.finite_norm_scaled(&f.labels) - self.rho_norm_scaled;
        let den = 2 * self.weyl_level() * self.gram_denominator;
        (diff >= 0 && diff % den == 0).then(|| diff / den)
    }

    /// Lifts a finite weight to the level of the Weyl vector.
    pub fn embed(&self, f: &FiniteWeight, depth: i64) -> AffineWeight {
        let c = &self.affine.comarks;
        let rest: i64 = f.labels.iter().zip(&c[1..]).map(|(a, k)| a * k).sum();
        debug_assert_eq!(c[0], 1);
        let mut labels = Vec::with_capacity(self.nodes());
        labels.push(self.weyl_level() - rest);
        labels.extend_from_slice(&f.labels);
        AffineWeight::new(labels, depth)
    }

    pub fn straighten(&self, w: &AffineWeight) -> Result<StraightenResult> {
        self.straighten_bounded(w, DEFAULT_STEP_BOUND)
    }

    /// Reflects at the smallest index with a negative label until dominant.
    pub fn straighten_bounded(&self, w: &AffineWeight, bound: u64) -> Result<StraightenResult> {
        let level = self.level(w);
        if level <= 0 {
            return Err(Error::NonPositiveLevel(level));
        }
        let mut labels = w.labels.clone();
        let mut depth = w.depth;
        let mut word = Vec::new();
        let mut steps = 0u64;
        while let Some(i) = labels.iter().position(|&a| a < 0) {
            if steps >= bound {
                return Err(Error::NonTermination(bound));
            }
            self.reflect_in_place(&mut labels, &mut depth, i);
            word.push(i);
            steps += 1;
        }
        Ok(StraightenResult {
            dominant: AffineWeight::new(labels, depth),
            word,
            steps,
        })
    }

    /// Size of the horizontal Weyl orbit of a dominant finite weight:
    /// `|W| / |W_J|` with `W_J` generated by the reflections fixing it.
    pub fn finite_orbit_size(&self, f: &FiniteWeight) -> Result<BigUint> {
        if !f.is_dominant() {
            return Err(Error::NonDominant(f.labels.clone()));
        }
        let fixed: Vec<usize> = (0..f.labels.len()).filter(|&i| f.labels[i] == 0).collect();
        let cartan = &self.horizontal.finite_cartan;
        let mut stab = BigUint::one();
        for comp in diagram_components(cartan, &fixed) {
            stab *= classify_component(cartan, &comp)?.weyl_order();
        }
        Ok(self.weyl_order() / stab)
    }
}
