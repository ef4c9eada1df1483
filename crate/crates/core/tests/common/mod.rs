//! Property checks shared by the `properties` suite and the acceptance gate.
#![allow(dead_code)]

use affine_poincare::{AffineAlgebra, AffineWeight, AlgebraId, QSeries};
use num_rational::Rational64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

pub fn algebras() -> Vec<AffineAlgebra> {
    AlgebraId::supported(6)
        .into_iter()
        .map(|id| AffineAlgebra::new(id).unwrap())
        .collect()
}

pub fn algebra() -> impl Strategy<Value = AffineAlgebra> {
    prop::sample::select(algebras())
}

/// Arbitrary weight of an arbitrary algebra plus a node index.
pub fn weight_and_node() -> impl Strategy<Value = (AffineAlgebra, AffineWeight, usize)> {
    algebra().prop_flat_map(|alg| {
        let n = alg.nodes();
        (
            Just(alg),
            prop::collection::vec(-6i64..=6, n),
            -5i64..=5,
            0..n,
        )
            .prop_map(|(alg, labels, depth, i)| (alg, AffineWeight::new(labels, depth), i))
    })
}

/// A word of reflections of length at most 50.
pub fn algebra_and_word() -> impl Strategy<Value = (AffineAlgebra, Vec<usize>)> {
    algebra().prop_flat_map(|alg| {
        let n = alg.nodes();
        (Just(alg), prop::collection::vec(0..n, 0..=50))
    })
}

/// Weight with positive level.
pub fn positive_level_weight() -> impl Strategy<Value = (AffineAlgebra, AffineWeight)> {
    weight_and_node()
        .prop_map(|(alg, w, _)| (alg, w))
        .prop_filter("level must be positive", |(alg, w)| alg.level(w) > 0)
}

/// `(f, f) - 2 k M`, constant on orbits.
pub fn norm_invariant(alg: &AffineAlgebra, w: &AffineWeight) -> Rational64 {
    alg.finite_norm(&w.finite_part()) - Rational64::from_integer(2 * alg.level(w) * w.depth)
}

pub fn reflection_involution(
    alg: &AffineAlgebra,
    w: &AffineWeight,
    i: usize,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(&alg.reflect(&alg.reflect(w, i), i), w);
    Ok(())
}

pub fn level_invariance(
    alg: &AffineAlgebra,
    w: &AffineWeight,
    i: usize,
) -> Result<(), TestCaseError> {
    let r = alg.reflect(w, i);
    prop_assert_eq!(alg.level(&r), alg.level(w));
    prop_assert_eq!(norm_invariant(alg, &r), norm_invariant(alg, w));
    Ok(())
}

/// A random word moves the Weyl vector; straightening brings it back with a
/// word no longer than the one used, and replaying the word reverses it.
pub fn straighten_round_trip(alg: &AffineAlgebra, word: &[usize]) -> Result<(), TestCaseError> {
    let rho = alg.weyl_vector();
    let w = alg.apply_word(&rho, word);
    let s = alg
        .straighten(&w)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&s.dominant, &rho);
    prop_assert!(s.word.len() <= word.len());
    prop_assert_eq!(&alg.apply_word(&w, &s.word), &rho);
    let back: Vec<usize> = s.word.iter().rev().copied().collect();
    prop_assert_eq!(&alg.apply_word(&rho, &back), &w);
    Ok(())
}

/// Straightening an arbitrary positive-level weight ends dominant and
/// preserves level and the norm invariant.
pub fn straighten_general(alg: &AffineAlgebra, w: &AffineWeight) -> Result<(), TestCaseError> {
    let s = alg
        .straighten(w)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(s.dominant.is_dominant());
    prop_assert_eq!(&alg.apply_word(w, &s.word), &s.dominant);
    prop_assert_eq!(alg.level(&s.dominant), alg.level(w));
    prop_assert_eq!(norm_invariant(alg, &s.dominant), norm_invariant(alg, w));
    Ok(())
}

pub fn depth_from_norm_consistency(
    alg: &AffineAlgebra,
    word: &[usize],
) -> Result<(), TestCaseError> {
    let w = alg.apply_word(&alg.weyl_vector(), word);
    prop_assert!(w.depth >= 0);
    prop_assert_eq!(alg.depth_from_norm(&w.finite_part()), Some(w.depth));
    prop_assert_eq!(alg.level(&w), alg.weyl_level());
    Ok(())
}

pub fn series_triple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (0usize..14).prop_flat_map(|t| {
        let s = move || {
            prop::collection::vec(-30i64..=30, t + 1).prop_map(move |c| QSeries::from_coeffs(c, t))
        };
        (s(), s(), s())
    })
}

pub fn ring_laws(a: &QSeries, b: &QSeries, c: &QSeries) -> Result<(), TestCaseError> {
    let t = a.truncation();
    let zero = QSeries::zero(t);
    let one = QSeries::one(t);
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(&(a + b) - b), a);
    prop_assert_eq!(&(a + &zero), a);
    prop_assert_eq!(&(a * &one), a);
    prop_assert_eq!(&(-&(-a)), a);
    Ok(())
}

/// Units: force the constant term to +-1 and check inverse and powers.
pub fn unit_laws(a: &QSeries, sign: bool, m: i64, n: i64) -> Result<(), TestCaseError> {
    let t = a.truncation();
    let mut coeffs: Vec<_> = a.coeffs().to_vec();
    coeffs[0] = if sign { 1.into() } else { (-1).into() };
    let u = QSeries::from_coeffs(coeffs, t);
    let inv = u
        .inverse()
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&(&u * &inv), &QSeries::one(t));
    let pm = u.pow(m).unwrap();
    let pn = u.pow(n).unwrap();
    prop_assert_eq!(&u.pow(m + n).unwrap(), &(&pm * &pn));
    Ok(())
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every property, each over [`CASES`] random cases.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "reflection involution",
            run(weight_and_node(), |(a, w, i)| {
                reflection_involution(&a, &w, i)
            }),
        ),
        (
            "level invariance",
            run(weight_and_node(), |(a, w, i)| level_invariance(&a, &w, i)),
        ),
        (
            "straighten round-trip",
            run(algebra_and_word(), |(a, word)| {
                straighten_round_trip(&a, &word)
            }),
        ),
        (
            "straighten general",
            run(positive_level_weight(), |(a, w)| straighten_general(&a, &w)),
        ),
        (
            "depth-from-norm consistency",
            run(algebra_and_word(), |(a, word)| {
                depth_from_norm_consistency(&a, &word)
            }),
        ),
        (
            "q-series ring laws",
            run(series_triple(), |(a, b, c)| ring_laws(&a, &b, &c)),
        ),
        (
            "q-series units",
            run(
                (series_triple(), any::<bool>(), -3i64..=3, -3i64..=3),
                |((a, _, _), s, m, n)| unit_laws(&a, s, m, n),
            ),
        ),
    ]
}
