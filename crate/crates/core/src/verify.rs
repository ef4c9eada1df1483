//! Cross-checks between the independent descriptions of the depth-graded
//! series, with exact integer comparisons only.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{table_hvee, AffineAlgebra, AlgebraId, EtaQuotientSpec, HveeInterp};
use crate::error::Result;
use crate::orbit::{self, census_to_series, count_via_permutation_weights, DEFAULT_NODE_BUDGET};
use crate::qseries::{
    bott_affine_poincare, eta_quotient_series, simply_laced_product, BottConvention,
    ProductConvention, QSeries,
};

pub const PHASE: &str = "phase-cancellation";
pub const CENSUS_VS_ETA: &str = "census-vs-eta";
pub const PRODUCT_VS_ETA: &str = "product-vs-eta";
pub const PERMW_VS_SERIES: &str = "permutation-weights-vs-normalized-series";
pub const BFS_VS_CANDIDATE: &str = "bfs-vs-candidate";
pub const BFS_RECORDS: &str = "bfs-records-vs-candidate-records";
pub const BOTT_VS_LENGTHS: &str = "bott-vs-length-census";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// First differing coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    pub details: String,
}

impl Check {
    fn pass(name: &'static str, details: impl Into<String>) -> Self {
        Check {
            name,
            status: CheckStatus::Pass,
            mismatch: None,
            details: details.into(),
        }
    }

    fn skipped(name: &'static str, details: impl Into<String>) -> Self {
        Check {
            name,
            status: CheckStatus::Skipped,
            mismatch: None,
            details: details.into(),
        }
    }

    fn fail(name: &'static str, mismatch: Mismatch, details: impl Into<String>) -> Self {
        Check {
            name,
            status: CheckStatus::Fail,
            mismatch: Some(mismatch),
            details: details.into(),
        }
    }

    /// `expected` is the reference side (the eta-quotient unless noted).
    fn compare(
        name: &'static str,
        expected: &QSeries,
        actual: &QSeries,
        details: impl Into<String>,
    ) -> Self {
        match expected.first_mismatch(actual) {
            None => Check::pass(name, details),
            Some((index, e, a)) => Check::fail(
                name,
                Mismatch {
                    index,
                    expected: e.to_string(),
                    actual: a.to_string(),
                },
                details,
            ),
        }
    }
}

/// One attempt at instantiating `h^vee` in a twisted table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpretationTrial {
    pub interp: HveeInterp,
    pub hvee: i64,
    pub notation: String,
    pub phase_cancels: bool,
    pub census_matches: bool,
}

impl InterpretationTrial {
    pub fn passed(&self) -> bool {
        self.phase_cancels && self.census_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedConfig {
    /// `None` for non-twisted rows, where `h^vee` is unambiguous.
    pub hvee_interp: Option<HveeInterp>,
    pub hvee: i64,
    pub passing_interps: Vec<HveeInterp>,
    /// More than one interpretation passed.
    pub degenerate: bool,
    /// The passing interpretations instantiate to the same row.
    pub coincident_rows: bool,
    pub product_conventions: Vec<ProductConvention>,
    pub bott_conventions: Vec<BottConvention>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub max_depth: usize,
    pub eta_notation: String,
    pub phase: i64,
    pub counts: Vec<String>,
    pub c: Vec<u64>,
    pub checks: Vec<Check>,
    pub trials: Vec<InterpretationTrial>,
    pub resolved_config: ResolvedConfig,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub use_bfs_oracle: bool,
    /// The breadth-first oracle only runs for Weyl orders up to this.
    pub oracle_weyl_limit: u64,
    pub node_budget: u128,
    /// Forces the twisted `h^vee` instantiation instead of searching.
    pub hvee_interp: Option<HveeInterp>,
    pub product_convention: ProductConvention,
    pub bott_convention: BottConvention,
    /// Longest Weyl length for the Bott check; 0 disables it.
    pub bott_max_length: usize,
    /// Replaces the table row (negative controls).
    pub eta_override: Option<EtaQuotientSpec>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            use_bfs_oracle: true,
            oracle_weyl_limit: ORACLE_WEYL_LIMIT,
            node_budget: DEFAULT_NODE_BUDGET,
            hvee_interp: None,
            product_convention: ProductConvention::Exponents,
            bott_convention: BottConvention::Degrees,
            bott_max_length: 10,
            eta_override: None,
        }
    }
}

pub const ORACLE_WEYL_LIMIT: u64 = 100_000;

pub fn verify_algebra(
    alg: &AffineAlgebra,
    max_depth: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = max_depth;
    let pw = count_via_permutation_weights(alg, max_depth)?;
    let census_series = census_to_series(&pw.census);
    let weyl = BigInt::from(alg.weyl_order().clone());

    // choose the table row
    let mut trials = Vec::new();
    let (spec, interp) = if let Some(spec) = &opts.eta_override {
        (spec.clone(), None)
    } else if alg.id.is_twisted() {
        for interp in HveeInterp::ALL {
            let spec = alg.eta_entry(interp)?;
            let census_matches = eta_quotient_series(&spec, t).is_ok_and(|s| s == census_series);
            trials.push(InterpretationTrial {
                interp,
                hvee: table_hvee(&alg.id, interp)?,
                notation: spec.notation(),
                phase_cancels: spec.phase_residual() == 0,
                census_matches,
            });
        }
        let chosen = opts
            .hvee_interp
            .or_else(|| trials.iter().find(|t| t.passed()).map(|t| t.interp))
            .unwrap_or(HveeInterp::Affine);
        (alg.eta_entry(chosen)?, Some(chosen))
    } else {
        (alg.eta_entry(HveeInterp::Affine)?, None)
    };
    let passing: Vec<HveeInterp> = trials
        .iter()
        .filter(|t| t.passed())
        .map(|t| t.interp)
        .collect();
    let coincident_rows = {
        let rows: Vec<&String> = trials
            .iter()
            .filter(|t| t.passed())
            .map(|t| &t.notation)
            .collect();
        rows.windows(2).all(|w| w[0] == w[1])
    };

    let mut checks = Vec::new();

    // (e) phase
    let residual = spec.phase_residual();
    checks.push(if residual == 0 {
        Check::pass(
            PHASE,
            format!("phi = {}, sum r*s = {}", spec.phase, spec.weighted_sum()),
        )
    } else {
        Check::fail(
            PHASE,
            Mismatch {
                index: 0,
                expected: "0".into(),
                actual: residual.to_string(),
            },
            format!("phi + sum r*s = {residual}"),
        )
    });

    // (a) census against the eta-quotient
    let eta = eta_quotient_series(&spec, t);
    match &eta {
        Ok(eta) => checks.push(Check::compare(
            CENSUS_VS_ETA,
            eta,
            &census_series,
            format!("M <= {t}, eta row {}", spec.notation()),
        )),
        Err(e) => checks.push(Check::fail(
            CENSUS_VS_ETA,
            Mismatch {
                index: 0,
                expected: census_series.coeff(0).to_string(),
                actual: "no expansion".into(),
            },
            e.to_string(),
        )),
    }

    // (c) permutation-weight counts against the normalized series
    let c_series = QSeries::from_coeffs(pw.census.c.iter().copied(), t);
    match eta.as_ref().ok().map(|e| (e, e.divide_exact(&weyl))) {
        Some((_, Some(norm))) => checks.push(Check::compare(
            PERMW_VS_SERIES,
            &norm,
            &c_series,
            format!("c_M against eta / {weyl}"),
        )),
        Some((e, None)) => checks.push(Check::fail(
            PERMW_VS_SERIES,
            Mismatch {
                index: (0..=t)
                    .find(|&m| (e.coeff(m) % &weyl) != BigInt::ZERO)
                    .unwrap_or(0),
                expected: format!("multiple of {weyl}"),
                actual: "not divisible".into(),
            },
            "eta-quotient is not divisible by the Weyl order",
        )),
        None => checks.push(Check::skipped(PERMW_VS_SERIES, "no eta expansion")),
    }

    // (b) simply-laced product
    let mut product_conventions = Vec::new();
    if alg.id.is_simply_laced() {
        for conv in [ProductConvention::Exponents, ProductConvention::Degrees] {
            let p = simply_laced_product(alg, t, conv)?;
            if eta.as_ref().is_ok_and(|e| *e == p) {
                product_conventions.push(conv);
            }
            if conv == opts.product_convention {
                match &eta {
                    Ok(e) => checks.push(Check::compare(
                        PRODUCT_VS_ETA,
                        e,
                        &p,
                        format!("d_i = {}", conv.name()),
                    )),
                    Err(_) => checks.push(Check::skipped(PRODUCT_VS_ETA, "no eta expansion")),
                }
            }
        }
    } else {
        checks.push(Check::skipped(PRODUCT_VS_ETA, "not simply laced"));
    }

    // (d) breadth-first oracle
    let weyl_small = alg
        .weyl_order()
        .to_u64()
        .is_some_and(|w| w <= opts.oracle_weyl_limit);
    if opts.use_bfs_oracle && !weyl_small {
        let why = format!("Weyl order above {}", opts.oracle_weyl_limit);
        checks.push(Check::skipped(BFS_VS_CANDIDATE, why.clone()));
        checks.push(Check::skipped(BFS_RECORDS, why));
    } else if opts.use_bfs_oracle {
        match orbit::bfs_orbit(alg, max_depth, opts.node_budget) {
            Ok(bfs) => {
                checks.push(Check::compare(
                    BFS_VS_CANDIDATE,
                    &census_to_series(&bfs.census),
                    &census_series,
                    format!("{} orbit points visited", bfs.nodes),
                ));
                let cand: Vec<(i64, &[i64])> = pw
                    .records
                    .iter()
                    .map(|r| (r.depth, r.dominant.labels.as_slice()))
                    .collect();
                let seen: Vec<(i64, &[i64])> = bfs
                    .permutation_weights
                    .iter()
                    .map(|(d, f)| (*d, f.labels.as_slice()))
                    .collect();
                checks.push(if cand == seen {
                    Check::pass(BFS_RECORDS, format!("{} permutation weights", cand.len()))
                } else {
                    let index = cand
                        .iter()
                        .zip(&seen)
                        .position(|(a, b)| a != b)
                        .unwrap_or(cand.len().min(seen.len()));
                    Check::fail(
                        BFS_RECORDS,
                        Mismatch {
                            index,
                            expected: format!("{:?}", seen.get(index)),
                            actual: format!("{:?}", cand.get(index)),
                        },
                        format!("bfs found {}, candidates {}", seen.len(), cand.len()),
                    )
                });
            }
            Err(e) => {
                checks.push(Check::skipped(BFS_VS_CANDIDATE, e.to_string()));
                checks.push(Check::skipped(BFS_RECORDS, e.to_string()));
            }
        }
    } else {
        checks.push(Check::skipped(BFS_VS_CANDIDATE, "oracle disabled"));
        checks.push(Check::skipped(BFS_RECORDS, "oracle disabled"));
    }

    // Bott's length series against a brute-force length census
    let mut bott_conventions = Vec::new();
    if alg.id.is_twisted() {
        checks.push(Check::skipped(BOTT_VS_LENGTHS, "twisted"));
    } else if !opts.use_bfs_oracle || opts.bott_max_length == 0 || !weyl_small {
        checks.push(Check::skipped(BOTT_VS_LENGTHS, "length census not run"));
    } else {
        let len = opts.bott_max_length;
        let lengths = QSeries::from_coeffs(orbit::length_census(alg, len), len);
        for conv in [BottConvention::Degrees, BottConvention::Exponents] {
            let b = bott_affine_poincare(alg, len, conv);
            if b.as_ref().is_ok_and(|b| *b == lengths) {
                bott_conventions.push(conv);
            }
            if conv == opts.bott_convention {
                checks.push(match b {
                    Ok(b) => Check::compare(
                        BOTT_VS_LENGTHS,
                        &lengths,
                        &b,
                        format!("lengths <= {len}, {}", conv.name()),
                    ),
                    Err(e) => Check::fail(
                        BOTT_VS_LENGTHS,
                        Mismatch {
                            index: 0,
                            expected: lengths.coeff(0).to_string(),
                            actual: "no expansion".into(),
                        },
                        e.to_string(),
                    ),
                });
            }
        }
    }

    let hvee = match interp {
        Some(i) => table_hvee(&alg.id, i)?,
        None => alg.affine.dual_coxeter,
    };
    Ok(VerificationReport {
        algebra: alg.id.to_string(),
        max_depth,
        eta_notation: spec.notation(),
        phase: spec.phase,
        counts: pw.census.counts.iter().map(|c| c.to_string()).collect(),
        c: pw.census.c.clone(),
        checks,
        resolved_config: ResolvedConfig {
            hvee_interp: interp,
            hvee,
            degenerate: passing.len() > 1,
            coincident_rows: passing.len() > 1 && coincident_rows,
            passing_interps: passing,
            product_conventions,
            bott_conventions,
        },
        trials,
    })
}

/// Every supported algebra with name index at most `max_rank` (exceptional
/// families always), in a fixed order.
pub fn verify_all(
    max_rank: u32,
    max_depth: usize,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>> {
    let ids = AlgebraId::supported(max_rank);
    ids.par_iter()
        .map(|id| verify_algebra(&AffineAlgebra::new(*id)?, max_depth, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_passes_everything() {
        let alg = AffineAlgebra::parse("A1~1").unwrap();
        let r = verify_algebra(&alg, 20, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        for name in [
            PHASE,
            CENSUS_VS_ETA,
            PRODUCT_VS_ETA,
            PERMW_VS_SERIES,
            BFS_VS_CANDIDATE,
            BFS_RECORDS,
            BOTT_VS_LENGTHS,
        ] {
            assert_eq!(r.check(name).unwrap().status, CheckStatus::Pass, "{name}");
        }
        assert_eq!(
            r.resolved_config.product_conventions,
            vec![ProductConvention::Exponents]
        );
        assert_eq!(
            r.resolved_config.bott_conventions,
            vec![BottConvention::Degrees]
        );
    }

    #[test]
    fn corrupted_phase_is_caught() {
        let alg = AffineAlgebra::parse("A1~1").unwrap();
        let mut spec = alg.eta_entry(HveeInterp::Affine).unwrap();
        spec.phase += 1;
        let opts = VerifyOptions {
            eta_override: Some(spec),
            ..VerifyOptions::default()
        };
        let r = verify_algebra(&alg, 6, &opts).unwrap();
        assert!(!r.passed());
        let phase = r.check(PHASE).unwrap();
        assert_eq!(phase.status, CheckStatus::Fail);
        assert_eq!(phase.mismatch.as_ref().unwrap().actual, "1");
        assert_eq!(r.check(CENSUS_VS_ETA).unwrap().status, CheckStatus::Fail);
    }

    #[test]
    fn twisted_a4_resolves_uniquely() {
        let alg = AffineAlgebra::parse("A4~2").unwrap();
        let r = verify_algebra(&alg, 12, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.resolved_config.passing_interps, vec![HveeInterp::Affine]);
        assert!(!r.resolved_config.degenerate);
    }

    #[test]
    fn twisted_d5_flags_coincident_values() {
        let alg = AffineAlgebra::parse("D5~2").unwrap();
        let r = verify_algebra(&alg, 12, &VerifyOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.resolved_config.hvee_interp, Some(HveeInterp::Affine));
        assert!(r.resolved_config.degenerate);
    }

    #[test]
    fn forced_wrong_interpretation_fails() {
        let alg = AffineAlgebra::parse("A4~2").unwrap();
        let opts = VerifyOptions {
            hvee_interp: Some(HveeInterp::HorizontalDual),
            ..VerifyOptions::default()
        };
        let r = verify_algebra(&alg, 12, &opts).unwrap();
        assert_eq!(r.check(CENSUS_VS_ETA).unwrap().status, CheckStatus::Fail);
        assert!(r.check(CENSUS_VS_ETA).unwrap().mismatch.is_some());
    }
}
