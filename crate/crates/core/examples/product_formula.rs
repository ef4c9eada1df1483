//! Compares the simply-laced product formula against the eta-quotient,
//! under both readings of the product exponents.
//!
//!     cargo run --example product_formula -- [truncation]

use affine_poincare::qseries::{eta_quotient_series, simply_laced_product};
use affine_poincare::{AffineAlgebra, HveeInterp, ProductConvention};

fn main() {
    let t: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    for name in [
        "A1~1", "A2~1", "A3~1", "A4~1", "D4~1", "D5~1", "E6~1", "E7~1", "E8~1",
    ] {
        let alg = AffineAlgebra::parse(name).unwrap();
        let eta = eta_quotient_series(&alg.eta_entry(HveeInterp::Affine).unwrap(), t).unwrap();
        let mut line = format!("{name:<5}");
        for conv in [ProductConvention::Exponents, ProductConvention::Degrees] {
            let p = simply_laced_product(&alg, t, conv).unwrap();
            let verdict = match eta.first_mismatch(&p) {
                None => "equal".to_string(),
                Some((m, _, _)) => format!("differs at q^{m}"),
            };
            line.push_str(&format!("  {}: {verdict:<15}", conv.name()));
        }
        println!("{line}");
    }
}
