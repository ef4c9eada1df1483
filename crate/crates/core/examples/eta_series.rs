//! Expands the eta-quotient of one algebra and shows it divided by the
//! Weyl order of the horizontal algebra.
//!
//!     cargo run --example eta_series -- E6~1 12

use affine_poincare::qseries::eta_quotient_series;
use affine_poincare::{AffineAlgebra, HveeInterp};
use num_bigint::BigInt;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "E6~1".into());
    let t: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);

    let alg = AffineAlgebra::parse(&name).unwrap();
    let spec = alg.eta_entry(HveeInterp::Affine).unwrap();
    let series = eta_quotient_series(&spec, t).unwrap();
    println!("{name}: g = {}, phi = {}", spec.notation(), spec.phase);
    println!("  {series}");

    let w = BigInt::from(alg.weyl_order().clone());
    match series.divide_exact(&w) {
        Some(norm) => println!("  / {w} = {norm}"),
        None => println!("  not divisible by {w}"),
    }
}
