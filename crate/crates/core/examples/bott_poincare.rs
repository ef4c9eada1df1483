//! Bott's formula for the Poincare series of an affine Weyl group, checked
//! against a brute-force count of group elements by length.
//!
//!     cargo run --example bott_poincare -- [algebra] [max_length]

use affine_poincare::orbit::length_census;
use affine_poincare::qseries::bott_affine_poincare;
use affine_poincare::{AffineAlgebra, BottConvention};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A2~1".into());
    let len: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let alg = AffineAlgebra::parse(&name).unwrap();

    let lengths = length_census(&alg, len);
    println!("length census  {lengths:?}");
    for conv in [BottConvention::Degrees, BottConvention::Exponents] {
        match bott_affine_poincare(&alg, len, conv) {
            Ok(s) => {
                let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
                println!("{:<14} [{}]", conv.name(), coeffs.join(", "));
            }
            Err(e) => println!("{:<14} {e}", conv.name()),
        }
    }
}
