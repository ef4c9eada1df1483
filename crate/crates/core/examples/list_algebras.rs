//! Prints the built-in table of affine algebras: Coxeter numbers, Weyl
//! order of the horizontal algebra and the eta-quotient row.
//!
//!     cargo run --example list_algebras [max_rank]

use affine_poincare::{AffineAlgebra, AlgebraId, HveeInterp};

fn main() {
    let max_rank = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    println!(
        "{:<7} {:>3} {:>3} {:>10} {:>5}  {:<34} {:>5}",
        "name", "h", "hv", "|W|", "horiz", "g", "phi"
    );
    for id in AlgebraId::supported(max_rank) {
        let alg = AffineAlgebra::new(id).unwrap();
        let spec = alg.eta_entry(HveeInterp::Affine).unwrap();
        println!(
            "{:<7} {:>3} {:>3} {:>10} {:>5}  {:<34} {:>5}",
            id.to_string(),
            alg.affine.coxeter,
            alg.affine.dual_coxeter,
            alg.weyl_order().to_string(),
            alg.horizontal.finite_type.to_string(),
            spec.notation(),
            spec.phase
        );
    }
}
