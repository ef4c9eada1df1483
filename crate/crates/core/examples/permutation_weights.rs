//! Lists the permutation weights of E6~1 grouped by depth, with their
//! reflection words in sigma-product form.
//!
//!     cargo run --example permutation_weights -- [algebra] [max_depth]

use affine_poincare::orbit::count_via_permutation_weights;
use affine_poincare::AffineAlgebra;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "E6~1".into());
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(9);
    let alg = AffineAlgebra::parse(&name).unwrap();
    let pw = count_via_permutation_weights(&alg, m).unwrap();

    for depth in 1..=m as i64 {
        let words: Vec<String> = pw
            .records_at(depth)
            .map(|r| {
                r.sigma_word()
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        println!("M={depth:<2} c={:<2} {}", words.len(), words.join(" "));
    }

    // every word maps the Weyl vector onto its record
    let rho = alg.weyl_vector();
    for r in &pw.records {
        assert_eq!(alg.apply_word(&rho, &r.word), r.affine_weight(&alg));
    }
}
