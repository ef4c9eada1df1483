//! Counts orbit points of the Weyl vector by depth, once by walking the
//! orbit and once through permutation weights, and compares.
//!
//!     cargo run --release --example orbit_census -- D4~1 10

use std::time::Instant;

use affine_poincare::orbit;
use affine_poincare::AffineAlgebra;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "D4~1".into());
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let alg = AffineAlgebra::parse(&name).unwrap();

    let start = Instant::now();
    let pw = orbit::count_via_permutation_weights(&alg, m)
        .unwrap()
        .census;
    println!("permutation weights ({:.1?})", start.elapsed());
    println!(
        "  counts {:?}",
        pw.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    println!("  c      {:?}", pw.c);

    let start = Instant::now();
    match orbit::bfs_orbit(&alg, m, orbit::default_node_budget()) {
        Ok(bfs) => {
            println!(
                "breadth-first, {} nodes ({:.1?})",
                bfs.nodes,
                start.elapsed()
            );
            println!("  agrees: {}", bfs.census == pw);
        }
        Err(e) => println!("breadth-first skipped: {e}"),
    }
}
