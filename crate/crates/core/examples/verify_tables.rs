//! Runs the full verifier over every supported algebra and prints one line
//! per algebra; exits nonzero if any check fails.
//!
//!     cargo run --release --example verify_tables -- [max_rank] [max_depth]

use affine_poincare::verify::{verify_all, CheckStatus, VerifyOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let max_rank: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);

    let reports = verify_all(max_rank, m, &VerifyOptions::default()).unwrap();
    let mut ok = true;
    for r in &reports {
        let count = |s| r.checks.iter().filter(|c| c.status == s).count();
        let mut note = String::new();
        if let Some(i) = r.resolved_config.hvee_interp {
            note = format!("h^vee={} ({})", r.resolved_config.hvee, i.name());
            if r.resolved_config.degenerate {
                note.push_str(" degenerate");
            }
        }
        println!(
            "{:<6} {} pass {} skip {} fail  {note}",
            r.algebra,
            count(CheckStatus::Pass),
            count(CheckStatus::Skipped),
            count(CheckStatus::Fail)
        );
        for c in r.checks.iter().filter(|c| c.status == CheckStatus::Fail) {
            println!("    {}: {} {:?}", c.name, c.details, c.mismatch);
        }
        ok &= r.passed();
    }
    std::process::exit(if ok { 0 } else { 1 });
}
