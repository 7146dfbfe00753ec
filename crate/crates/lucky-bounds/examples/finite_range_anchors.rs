//! The finite-range lower bound applied at the two reference indices
//! that stitch the bootstrap together: n0 = 66 certifies
//! `ell_n > n log n` on [1269, 31807212], and n0 = 124000 extends the
//! range past 10^100.
//!
//! ```sh
//! cargo run --release --example finite_range_anchors
//! ```

use lucky_bounds::pipeline::finite_range;
use lucky_bounds::sieve::generate;
use lucky_bounds::stats::StatsContext;
use lucky_bounds::Interval;

fn main() {
    let table = generate(124_000).expect("sieve");
    let mut ctx = StatsContext::new(&table, 192);
    ctx.warm(124_000).expect("warm");

    for n0 in [66u64, 124_000] {
        let fr = finite_range(&ctx, n0, None).expect("finite range");
        println!("n0 = {n0}:");
        println!("  c0 = {}", fr.c0.to_decimal_question());
        println!("  t  = {} (m2-maximizing)", fr.t.to_decimal_question());
        let m2 = fr.m2.to_string();
        if m2.len() > 30 {
            println!("  m1 = {}, m2 ~ 1.22e{}", fr.m1, m2.len() - 1);
        } else {
            println!("  m1 = {}, m2 = {m2}", fr.m1);
        }
    }

    // a deliberately bad t collapses the range, which is flagged, not hidden
    let fr = finite_range(&ctx, 66, Some(Interval::one(192))).expect("degenerate t");
    println!("\nwith t = 1: m1 = {}, m2 = {} (empty: {})", fr.m1, fr.m2, fr.empty);
}
