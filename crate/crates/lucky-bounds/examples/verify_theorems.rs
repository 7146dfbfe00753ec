//! Direct verification of the two parameter-free theorem bounds over a
//! generated table, plus the fixed spot checks.
//!
//! ```sh
//! cargo run --release --example verify_theorems
//! ```

use lucky_bounds::sieve::generate;
use lucky_bounds::verify::{
    thm_lower_1, thm_upper_1, verify_fixed_checks, verify_range, VerifyOptions,
};

fn main() {
    let table = generate(100_000).expect("sieve");
    let opts = VerifyOptions::default();

    // ell_n > n log n, here over the head range the bootstrap checks
    let report = verify_range(&table, &thm_lower_1(), 1, 1269, None, &opts).expect("verify");
    println!("{}", report.summary_line());

    // and over everything the table holds
    let report =
        verify_range(&table, &thm_lower_1(), 1, table.len() as u64, None, &opts).expect("verify");
    println!("{}", report.summary_line());

    // ell_n < n (log n + llog^2/2 + 1) from n = 4
    let report =
        verify_range(&table, &thm_upper_1(), 4, table.len() as u64, None, &opts).expect("verify");
    println!("{}", report.summary_line());

    println!();
    for r in verify_fixed_checks(128).expect("fixed checks") {
        println!("{}", r.summary_line());
    }
}
