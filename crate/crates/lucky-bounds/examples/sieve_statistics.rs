//! Exact table statistics: the density product rho, its correction
//! varrho, the fractional-part sum tau, reciprocal sums xi, and the
//! fundamental identity ell_{m,n} = n rho_m (1 - tau_{m,n}) tying them
//! together.
//!
//! ```sh
//! cargo run --example sieve_statistics
//! ```

use lucky_bounds::sieve::generate;
use lucky_bounds::stats::StatsContext;
use lucky_bounds::Interval;

fn main() {
    let table = generate(5_000).expect("sieve");
    let mut ctx = StatsContext::new(&table, 128);
    ctx.warm(5_000).expect("warm rho/varrho");
    ctx.warm_counts(table.get(600).unwrap()).expect("warm counts");

    println!("rho_2    = {}", ctx.rho(2).unwrap());
    println!("rho_4    = {} (exactly 7/2)", ctx.rho(4).unwrap());
    println!("rho_1000 = {}", ctx.rho(1000).unwrap());
    println!("varrho_2    = {}", ctx.varrho(2).unwrap());
    println!("varrho_66   = {}", ctx.varrho(66).unwrap());
    println!("varrho_5000 = {}", ctx.varrho(5000).unwrap());

    println!("\ncounts L_i(x):");
    for (i, x) in [(1u64, 10.5f64), (2, 9.0), (3, 15.0), (10, 400.0)] {
        println!("  L_{i}({x:>5}) = {}", ctx.count_l(i, x).unwrap());
    }

    println!("\ntau_2,2 = {} (exactly 1/4)", ctx.tau(2, 2).unwrap());
    println!("tau_50  = {}", ctx.tau(50, 50).unwrap());
    println!("xi_{{1,4}} = {} (1/3 + 1/7)", ctx.xi(1.0, 4.0).unwrap());

    println!("\nfundamental identity n rho_m (1 - tau_mn) vs ell_mn:");
    let one = Interval::one(128);
    for (m, n) in [(2u64, 2u64), (5, 17), (25, 300), (50, 500)] {
        let ell = ctx.ell_mn(m, n).unwrap();
        let enclosure = Interval::from_u64(n, 128)
            .mul(&ctx.rho(m).unwrap())
            .unwrap()
            .mul(&one.sub(&ctx.tau(m, n).unwrap()))
            .unwrap();
        println!(
            "  m={m:>2} n={n:>3}: ell = {ell:>5}, enclosure = {}  contains: {}",
            enclosure,
            enclosure.contains_u64(ell)
        );
    }
}
