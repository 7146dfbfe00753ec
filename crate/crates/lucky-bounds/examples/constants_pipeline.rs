//! The five-stage constant pipeline end to end: generate a table large
//! enough for the default configuration, derive every certified
//! constant, and print them stage by stage.
//!
//! The default round index n1 = 10771 pushes the tau-lower threshold
//! n3 past 1.15 million, so the table takes a few seconds to sieve.
//!
//! ```sh
//! cargo run --release --example constants_pipeline
//! ```

use lucky_bounds::pipeline::{run_pipeline, BootstrapThreshold, PipelineConfig};
use lucky_bounds::sieve::generate;
use lucky_bounds::stats::StatsContext;

fn main() {
    let config = PipelineConfig::default();
    println!("sieving 1.2M lucky numbers...");
    let table = generate(1_200_000).expect("sieve");

    let mut ctx = StatsContext::new(&table, config.precision_bits);
    let output = run_pipeline(&mut ctx, &config).expect("pipeline");

    for stage in &output.stages {
        println!("\n[{}]", stage.stage.as_str());
        for c in stage.constants.iter() {
            println!("  {:<8} = {}", c.name, c.value.display());
        }
        for s in &stage.statements {
            println!("  statement {} valid from n = {}", s.form.id(), s.valid_from);
        }
    }

    let b = &output.bootstrap;
    println!("\n[bootstrap summary]");
    match &b.n4 {
        BootstrapThreshold::Value(v) => {
            println!("  n4 has {} digits", v.to_string().len())
        }
        BootstrapThreshold::Symbolic { inner } => {
            println!("  n4 = exp(exp({}))", inner.to_decimal_question())
        }
    }
    for r in &b.ranges {
        println!("  n0 = {:>6}: lower bound certified on [{}, {}]", r.n0, r.m1, r.m2);
    }
    println!(
        "  direct head check needed on [1, {}]; chain closed: {}",
        b.head_to, b.chain_closed
    );
}
