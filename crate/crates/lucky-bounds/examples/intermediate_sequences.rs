//! The intermediate sequences of the sieve: each round deletes every
//! d-th survivor, and once the round modulus exceeds n the n-th entry
//! has stabilized to the n-th lucky number.
//!
//! ```sh
//! cargo run --example intermediate_sequences
//! ```

use lucky_bounds::sieve::{generate, intermediate};

fn main() {
    for m in 2..=6 {
        let seq = intermediate(m, 16).expect("simulate");
        println!("round {m:>2}: {:?}", seq.values);
    }

    let table = generate(40).expect("sieve");
    println!("\nstabilization of the 12th entry:");
    for m in 2..=12 {
        let seq = intermediate(m, 12).expect("simulate");
        let marker = if seq.get(12) == table.get(12) { "  <- lucky" } else { "" };
        println!(
            "round {m:>2}: entry 12 = {}{marker}",
            seq.get(12).unwrap()
        );
    }
    println!("ell_12 = {}", table.get(12).unwrap());
}
