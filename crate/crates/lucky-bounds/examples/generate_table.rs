//! Generate lucky numbers, cross-check the two sieve implementations,
//! and round-trip the on-disk table format.
//!
//! ```sh
//! cargo run --release --example generate_table
//! ```

use lucky_bounds::sieve::{generate, naive_generate, table_io};

fn main() {
    let n = 10_000;
    let table = generate(n).expect("sieve");
    println!("first ten:        {:?}", &table.values()[..10]);
    println!(
        "classical form:   [1, {}]",
        table.values()[1..10]
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("entry {:>6}:     {}", n, table.get(n).unwrap());

    let oracle = naive_generate(n).expect("naive sieve");
    assert_eq!(table, oracle);
    println!("rank/select sieve matches the list-deletion oracle up to {n}");

    let mut buf = Vec::new();
    table_io::save_table(&table, &mut buf).expect("serialize");
    let back = table_io::load_table(buf.as_slice()).expect("deserialize");
    assert_eq!(table, back);
    println!("LUKT round-trip: {} bytes for {} entries", buf.len(), n);
}
