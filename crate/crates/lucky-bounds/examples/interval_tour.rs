//! A tour of the certified interval layer: outward-rounded arithmetic,
//! built-in constants, the Lambert W function, and the closed-form tail
//! integrals, all rendered with the trailing-question-mark convention
//! (a final `?` means the last digit may be off by one).
//!
//! ```sh
//! cargo run --example interval_tour
//! ```

use lucky_bounds::interval::{
    harmonic_sum, lambert_w, omega, tail_integral, TailIntegralKind, TailParams,
};
use lucky_bounds::Interval;

fn main() {
    let prec = 128;

    let gamma = Interval::euler_gamma(prec);
    let e = Interval::napier_e(prec);
    println!("gamma        = {gamma}");
    println!("e            = {e}");
    println!("log e        = {}", e.ln().unwrap());
    println!("e * gamma    = {}", e.mul(&gamma).unwrap());

    // division by an interval containing zero is an error, not a NaN
    let denom = Interval::new(
        rug::Float::with_val(prec, 0),
        rug::Float::with_val(prec, 1),
    )
    .unwrap();
    println!("1 / [0, 1]   -> {}", Interval::one(prec).div(&denom).unwrap_err());

    let x = Interval::from_u64(100_000, prec);
    let w = lambert_w(&x).unwrap();
    let om = omega(&x).unwrap();
    println!("\nW(10^5)      = {w}");
    println!("omega(10^5)  = {om}");
    println!(
        "omega log omega = {} (must contain 10^5)",
        om.mul(&om.ln().unwrap()).unwrap()
    );

    println!("\nH_4          = {}", harmonic_sum(4, prec));
    println!("H_10^7       = {}", harmonic_sum(10_000_000, prec));

    let one = Interval::one(prec);
    let cubed = tail_integral(
        TailIntegralKind::CubedLogOverSquare,
        &one,
        &TailParams::default(),
    )
    .unwrap();
    println!("\nint_1^inf (log s)^3/s^2 ds = {cubed} (exactly 6)");
    let squared = tail_integral(
        TailIntegralKind::SquaredLogOverSquare,
        &e,
        &TailParams::default(),
    )
    .unwrap();
    println!("int_e^inf (log s/s)^2 ds   = {squared} (exactly 5/e)");
}
