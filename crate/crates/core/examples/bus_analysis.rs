//! Runs, free wires and CAC codebook size of a past bus state.
//!
//! cargo run --example bus_analysis -- 0010110100010110

use buscode::{cac_rate, count_codewords, free_wires, parse_runs, BusState};

fn main() -> Result<(), buscode::Error> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "0010110100010110".into());
    let a: BusState = arg.parse()?;
    let runs = parse_runs(&a);

    println!("past      {a}");
    for (k, r) in runs.runs().enumerate() {
        println!("  run {k:>2}: wires {:>2}..{:<2} length {}", r.start + 1, r.end, r.len());
    }
    let free: Vec<usize> = free_wires(&a).iter().map(|w| w + 1).collect();
    println!("free wires {free:?}");
    println!("codewords {}", count_codewords(&a));
    println!("CAC rate  {:.4}", cac_rate(&a));
    Ok(())
}
