//! Block and bit erasure rates across a small grid of channel erasure rates.
//!
//! cargo run --release --example monte_carlo -- [N] [trials]

use buscode::{run_trials, DegreeDistribution, SimConfig};

fn main() -> Result<(), buscode::Error> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(2000);
    let trials = args.get(1).copied().unwrap_or(200) as u64;
    let dist = DegreeDistribution::regular(3, 12)?;

    println!("{:>6} {:>10} {:>10} {:>8} {:>12}", "eps", "pb_code", "pb_info", "pe", "insufficient");
    for k in 0..=8 {
        let eps = 0.14 + 0.02 * k as f64;
        let stats = run_trials(&SimConfig::new(n, eps, dist.clone(), trials, 2024))?;
        println!(
            "{eps:>6.2} {:>10.2e} {:>10.2e} {:>8.3} {:>12.3}",
            stats.pb_code(),
            stats.pb_info(),
            stats.pe(),
            stats.insufficient_rate()
        );
    }
    Ok(())
}
