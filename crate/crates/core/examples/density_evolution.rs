//! Density evolution for the regular (3,12) ensemble, and a check of the
//! prediction against one long decoder run.
//!
//! cargo run --release --example density_evolution -- [N] [eps...]

use buscode::densevo::{de_threshold, de_trajectory, DeEnsemble, DEFAULT_MAX_ITER, DEFAULT_TOL};
use buscode::simkit::{de_vs_simulation, EnsembleKind};
use buscode::DegreeDistribution;

fn main() -> Result<(), buscode::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let eps_list: Vec<f64> = if args.len() > 1 {
        args[1..].iter().filter_map(|s| s.parse().ok()).collect()
    } else {
        vec![0.15, 0.20, 0.30]
    };

    let dist = DegreeDistribution::regular(3, 12)?;
    let ens = DeEnsemble::new(dist.clone())?;
    println!("ECC rate {:.3}", ens.r_ecc());
    println!("threshold {:.5} (ECC alone: {:.3})", de_threshold(&ens, 1e-5)?, 1.0 - ens.r_ecc());

    for eps in eps_list {
        let traj = de_trajectory(eps, &ens, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        println!("\neps = {eps}: {:?} after {} iterations", traj.verdict, traj.states.len());
        for kind in [EnsembleKind::Uniform, EnsembleKind::Modified] {
            let rows = de_vs_simulation(eps, &dist, n, 20, 1, kind)?;
            let worst = rows.iter().map(|r| (r.empirical - r.de).abs()).fold(0.0, f64::max);
            println!("  {kind:?} N={n}: max |decoder - DE| over 20 iterations = {worst:.4}");
            for r in rows.iter().step_by(4) {
                println!("    it {:>2}  decoder {:.4}  DE {:.4}", r.iteration, r.empirical, r.de);
            }
        }
    }
    Ok(())
}
