//! Shielded vs embedded parity placement: rates and wire counts.

use buscode::jointcode::{compare_rates, rate_embedded, rate_shielded, wires_needed};
use buscode::simkit::gen_past_uniform;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), buscode::Error> {
    // A 64-bit data path with a rate-0.9 code and the asymptotic CAC rate.
    let (r_cac, r_ecc) = (0.824, 0.9);
    let r_s = rate_shielded(r_cac, r_ecc);
    let r_e = rate_embedded(r_cac, r_ecc);
    println!("R_S = {r_s:.3}  R_E = {r_e:.3}");
    println!(
        "wires for 59 data bits: shielded {}  embedded {}  CAC alone {}",
        wires_needed(59, r_s),
        wires_needed(59, r_e),
        wires_needed(59, r_cac)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for r in [0.8, 0.9, 0.95] {
        let mut min_margin = f64::INFINITY;
        let mut used = 0;
        while used < 1000 {
            let a = gen_past_uniform(512, &mut rng)?;
            if let Ok(c) = compare_rates(&a, r) {
                min_margin = min_margin.min(c.margin);
                used += 1;
            }
        }
        println!("r_ecc {r}: smallest R_E - R_S over {used} states = {min_margin:.4}");
    }
    Ok(())
}
