//! Erases part of an embedded codeword and runs the joint decoder, with and
//! without the CAC side of the factor graph.

use buscode::simkit::{bec_transmit, gen_past_uniform};
use buscode::{bp_decode, DecoderConfig, DegreeDistribution, FactorGraph, JointCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), buscode::Error> {
    let n = 2000;
    let eps = 0.22;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let dist = DegreeDistribution::regular(3, 12)?;
    let p = (n as f64 * (1.0 - dist.recc()?)).round() as usize;

    let a = loop {
        let a = gen_past_uniform(n, &mut rng)?;
        if buscode::free_wires(&a).len() >= p {
            break a;
        }
    };
    let code = JointCode::build(&a, p, &dist, &mut rng)?;
    let word = code.sample_uniform(&mut rng);
    let rx = bec_transmit(&word, eps, &mut rng);
    let fg = FactorGraph::new(code);
    println!("N = {n}, eps = {eps}, erased {}", rx.num_erasures());

    for use_cac in [true, false] {
        let cfg = DecoderConfig { use_cac, ..DecoderConfig::default() };
        let res = bp_decode(&rx, &fg, &cfg)?;
        println!(
            "use_cac {use_cac:<5}  iterations {:>3}  residual {:>4}  converged {}",
            res.iterations, res.residual_erasures, res.converged
        );
        for (k, s) in res.trace.iter().enumerate().take(8) {
            println!("    it {:>2}  erased LDPC edges {:.4}  erased wires {}", k + 1, s.ldpc_erased_fraction, s.erased_wires);
        }
    }
    Ok(())
}
