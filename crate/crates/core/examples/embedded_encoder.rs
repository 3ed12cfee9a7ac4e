//! Places IRA parities on free wires and encodes one bus transition.

use buscode::buscore::format_bits;
use buscode::ira::validate_checks;
use buscode::{check_transition, BusState, DegreeDistribution, JointCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a: BusState = "00101101000101100111010010110001".parse()?;
    let dist = DegreeDistribution::regular(3, 12)?;
    let p = (a.len() as f64 * (1.0 - dist.recc()?)).round() as usize;

    let code = JointCode::build(&a, p, &dist, &mut rng)?;
    let layout = code.layout();
    println!("past        {a}");
    println!("parities on {:?}", layout.parity_wires.iter().map(|w| w + 1).collect::<Vec<_>>());
    println!("shield pairs {}", layout.shield_pairs.len());
    println!("payload bits K = {}", code.info_len());

    let u: Vec<u8> = (0..code.info_len()).map(|i| ((i * 5 + 1) % 3 == 0) as u8).collect();
    let cw = code.encode(&u)?;
    let info = code.info_wire_bits(&cw.word);
    let par = code.parity_bits(&cw.word);
    println!("payload     {}", format_bits(&u));
    println!("codeword    {}", cw.word);
    println!("violations  {}", check_transition(&a, &cw.word)?.len());
    println!("checks ok   {}", validate_checks(&info, &par, code.graph()));
    println!("decoded     {}", format_bits(&code.decode(&cw.word)?));
    Ok(())
}
