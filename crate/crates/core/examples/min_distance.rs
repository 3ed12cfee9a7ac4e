//! Brute-force minimum distance of a small embedded code, and a pair of
//! joint codewords at that distance.

use buscode::ira::IraGraph;
use buscode::jointcode::{dmin_bruteforce, dmin_witness};
use buscode::{select_parity_wires, BusState, JointCode};

fn main() -> Result<(), buscode::Error> {
    let a: BusState = "0010110100010110".parse()?;
    let layout = select_parity_wires(&a, 2)?;
    let k = layout.info_wires.len();
    // Each parity check sees every other information bit.
    let checks = vec![(0..k).step_by(2).collect(), (1..k).step_by(2).collect()];
    let code = JointCode::new(&a, layout, IraGraph::from_check_adjacency(k, checks)?)?;

    let rep = dmin_bruteforce(&code)?;
    println!("past {a}, parities on {:?}", code.layout().parity_wires.iter().map(|w| w + 1).collect::<Vec<_>>());
    println!("d_min embedded {}  d_min ECC {}", rep.d_embedded, rep.d_ecc);

    // A minimum-weight ECC codeword, split into two valid joint codewords.
    let base = code.complete(&vec![0; k])?;
    let c0 = (1u32..1 << k)
        .map(|x| (0..k).map(|i| ((x >> i) & 1) as u8).collect::<Vec<u8>>())
        .min_by_key(|u| code.complete(u).map(|w| w.hamming_distance(&base)).unwrap_or(usize::MAX))
        .expect("k > 0");
    let (c1, c2) = dmin_witness(&c0, &code)?;
    println!("c0 {}", code.complete(&c0)?);
    println!("c1 {c1}\nc2 {c2}\ndistance {}", c1.hamming_distance(&c2));
    Ok(())
}
