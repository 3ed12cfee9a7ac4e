//! Enumerative CAC encode / decode against a fixed past state.

use buscode::buscore::format_bits;
use buscode::{check_transition, BusState, CacCodec};

fn main() -> Result<(), buscode::Error> {
    let a: BusState = "0101100101011010".parse()?;
    let codec = CacCodec::new(&a, &[])?;
    println!("past  {a}  ({} codewords, K = {})", codec.codeword_count(), codec.info_len());

    let k = codec.info_len();
    for pattern in [0b000u32, 0b101, 0b110, 0b111] {
        let u: Vec<u8> = (0..k).map(|i| ((pattern >> (i % 3)) & 1) as u8).collect();
        let word: Vec<u8> = codec.encode(&u)?.into_iter().map(|b| b.unwrap_or(0)).collect();
        let b = BusState::new(word)?;
        let violations = check_transition(&a, &b)?;
        let back = codec.decode_state(&b)?;
        println!(
            "u {}  ->  b {b}  violations {}  decoded {}",
            format_bits(&u),
            violations.len(),
            format_bits(&back)
        );
        assert_eq!(back, u);
    }
    Ok(())
}
