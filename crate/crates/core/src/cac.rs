//! Crosstalk-avoidance codec.
//!
//! Given the past state, every alternating run of length `d` admits exactly
//! `F(d + 2)` continuations and the runs are independent, so the codebook size
//! is the product of those counts. The codec maps an integer to a codeword
//! by a mixed-radix split over the runs (first run most significant) followed
//! by lexicographic unranking inside each run.
//!
//! Inside a run a wire either *stays* at its past bit or *flips*. A flip
//! forces the right neighbour to stay, which gives the suffix counts
//! `F(m + 1)` (stay) and `F(m)` (flip) for a position with `m` wires left.

use std::ops::Range;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::buscore::{fib_table, free_wires, is_opposing, log2_big, parse_runs, BusState};
use crate::{Error, Result};

/// Codebook of one alternating run of the past state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCodebook {
    past_run_bits: Vec<u8>,
    codeword_count: BigUint,
    fib: Vec<BigUint>,
}

impl RunCodebook {
    pub fn new(past_run_bits: &[u8]) -> Result<Self> {
        if past_run_bits.is_empty()
            || past_run_bits.iter().any(|&b| b > 1)
            || past_run_bits.windows(2).any(|w| w[0] == w[1])
        {
            return Err(Error::NotAlternating(past_run_bits.to_vec()));
        }
        let d = past_run_bits.len();
        let fib = fib_table(d + 2);
        Ok(Self {
            past_run_bits: past_run_bits.to_vec(),
            codeword_count: fib[d + 2].clone(),
            fib,
        })
    }

    pub fn len(&self) -> usize {
        self.past_run_bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.past_run_bits.is_empty()
    }

    pub fn past_run_bits(&self) -> &[u8] {
        &self.past_run_bits
    }

    pub fn codeword_count(&self) -> &BigUint {
        &self.codeword_count
    }

    pub fn is_valid(&self, word: &[u8]) -> bool {
        word.len() == self.len() && run_is_valid(&self.past_run_bits, word)
    }

    pub fn unrank(&self, index: &BigUint) -> Result<Vec<u8>> {
        if index >= &self.codeword_count {
            return Err(Error::IndexOutOfRange {
                index: index.to_string(),
                size: self.codeword_count.to_string(),
            });
        }
        let mut out = vec![0; self.len()];
        unrank_into(&self.past_run_bits, index.clone(), &self.fib, &mut out);
        Ok(out)
    }

    pub fn rank(&self, word: &[u8]) -> Result<BigUint> {
        if word.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: word.len(),
            });
        }
        rank_run(&self.past_run_bits, word, &self.fib)
    }
}

/// The `index`-th valid continuation of a past run, in lexicographic order.
pub fn run_unrank(past_run_bits: &[u8], index: &BigUint) -> Result<Vec<u8>> {
    RunCodebook::new(past_run_bits)?.unrank(index)
}

/// Lexicographic position of `continuation` among the valid continuations.
pub fn run_rank(past_run_bits: &[u8], continuation: &[u8]) -> Result<BigUint> {
    RunCodebook::new(past_run_bits)?.rank(continuation)
}

fn run_is_valid(past: &[u8], word: &[u8]) -> bool {
    (1..past.len()).all(|k| !is_opposing(past[k - 1], past[k], word[k - 1], word[k]))
}

// `fib` must reach index `past.len() + 1`.
fn unrank_into(past: &[u8], mut index: BigUint, fib: &[BigUint], out: &mut [u8]) {
    let d = past.len();
    let mut forced = false;
    for k in 0..d {
        let remaining = d - k;
        let stay = past[k];
        if forced {
            out[k] = stay;
            forced = false;
            continue;
        }
        // Count of words continuing with `v` at position k.
        let count = |v: u8| if v == stay { &fib[remaining + 1] } else { &fib[remaining] };
        let c0 = count(0);
        if &index < c0 {
            out[k] = 0;
        } else {
            index -= c0;
            out[k] = 1;
        }
        forced = out[k] != stay && k + 1 < d;
    }
}

fn rank_run(past: &[u8], word: &[u8], fib: &[BigUint]) -> Result<BigUint> {
    let d = past.len();
    let mut index = BigUint::zero();
    let mut forced = false;
    for k in 0..d {
        let remaining = d - k;
        let stay = past[k];
        if word[k] > 1 {
            return Err(Error::InvalidBits(format!("symbol {}", word[k])));
        }
        if forced {
            if word[k] != stay {
                return Err(Error::ConstraintViolation(k - 1, k));
            }
            forced = false;
            continue;
        }
        if word[k] == 1 {
            // every word with a 0 here precedes this one
            index += if stay == 0 { &fib[remaining + 1] } else { &fib[remaining] };
        }
        forced = word[k] != stay && k + 1 < d;
    }
    Ok(index)
}

/// Word-level enumerative index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CacIndex(pub BigUint);

/// CAC encoder/decoder for one past state.
///
/// The information-carrying wires are a list of *segments*: alternating
/// stretches of the past state whose outer boundaries carry no active
/// constraint. Normally these are the runs that were not excluded; the
/// shielding fallback of the joint encoder trims runs further.
#[derive(Clone, Debug)]
pub struct CacCodec {
    past: BusState,
    segments: Vec<Range<usize>>,
    radices: Vec<BigUint>,
    codeword_count: BigUint,
    info_len: usize,
    fib: Vec<BigUint>,
}

impl CacCodec {
    /// Codec over all runs of `a` except the (free) `excluded` wires.
    pub fn new(a: &BusState, excluded: &[usize]) -> Result<Self> {
        let free = free_wires(a);
        let mut skip = vec![false; a.len()];
        for &w in excluded {
            if w >= a.len() || free.binary_search(&w).is_err() {
                return Err(Error::WireNotFree(w));
            }
            skip[w] = true;
        }
        let segments = parse_runs(a)
            .runs()
            .filter(|r| !(r.len() == 1 && skip[r.start]))
            .collect();
        Self::from_segments(a, segments)
    }

    /// Codec over explicit segments (sorted, disjoint, each alternating).
    pub fn from_segments(a: &BusState, segments: Vec<Range<usize>>) -> Result<Self> {
        let bits = a.bits();
        let mut last_end = 0;
        for s in &segments {
            if s.is_empty() || s.start < last_end || s.end > bits.len() {
                return Err(Error::Config(format!("bad segment {s:?}")));
            }
            if bits[s.clone()].windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotAlternating(bits[s.clone()].to_vec()));
            }
            last_end = s.end;
        }
        let max_len = segments.iter().map(|s| s.len()).max().unwrap_or(0);
        let fib = fib_table(max_len + 2);
        let radices: Vec<BigUint> = segments.iter().map(|s| fib[s.len() + 2].clone()).collect();
        let codeword_count = radices.iter().fold(BigUint::one(), |acc, r| acc * r);
        let info_len = (codeword_count.bits() - 1) as usize;
        Ok(Self {
            past: a.clone(),
            segments,
            radices,
            codeword_count,
            info_len,
            fib,
        })
    }

    pub fn past(&self) -> &BusState {
        &self.past
    }

    pub fn segments(&self) -> &[Range<usize>] {
        &self.segments
    }

    /// Number of payload bits `K = floor(log2(codebook size))`.
    pub fn info_len(&self) -> usize {
        self.info_len
    }

    pub fn codeword_count(&self) -> &BigUint {
        &self.codeword_count
    }

    /// Wires covered by the segments, in wire order.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.segments.iter().flat_map(|s| s.clone())
    }

    pub fn num_wires(&self) -> usize {
        self.segments.iter().map(|s| s.len()).sum()
    }

    pub fn encode(&self, info_bits: &[u8]) -> Result<Vec<Option<u8>>> {
        if info_bits.len() != self.info_len {
            return Err(Error::LengthMismatch {
                expected: self.info_len,
                got: info_bits.len(),
            });
        }
        if info_bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBits("payload must be binary".into()));
        }
        let index = if info_bits.is_empty() {
            BigUint::zero()
        } else {
            BigUint::from_radix_be(info_bits, 2).expect("binary digits")
        };
        self.encode_index(&CacIndex(index))
    }

    /// Unranks any index of the full codebook (not just the payload range).
    pub fn encode_index(&self, index: &CacIndex) -> Result<Vec<Option<u8>>> {
        if index.0 >= self.codeword_count {
            return Err(Error::IndexOutOfRange {
                index: index.0.to_string(),
                size: self.codeword_count.to_string(),
            });
        }
        let mut digits = vec![BigUint::zero(); self.segments.len()];
        let mut rest = index.0.clone();
        for (m, radix) in self.radices.iter().enumerate().rev() {
            let (q, r) = rest.div_rem(radix);
            digits[m] = r;
            rest = q;
        }
        let mut word = vec![None; self.past.len()];
        let mut buf = Vec::new();
        for (seg, digit) in self.segments.iter().zip(digits) {
            buf.clear();
            buf.resize(seg.len(), 0);
            unrank_into(&self.past.bits()[seg.clone()], digit, &self.fib, &mut buf);
            for (w, &b) in seg.clone().zip(&buf) {
                word[w] = Some(b);
            }
        }
        Ok(word)
    }

    /// Recovers the codebook index of a word; wires outside the segments are ignored.
    pub fn rank_word(&self, word: &[Option<u8>]) -> Result<CacIndex> {
        if word.len() != self.past.len() {
            return Err(Error::LengthMismatch {
                expected: self.past.len(),
                got: word.len(),
            });
        }
        let mut index = BigUint::zero();
        let mut buf = Vec::new();
        for (seg, radix) in self.segments.iter().zip(&self.radices) {
            buf.clear();
            for w in seg.clone() {
                match word[w] {
                    Some(b) => buf.push(b),
                    None => return Err(Error::InvalidBits(format!("wire {} unknown", w + 1))),
                }
            }
            let digit = rank_run(&self.past.bits()[seg.clone()], &buf, &self.fib)
                .map_err(|e| match e {
                    Error::ConstraintViolation(l, r) => {
                        Error::ConstraintViolation(l + seg.start, r + seg.start)
                    }
                    other => other,
                })?;
            index = index * radix + digit;
        }
        Ok(CacIndex(index))
    }

    pub fn decode(&self, word: &[Option<u8>]) -> Result<Vec<u8>> {
        let CacIndex(index) = self.rank_word(word)?;
        if index.bits() as usize > self.info_len {
            return Err(Error::UnusedIndex);
        }
        let mut out = vec![0u8; self.info_len];
        if !index.is_zero() {
            let digits = index.to_radix_be(2);
            let offset = self.info_len - digits.len();
            out[offset..].copy_from_slice(&digits);
        }
        Ok(out)
    }

    /// Decodes a full bus word, ignoring wires outside the segments.
    pub fn decode_state(&self, b: &BusState) -> Result<Vec<u8>> {
        let word: Vec<Option<u8>> = b.bits().iter().map(|&x| Some(x)).collect();
        self.decode(&word)
    }

    /// A codeword drawn uniformly from the full codebook, one run at a time.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Option<u8>> {
        let mut word = vec![None; self.past.len()];
        let mut buf = Vec::new();
        for (seg, radix) in self.segments.iter().zip(&self.radices) {
            let digit = random_below(radix, rng);
            buf.clear();
            buf.resize(seg.len(), 0);
            unrank_into(&self.past.bits()[seg.clone()], digit, &self.fib, &mut buf);
            for (w, &b) in seg.clone().zip(&buf) {
                word[w] = Some(b);
            }
        }
        word
    }
}

/// Uniform integer in `[0, bound)`.
pub(crate) fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    use num_traits::ToPrimitive;
    if let Some(b) = bound.to_u64() {
        return BigUint::from(rng.random_range(0..b));
    }
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        *digits.last_mut().expect("bound is nonzero") &= top_mask;
        let x = BigUint::new(digits);
        if &x < bound {
            return x;
        }
    }
}

/// Codebook size `∏ F(d_m + 2)` over the runs of `a`.
pub fn count_codewords(a: &BusState) -> BigUint {
    let p = parse_runs(a);
    let fib = fib_table(p.run_lengths.iter().max().copied().unwrap_or(0) + 2);
    p.run_lengths.iter().fold(BigUint::one(), |acc, &d| acc * &fib[d + 2])
}

/// Payload length `K` for a past state with `excluded` free wires removed.
pub fn info_length(a: &BusState, excluded: &[usize]) -> Result<usize> {
    Ok(CacCodec::new(a, excluded)?.info_len())
}

pub fn cac_encode(info_bits: &[u8], a: &BusState, excluded: &[usize]) -> Result<Vec<Option<u8>>> {
    CacCodec::new(a, excluded)?.encode(info_bits)
}

pub fn cac_decode(b_partial: &[Option<u8>], a: &BusState, excluded: &[usize]) -> Result<Vec<u8>> {
    CacCodec::new(a, excluded)?.decode(b_partial)
}

/// `(1/N) Σ_m log2 F(d_m + 2)`.
pub fn cac_rate(a: &BusState) -> f64 {
    let p = parse_runs(a);
    let max = p.run_lengths.iter().max().copied().unwrap_or(0);
    let fib = fib_table(max + 2);
    let total: f64 = p.run_lengths.iter().map(|&d| log2_big(&fib[d + 2])).sum();
    total / a.len() as f64
}
