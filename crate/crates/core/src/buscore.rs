//! Bus states, alternating runs and free wires.
//!
//! A past bus state splits uniquely into maximal alternating runs (`0101…` or
//! `1010…`). Adjacent wires inside a run carry different past bits and are
//! therefore coupled by a crosstalk constraint; run boundaries (`00` or `11`)
//! are not. A run of length one touches no constraint at all, and its wire is
//! *free*.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::{Error, Result};

/// One clock state of an `N`-wire bus. Bits are stored as `0`/`1` bytes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BusState {
    bits: Vec<u8>,
}

impl BusState {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidBits("bus state must have at least one wire".into()));
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidBits(format!(
                "wire {} holds {}, expected 0 or 1",
                pos + 1,
                bits[pos]
            )));
        }
        Ok(Self { bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// Rebuilds a state from its first bit and alternating-run lengths.
    ///
    /// Consecutive runs meet with equal bits, so the result parses back into
    /// exactly these run lengths.
    pub fn from_runs(first_bit: u8, run_lengths: &[usize]) -> Result<Self> {
        if first_bit > 1 {
            return Err(Error::InvalidBits(format!("first bit {first_bit}")));
        }
        if run_lengths.contains(&0) {
            return Err(Error::InvalidBits("run lengths must be positive".into()));
        }
        let mut bits = Vec::with_capacity(run_lengths.iter().sum());
        let mut bit = first_bit;
        for &d in run_lengths {
            for k in 0..d {
                bits.push(if k % 2 == 0 { bit } else { 1 - bit });
            }
            bit = *bits.last().expect("run lengths are positive");
        }
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, wire: usize) -> u8 {
        self.bits[wire]
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn is_constant(&self) -> bool {
        self.bits.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of wires on which `self` and `other` differ.
    pub fn hamming_distance(&self, other: &BusState) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }
}

impl FromStr for BusState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = parse_bits(s)?;
        Self::new(bits)
    }
}

impl fmt::Display for BusState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BusState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BusState({self})")
    }
}

/// Parses an ASCII `0`/`1` string (wire 1 first).
pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::InvalidBits(format!(
                "character {other:?} at position {}",
                i + 1
            ))),
        })
        .collect()
}

/// Formats a `0`/`1` slice as an ASCII string.
pub fn format_bits(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

/// Maximal alternating-run decomposition of a bus state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunParse {
    pub run_lengths: Vec<usize>,
    pub run_starts: Vec<usize>,
    pub free_wires: Vec<usize>,
    pub source_length: usize,
}

impl RunParse {
    pub fn num_runs(&self) -> usize {
        self.run_lengths.len()
    }

    /// Wire ranges of the runs, in wire order.
    pub fn runs(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.run_starts
            .iter()
            .zip(&self.run_lengths)
            .map(|(&s, &d)| s..s + d)
    }
}

pub fn parse_runs(a: &BusState) -> RunParse {
    let bits = a.bits();
    let mut run_starts = vec![0];
    for n in 1..bits.len() {
        if bits[n] == bits[n - 1] {
            run_starts.push(n);
        }
    }
    let run_lengths: Vec<usize> = run_starts
        .iter()
        .enumerate()
        .map(|(m, &s)| run_starts.get(m + 1).copied().unwrap_or(bits.len()) - s)
        .collect();
    let free_wires = run_starts
        .iter()
        .zip(&run_lengths)
        .filter(|(_, &d)| d == 1)
        .map(|(&s, _)| s)
        .collect();
    RunParse {
        run_lengths,
        run_starts,
        free_wires,
        source_length: bits.len(),
    }
}

/// Wires whose next value is unconstrained by the past state.
///
/// An interior wire is free when it agrees with both past neighbours; an end
/// wire only needs to agree with its single neighbour.
pub fn free_wires(a: &BusState) -> Vec<usize> {
    let bits = a.bits();
    let n = bits.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || bits[i - 1] == bits[i];
            let right = i + 1 == n || bits[i + 1] == bits[i];
            left && right
        })
        .collect()
}

/// Adjacent wire pairs `(n, n + 1)` that make an opposing transition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub opposing_pairs: Vec<(usize, usize)>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.opposing_pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.opposing_pairs.len()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("no opposing transitions");
        }
        let pairs: Vec<String> = self
            .opposing_pairs
            .iter()
            .map(|(l, r)| format!("({},{})", l + 1, r + 1))
            .collect();
        write!(f, "opposing transitions on {}", pairs.join(" "))
    }
}

/// Whether the pair `(b_l, b_r)` is an opposing transition from `(a_l, a_r)`.
#[inline]
pub fn is_opposing(a_l: u8, a_r: u8, b_l: u8, b_r: u8) -> bool {
    a_l != a_r && b_l == a_r && b_r == a_l
}

pub fn check_transition(a: &BusState, b: &BusState) -> Result<ViolationReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(transition_report(a.bits(), b.bits()))
}

pub(crate) fn transition_report(a: &[u8], b: &[u8]) -> ViolationReport {
    let opposing_pairs = (1..a.len())
        .filter(|&n| is_opposing(a[n - 1], a[n], b[n - 1], b[n]))
        .map(|n| (n - 1, n))
        .collect();
    ViolationReport { opposing_pairs }
}

/// Fibonacci number `F(n)` with `F(1) = F(2) = 1`.
pub fn fib(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::FibonacciIndexZero);
    }
    Ok(fib_table(n).pop().expect("table has n + 1 entries"))
}

/// `F(0..=max)` as arbitrary-precision integers (`F(0) = 0`).
pub fn fib_table(max: usize) -> Vec<BigUint> {
    let mut t = Vec::with_capacity(max + 1);
    t.push(BigUint::from(0u32));
    if max >= 1 {
        t.push(BigUint::from(1u32));
    }
    for n in 2..=max {
        let next = &t[n - 1] + &t[n - 2];
        t.push(next);
    }
    t
}

/// `F(n)` as `u128`; exact for `n <= 186`.
pub fn fib_u128(n: usize) -> u128 {
    assert!(n <= 186, "F({n}) overflows u128");
    let (mut x, mut y) = (0u128, 1u128);
    for _ in 0..n {
        (x, y) = (y, x.wrapping_add(y));
    }
    x
}

/// `log2` of an arbitrary-precision integer.
pub fn log2_big(x: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits fit");
    top.log2() + shift as f64
}
