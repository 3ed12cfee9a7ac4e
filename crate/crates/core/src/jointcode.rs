//! Embedded joint CAC/ECC encoder, rate formulas and minimum-distance tools.
//!
//! The CAC payload goes on the information wires; the IRA parities of those
//! bits (taken in wire order) go on free wires of the past state, which are
//! unconstrained. When the past state has too few free wires, each missing
//! parity slot is made by shielding: a wire pinned to its past value next to
//! a carrier wire, cut from the start of a run.

use std::collections::HashSet;
use std::ops::Range;

use rand::Rng;
use serde::Serialize;

use crate::buscore::{free_wires, parse_runs, transition_report, BusState};
use crate::cac::{cac_rate, CacCodec, CacIndex};
use crate::ira::{ira_encode, sample_graph, validate_checks, DegreeDistribution, IraGraph};
use crate::{Error, Result};

/// A parity slot built from two adjacent wires of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShieldPair {
    /// Repeats its past bit.
    pub pinned: usize,
    /// Carries the parity.
    pub carrier: usize,
}

/// Receiver-reproducible split of the wires into information, parity and
/// shield roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedLayout {
    pub parity_wires: Vec<usize>,
    pub shield_pairs: Vec<ShieldPair>,
    pub info_wires: Vec<usize>,
    /// Alternating stretches carrying the CAC payload.
    pub segments: Vec<Range<usize>>,
    pub num_wires: usize,
}

impl EmbeddedLayout {
    /// Layout with explicitly chosen parity wires, which must all be free.
    pub fn with_parity_wires(a: &BusState, wires: &[usize]) -> Result<Self> {
        let free = free_wires(a);
        let mut parity_wires = wires.to_vec();
        parity_wires.sort_unstable();
        parity_wires.dedup();
        if parity_wires.len() != wires.len() {
            return Err(Error::Config("duplicate parity wire".into()));
        }
        for &w in &parity_wires {
            if free.binary_search(&w).is_err() {
                return Err(Error::WireNotFree(w));
            }
        }
        let segments: Vec<Range<usize>> = parse_runs(a)
            .runs()
            .filter(|r| !(r.len() == 1 && parity_wires.binary_search(&r.start).is_ok()))
            .collect();
        Ok(Self {
            info_wires: segments.iter().flat_map(|s| s.clone()).collect(),
            parity_wires,
            shield_pairs: Vec::new(),
            segments,
            num_wires: a.len(),
        })
    }

    pub fn num_parities(&self) -> usize {
        self.parity_wires.len() + self.shield_pairs.len()
    }

    /// Wires holding parities `p_1, p_2, …`, in wire order.
    pub fn parity_slots(&self) -> Vec<usize> {
        let mut slots: Vec<usize> = self
            .parity_wires
            .iter()
            .copied()
            .chain(self.shield_pairs.iter().map(|s| s.carrier))
            .collect();
        slots.sort_unstable();
        slots
    }

    pub fn pinned_wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.shield_pairs.iter().map(|s| s.pinned)
    }
}

/// Chooses where `p_needed` parities go.
///
/// With enough free wires, picks free-list entries `round(i·F/p)` for
/// `i = 0..p`. Otherwise every free wire is used and the deficit is covered
/// by shield pairs taken from the left end of the currently longest piece
/// (ties to the left): the first wire carries, the second is pinned.
pub fn select_parity_wires(a: &BusState, p_needed: usize) -> Result<EmbeddedLayout> {
    let free = free_wires(a);
    let f = free.len();
    if f >= p_needed {
        let mut chosen = Vec::with_capacity(p_needed);
        for i in 0..p_needed {
            let mut idx = (2 * i * f + p_needed) / (2 * p_needed);
            if let Some(&prev) = chosen.last() {
                idx = idx.max(prev + 1);
            }
            chosen.push(idx);
        }
        let wires: Vec<usize> = chosen.into_iter().map(|k| free[k]).collect();
        return EmbeddedLayout::with_parity_wires(a, &wires);
    }

    let deficit = p_needed - f;
    let mut pieces: Vec<Range<usize>> = parse_runs(a).runs().filter(|r| r.len() >= 2).collect();
    let capacity: usize = pieces.iter().map(|r| r.len() / 2).sum();
    if deficit > capacity {
        return Err(Error::InsufficientWires {
            needed: p_needed,
            available: f + capacity,
        });
    }
    let mut shield_pairs = Vec::with_capacity(deficit);
    for _ in 0..deficit {
        let (k, _) = pieces
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, r)| r.len())
            .expect("capacity checked");
        let piece = pieces[k].clone();
        shield_pairs.push(ShieldPair {
            carrier: piece.start,
            pinned: piece.start + 1,
        });
        pieces[k] = piece.start + 2..piece.end;
    }
    shield_pairs.sort_by_key(|s| s.carrier);

    // Leftover pieces (including singletons) and untouched short runs.
    let mut used = vec![false; a.len()];
    for &w in &free {
        used[w] = true;
    }
    for s in &shield_pairs {
        used[s.carrier] = true;
        used[s.pinned] = true;
    }
    let mut segments = Vec::new();
    for run in parse_runs(a).runs() {
        let mut start = None;
        for w in run.clone() {
            match (used[w], start) {
                (false, None) => start = Some(w),
                (true, Some(s)) => {
                    segments.push(s..w);
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            segments.push(s..run.end);
        }
    }
    Ok(EmbeddedLayout {
        info_wires: segments.iter().flat_map(|s| s.clone()).collect(),
        parity_wires: free,
        shield_pairs,
        segments,
        num_wires: a.len(),
    })
}

/// A bus word produced by the embedded encoder, with its wire roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedCodeword {
    pub word: BusState,
    pub parity_wires: Vec<usize>,
    pub info_wires: Vec<usize>,
    pub shield_pairs: Vec<ShieldPair>,
}

/// Embedded joint code for one past state.
#[derive(Clone, Debug)]
pub struct JointCode {
    layout: EmbeddedLayout,
    graph: IraGraph,
    codec: CacCodec,
    parity_slots: Vec<usize>,
}

impl JointCode {
    pub fn new(a: &BusState, layout: EmbeddedLayout, graph: IraGraph) -> Result<Self> {
        if layout.num_wires != a.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: layout.num_wires,
            });
        }
        if graph.num_info() != layout.info_wires.len() || graph.num_parity() != layout.num_parities() {
            return Err(Error::GraphMismatch(format!(
                "graph is {}+{}, layout has {} information and {} parity slots",
                graph.num_info(),
                graph.num_parity(),
                layout.info_wires.len(),
                layout.num_parities()
            )));
        }
        let codec = CacCodec::from_segments(a, layout.segments.clone())?;
        Ok(Self {
            parity_slots: layout.parity_slots(),
            layout,
            graph,
            codec,
        })
    }

    /// Selects the layout and samples a configuration-model graph for it.
    pub fn build<R: Rng + ?Sized>(
        a: &BusState,
        p_needed: usize,
        dist: &DegreeDistribution,
        rng: &mut R,
    ) -> Result<Self> {
        let layout = select_parity_wires(a, p_needed)?;
        let graph = sample_graph(layout.info_wires.len(), p_needed, dist, rng)?;
        Self::new(a, layout, graph)
    }

    pub fn past(&self) -> &BusState {
        self.codec.past()
    }

    pub fn layout(&self) -> &EmbeddedLayout {
        &self.layout
    }

    pub fn graph(&self) -> &IraGraph {
        &self.graph
    }

    pub fn codec(&self) -> &CacCodec {
        &self.codec
    }

    pub fn parity_slots(&self) -> &[usize] {
        &self.parity_slots
    }

    /// Payload bits per word.
    pub fn info_len(&self) -> usize {
        self.codec.info_len()
    }

    pub fn encode(&self, info_bits: &[u8]) -> Result<EmbeddedCodeword> {
        let cac = self.codec.encode(info_bits)?;
        self.finish(&cac)
    }

    pub fn encode_index(&self, index: &CacIndex) -> Result<EmbeddedCodeword> {
        let cac = self.codec.encode_index(index)?;
        self.finish(&cac)
    }

    fn finish(&self, cac: &[Option<u8>]) -> Result<EmbeddedCodeword> {
        let info: Vec<u8> = self
            .layout
            .info_wires
            .iter()
            .map(|&w| cac[w].expect("codec covers the information wires"))
            .collect();
        Ok(self.wrap(self.complete(&info)?))
    }

    fn wrap(&self, word: BusState) -> EmbeddedCodeword {
        EmbeddedCodeword {
            word,
            parity_wires: self.layout.parity_wires.clone(),
            info_wires: self.layout.info_wires.clone(),
            shield_pairs: self.layout.shield_pairs.clone(),
        }
    }

    /// Fills parity slots and pinned wires around information-wire bits.
    pub fn complete(&self, info_wire_bits: &[u8]) -> Result<BusState> {
        let parities = ira_encode(info_wire_bits, &self.graph)?;
        let mut bits = self.past().bits().to_vec();
        for (&w, &b) in self.layout.info_wires.iter().zip(info_wire_bits) {
            bits[w] = b;
        }
        for (&w, &p) in self.parity_slots.iter().zip(&parities) {
            bits[w] = p;
        }
        BusState::new(bits)
    }

    /// A codeword with a uniformly random CAC part (full codebook).
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> BusState {
        let cac = self.codec.sample_uniform(rng);
        let info: Vec<u8> = self
            .layout
            .info_wires
            .iter()
            .map(|&w| cac[w].expect("codec covers the information wires"))
            .collect();
        self.complete(&info).expect("sizes agree by construction")
    }

    /// Recovers the payload from an error-free word.
    pub fn decode(&self, word: &BusState) -> Result<Vec<u8>> {
        self.codec.decode_state(word)
    }

    pub fn info_wire_bits(&self, word: &BusState) -> Vec<u8> {
        self.layout.info_wires.iter().map(|&w| word.bit(w)).collect()
    }

    pub fn parity_bits(&self, word: &BusState) -> Vec<u8> {
        self.parity_slots.iter().map(|&w| word.bit(w)).collect()
    }

    /// Whether `word` satisfies every IRA check.
    pub fn is_ecc_codeword(&self, word: &BusState) -> bool {
        validate_checks(&self.info_wire_bits(word), &self.parity_bits(word), &self.graph)
    }

    /// Whether `word` is free of opposing transitions and pinned wires hold.
    pub fn is_cac_codeword(&self, word: &BusState) -> bool {
        let a = self.past();
        transition_report(a.bits(), word.bits()).is_empty()
            && self.layout.pinned_wires().all(|w| word.bit(w) == a.bit(w))
    }
}

/// One-shot embedded encoding.
pub fn embedded_encode(
    info_bits: &[u8],
    a: &BusState,
    graph: &IraGraph,
    layout: &EmbeddedLayout,
) -> Result<EmbeddedCodeword> {
    JointCode::new(a, layout.clone(), graph.clone())?.encode(info_bits)
}

/// Rate of the shielded scheme, where every parity occupies two wires.
pub fn rate_shielded(r_cac: f64, r_ecc: f64) -> f64 {
    r_cac / (2.0 / r_ecc - 1.0)
}

/// Rate of the embedded scheme with parities on free wires.
pub fn rate_embedded(r_cac: f64, r_ecc: f64) -> f64 {
    r_cac + r_ecc - 1.0
}

/// Bus width needed to move `k_info` bits per transfer at `rate`.
pub fn wires_needed(k_info: usize, rate: f64) -> usize {
    (k_info as f64 / rate).ceil() as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateComparison {
    pub r_cac: f64,
    pub r_s: f64,
    pub r_e: f64,
    /// `r_e − r_s`.
    pub margin: f64,
    /// `1 − r_ecc/2`, a lower bound on `r_cac` under the free-wire hypothesis.
    pub bound: f64,
}

/// Shielded vs embedded rates for one past state.
///
/// Requires at least a `1 − r_ecc` fraction of free wires.
pub fn compare_rates(a: &BusState, r_ecc: f64) -> Result<RateComparison> {
    if !(r_ecc > 0.0 && r_ecc <= 1.0) {
        return Err(Error::RateOutOfRange(r_ecc, "ECC rate must lie in (0, 1]"));
    }
    let free_frac = free_wires(a).len() as f64 / a.len() as f64;
    if free_frac < 1.0 - r_ecc {
        return Err(Error::Hypothesis(format!(
            "free-wire fraction {free_frac:.4} is below 1 - r_ecc = {:.4}",
            1.0 - r_ecc
        )));
    }
    let r_cac = cac_rate(a);
    let r_s = rate_shielded(r_cac, r_ecc);
    let r_e = rate_embedded(r_cac, r_ecc);
    Ok(RateComparison {
        r_cac,
        r_s,
        r_e,
        margin: r_e - r_s,
        bound: 1.0 - r_ecc / 2.0,
    })
}

fn check_pairs(a: &[u8], c: &[u8], pairs: Range<usize>) -> bool {
    pairs.into_iter().all(|n| !(a[n] != a[n + 1] && c[n] == a[n + 1] && c[n + 1] == a[n]))
}

/// Two joint codewords at distance exactly `weight(c0)`.
///
/// `c0_info` is the information-wire part of an ECC codeword. Returns
/// `(c1, c2)` with both CAC- and ECC-valid and `c1 ⊕ c2 = c0`. On stretches
/// where `c0` violates the crosstalk constraint, `c1` is 1 inside and its end
/// bits are chosen (preferring 0) so that both words are valid; elsewhere it
/// is 0.
pub fn dmin_witness(c0_info: &[u8], code: &JointCode) -> Result<(BusState, BusState)> {
    if !code.layout.shield_pairs.is_empty() {
        return Err(Error::Hypothesis("parities must all sit on free wires".into()));
    }
    if c0_info.iter().all(|&b| b == 0) {
        return Err(Error::Hypothesis("c0 must be nonzero".into()));
    }
    let c0 = code.complete(c0_info)?;
    let a = code.past().bits();
    let c0b = c0.bits();
    let n = a.len();

    // Maximal chains of consecutive violated pairs, as wire ranges.
    let mut chains: Vec<Range<usize>> = Vec::new();
    for k in 0..n.saturating_sub(1) {
        if a[k] != a[k + 1] && c0b[k] == a[k + 1] && c0b[k + 1] == a[k] {
            match chains.last_mut() {
                Some(r) if r.end == k + 1 => r.end = k + 2,
                _ => chains.push(k..k + 2),
            }
        }
    }

    let mut c1 = vec![0u8; n];
    for r in &chains {
        c1[r.start + 1..r.end - 1].fill(1);
    }
    let mut c2: Vec<u8> = c0b.iter().zip(&c1).map(|(x, y)| x ^ y).collect();

    fn search(m: usize, chains: &[Range<usize>], a: &[u8], c0: &[u8], c1: &mut [u8], c2: &mut [u8]) -> bool {
        let n = a.len();
        let Some(r) = chains.get(m) else {
            return check_pairs(a, c1, 0..n - 1) && check_pairs(a, c2, 0..n - 1);
        };
        let (first, last) = (r.start, r.end - 1);
        let lo = first.saturating_sub(1);
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            c1[first] = x;
            c1[last] = y;
            c2[first] = c0[first] ^ x;
            c2[last] = c0[last] ^ y;
            if check_pairs(a, c1, lo..last)
                && check_pairs(a, c2, lo..last)
                && search(m + 1, chains, a, c0, c1, c2)
            {
                return true;
            }
        }
        false
    }
    if !search(0, &chains, a, c0b, &mut c1, &mut c2) {
        return Err(Error::Hypothesis("no valid split of c0 found".into()));
    }

    let info = |v: &[u8]| -> Vec<u8> { code.layout.info_wires.iter().map(|&w| v[w]).collect() };
    let w1 = code.complete(&info(&c1))?;
    let w2 = code.complete(&info(&c2))?;
    Ok((w1, w2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    /// Minimum distance between CAC-valid ECC codewords.
    pub d_embedded: usize,
    /// Minimum weight of a nonzero ECC codeword.
    pub d_ecc: usize,
}

/// Largest information-wire count accepted by [`dmin_bruteforce`].
pub const BRUTEFORCE_MAX_INFO: usize = 20;

/// Exhaustive minimum distances for a small instance.
///
/// The joint code here is every CAC codeword with its parities, not only the
/// `2^K` words reachable from a payload.
pub fn dmin_bruteforce(code: &JointCode) -> Result<DistanceReport> {
    let n = code.past().len();
    let k = code.layout.info_wires.len();
    if n > 128 || k > BRUTEFORCE_MAX_INFO {
        return Err(Error::TooLarge(format!(
            "{k} information wires on a {n}-wire bus (limits {BRUTEFORCE_MAX_INFO} and 128)"
        )));
    }
    if k == 0 {
        return Err(Error::Hypothesis("no information wires".into()));
    }
    let pack = |b: &BusState| -> u128 {
        b.bits().iter().enumerate().fold(0u128, |acc, (i, &x)| acc | ((x as u128) << i))
    };

    let mut ecc: Vec<u128> = Vec::with_capacity(1 << k);
    let mut cac = HashSet::new();
    let mut info = vec![0u8; k];
    for x in 0u32..(1 << k) {
        for (i, bit) in info.iter_mut().enumerate() {
            *bit = ((x >> i) & 1) as u8;
        }
        let w = code.complete(&info)?;
        let packed = pack(&w);
        if code.is_cac_codeword(&w) {
            cac.insert(packed);
        }
        ecc.push(packed);
    }
    let base = pack(&code.complete(&vec![0; k])?);
    // Remove the constant contribution of pinned wires so ECC words are linear.
    let mut diffs: Vec<u128> = ecc.iter().map(|&w| w ^ base).filter(|&w| w != 0).collect();
    diffs.sort_by_key(|w| w.count_ones());
    let d_ecc = diffs.first().map(|w| w.count_ones() as usize).unwrap_or(0);

    let members: Vec<u128> = cac.iter().copied().collect();
    let d_embedded = diffs
        .iter()
        .find(|&&x| members.iter().any(|&c| cac.contains(&(c ^ x))))
        .map(|w| w.count_ones() as usize)
        .ok_or_else(|| Error::Hypothesis("fewer than two joint codewords".into()))?;
    Ok(DistanceReport { d_embedded, d_ecc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buscore::check_transition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bs(s: &str) -> BusState {
        s.parse().unwrap()
    }

    #[test]
    fn stride_selection() {
        let l = select_parity_wires(&bs("0000"), 2).unwrap();
        assert_eq!(l.parity_wires, vec![0, 2]);
        assert!(l.shield_pairs.is_empty());
        assert_eq!(l.info_wires, vec![1, 3]);
        let l = select_parity_wires(&bs("0000"), 0).unwrap();
        assert!(l.parity_wires.is_empty() && l.shield_pairs.is_empty());
        let l = select_parity_wires(&bs("0000"), 4).unwrap();
        assert_eq!(l.parity_wires, vec![0, 1, 2, 3]);
        assert!(l.info_wires.is_empty());
    }

    #[test]
    fn shield_fallback() {
        let a = bs("0101");
        let l = select_parity_wires(&a, 1).unwrap();
        assert_eq!(l.shield_pairs, vec![ShieldPair { carrier: 0, pinned: 1 }]);
        assert_eq!(l.segments, vec![2..4]);
        let l = select_parity_wires(&a, 2).unwrap();
        assert_eq!(l.shield_pairs.len(), 2);
        assert!(l.info_wires.is_empty());
        assert_eq!(
            select_parity_wires(&a, 3).unwrap_err(),
            Error::InsufficientWires { needed: 3, available: 2 }
        );
    }

    #[test]
    fn wire_count_identity() {
        let a = bs("0010101101000");
        for p in 0..8 {
            let l = select_parity_wires(&a, p).unwrap();
            assert_eq!(l.info_wires.len() + l.parity_wires.len() + 2 * l.shield_pairs.len(), a.len());
            assert_eq!(l.num_parities(), p);
        }
    }

    #[test]
    fn shielded_words_are_valid() {
        let a = bs("0101010110");
        let layout = select_parity_wires(&a, 3).unwrap();
        let n_info = layout.info_wires.len();
        let graph = IraGraph::from_check_adjacency(n_info, (0..3).map(|j| vec![j % n_info]).collect()).unwrap();
        let code = JointCode::new(&a, layout, graph).unwrap();
        for x in 0u32..(1 << code.info_len()) {
            let info: Vec<u8> = (0..code.info_len()).map(|i| ((x >> i) & 1) as u8).collect();
            let cw = code.encode(&info).unwrap();
            assert!(check_transition(&a, &cw.word).unwrap().is_empty());
            assert!(code.is_ecc_codeword(&cw.word));
            assert_eq!(code.decode(&cw.word).unwrap(), info);
        }
    }

    #[test]
    fn passthrough_without_parities() {
        let a = bs("0000");
        let layout = select_parity_wires(&a, 0).unwrap();
        let graph = IraGraph::from_check_adjacency(4, vec![]).unwrap();
        let cw = embedded_encode(&[1, 0, 1, 1], &a, &graph, &layout).unwrap();
        assert_eq!(cw.word, bs("1011"));
    }

    #[test]
    fn accumulated_parities_on_free_wires() {
        let a = bs("0000");
        let layout = select_parity_wires(&a, 2).unwrap();
        let graph = IraGraph::from_check_adjacency(2, vec![vec![0], vec![1]]).unwrap();
        for (u, p) in [([0, 0], [0, 0]), ([1, 0], [1, 1]), ([0, 1], [0, 1]), ([1, 1], [1, 0])] {
            let cw = embedded_encode(&u, &a, &graph, &layout).unwrap();
            assert_eq!(cw.word.bits(), &[p[0], u[0], p[1], u[1]]);
        }
    }

    #[test]
    fn graph_size_mismatch() {
        let a = bs("0000");
        let layout = select_parity_wires(&a, 2).unwrap();
        let graph = IraGraph::from_check_adjacency(3, vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(JointCode::new(&a, layout, graph), Err(Error::GraphMismatch(_))));
    }

    #[test]
    fn random_words_are_joint_codewords() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dist = DegreeDistribution::regular(3, 12).unwrap();
        for _ in 0..50 {
            let a = BusState::new((0..64).map(|_| rng.random_range(0..2u8)).collect()).unwrap();
            let Ok(code) = JointCode::build(&a, 13, &dist, &mut rng) else { continue };
            let w = code.sample_uniform(&mut rng);
            assert!(code.is_cac_codeword(&w) && code.is_ecc_codeword(&w));
        }
    }

    #[test]
    fn rate_formulas() {
        assert!((rate_shielded(0.824, 0.9) - 0.674).abs() < 1e-3);
        assert!((rate_embedded(0.824, 0.9) - 0.724).abs() < 1e-12);
        assert!((rate_shielded(0.824, 0.8) - 0.824 / 1.5).abs() < 1e-12);
        assert!((rate_embedded(0.824, 0.8) - 0.624).abs() < 1e-12);
        assert_eq!(rate_shielded(0.7, 1.0), 0.7);
        assert_eq!(rate_embedded(0.7, 1.0), 0.7);
        assert_eq!(wires_needed(59, 0.674), 88);
        assert_eq!(wires_needed(59, 0.724), 82);
        assert_eq!(wires_needed(59, 0.824), 72);
    }

    #[test]
    fn comparison_hypothesis() {
        let a = bs("0000011111");
        let c = compare_rates(&a, 1.0).unwrap();
        assert!(c.margin.abs() < 1e-15);
        assert!(matches!(compare_rates(&bs("0101010101"), 0.9), Err(Error::Hypothesis(_))));
    }

    fn table_code() -> JointCode {
        let a = bs("01010101010");
        let layout = select_parity_wires(&a, 0).unwrap();
        let graph = IraGraph::from_check_adjacency(11, vec![]).unwrap();
        JointCode::new(&a, layout, graph).unwrap()
    }

    #[test]
    fn witness_table() {
        let code = table_code();
        let c0 = [1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0];
        let (c1, c2) = dmin_witness(&c0, &code).unwrap();
        assert_eq!(c1, bs("00011100010"));
        assert_eq!(c2, bs("11010111110"));
    }

    #[test]
    fn witness_of_valid_word_is_trivial() {
        let code = table_code();
        let c0 = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
        let (c1, c2) = dmin_witness(&c0, &code).unwrap();
        assert!(c1.bits().iter().all(|&b| b == 0));
        assert_eq!(c2.bits(), &c0);
        assert!(dmin_witness(&[0; 11], &code).is_err());
    }

    #[test]
    fn bruteforce_distance_small() {
        // Two free parity wires, one repeated info bit: every ECC word has weight >= 2.
        let a = bs("00100");
        let layout = select_parity_wires(&a, 2).unwrap();
        assert_eq!(layout.parity_wires, vec![0, 4]);
        let graph = IraGraph::from_check_adjacency(3, vec![vec![1], vec![0, 2]]).unwrap();
        let code = JointCode::new(&a, layout, graph).unwrap();
        let d = dmin_bruteforce(&code).unwrap();
        assert!(d.d_ecc >= 2);
        assert_eq!(d.d_embedded, d.d_ecc);
    }
}
