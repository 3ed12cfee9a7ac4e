//! Iterative erasure decoding over the joint CAC/ECC factor graph.
//!
//! Variable nodes are the bus wires. CAC check nodes sit between adjacent
//! wires with different past bits; ECC check `j` ties the LDPC neighbours of
//! check `j` to parities `p_j` and `p_{j-1}`. One outer iteration runs
//!
//! 1. information variables → CAC checks,
//! 2. CAC checks → information variables,
//! 3. information variables → ECC checks,
//! 4. ECC checks ↔ parity variables along the accumulator chain until stable,
//! 5. ECC checks → information variables,
//!
//! and iterations repeat until no message changes. Messages take values in
//! `{0, 1, ?}`; on the erasure channel known values never disagree.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::buscore::BusState;
use crate::ira::IraGraph;
use crate::jointcode::{EmbeddedLayout, JointCode};
use crate::{Error, Result};

const ERASED: u8 = 2;

/// Received word over `{0, 1, ?}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErasureWord {
    pub symbols: Vec<Option<u8>>,
}

impl ErasureWord {
    pub fn new(symbols: Vec<Option<u8>>) -> Self {
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn num_erasures(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// The bus state, if nothing is erased.
    pub fn to_state(&self) -> Option<BusState> {
        let bits: Option<Vec<u8>> = self.symbols.iter().copied().collect();
        BusState::new(bits?).ok()
    }
}

impl From<&BusState> for ErasureWord {
    fn from(b: &BusState) -> Self {
        Self::new(b.bits().iter().map(|&x| Some(x)).collect())
    }
}

impl FromStr for ErasureWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(Some(0)),
                '1' => Ok(Some(1)),
                'e' | 'E' | '?' => Ok(None),
                other => Err(Error::InvalidBits(format!("character {other:?} at position {}", i + 1))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for ErasureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Some(0) => "0",
                Some(_) => "1",
                None => "e",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ErasureWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ErasureWord({self})")
    }
}

/// Which edge of a CAC check a message arrives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Message leaving a CAC check on the opposite edge.
///
/// With past pair `(a_l, a_r)`, `a_l ≠ a_r`, the next pair may not be
/// `(a_r, a_l)`: a left value of `a_r` forces the right wire to `a_r`, and a
/// right value of `a_l` forces the left wire to `a_l`.
pub fn cac_node_update(past_pair: (u8, u8), incoming: Option<u8>, from_side: Side) -> Option<u8> {
    let (a_l, a_r) = past_pair;
    if a_l == a_r {
        return None;
    }
    match (from_side, incoming) {
        (Side::Left, Some(v)) if v == a_r => Some(a_r),
        (Side::Right, Some(v)) if v == a_l => Some(a_l),
        _ => None,
    }
}

/// Outgoing messages of a variable node plus its decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarUpdate {
    pub outgoing: Vec<Option<u8>>,
    pub decision: Option<u8>,
}

/// Each edge receives any known value among the channel and the other edges.
pub fn variable_node_update(channel: Option<u8>, incoming: &[Option<u8>]) -> Result<VarUpdate> {
    let mut known = channel;
    let mut count = usize::from(channel.is_some());
    for (k, m) in incoming.iter().enumerate() {
        if let Some(v) = m {
            match known {
                Some(u) if u != *v => return Err(Error::Contradiction(k)),
                _ => known = Some(*v),
            }
            count += 1;
        }
    }
    let outgoing = incoming
        .iter()
        .map(|m| {
            let others = count - usize::from(m.is_some());
            if others > 0 {
                known
            } else {
                None
            }
        })
        .collect();
    Ok(VarUpdate {
        outgoing,
        decision: known,
    })
}

/// Each edge receives the XOR of the others when all of them are known.
pub fn ecc_node_update(incoming: &[Option<u8>]) -> Vec<Option<u8>> {
    let unknown = incoming.iter().filter(|m| m.is_none()).count();
    let xor = incoming.iter().flatten().fold(0u8, |x, &v| x ^ v);
    incoming
        .iter()
        .map(|m| match (m, unknown) {
            (Some(v), 0) => Some(xor ^ v),
            (None, 1) => Some(xor),
            _ => None,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Info(usize),
    Parity(usize),
    Pinned,
}

/// Joint factor graph of one embedded code instance.
#[derive(Clone, Debug)]
pub struct FactorGraph {
    code: JointCode,
    past: Vec<u8>,
    roles: Vec<Role>,
    info_wires: Vec<usize>,
    parity_wires: Vec<usize>,
    /// Left wire of every CAC check.
    cac_left: Vec<usize>,
    /// Index of the CAC check whose left wire is `w`, if any.
    cac_at: Vec<Option<usize>>,
    /// ECC check → info-edge CSR; edge `e` joins `edge_var[e]` and check `c`
    /// for `check_ptr[c] <= e < check_ptr[c + 1]`.
    check_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    /// Info variable → edge ids.
    var_ptr: Vec<usize>,
    var_edges: Vec<usize>,
}

impl FactorGraph {
    pub fn new(code: JointCode) -> Self {
        let past = code.past().bits().to_vec();
        let n = past.len();
        let layout = code.layout();
        let mut roles = vec![Role::Pinned; n];
        for (i, &w) in layout.info_wires.iter().enumerate() {
            roles[w] = Role::Info(i);
        }
        let parity_wires = code.parity_slots().to_vec();
        for (j, &w) in parity_wires.iter().enumerate() {
            roles[w] = Role::Parity(j);
        }

        let mut cac_left = Vec::new();
        let mut cac_at = vec![None; n];
        for w in 0..n.saturating_sub(1) {
            if past[w] != past[w + 1] {
                cac_at[w] = Some(cac_left.len());
                cac_left.push(w);
            }
        }

        let graph = code.graph();
        let mut check_ptr = vec![0];
        let mut edge_var = Vec::with_capacity(graph.num_ldpc_edges());
        for j in 0..graph.num_parity() {
            edge_var.extend(graph.check_neighbors_mod2(j));
            check_ptr.push(edge_var.len());
        }
        let k = graph.num_info();
        let mut deg = vec![0usize; k + 1];
        for &v in &edge_var {
            deg[v + 1] += 1;
        }
        for i in 0..k {
            deg[i + 1] += deg[i];
        }
        let var_ptr = deg.clone();
        let mut fill = deg;
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }

        Self {
            info_wires: layout.info_wires.clone(),
            code,
            past,
            roles,
            parity_wires,
            cac_left,
            cac_at,
            check_ptr,
            edge_var,
            var_ptr,
            var_edges,
        }
    }

    pub fn code(&self) -> &JointCode {
        &self.code
    }

    pub fn num_wires(&self) -> usize {
        self.past.len()
    }

    pub fn num_cac_checks(&self) -> usize {
        self.cac_left.len()
    }

    pub fn num_ecc_checks(&self) -> usize {
        self.parity_wires.len()
    }

    /// LDPC edges after cancelling multi-edges in pairs.
    pub fn num_ldpc_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Accumulator edges: each check meets its own parity and the previous one.
    pub fn num_chain_edges(&self) -> usize {
        (2 * self.parity_wires.len()).saturating_sub(1)
    }

    /// Wires at either end of each CAC check.
    pub fn cac_checks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cac_left.iter().map(|&w| (w, w + 1))
    }

    pub fn info_wires(&self) -> &[usize] {
        &self.info_wires
    }

    pub fn parity_wires(&self) -> &[usize] {
        &self.parity_wires
    }
}

/// Builds the factor graph of a past state, IRA graph and layout.
pub fn build_factor_graph(a: &BusState, graph: &IraGraph, layout: &EmbeddedLayout) -> Result<FactorGraph> {
    Ok(FactorGraph::new(JointCode::new(a, layout.clone(), graph.clone())?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecoderConfig {
    pub max_outer: usize,
    /// Repeat steps 1–2 inside every run until no CAC message changes.
    pub saturate_cac_runs: bool,
    /// Use CAC checks at all; `false` gives the ECC-only decoder.
    pub use_cac: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_outer: 200,
            saturate_cac_runs: true,
            use_cac: true,
        }
    }
}

/// Per-iteration decoder statistics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IterationStats {
    /// Fraction of information → ECC messages still erased after step 3.
    pub ldpc_erased_fraction: f64,
    /// Wires still undecided after the iteration.
    pub erased_wires: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub word: ErasureWord,
    /// Payload, when every wire is resolved and the index is in range.
    pub info_bits: Option<Vec<u8>>,
    pub iterations: usize,
    pub converged: bool,
    /// Undecided wires over the whole bus.
    pub residual_erasures: usize,
    pub trace: Vec<IterationStats>,
}

impl DecodeResult {
    pub fn residual_on(&self, wires: &[usize]) -> usize {
        wires.iter().filter(|&&w| self.word.symbols[w].is_none()).count()
    }
}

/// Message state of one decoding run.
pub struct BpDecoder<'a> {
    fg: &'a FactorGraph,
    cfg: DecoderConfig,
    channel: Vec<u8>,
    /// CAC check → its right wire / left wire.
    cac_to_right: Vec<u8>,
    cac_to_left: Vec<u8>,
    /// Step 3 and step 5 messages per LDPC edge.
    to_check: Vec<u8>,
    to_var: Vec<u8>,
    /// Parity `j` → check `j + 1` and parity `j` → check `j`.
    fwd: Vec<u8>,
    bwd: Vec<u8>,
    check_xor: Vec<u8>,
    check_unknown: Vec<u32>,
    iterations: usize,
    trace: Vec<IterationStats>,
}

impl<'a> BpDecoder<'a> {
    pub fn new(fg: &'a FactorGraph, received: &ErasureWord, cfg: DecoderConfig) -> Result<Self> {
        if received.len() != fg.num_wires() {
            return Err(Error::LengthMismatch {
                expected: fg.num_wires(),
                got: received.len(),
            });
        }
        let mut channel: Vec<u8> = received.symbols.iter().map(|s| s.unwrap_or(ERASED)).collect();
        for (w, r) in fg.roles.iter().enumerate() {
            if *r == Role::Pinned {
                channel[w] = fg.past[w];
            }
        }
        let c = fg.num_cac_checks();
        let e = fg.num_ldpc_edges();
        let p = fg.num_ecc_checks();
        Ok(Self {
            fg,
            cfg,
            channel,
            cac_to_right: vec![ERASED; c],
            cac_to_left: vec![ERASED; c],
            to_check: vec![ERASED; e],
            to_var: vec![ERASED; e],
            fwd: vec![ERASED; p],
            bwd: vec![ERASED; p],
            check_xor: vec![0; p],
            // Nothing is inferred from a check before step 4 has seen it.
            check_unknown: vec![u32::MAX; p],
            iterations: 0,
            trace: Vec::new(),
        })
    }

    /// Known value at `w` from channel and ECC side, ignoring CAC checks.
    fn base_value(&self, w: usize) -> u8 {
        if self.channel[w] != ERASED {
            return self.channel[w];
        }
        match self.fg.roles[w] {
            Role::Info(i) => {
                for &e in &self.fg.var_edges[self.fg.var_ptr[i]..self.fg.var_ptr[i + 1]] {
                    if self.to_var[e] != ERASED {
                        return self.to_var[e];
                    }
                }
                ERASED
            }
            Role::Parity(j) => self.parity_value(j),
            Role::Pinned => self.fg.past[w],
        }
    }

    fn parity_value(&self, j: usize) -> u8 {
        let w = self.fg.parity_wires[j];
        if self.channel[w] != ERASED {
            return self.channel[w];
        }
        // check j → p_j, then check j+1 → p_j
        let left_in = if j == 0 { 0 } else { self.fwd[j - 1] };
        if self.check_unknown[j] == 0 && left_in != ERASED {
            return self.check_xor[j] ^ left_in;
        }
        if j + 1 < self.fwd.len() && self.check_unknown[j + 1] == 0 && self.bwd[j + 1] != ERASED {
            return self.check_xor[j + 1] ^ self.bwd[j + 1];
        }
        ERASED
    }

    fn cac_pass(&mut self) -> bool {
        let fg = self.fg;
        let mut changed = false;
        for c in 0..fg.cac_left.len() {
            let l = fg.cac_left[c];
            let r = l + 1;
            let (a_l, a_r) = (fg.past[l], fg.past[r]);
            // Extrinsic inputs: everything at the wire except this check.
            let mut in_l = self.base_value(l);
            if in_l == ERASED && l > 0 {
                if let Some(c2) = fg.cac_at[l - 1] {
                    in_l = self.cac_to_right[c2];
                }
            }
            let mut in_r = self.base_value(r);
            if in_r == ERASED {
                if let Some(c2) = fg.cac_at[r] {
                    in_r = self.cac_to_left[c2];
                }
            }
            if self.cac_to_right[c] == ERASED && in_l == a_r {
                self.cac_to_right[c] = a_r;
                changed = true;
            }
            if self.cac_to_left[c] == ERASED && in_r == a_l {
                self.cac_to_left[c] = a_l;
                changed = true;
            }
        }
        changed
    }

    fn cac_value(&self, w: usize) -> u8 {
        if let Some(c) = self.fg.cac_at[w] {
            if self.cac_to_left[c] != ERASED {
                return self.cac_to_left[c];
            }
        }
        if w > 0 {
            if let Some(c) = self.fg.cac_at[w - 1] {
                return self.cac_to_right[c];
            }
        }
        ERASED
    }

    /// One outer iteration. Returns whether any message changed.
    pub fn iterate(&mut self) -> bool {
        let fg = self.fg;
        let before = self.known_messages();

        // Steps 1–2.
        if self.cfg.use_cac {
            while self.cac_pass() && self.cfg.saturate_cac_runs {}
        }

        // Step 3.
        let mut erased_edges = 0usize;
        for (i, &w) in fg.info_wires.iter().enumerate() {
            let edges = &fg.var_edges[fg.var_ptr[i]..fg.var_ptr[i + 1]];
            let mut fixed = self.channel[w];
            if fixed == ERASED && self.cfg.use_cac {
                fixed = self.cac_value(w);
            }
            let mut known = 0u32;
            let mut value = ERASED;
            for &e in edges {
                if self.to_var[e] != ERASED {
                    known += 1;
                    value = self.to_var[e];
                }
            }
            for &e in edges {
                let out = if fixed != ERASED {
                    fixed
                } else if known > u32::from(self.to_var[e] != ERASED) {
                    value
                } else {
                    ERASED
                };
                self.to_check[e] = out;
                erased_edges += usize::from(out == ERASED);
            }
        }

        // Step 4.
        let p = fg.num_ecc_checks();
        for j in 0..p {
            let mut x = 0u8;
            let mut unknown = 0u32;
            for &m in &self.to_check[fg.check_ptr[j]..fg.check_ptr[j + 1]] {
                if m == ERASED {
                    unknown += 1;
                } else {
                    x ^= m;
                }
            }
            self.check_xor[j] = x;
            self.check_unknown[j] = unknown;
        }
        for j in 0..p {
            let w = fg.parity_wires[j];
            let prev = if j == 0 { 0 } else { self.fwd[j - 1] };
            self.fwd[j] = if self.channel[w] != ERASED {
                self.channel[w]
            } else if self.check_unknown[j] == 0 && prev != ERASED {
                self.check_xor[j] ^ prev
            } else {
                ERASED
            };
        }
        for j in (0..p).rev() {
            let w = fg.parity_wires[j];
            self.bwd[j] = if self.channel[w] != ERASED {
                self.channel[w]
            } else if j + 1 < p && self.check_unknown[j + 1] == 0 && self.bwd[j + 1] != ERASED {
                self.check_xor[j + 1] ^ self.bwd[j + 1]
            } else {
                ERASED
            };
        }

        // Step 5.
        for j in 0..p {
            let own = self.bwd[j];
            let prev = if j == 0 { 0 } else { self.fwd[j - 1] };
            let chain_ok = own != ERASED && prev != ERASED;
            let base = if chain_ok { self.check_xor[j] ^ own ^ prev } else { 0 };
            for e in fg.check_ptr[j]..fg.check_ptr[j + 1] {
                let m = self.to_check[e];
                let others_unknown = self.check_unknown[j] - u32::from(m == ERASED);
                self.to_var[e] = if chain_ok && others_unknown == 0 {
                    if m == ERASED {
                        base
                    } else {
                        base ^ m
                    }
                } else {
                    ERASED
                };
            }
        }

        self.iterations += 1;
        let edges = fg.num_ldpc_edges();
        self.trace.push(IterationStats {
            ldpc_erased_fraction: if edges == 0 { 0.0 } else { erased_edges as f64 / edges as f64 },
            erased_wires: self.decisions().iter().filter(|d| d.is_none()).count(),
        });
        self.known_messages() != before
    }

    /// Number of non-erased messages on all edges.
    pub fn known_messages(&self) -> usize {
        self.slots().map(|v| v.iter().filter(|&&m| m != ERASED).count()).sum()
    }

    fn slots(&self) -> impl Iterator<Item = &Vec<u8>> {
        [
            &self.cac_to_right,
            &self.cac_to_left,
            &self.to_check,
            &self.to_var,
            &self.fwd,
            &self.bwd,
        ]
        .into_iter()
    }

    /// Known/erased flag of every message slot in a fixed order.
    pub fn message_mask(&self) -> Vec<bool> {
        self.slots().flat_map(|v| v.iter().map(|&m| m != ERASED)).collect()
    }

    /// Current value of every wire.
    pub fn decisions(&self) -> Vec<Option<u8>> {
        (0..self.fg.num_wires())
            .map(|w| {
                let mut v = self.base_value(w);
                if v == ERASED && self.cfg.use_cac {
                    v = self.cac_value(w);
                }
                (v != ERASED).then_some(v)
            })
            .collect()
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn run(mut self) -> DecodeResult {
        let mut converged = false;
        while self.iterations < self.cfg.max_outer {
            let changed = self.iterate();
            let undecided = self.trace.last().map_or(0, |t| t.erased_wires);
            if undecided == 0 || !changed {
                converged = true;
                break;
            }
        }
        let symbols = self.decisions();
        let residual_erasures = symbols.iter().filter(|s| s.is_none()).count();
        let info_bits = if residual_erasures == 0 {
            self.fg.code.codec().decode(&symbols).ok()
        } else {
            None
        };
        DecodeResult {
            word: ErasureWord::new(symbols),
            info_bits,
            iterations: self.iterations,
            converged,
            residual_erasures,
            trace: self.trace,
        }
    }
}

pub fn bp_decode(received: &ErasureWord, fg: &FactorGraph, cfg: &DecoderConfig) -> Result<DecodeResult> {
    Ok(BpDecoder::new(fg, received, *cfg)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jointcode::select_parity_wires;

    fn bs(s: &str) -> BusState {
        s.parse().unwrap()
    }

    fn ew(s: &str) -> ErasureWord {
        s.parse().unwrap()
    }

    fn plain_graph(a: &BusState) -> FactorGraph {
        let layout = select_parity_wires(a, 0).unwrap();
        let g = IraGraph::from_check_adjacency(a.len(), vec![]).unwrap();
        build_factor_graph(a, &g, &layout).unwrap()
    }

    #[test]
    fn cac_rule() {
        assert_eq!(cac_node_update((0, 1), Some(1), Side::Left), Some(1));
        assert_eq!(cac_node_update((0, 1), Some(0), Side::Left), None);
        assert_eq!(cac_node_update((0, 1), None, Side::Left), None);
        assert_eq!(cac_node_update((0, 1), Some(0), Side::Right), Some(0));
        assert_eq!(cac_node_update((0, 1), Some(1), Side::Right), None);
        assert_eq!(cac_node_update((1, 0), Some(0), Side::Left), Some(0));
        assert_eq!(cac_node_update((1, 0), Some(1), Side::Right), Some(1));
    }

    #[test]
    fn cac_rule_matches_valid_pairs() {
        for (al, ar) in [(0u8, 1u8), (1, 0)] {
            let valid: Vec<(u8, u8)> = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .into_iter()
                .filter(|&(l, r)| !(l == ar && r == al))
                .collect();
            for v in 0..2u8 {
                let rights: Vec<u8> = valid.iter().filter(|p| p.0 == v).map(|p| p.1).collect();
                let expect = (rights.len() == 1).then(|| rights[0]);
                assert_eq!(cac_node_update((al, ar), Some(v), Side::Left), expect);
                let lefts: Vec<u8> = valid.iter().filter(|p| p.1 == v).map(|p| p.0).collect();
                let expect = (lefts.len() == 1).then(|| lefts[0]);
                assert_eq!(cac_node_update((al, ar), Some(v), Side::Right), expect);
            }
        }
    }

    #[test]
    fn variable_rule() {
        let u = variable_node_update(None, &[Some(1), None, None]).unwrap();
        assert_eq!(u.outgoing, vec![None, Some(1), Some(1)]);
        assert_eq!(u.decision, Some(1));
        let u = variable_node_update(None, &[None, None]).unwrap();
        assert_eq!(u.outgoing, vec![None, None]);
        let u = variable_node_update(Some(0), &[None]).unwrap();
        assert_eq!(u.outgoing, vec![Some(0)]);
        assert!(variable_node_update(Some(0), &[Some(1)]).is_err());
    }

    #[test]
    fn ecc_rule() {
        assert_eq!(ecc_node_update(&[Some(1), Some(1), None]), vec![None, None, Some(0)]);
        assert_eq!(ecc_node_update(&[Some(1), None, None]), vec![None; 3]);
        assert_eq!(ecc_node_update(&[Some(1), Some(0)]), vec![Some(0), Some(1)]);
    }

    #[test]
    fn graph_counts() {
        assert_eq!(plain_graph(&bs("0101")).num_cac_checks(), 3);
        assert_eq!(plain_graph(&bs("0101")).num_ecc_checks(), 0);
        assert_eq!(plain_graph(&bs("0000")).num_cac_checks(), 0);
    }

    #[test]
    fn erasure_word_format() {
        let w = ew("01e1");
        assert_eq!(w.symbols, vec![Some(0), Some(1), None, Some(1)]);
        assert_eq!(w.to_string(), "01e1");
        assert!("01x".parse::<ErasureWord>().is_err());
    }

    #[test]
    fn no_erasures() {
        let fg = plain_graph(&bs("0101"));
        let r = bp_decode(&ew("0111"), &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.iterations, 1);
        assert!(r.converged);
        assert_eq!(r.word, ew("0111"));
        assert!(r.info_bits.is_some());
    }

    #[test]
    fn cac_forcing_recovers_erasure() {
        let fg = plain_graph(&bs("0101"));
        let r = bp_decode(&ew("111e"), &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.word, ew("1111"));
        assert_eq!(r.residual_erasures, 0);
        // right = 0 forces left = 0 on past (0,1)
        let r = bp_decode(&ew("e000"), &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.word, ew("0000"));
        let r = bp_decode(&ew("e111"), &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.residual_erasures, 1);
        assert!(r.info_bits.is_none());
    }

    #[test]
    fn chain_recovers_parity() {
        // three free parity wires, checks on single info bits
        let a = bs("000000");
        let layout = select_parity_wires(&a, 3).unwrap();
        let g = IraGraph::from_check_adjacency(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        let fg = build_factor_graph(&a, &g, &layout).unwrap();
        let word = fg.code().encode(&[1, 0, 1]).unwrap().word;
        let mut rx = ErasureWord::from(&word);
        let mid = fg.parity_wires()[1];
        rx.symbols[mid] = None;
        let r = bp_decode(&rx, &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.word, ErasureWord::from(&word));
        assert_eq!(r.info_bits, Some(vec![1, 0, 1]));
    }

    #[test]
    fn all_erased() {
        let fg = plain_graph(&bs("0110"));
        let r = bp_decode(&ew("eeee"), &fg, &DecoderConfig::default()).unwrap();
        assert_eq!(r.residual_erasures, 4);
        assert!(r.converged);
    }

    #[test]
    fn length_checked() {
        let fg = plain_graph(&bs("0110"));
        assert!(bp_decode(&ew("000"), &fg, &DecoderConfig::default()).is_err());
    }
}
