#![allow(dead_code)]

use buscode::ira::IraGraph;
use buscode::simkit::gen_past_uniform;
use buscode::{select_parity_wires, BusState, JointCode};
use rand::Rng;

/// All `2^n` states of an `n`-wire bus.
pub fn all_states(n: usize) -> impl Iterator<Item = BusState> {
    (0u32..1 << n).map(move |x| BusState::new((0..n).map(|i| ((x >> i) & 1) as u8).collect()).unwrap())
}

/// No adjacent pair makes opposing transitions.
pub fn brute_valid(a: &[u8], b: &[u8]) -> bool {
    (0..a.len().saturating_sub(1)).all(|k| !(a[k] != a[k + 1] && b[k] == a[k + 1] && b[k + 1] == a[k]))
}

/// Random check adjacency with repeated picks allowed (multi-edges).
pub fn random_graph<R: Rng>(k: usize, p: usize, rng: &mut R) -> IraGraph {
    let checks = (0..p)
        .map(|_| {
            if k == 0 {
                return Vec::new();
            }
            let deg = rng.random_range(1..=4);
            (0..deg).map(|_| rng.random_range(0..k)).collect()
        })
        .collect();
    IraGraph::from_check_adjacency(k, checks).unwrap()
}

/// A random small joint code: uniform past, up to `n / 3` parities (shield
/// pairs when free wires run short) and a random check adjacency.
pub fn random_code<R: Rng>(n: usize, rng: &mut R) -> JointCode {
    loop {
        let a = gen_past_uniform(n, rng).unwrap();
        let p = rng.random_range(0..=n / 3);
        let Ok(layout) = select_parity_wires(&a, p) else { continue };
        let k = layout.info_wires.len();
        let graph = random_graph(k, layout.num_parities(), rng);
        return JointCode::new(&a, layout, graph).unwrap();
    }
}

/// Peeling over the raw constraints of a joint code: every ECC check is a
/// parity equation over its odd-multiplicity info wires and its accumulator
/// parities, every opposing-capable pair is an implication, pinned wires are
/// known. Repeats until nothing changes.
pub fn peel(code: &JointCode, rx: &[Option<u8>]) -> Vec<Option<u8>> {
    let a = code.past().bits();
    let n = a.len();
    let layout = code.layout();
    let slots = code.parity_slots();
    let g = code.graph();
    let mut v: Vec<Option<u8>> = rx.to_vec();
    for w in layout.pinned_wires() {
        v[w] = Some(a[w]);
    }

    let mut eqs: Vec<Vec<usize>> = Vec::new();
    for j in 0..g.num_parity() {
        let mut count = vec![0usize; g.num_info()];
        for &i in g.check_neighbors(j) {
            count[i] += 1;
        }
        let mut eq: Vec<usize> = (0..g.num_info())
            .filter(|&i| count[i] % 2 == 1)
            .map(|i| layout.info_wires[i])
            .collect();
        eq.push(slots[j]);
        if j > 0 {
            eq.push(slots[j - 1]);
        }
        eqs.push(eq);
    }

    loop {
        let mut changed = false;
        for eq in &eqs {
            let unknown: Vec<usize> = eq.iter().copied().filter(|&w| v[w].is_none()).collect();
            if unknown.len() == 1 {
                let x = eq.iter().filter_map(|&w| v[w]).fold(0, |s, b| s ^ b);
                v[unknown[0]] = Some(x);
                changed = true;
            }
        }
        for k in 0..n.saturating_sub(1) {
            if a[k] == a[k + 1] {
                continue;
            }
            if v[k] == Some(a[k + 1]) && v[k + 1].is_none() {
                v[k + 1] = Some(a[k + 1]);
                changed = true;
            }
            if v[k + 1] == Some(a[k]) && v[k].is_none() {
                v[k] = Some(a[k]);
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}
