//! Irregular repeat-accumulate codes.
//!
//! Information bits connect to check nodes through an LDPC-style bipartite
//! graph; each check `j` owns parity `p_j` and is also tied to `p_{j-1}`, so
//! parities accumulate: `p_j = p_{j-1} ⊕ s_j` with `s_j` the XOR of the
//! information bits on check `j` and `p_0 = 0`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Degree distribution pair of the LDPC part, stored from the node
/// perspective as `(degree, fraction of nodes)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDistribution {
    /// `L`: information-node degrees.
    pub var: Vec<(usize, f64)>,
    /// `R`: check-node degrees (LDPC edges only, accumulator edges excluded).
    pub check: Vec<(usize, f64)>,
}

const NORM_TOL: f64 = 1e-9;

impl DegreeDistribution {
    pub fn regular(dv: usize, dc: usize) -> Result<Self> {
        Self::from_node_fractions(vec![(dv, 1.0)], vec![(dc, 1.0)])
    }

    /// Parses the `"dv,dc"` shorthand.
    pub fn parse_regular(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidDistribution(format!("expected \"dv,dc\", got {s:?}"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let dv = parts[0].parse().map_err(|_| bad())?;
        let dc = parts[1].parse().map_err(|_| bad())?;
        Self::regular(dv, dc)
    }

    pub fn from_node_fractions(var: Vec<(usize, f64)>, check: Vec<(usize, f64)>) -> Result<Self> {
        let d = Self { var, check };
        d.validate()?;
        Ok(d)
    }

    /// Builds the node-perspective pair from edge fractions `(degree, λ_i)`.
    pub fn from_edge_fractions(lambda: &[(usize, f64)], rho: &[(usize, f64)]) -> Result<Self> {
        fn to_nodes(edges: &[(usize, f64)]) -> Result<Vec<(usize, f64)>> {
            if edges.iter().any(|&(d, _)| d == 0) {
                return Err(Error::InvalidDistribution("degree 0".into()));
            }
            let total: f64 = edges.iter().map(|&(d, f)| f / d as f64).sum();
            if total <= 0.0 {
                return Err(Error::InvalidDistribution("empty edge distribution".into()));
            }
            Ok(edges.iter().map(|&(d, f)| (d, f / d as f64 / total)).collect())
        }
        Self::from_node_fractions(to_nodes(lambda)?, to_nodes(rho)?)
    }

    fn validate(&self) -> Result<()> {
        for (name, side) in [("variable", &self.var), ("check", &self.check)] {
            if side.is_empty() {
                return Err(Error::InvalidDistribution(format!("no {name} degrees")));
            }
            if side.iter().any(|&(d, f)| d == 0 || !(0.0..=1.0).contains(&f) || f.is_nan()) {
                return Err(Error::InvalidDistribution(format!(
                    "{name} degrees must be positive with fractions in [0, 1]"
                )));
            }
            let sum: f64 = side.iter().map(|&(_, f)| f).sum();
            if (sum - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "{name} fractions sum to {sum}, not 1"
                )));
            }
        }
        Ok(())
    }

    /// `L'(1)`, the average information-node degree.
    pub fn l_avg(&self) -> f64 {
        self.var.iter().map(|&(d, f)| d as f64 * f).sum()
    }

    /// `R'(1)`, the average check-node degree.
    pub fn r_avg(&self) -> f64 {
        self.check.iter().map(|&(d, f)| d as f64 * f).sum()
    }

    pub fn lambda_coeffs(&self) -> Vec<(usize, f64)> {
        let avg = self.l_avg();
        self.var.iter().map(|&(d, f)| (d, d as f64 * f / avg)).collect()
    }

    pub fn rho_coeffs(&self) -> Vec<(usize, f64)> {
        let avg = self.r_avg();
        self.check.iter().map(|&(d, f)| (d, d as f64 * f / avg)).collect()
    }

    pub fn l_coeffs(&self) -> &[(usize, f64)] {
        &self.var
    }

    pub fn r_coeffs(&self) -> &[(usize, f64)] {
        &self.check
    }

    /// `λ(x) = Σ λ_i x^{i-1}`.
    pub fn lambda(&self, x: f64) -> f64 {
        let avg = self.l_avg();
        self.var.iter().map(|&(d, f)| d as f64 * f / avg * x.powi(d as i32 - 1)).sum()
    }

    /// `ρ(x) = Σ ρ_j x^{j-1}`.
    pub fn rho(&self, x: f64) -> f64 {
        let avg = self.r_avg();
        self.check.iter().map(|&(d, f)| d as f64 * f / avg * x.powi(d as i32 - 1)).sum()
    }

    /// `L(x) = Σ L_i x^i`.
    pub fn node_l(&self, x: f64) -> f64 {
        self.var.iter().map(|&(d, f)| f * x.powi(d as i32)).sum()
    }

    /// `R(x) = Σ R_j x^j`.
    pub fn node_r(&self, x: f64) -> f64 {
        self.check.iter().map(|&(d, f)| f * x.powi(d as i32)).sum()
    }

    /// Whether `L'(1)/R'(1) = 1/R_ECC − 1` holds to `tol`.
    pub fn matches_recc(&self, r_ecc: f64, tol: f64) -> bool {
        (self.l_avg() / self.r_avg() - (1.0 / r_ecc - 1.0)).abs() <= tol
    }

    /// ECC rate of the accumulated code built on this LDPC part.
    pub fn recc(&self) -> Result<f64> {
        recc_from_rldpc(rate_ldpc(self)?)
    }
}

/// Design rate `1 − L'(1)/R'(1)` of the LDPC part.
pub fn rate_ldpc(dist: &DegreeDistribution) -> Result<f64> {
    let r = dist.r_avg();
    if r == 0.0 {
        return Err(Error::InvalidDistribution("R'(1) = 0".into()));
    }
    Ok(1.0 - dist.l_avg() / r)
}

/// ECC rate `1 / (2 − R_LDPC)` of the repeat-accumulate code.
pub fn recc_from_rldpc(r_ldpc: f64) -> Result<f64> {
    if !(r_ldpc > 2.0 / 3.0 && r_ldpc <= 1.0) {
        return Err(Error::RateOutOfRange(r_ldpc, "LDPC rate must lie in (2/3, 1]"));
    }
    Ok(1.0 / (2.0 - r_ldpc))
}

/// Bipartite information/check structure of an IRA code. The accumulator
/// chain is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IraGraph {
    num_info: usize,
    check_info: Vec<Vec<usize>>,
    info_checks: Vec<Vec<usize>>,
}

impl IraGraph {
    /// Builds a graph from per-check information neighbours. Repeated
    /// neighbours are kept as multi-edges.
    pub fn from_check_adjacency(num_info: usize, check_info: Vec<Vec<usize>>) -> Result<Self> {
        let mut info_checks = vec![Vec::new(); num_info];
        for (j, nbrs) in check_info.iter().enumerate() {
            for &i in nbrs {
                if i >= num_info {
                    return Err(Error::GraphMismatch(format!(
                        "check {j} references info node {i} of {num_info}"
                    )));
                }
                info_checks[i].push(j);
            }
        }
        Ok(Self {
            num_info,
            check_info,
            info_checks,
        })
    }

    pub fn num_info(&self) -> usize {
        self.num_info
    }

    pub fn num_parity(&self) -> usize {
        self.check_info.len()
    }

    /// LDPC neighbours of check `j`, with multiplicity.
    pub fn check_neighbors(&self, j: usize) -> &[usize] {
        &self.check_info[j]
    }

    pub fn info_neighbors(&self, i: usize) -> &[usize] {
        &self.info_checks[i]
    }

    /// Neighbours of check `j` after cancelling multi-edges in pairs.
    pub fn check_neighbors_mod2(&self, j: usize) -> Vec<usize> {
        let mut v = self.check_info[j].clone();
        v.sort_unstable();
        let mut out = Vec::with_capacity(v.len());
        let mut k = 0;
        while k < v.len() {
            let mut run = 1;
            while k + run < v.len() && v[k + run] == v[k] {
                run += 1;
            }
            if run % 2 == 1 {
                out.push(v[k]);
            }
            k += run;
        }
        out
    }

    pub fn num_ldpc_edges(&self) -> usize {
        self.check_info.iter().map(Vec::len).sum()
    }

    pub fn encode(&self, systematic: &[u8]) -> Result<Vec<u8>> {
        ira_encode(systematic, self)
    }
}

fn realize_degrees(n: usize, classes: &[(usize, f64)]) -> Vec<usize> {
    let mut counts: Vec<usize> = classes.iter().map(|&(_, f)| (f * n as f64).floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    if assigned < n {
        let top = classes
            .iter()
            .enumerate()
            .filter(|(_, &(_, f))| f > 0.0)
            .max_by_key(|(_, &(d, _))| d)
            .map(|(k, _)| k)
            .unwrap_or(0);
        counts[top] += n - assigned;
    }
    let mut degrees = Vec::with_capacity(n);
    for (&(d, _), &c) in classes.iter().zip(&counts) {
        degrees.extend(std::iter::repeat_n(d, c));
    }
    degrees.truncate(n);
    degrees
}

/// Samples a graph from the configuration model.
///
/// Node degrees are realized from the node-perspective fractions. Any socket
/// surplus is then absorbed on the check side, spread round-robin over the
/// checks (highest degrees shed first, lowest gain first). Sockets are matched by a uniform permutation;
/// multi-edges are kept.
pub fn sample_graph<R: Rng + ?Sized>(
    num_info: usize,
    num_parity: usize,
    dist: &DegreeDistribution,
    rng: &mut R,
) -> Result<IraGraph> {
    if num_info == 0 {
        return IraGraph::from_check_adjacency(0, vec![Vec::new(); num_parity]);
    }
    if num_parity == 0 {
        return Err(Error::SocketImbalance(format!(
            "{num_info} information nodes but no check nodes"
        )));
    }
    let var_deg = realize_degrees(num_info, &dist.var);
    let mut check_deg = realize_degrees(num_parity, &dist.check);
    let var_sockets: usize = var_deg.iter().sum();
    let check_sockets: usize = check_deg.iter().sum();

    if var_sockets > check_sockets {
        let mut order: Vec<usize> = (0..num_parity).collect();
        order.sort_by_key(|&j| check_deg[j]);
        for &j in order.iter().cycle().take(var_sockets - check_sockets) {
            check_deg[j] += 1;
        }
    } else if var_sockets < check_sockets {
        if var_sockets < num_parity {
            return Err(Error::SocketImbalance(format!(
                "{var_sockets} information sockets cannot reach {num_parity} check nodes"
            )));
        }
        let mut order: Vec<usize> = (0..num_parity).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(check_deg[j]));
        let mut excess = check_sockets - var_sockets;
        while excess > 0 {
            for &j in &order {
                if excess > 0 && check_deg[j] > 1 {
                    check_deg[j] -= 1;
                    excess -= 1;
                }
            }
        }
    }

    let mut sockets: Vec<usize> = check_deg
        .iter()
        .enumerate()
        .flat_map(|(j, &d)| std::iter::repeat_n(j, d))
        .collect();
    sockets.shuffle(rng);

    let mut check_info = vec![Vec::new(); num_parity];
    let mut next = sockets.into_iter();
    for (i, &d) in var_deg.iter().enumerate() {
        for _ in 0..d {
            let j = next.next().expect("socket counts balance");
            check_info[j].push(i);
        }
    }
    IraGraph::from_check_adjacency(num_info, check_info)
}

/// Accumulated parities of `systematic` (multi-edges cancel mod 2).
pub fn ira_encode(systematic: &[u8], graph: &IraGraph) -> Result<Vec<u8>> {
    if systematic.len() != graph.num_info {
        return Err(Error::LengthMismatch {
            expected: graph.num_info,
            got: systematic.len(),
        });
    }
    let mut acc = 0u8;
    Ok(graph
        .check_info
        .iter()
        .map(|nbrs| {
            let s = nbrs.iter().fold(0u8, |x, &i| x ^ systematic[i]);
            acc ^= s;
            acc
        })
        .collect())
}

/// Whether every check (LDPC neighbours ⊕ own parity ⊕ previous parity) is zero.
pub fn validate_checks(systematic: &[u8], parities: &[u8], graph: &IraGraph) -> bool {
    if systematic.len() != graph.num_info || parities.len() != graph.num_parity() {
        return false;
    }
    graph.check_info.iter().enumerate().all(|(j, nbrs)| {
        let s = nbrs.iter().fold(0u8, |x, &i| x ^ systematic[i]);
        let prev = if j == 0 { 0 } else { parities[j - 1] };
        s ^ parities[j] ^ prev == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn design_rates() {
        let d = DegreeDistribution::regular(3, 12).unwrap();
        assert!((rate_ldpc(&d).unwrap() - 0.75).abs() < 1e-15);
        assert!((rate_ldpc(&DegreeDistribution::regular(3, 6).unwrap()).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(rate_ldpc(&DegreeDistribution::regular(4, 4).unwrap()).unwrap(), 0.0);
        assert!((d.recc().unwrap() - 0.8).abs() < 1e-15);
        assert!(d.matches_recc(0.8, 1e-12));
    }

    #[test]
    fn recc_conversion() {
        assert!((recc_from_rldpc(0.75).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(recc_from_rldpc(1.0).unwrap(), 1.0);
        assert!((recc_from_rldpc(0.9).unwrap() - 1.0 / 1.1).abs() < 1e-15);
        assert!(recc_from_rldpc(0.6).is_err());
        assert!(recc_from_rldpc(2.0 / 3.0).is_err());
    }

    #[test]
    fn perspectives_agree() {
        let d = DegreeDistribution::from_node_fractions(vec![(2, 0.5), (3, 0.5)], vec![(6, 1.0)]).unwrap();
        let lam = d.lambda_coeffs();
        assert!((lam[0].1 - 0.4).abs() < 1e-15 && (lam[1].1 - 0.6).abs() < 1e-15);
        let back = DegreeDistribution::from_edge_fractions(&lam, &d.rho_coeffs()).unwrap();
        for (x, y) in back.var.iter().zip(&d.var) {
            assert!((x.1 - y.1).abs() < 1e-12);
        }
        assert!((d.lambda(1.0) - 1.0).abs() < 1e-15);
        assert!((d.node_l(1.0) - 1.0).abs() < 1e-15);
        assert!((d.rho(0.5) - 0.5f64.powi(5)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_distributions() {
        assert!(DegreeDistribution::from_node_fractions(vec![(3, 0.5)], vec![(6, 1.0)]).is_err());
        assert!(DegreeDistribution::regular(0, 6).is_err());
        assert!(DegreeDistribution::parse_regular("3;12").is_err());
        assert_eq!(
            DegreeDistribution::parse_regular(" 3, 12").unwrap(),
            DegreeDistribution::regular(3, 12).unwrap()
        );
    }

    #[test]
    fn regular_graph_degrees() {
        let d = DegreeDistribution::regular(3, 12).unwrap();
        let g = sample_graph(120, 30, &d, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert!((0..120).all(|i| g.info_neighbors(i).len() == 3));
        assert!((0..30).all(|j| g.check_neighbors(j).len() == 12));
        assert_eq!(g.num_ldpc_edges(), 360);
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = DegreeDistribution::regular(3, 12).unwrap();
        let g1 = sample_graph(240, 60, &d, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let g2 = sample_graph(240, 60, &d, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn unbalanced_sizes_adjust_checks() {
        let d = DegreeDistribution::regular(3, 12).unwrap();
        let g = sample_graph(51, 13, &d, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(g.num_ldpc_edges(), 153);
        let degs: Vec<usize> = (0..13).map(|j| g.check_neighbors(j).len()).collect();
        assert!(degs.iter().all(|&x| x == 11 || x == 12));
        // A large surplus is spread over every check.
        let g = sample_graph(100, 2, &d, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!((g.check_neighbors(0).len(), g.check_neighbors(1).len()), (150, 150));
        // Fewer information sockets than checks cannot be balanced.
        assert!(sample_graph(1, 4, &d, &mut ChaCha8Rng::seed_from_u64(2)).is_err());
    }

    #[test]
    fn empty_ldpc_part() {
        let d = DegreeDistribution::regular(3, 12).unwrap();
        let g = sample_graph(0, 4, &d, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(g.num_ldpc_edges(), 0);
        assert_eq!(ira_encode(&[], &g).unwrap(), vec![0; 4]);
    }

    #[test]
    fn accumulator_encoding() {
        let g = IraGraph::from_check_adjacency(1, vec![vec![0]]).unwrap();
        assert_eq!(ira_encode(&[1], &g).unwrap(), vec![1]);
        let g = IraGraph::from_check_adjacency(3, vec![vec![0, 1], vec![2], vec![0, 2]]).unwrap();
        let p = ira_encode(&[1, 0, 1], &g).unwrap();
        assert_eq!(p, vec![1, 0, 0]);
        assert!(validate_checks(&[1, 0, 1], &p, &g));
        assert_eq!(ira_encode(&[0, 0, 0], &g).unwrap(), vec![0, 0, 0]);
        assert!(ira_encode(&[0, 0], &g).is_err());
    }

    #[test]
    fn validate_detects_flip() {
        let g = IraGraph::from_check_adjacency(2, vec![vec![0], vec![1]]).unwrap();
        assert!(validate_checks(&[1, 1], &[1, 0], &g));
        assert!(!validate_checks(&[1, 1], &[0, 0], &g));
        // Weight-2 codeword: info bit 0 and parity 0 with check 1 seeing info 0
        // too would differ; here flipping info 1 and parity 1 is another codeword.
        assert!(validate_checks(&[1, 0], &[1, 1], &g));
    }

    #[test]
    fn multi_edges_cancel() {
        let g = IraGraph::from_check_adjacency(2, vec![vec![0, 0, 1]]).unwrap();
        assert_eq!(g.check_neighbors_mod2(0), vec![1]);
        assert_eq!(ira_encode(&[1, 0], &g).unwrap(), vec![0]);
    }
}
