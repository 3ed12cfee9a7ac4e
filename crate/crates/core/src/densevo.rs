//! Density evolution for the joint erasure decoder.
//!
//! Tracks six edge erasure probabilities: information → ECC (`x_ecc`),
//! ECC → information (`y_ecc`), parity → ECC (`x_p`), ECC → parity (`y_p`),
//! information → CAC (`x_cac`) and CAC → information (`y_cac`). One step
//! follows the decoder schedule: the CAC pass, then the ECC side with the
//! accumulator chain solved to its fixed point.
//!
//! Runs of the past state are modelled as single CAC check nodes of degree
//! `d`; position `i` of a run is forced by a known neighbour on one side
//! (`p⁽¹⁾`) or either side (`p⁽²⁾`).

use serde::Serialize;

use crate::buscore::{fib_u128, fib_table, log2_big};
use crate::ira::DegreeDistribution;
use crate::{Error, Result};

/// Default truncation of the CAC degree sums.
pub const DEFAULT_D_MAX: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

fn check_recc(r_ecc: f64) -> Result<()> {
    if r_ecc > 0.75 && r_ecc <= 1.0 {
        Ok(())
    } else {
        Err(Error::RateOutOfRange(r_ecc, "ECC rate must lie in (3/4, 1]"))
    }
}

/// Edge-perspective probability that a CAC edge meets a run of length `d`.
pub fn rho_tilde(d: usize, r_ecc: f64) -> Result<f64> {
    check_recc(r_ecc)?;
    match d {
        0 => Err(Error::IndexOutOfRange {
            index: "0".into(),
            size: "run lengths start at 1".into(),
        }),
        1 => Ok(1.0 - 3.0 / (4.0 * r_ecc)),
        _ => Ok(d as f64 * 0.5f64.powi(d as i32 + 1) / r_ecc),
    }
}

/// Forcing coefficients as exact fractions `(n1, n2, den)`, i.e.
/// `p⁽¹⁾ = n1/den` and `p⁽²⁾ = n2/den`. Valid for `d <= 184`.
pub fn p_coeffs_exact(d: usize, i: usize) -> Result<(u128, u128, u128)> {
    if i == 0 || i > d || d > 184 {
        return Err(Error::IndexOutOfRange {
            index: format!("(d={d}, i={i})"),
            size: "1 <= i <= d <= 184".into(),
        });
    }
    let f = fib_u128;
    let den = f(d + 2);
    if i == 1 || i == d {
        return Ok((f(d - 1), 0, den));
    }
    Ok((f(i - 1) * f(d - i + 1) + f(i) * f(d - i), f(i - 1) * f(d - i), den))
}

pub fn p_coeffs(d: usize, i: usize) -> Result<(f64, f64)> {
    let (n1, n2, den) = p_coeffs_exact(d, i)?;
    Ok((n1 as f64 / den as f64, n2 as f64 / den as f64))
}

/// `p_{d,i}(x) = (1 − x) p⁽¹⁾ + (1 − x²) p⁽²⁾`.
pub fn p_poly(d: usize, i: usize, x: f64) -> Result<f64> {
    let (p1, p2) = p_coeffs(d, i)?;
    Ok((1.0 - x) * p1 + (1.0 - x * x) * p2)
}

/// Degree distributions and precomputed CAC sums for one ensemble.
#[derive(Clone, Debug)]
pub struct DeEnsemble {
    dist: DegreeDistribution,
    r_ecc: f64,
    d_max: usize,
    /// `Σ_d ρ̃_d/d Σ_i p⁽¹⁾_{d,i}` and the same for `p⁽²⁾`.
    cac_one: f64,
    cac_two: f64,
    use_ecc: bool,
}

impl DeEnsemble {
    /// Ensemble of an LDPC pair; the ECC rate follows from its design rate.
    pub fn new(dist: DegreeDistribution) -> Result<Self> {
        let r_ecc = dist.recc()?;
        Self::with_rate(dist, r_ecc, DEFAULT_D_MAX)
    }

    pub fn with_rate(dist: DegreeDistribution, r_ecc: f64, d_max: usize) -> Result<Self> {
        check_recc(r_ecc)?;
        if !(2..=184).contains(&d_max) {
            return Err(Error::Config(format!("d_max {d_max} outside 2..=184")));
        }
        let mut cac_one = 0.0;
        let mut cac_two = 0.0;
        for d in 2..=d_max {
            let w = rho_tilde(d, r_ecc)? / d as f64;
            let (mut s1, mut s2) = (0.0, 0.0);
            for i in 1..=d {
                let (p1, p2) = p_coeffs(d, i)?;
                s1 += p1;
                s2 += p2;
            }
            cac_one += w * s1;
            cac_two += w * s2;
        }
        Ok(Self {
            dist,
            r_ecc,
            d_max,
            cac_one,
            cac_two,
            use_ecc: true,
        })
    }

    /// The CAC part alone: no ECC messages ever arrive.
    pub fn cac_only(r_ecc: f64) -> Result<Self> {
        let mut e = Self::with_rate(DegreeDistribution::regular(1, 1)?, r_ecc, DEFAULT_D_MAX)?;
        e.use_ecc = false;
        Ok(e)
    }

    pub fn dist(&self) -> &DegreeDistribution {
        &self.dist
    }

    pub fn r_ecc(&self) -> f64 {
        self.r_ecc
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// Bound on the CAC mass dropped by truncating at `d_max`.
    pub fn truncation_bound(&self) -> f64 {
        self.d_max as f64 * 0.5f64.powi(self.d_max as i32)
    }

    /// `Σ_{d=1}^{d_max} ρ̃_d`.
    pub fn rho_tilde_mass(&self) -> f64 {
        (1..=self.d_max).map(|d| rho_tilde(d, self.r_ecc).expect("rate checked")).sum()
    }

    /// `1 − Σ_{d≥2} ρ̃_d/d Σ_i p_{d,i}(x)`.
    pub fn y_cac(&self, x: f64) -> f64 {
        1.0 - (1.0 - x) * self.cac_one - (1.0 - x * x) * self.cac_two
    }

    /// Closed-form accumulator fixed point.
    pub fn x_p(&self, eps: f64, x_ecc: f64) -> f64 {
        let r = self.dist.node_r(1.0 - x_ecc);
        let den = 1.0 - eps * r;
        if den <= 0.0 {
            1.0
        } else {
            eps * (1.0 - r) / den
        }
    }

    /// The accumulator fixed point by direct iteration from `x_p = 1`.
    pub fn x_p_iterated(&self, eps: f64, x_ecc: f64) -> f64 {
        let r = self.dist.node_r(1.0 - x_ecc);
        let mut x = 1.0;
        for _ in 0..1_000_000 {
            let y = 1.0 - (1.0 - x) * r;
            let next = eps * y;
            if (next - x).abs() < 1e-15 {
                return next;
            }
            x = next;
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeState {
    pub x_ecc: f64,
    pub y_ecc: f64,
    pub x_p: f64,
    pub y_p: f64,
    pub x_cac: f64,
    pub y_cac: f64,
}

impl DeState {
    pub const ALL_ERASED: DeState = DeState {
        x_ecc: 1.0,
        y_ecc: 1.0,
        x_p: 1.0,
        y_p: 1.0,
        x_cac: 1.0,
        y_cac: 1.0,
    };
}

/// One decoder iteration in the large-length limit.
pub fn de_step(state: &DeState, eps: f64, ens: &DeEnsemble) -> DeState {
    let x_cac = eps * if ens.use_ecc { ens.dist.node_l(state.y_ecc) } else { 1.0 };
    let y_cac = ens.y_cac(x_cac);
    if !ens.use_ecc {
        return DeState {
            x_ecc: eps * y_cac,
            y_ecc: 1.0,
            x_p: 1.0,
            y_p: 1.0,
            x_cac,
            y_cac,
        };
    }
    let x_ecc = eps * y_cac * ens.dist.lambda(state.y_ecc);
    let x_p = ens.x_p(eps, x_ecc);
    let r = ens.dist.node_r(1.0 - x_ecc);
    let y_p = 1.0 - (1.0 - x_p) * r;
    let y_ecc = 1.0 - (1.0 - x_p) * (1.0 - x_p) * ens.dist.rho(1.0 - x_ecc);
    DeState {
        x_ecc,
        y_ecc,
        x_p,
        y_p,
        x_cac,
        y_cac,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Success,
    Stall,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub states: Vec<DeState>,
    pub verdict: Verdict,
}

impl Trajectory {
    pub fn x_ecc_trace(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.x_ecc).collect()
    }
}

/// Iterates from the all-erased state until `x_ecc < tol` (success) or
/// `x_ecc` stops decreasing (stall).
pub fn de_trajectory(eps: f64, ens: &DeEnsemble, tol: f64, max_iter: usize) -> Result<Trajectory> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Config(format!("erasure probability {eps} outside [0, 1]")));
    }
    if tol <= 0.0 {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let mut states = Vec::new();
    let mut state = DeState::ALL_ERASED;
    let mut verdict = Verdict::Stall;
    for _ in 0..max_iter {
        let next = de_step(&state, eps, ens);
        states.push(next);
        if next.x_ecc < tol {
            verdict = Verdict::Success;
            break;
        }
        if next.x_ecc >= state.x_ecc {
            break;
        }
        state = next;
    }
    Ok(Trajectory { states, verdict })
}

/// Bisection for the largest erasure probability that still succeeds.
pub fn de_threshold(ens: &DeEnsemble, tol_eps: f64) -> Result<f64> {
    if tol_eps <= 0.0 {
        return Err(Error::Config("threshold tolerance must be positive".into()));
    }
    let ok = |eps: f64| -> Result<bool> {
        Ok(de_trajectory(eps, ens, DEFAULT_TOL, DEFAULT_MAX_ITER)?.verdict == Verdict::Success)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if ok(hi)? {
        return Ok(1.0);
    }
    while (hi - lo) / 2.0 > tol_eps {
        let mid = (lo + hi) / 2.0;
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Upper bound on the omitted tail.
    pub tail_bound: f64,
}

/// `Σ_{d=1}^{d_max} 2^{-d-1} log2 F(d+2)`, the CAC rate of a long random past state.
pub fn asymptotic_cac_rate(d_max: usize) -> SeriesValue {
    let fib = fib_table(d_max + 2);
    let value = (1..=d_max)
        .map(|d| 0.5f64.powi(d as i32 + 1) * log2_big(&fib[d + 2]))
        .sum();
    // log2 F(n) <= (n - 1) log2 φ
    let log2_phi = ((1.0 + 5f64.sqrt()) / 2.0).log2();
    let tail_bound = log2_phi * (d_max as f64 + 3.0) * 0.5f64.powi(d_max as i32 + 1);
    SeriesValue { value, tail_bound }
}
