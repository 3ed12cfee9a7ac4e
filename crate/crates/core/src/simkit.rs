//! Erasure channel, past-state ensembles and Monte-Carlo trials.
//!
//! Every trial draws a fresh past state and code instance. Trial `t` of a
//! run with seed `s` uses `ChaCha8Rng` seeded with `s` on stream `t`, so
//! results do not depend on thread scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bpdecode::{bp_decode, DecoderConfig, ErasureWord, FactorGraph};
use crate::buscore::{free_wires, BusState};
use crate::densevo::{de_trajectory, DeEnsemble, Verdict, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::ira::{sample_graph, DegreeDistribution};
use crate::jointcode::{select_parity_wires, EmbeddedLayout, JointCode};
use crate::{Error, Result};

/// Erases each symbol independently with probability `eps`.
pub fn bec_transmit<R: Rng + ?Sized>(b: &BusState, eps: f64, rng: &mut R) -> ErasureWord {
    ErasureWord::new(
        b.bits()
            .iter()
            .map(|&x| if rng.random::<f64>() < eps { None } else { Some(x) })
            .collect(),
    )
}

/// I.i.d. fair bits.
pub fn gen_past_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BusState> {
    BusState::new((0..n).map(|_| rng.random_range(0..2u8)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    /// I.i.d. uniform past state; parities on stride-selected free wires.
    Uniform,
    /// Runs drawn independently, with a separate block of parity singletons.
    Modified,
}

/// Past state from the modified ensemble, with the wires of each part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedPast {
    pub state: BusState,
    /// Wires carrying the CAC payload.
    pub a1_wires: Vec<usize>,
    /// Singleton wires carrying parities.
    pub a2_wires: Vec<usize>,
}

/// `P(D = 1)` in the modified ensemble.
pub fn modified_p1(r_ecc: f64) -> f64 {
    (2.0 * r_ecc - 1.5) / (2.0 * r_ecc - 1.0)
}

/// Draws `round(N(r − 1/2))` payload runs, then `round(ℓ₁(1 − r)/r)` parity
/// singletons, and interleaves all runs uniformly.
pub fn gen_past_modified<R: Rng + ?Sized>(n: usize, r_ecc: f64, rng: &mut R) -> Result<ModifiedPast> {
    if !(r_ecc > 0.75 && r_ecc <= 1.0) {
        return Err(Error::RateOutOfRange(r_ecc, "ECC rate must lie in (3/4, 1]"));
    }
    let n1 = (n as f64 * (r_ecc - 0.5)).round() as usize;
    let p1 = modified_p1(r_ecc);
    let mut runs: Vec<(usize, bool)> = Vec::with_capacity(n1 + n / 4);
    let mut l1 = 0;
    for _ in 0..n1 {
        let d = if rng.random::<f64>() < p1 {
            1
        } else {
            let mut d = 2;
            while rng.random_bool(0.5) {
                d += 1;
            }
            d
        };
        l1 += d;
        runs.push((d, false));
    }
    let n2 = (l1 as f64 * (1.0 - r_ecc) / r_ecc).round() as usize;
    runs.extend(std::iter::repeat_n((1, true), n2));
    if runs.is_empty() {
        return Err(Error::Config(format!("blocklength {n} yields an empty past state")));
    }
    runs.shuffle(rng);
    let first = rng.random_range(0..2u8);
    let lengths: Vec<usize> = runs.iter().map(|r| r.0).collect();
    let state = BusState::from_runs(first, &lengths)?;
    let mut a1_wires = Vec::with_capacity(l1);
    let mut a2_wires = Vec::with_capacity(n2);
    let mut w = 0;
    for &(d, parity) in &runs {
        let target = if parity { &mut a2_wires } else { &mut a1_wires };
        target.extend(w..w + d);
        w += d;
    }
    Ok(ModifiedPast {
        state,
        a1_wires,
        a2_wires,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransmitMode {
    /// Uniformly random CAC codeword (independent per run).
    UniformCodeword,
    /// Random payload bits through the encoder.
    InfoBits,
}

impl std::str::FromStr for TransmitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-codeword" => Ok(Self::UniformCodeword),
            "info-bits" => Ok(Self::InfoBits),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    pub ensemble: EnsembleKind,
    pub n: usize,
    pub eps: f64,
    pub dist: DegreeDistribution,
    pub trials: u64,
    pub seed: u64,
    pub mode: TransmitMode,
    pub decoder: DecoderConfig,
}

impl SimConfig {
    pub fn new(n: usize, eps: f64, dist: DegreeDistribution, trials: u64, seed: u64) -> Self {
        Self {
            ensemble: EnsembleKind::Uniform,
            n,
            eps,
            dist,
            trials,
            seed,
            mode: TransmitMode::UniformCodeword,
            decoder: DecoderConfig::default(),
        }
    }

    fn validate(&self) -> Result<f64> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Config("blocklength must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.eps) {
            return Err(Error::Config(format!("erasure probability {} outside [0, 1]", self.eps)));
        }
        self.dist.recc()
    }
}

/// Error counts over a batch of trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub bit_errors_code: u64,
    pub bits_code: u64,
    pub bit_errors_info: u64,
    pub bits_info: u64,
    pub block_errors: u64,
    pub insufficient_free_wire_events: u64,
    /// Decided bits that differ from the transmitted ones; always 0 on a sound decoder.
    pub decoder_mismatches: u64,
    pub rng_seed: u64,
}

impl TrialStats {
    fn merge(self, o: Self) -> Self {
        Self {
            trials: self.trials + o.trials,
            bit_errors_code: self.bit_errors_code + o.bit_errors_code,
            bits_code: self.bits_code + o.bits_code,
            bit_errors_info: self.bit_errors_info + o.bit_errors_info,
            bits_info: self.bits_info + o.bits_info,
            block_errors: self.block_errors + o.block_errors,
            insufficient_free_wire_events: self.insufficient_free_wire_events + o.insufficient_free_wire_events,
            decoder_mismatches: self.decoder_mismatches + o.decoder_mismatches,
            rng_seed: self.rng_seed,
        }
    }

    fn ratio(k: u64, n: u64) -> f64 {
        if n == 0 {
            0.0
        } else {
            k as f64 / n as f64
        }
    }

    /// Erased fraction of all code bits.
    pub fn pb_code(&self) -> f64 {
        Self::ratio(self.bit_errors_code, self.bits_code)
    }

    /// Erased fraction of information-wire bits.
    pub fn pb_info(&self) -> f64 {
        Self::ratio(self.bit_errors_info, self.bits_info)
    }

    pub fn pe(&self) -> f64 {
        Self::ratio(self.block_errors, self.trials)
    }

    pub fn insufficient_rate(&self) -> f64 {
        Self::ratio(self.insufficient_free_wire_events, self.trials)
    }

    pub fn pe_interval(&self, z: f64) -> (f64, f64) {
        wilson_interval(self.block_errors, self.trials, z)
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = z * z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// RNG of trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Past state and layout for one trial, or `None` when free wires run short.
fn draw_instance<R: Rng + ?Sized>(
    kind: EnsembleKind,
    n: usize,
    r_ecc: f64,
    dist: &DegreeDistribution,
    rng: &mut R,
) -> Result<std::result::Result<JointCode, BusState>> {
    let (a, layout) = match kind {
        EnsembleKind::Uniform => {
            let a = gen_past_uniform(n, rng)?;
            let p = (n as f64 * (1.0 - r_ecc)).round() as usize;
            if free_wires(&a).len() < p {
                return Ok(Err(a));
            }
            let layout = select_parity_wires(&a, p)?;
            (a, layout)
        }
        EnsembleKind::Modified => {
            let m = gen_past_modified(n, r_ecc, rng)?;
            let layout = EmbeddedLayout::with_parity_wires(&m.state, &m.a2_wires)?;
            (m.state, layout)
        }
    };
    let graph = sample_graph(layout.info_wires.len(), layout.num_parities(), dist, rng)?;
    Ok(Ok(JointCode::new(&a, layout, graph)?))
}

fn run_one(cfg: &SimConfig, r_ecc: f64, trial: u64) -> Result<TrialStats> {
    let mut rng = trial_rng(cfg.seed, trial);
    let mut stats = TrialStats {
        trials: 1,
        rng_seed: cfg.seed,
        ..TrialStats::default()
    };
    let code = match draw_instance(cfg.ensemble, cfg.n, r_ecc, &cfg.dist, &mut rng)? {
        Ok(code) => code,
        Err(a) => {
            let n = a.len() as u64;
            let p = (a.len() as f64 * (1.0 - r_ecc)).round() as u64;
            stats.bits_code = n;
            stats.bit_errors_code = n;
            stats.bits_info = n - p;
            stats.bit_errors_info = n - p;
            stats.block_errors = 1;
            stats.insufficient_free_wire_events = 1;
            return Ok(stats);
        }
    };
    let (word, payload) = match cfg.mode {
        TransmitMode::UniformCodeword => (code.sample_uniform(&mut rng), None),
        TransmitMode::InfoBits => {
            let u: Vec<u8> = (0..code.info_len()).map(|_| rng.random_range(0..2u8)).collect();
            (code.encode(&u)?.word, Some(u))
        }
    };
    let rx = bec_transmit(&word, cfg.eps, &mut rng);
    let fg = FactorGraph::new(code);
    let res = bp_decode(&rx, &fg, &cfg.decoder)?;

    stats.decoder_mismatches = res
        .word
        .symbols
        .iter()
        .zip(word.bits())
        .filter(|(d, &b)| matches!(d, Some(v) if *v != b))
        .count() as u64;
    if let (Some(u), Some(got)) = (&payload, &res.info_bits) {
        if u != got {
            stats.decoder_mismatches += 1;
        }
    }
    stats.bits_code = word.len() as u64;
    stats.bit_errors_code = res.residual_erasures as u64;
    stats.bits_info = fg.info_wires().len() as u64;
    stats.bit_errors_info = res.residual_on(fg.info_wires()) as u64;
    stats.block_errors = u64::from(res.residual_erasures > 0);
    Ok(stats)
}

/// Runs `cfg.trials` independent trials in parallel.
pub fn run_trials(cfg: &SimConfig) -> Result<TrialStats> {
    let r_ecc = cfg.validate()?;
    let zero = TrialStats {
        rng_seed: cfg.seed,
        ..TrialStats::default()
    };
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_one(cfg, r_ecc, t))
        .try_reduce(|| zero, |a, b| Ok(a.merge(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeComparison {
    pub iteration: usize,
    /// Erased fraction of information → ECC messages in the decoder.
    pub empirical: f64,
    /// Density-evolution prediction of the same quantity.
    pub de: f64,
}

/// Decodes one long uniform-codeword instance and pairs its per-iteration
/// erased-edge fraction with the density-evolution trajectory.
pub fn de_vs_simulation(
    eps: f64,
    dist: &DegreeDistribution,
    n: usize,
    iterations: usize,
    seed: u64,
    kind: EnsembleKind,
) -> Result<Vec<DeComparison>> {
    let r_ecc = dist.recc()?;
    let mut rng = trial_rng(seed, 0);
    let code = draw_instance(kind, n, r_ecc, dist, &mut rng)?
        .map_err(|_| Error::Config("past state has too few free wires".into()))?;
    let word = code.sample_uniform(&mut rng);
    let rx = bec_transmit(&word, eps, &mut rng);
    let fg = FactorGraph::new(code);
    let cfg = DecoderConfig {
        max_outer: iterations.max(1),
        ..DecoderConfig::default()
    };
    let res = bp_decode(&rx, &fg, &cfg)?;
    let mut emp: Vec<f64> = res.trace.iter().map(|t| t.ldpc_erased_fraction).collect();
    let done = res.residual_erasures == 0;
    while emp.len() < iterations {
        let fill = if done { 0.0 } else { *emp.last().unwrap_or(&1.0) };
        emp.push(fill);
    }

    let ens = DeEnsemble::new(dist.clone())?;
    let traj = de_trajectory(eps, &ens, DEFAULT_TOL, DEFAULT_MAX_ITER.min(iterations.max(1)))?;
    let mut de = traj.x_ecc_trace();
    while de.len() < iterations {
        let fill = if traj.verdict == Verdict::Success { 0.0 } else { *de.last().unwrap_or(&1.0) };
        de.push(fill);
    }
    Ok((0..iterations)
        .map(|k| DeComparison {
            iteration: k + 1,
            empirical: emp[k],
            de: de[k],
        })
        .collect())
}
