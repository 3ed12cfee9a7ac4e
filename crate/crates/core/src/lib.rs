//! Joint crosstalk-avoidance and error-correction coding for parallel buses.
//!
//! A crosstalk-avoidance code (CAC) forbids opposing transitions on adjacent
//! wires between two consecutive bus states. Wires whose past neighbours
//! carry the same bit ("free wires") are untouched by that constraint, so the
//! parities of an error-correcting code can be placed on them without
//! shielding. This crate implements that embedded scheme end to end:
//!
//! - [`buscore`]: bus states, alternating-run parsing, free wires, transition checks.
//! - [`cac`]: codeword counting and an enumerative (Fibonacci) CAC codec.
//! - [`ira`]: irregular repeat-accumulate codes, degree distributions, graph sampling.
//! - [`jointcode`]: the embedded encoder, parity-wire selection, rate and
//!   minimum-distance analysis.
//! - [`bpdecode`]: the joint iterative erasure decoder over the combined factor graph.
//! - [`densevo`]: density evolution and threshold search.
//! - [`simkit`]: erasure channel, past-state ensembles and Monte-Carlo trials.
//! - [`cli`]: report builders and CSV/JSON writers behind the `buscode` binary.
//!
//! Wire indices are 0-based in the Rust API. Human-facing output (error
//! messages, CLI reports) numbers wires from 1.

pub mod bpdecode;
pub mod buscore;
pub mod cac;
pub mod cli;
pub mod densevo;
mod error;
pub mod ira;
pub mod jointcode;
pub mod simkit;

pub use error::{Error, Result};

pub use bpdecode::{bp_decode, DecodeResult, DecoderConfig, ErasureWord, FactorGraph};
pub use buscore::{check_transition, fib, free_wires, parse_runs, BusState, RunParse};
pub use cac::{cac_rate, count_codewords, CacCodec};
pub use densevo::{asymptotic_cac_rate, de_threshold, de_trajectory, DeEnsemble, DeState};
pub use ira::{DegreeDistribution, IraGraph};
pub use jointcode::{select_parity_wires, EmbeddedCodeword, EmbeddedLayout, JointCode};
pub use simkit::{run_trials, SimConfig, TrialStats};
