//! Event-by-event simulation of single-particle interferometer experiments.
//!
//! Particle-like messengers are routed one at a time through a network of
//! adaptive processing units (deterministic learning machines). Each unit
//! stores six numbers, learns the arrival ratio on its two input ports, and
//! sends every messenger through exactly one output port; no wave equation
//! is solved anywhere. Counting coincidences over many messengers
//! reproduces the interference statistics of the exact gate-model
//! calculation in [`oracle`], which doubles as the validation reference.
//!
//! Three layouts are provided in [`experiments`]: a bare two-path
//! interferometer, one whose closing stage is switched by a classical coin,
//! and one whose closing stage is controlled by the detected port of a
//! second (ancilla) interferometer. [`stats`] turns counts into normalized
//! frequencies, deviations from the reference, and binomial z-scores.
//!
//! All simulation math is generic over the floating-point scalar through
//! [`Real`]; the `*64` aliases below pin the double-precision types used
//! by the command-line tool.

pub mod dlm;
pub mod error;
pub mod experiments;
pub mod message;
pub mod oracle;
pub mod real;
pub mod rng;
pub mod stats;

pub use dlm::{DlmState, TransformVector};
pub use error::{Error, Result};
pub use experiments::{
    run_classical_wdc, run_counts, run_mzi, run_point, run_quantum_controlled, sweep,
    ExperimentConfig, ExperimentKind, JointCounts, SweepRecord,
};
pub use message::{Line, Message, Messenger};
pub use oracle::{amplitudes, mzi_prob, probs_closed_form, Amplitudes, JointProbs};
pub use real::Real;
pub use rng::RandomSource;
pub use stats::{compare, normalize, sweep_summary, FrequencyRecord, SweepSummary};

/// Double-precision instantiations used by the CLI and most callers.
pub type Message64 = Message<f64>;
pub type Messenger64 = Messenger<f64>;
pub type DlmState64 = DlmState<f64>;
pub type TransformVector64 = TransformVector<f64>;
pub type Config64 = ExperimentConfig<f64>;
pub type SweepRecord64 = SweepRecord<f64>;
pub type Amplitudes64 = Amplitudes<f64>;
pub type JointProbs64 = JointProbs<f64>;
pub type FrequencyRecord64 = FrequencyRecord<f64>;
pub type SweepSummary64 = SweepSummary<f64>;
