//! Circuit topologies and the event-by-event counting procedure.
//!
//! Each experiment wires adaptive Hadamard units and phase gates into one
//! of three layouts and sends messengers through one at a time. A pair of
//! the Hadamard units closes an interferometer in which a path-1 rotation
//! of `pi + delta` sends messengers to port 1 with long-run frequency
//! `sin^2(delta / 2)`; the drive angles below are chosen so the detected
//! frequencies converge to the reference distributions in [`crate::oracle`].

use std::fmt;

use crate::dlm::DlmState;
use crate::error::{Error, Result};
use crate::message::{Line, Messenger};
use crate::oracle::{mzi_prob, probs_closed_form, JointProbs};
use crate::real::Real;
use crate::rng::{point_stream, RandomSource};

/// The three supported circuit layouts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Two-path interferometer: Hadamard, per-path phases, Hadamard.
    Mzi,
    /// Interferometer whose closing unit is switched per event by a
    /// classical coin with closure probability sin^2(alpha).
    WdcClassical,
    /// Interferometer whose closing unit is controlled by the detected
    /// port of a second (ancilla) interferometer.
    WdcQuantum,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ExperimentKind::Mzi => "mzi",
            ExperimentKind::WdcClassical => "wdc-classical",
            ExperimentKind::WdcQuantum => "wdc-quantum",
        };
        f.write_str(name)
    }
}

/// Full description of one run: layout, angles, event count, learning
/// parameter, and the seed all randomness derives from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig<T> {
    pub kind: ExperimentKind,
    /// Ancilla/coin angle; the closing probability is sin^2(alpha).
    pub alpha: T,
    /// Interferometer phase for the controlled kinds.
    pub phi: T,
    /// Path-0 phase (bare interferometer only).
    pub phi0: T,
    /// Path-1 phase (bare interferometer only).
    pub phi1: T,
    /// Number of messenger pairs per run; every pair lands in exactly one
    /// counter (ideal detection, nothing discarded).
    pub n_pairs: u64,
    pub gamma: T,
    pub seed: u64,
    /// Keep gate memory across sweep points instead of re-initializing.
    pub carry_state: bool,
}

impl<T: Real> ExperimentConfig<T> {
    /// Defaults: 10000 pairs, gamma 0.99, seed 1, all angles zero.
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            alpha: T::zero(),
            phi: T::zero(),
            phi0: T::zero(),
            phi1: T::zero(),
            n_pairs: 10_000,
            gamma: T::from_f64(0.99),
            seed: 1,
            carry_state: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= T::zero() && self.gamma < T::one()) {
            return Err(Error::GammaOutOfRange(self.gamma.to_f64()));
        }
        if self.n_pairs == 0 {
            return Err(Error::EmptyRun);
        }
        Ok(())
    }

    /// The phase a record carries: `phi` for the controlled kinds, the
    /// path difference `phi0 - phi1` for the bare interferometer.
    pub fn effective_phi(&self) -> T {
        match self.kind {
            ExperimentKind::Mzi => self.phi0 - self.phi1,
            _ => self.phi,
        }
    }

    /// This point's config within a sweep. For the bare interferometer the
    /// grid value is the path difference (phi0 = value, phi1 = 0).
    pub fn at_point(&self, alpha: T, phi: T) -> Self {
        let mut cfg = *self;
        cfg.alpha = alpha;
        match self.kind {
            ExperimentKind::Mzi => {
                cfg.phi0 = phi;
                cfg.phi1 = T::zero();
            }
            _ => cfg.phi = phi,
        }
        cfg
    }

    /// Exact reference distribution for this configuration. Bare
    /// interferometer path probabilities occupy the u = 0 column.
    pub fn oracle_probs(&self) -> JointProbs<T> {
        match self.kind {
            ExperimentKind::Mzi => {
                let (p0, p1) = mzi_prob(self.phi0, self.phi1);
                JointProbs {
                    p: [[p0, T::zero()], [p1, T::zero()]],
                }
            }
            _ => probs_closed_form(self.alpha, self.phi),
        }
    }

    /// Random stream for this configuration, derived from the seed and the
    /// point's angles so that sweep results do not depend on grid order.
    pub fn derived_rng(&self) -> RandomSource {
        let alpha_bits = self.alpha.to_f64().to_bits();
        let phi_bits = self.effective_phi().to_f64().to_bits();
        RandomSource::stream(self.seed, point_stream(alpha_bits, phi_bits))
    }
}

/// Coincidence counters `n[v][u]` (photon port v, ancilla/control port u).
/// Every simulated pair increments exactly one cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct JointCounts {
    pub n: [[u64; 2]; 2],
}

impl JointCounts {
    pub fn record(&mut self, v: usize, u: usize) {
        self.n[v][u] += 1;
    }

    pub fn total(&self) -> u64 {
        self.n[0][0] + self.n[0][1] + self.n[1][0] + self.n[1][1]
    }
}

/// One sweep grid point and its counts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord<T> {
    pub alpha: T,
    pub phi: T,
    pub counts: JointCounts,
}

/// The gate set of one experiment instance. Owned by a single run; the
/// units are order-dependent adaptive machines and must see events
/// sequentially.
enum Circuit<T> {
    Mzi {
        h1: DlmState<T>,
        h2: DlmState<T>,
    },
    Classical {
        h1: DlmState<T>,
        ch: DlmState<T>,
    },
    Quantum {
        anc_h1: DlmState<T>,
        anc_h2: DlmState<T>,
        pho_h1: DlmState<T>,
        pho_ch: DlmState<T>,
    },
}

/// Drive angle for the path-1 phase gate between a Hadamard pair: the
/// closing unit then collects `sin^2(delta / 2)` on port 1.
fn closing_phase<T: Real>(delta: T) -> T {
    T::PI() + delta
}

/// Send a messenger through a gate; it leaves on the gate's selected port.
fn route<T: Real>(
    messenger: &mut Messenger<T>,
    gate: &mut DlmState<T>,
    control: Option<usize>,
    rng: &mut RandomSource,
) -> usize {
    let (port, message) = gate.process_event(messenger.port, messenger.message, control, rng);
    messenger.port = port;
    messenger.message = message;
    port
}

impl<T: Real> Circuit<T> {
    fn init(kind: ExperimentKind, gamma: T, rng: &mut RandomSource) -> Result<Self> {
        Ok(match kind {
            ExperimentKind::Mzi => Circuit::Mzi {
                h1: DlmState::init(gamma, rng)?,
                h2: DlmState::init(gamma, rng)?,
            },
            ExperimentKind::WdcClassical => Circuit::Classical {
                h1: DlmState::init(gamma, rng)?,
                ch: DlmState::init(gamma, rng)?,
            },
            ExperimentKind::WdcQuantum => Circuit::Quantum {
                anc_h1: DlmState::init(gamma, rng)?,
                anc_h2: DlmState::init(gamma, rng)?,
                pho_h1: DlmState::init(gamma, rng)?,
                pho_ch: DlmState::init(gamma, rng)?,
            },
        })
    }

    fn run(&mut self, cfg: &ExperimentConfig<T>, rng: &mut RandomSource) -> JointCounts {
        let mut counts = JointCounts::default();
        match self {
            Circuit::Mzi { h1, h2 } => {
                // Only the path difference is observable; the rotation acts
                // on path 1, per the phase-gate rule.
                let phase = closing_phase(cfg.phi1 - cfg.phi0);
                for _ in 0..cfg.n_pairs {
                    let mut photon = Messenger::new(Line::Photon);
                    route(&mut photon, h1, None, rng);
                    photon = photon.through_phase(phase);
                    let v = route(&mut photon, h2, None, rng);
                    counts.record(v, 0);
                }
            }
            Circuit::Classical { h1, ch } => {
                let sin_alpha = cfg.alpha.sin();
                let p_closed = sin_alpha * sin_alpha;
                let phase = closing_phase(cfg.phi);
                for _ in 0..cfg.n_pairs {
                    // control coin drawn before the photon enters
                    let u = usize::from(rng.uniform::<T>() < p_closed);
                    let mut photon = Messenger::new(Line::Photon);
                    route(&mut photon, h1, None, rng);
                    photon = photon.through_phase(phase);
                    let v = route(&mut photon, ch, Some(u), rng);
                    counts.record(v, u);
                }
            }
            Circuit::Quantum {
                anc_h1,
                anc_h2,
                pho_h1,
                pho_ch,
            } => {
                // Ancilla port-1 rate sin^2(alpha); photon conditional
                // rates cos^2(phi/2), sin^2(phi/2) when the closer is on.
                let anc_phase = closing_phase(cfg.alpha + cfg.alpha);
                let pho_phase = closing_phase(cfg.phi);
                for _ in 0..cfg.n_pairs {
                    // the ancilla traverses its interferometer first; its
                    // detected port is the control bit
                    let mut ancilla = Messenger::new(Line::Ancilla);
                    route(&mut ancilla, anc_h1, None, rng);
                    ancilla = ancilla.through_phase(anc_phase);
                    let u = route(&mut ancilla, anc_h2, None, rng);

                    let mut photon = Messenger::new(Line::Photon);
                    route(&mut photon, pho_h1, None, rng);
                    photon = photon.through_phase(pho_phase);
                    let v = route(&mut photon, pho_ch, Some(u), rng);
                    counts.record(v, u);
                }
            }
        }
        counts
    }
}

fn expect_kind<T: Real>(cfg: &ExperimentConfig<T>, expected: ExperimentKind) -> Result<()> {
    if cfg.kind != expected {
        return Err(Error::KindMismatch {
            expected,
            actual: cfg.kind,
        });
    }
    Ok(())
}

/// Run whichever experiment the config names. Bare-interferometer path
/// counts land in the u = 0 column.
pub fn run_counts<T: Real>(cfg: &ExperimentConfig<T>, rng: &mut RandomSource) -> Result<JointCounts> {
    cfg.validate()?;
    let mut circuit = Circuit::init(cfg.kind, cfg.gamma, rng)?;
    Ok(circuit.run(cfg, rng))
}

/// Ancilla-controlled run: four units (ancilla pair, photon opener,
/// controlled closer); counts indexed by (photon port, ancilla port).
pub fn run_quantum_controlled<T: Real>(
    cfg: &ExperimentConfig<T>,
    rng: &mut RandomSource,
) -> Result<JointCounts> {
    expect_kind(cfg, ExperimentKind::WdcQuantum)?;
    run_counts(cfg, rng)
}

/// Coin-controlled run: the closing unit is switched by a Bernoulli draw
/// with closure probability sin^2(alpha); counts indexed by (photon port,
/// coin value).
pub fn run_classical_wdc<T: Real>(
    cfg: &ExperimentConfig<T>,
    rng: &mut RandomSource,
) -> Result<JointCounts> {
    expect_kind(cfg, ExperimentKind::WdcClassical)?;
    run_counts(cfg, rng)
}

/// Bare interferometer run; returns the two path counts.
pub fn run_mzi<T: Real>(cfg: &ExperimentConfig<T>, rng: &mut RandomSource) -> Result<[u64; 2]> {
    expect_kind(cfg, ExperimentKind::Mzi)?;
    let counts = run_counts(cfg, rng)?;
    Ok([counts.n[0][0], counts.n[1][0]])
}

/// One fresh-gate grid point on its independently derived random stream.
pub fn run_point<T: Real>(base: &ExperimentConfig<T>, alpha: T, phi: T) -> Result<SweepRecord<T>> {
    let cfg = base.at_point(alpha, phi);
    let mut rng = cfg.derived_rng();
    let counts = run_counts(&cfg, &mut rng)?;
    Ok(SweepRecord { alpha, phi, counts })
}

/// Run the configured experiment at every grid point, row-major over
/// alphas x phis.
///
/// With `carry_state` false (the default) each point gets freshly
/// initialized gates and its own random stream, so results depend only on
/// the point's angles, never on grid order. With `carry_state` true the
/// gates and a single stream persist across points in iteration order.
pub fn sweep<T: Real>(
    base: &ExperimentConfig<T>,
    alphas: &[T],
    phis: &[T],
) -> Result<Vec<SweepRecord<T>>> {
    if alphas.is_empty() || phis.is_empty() {
        return Err(Error::EmptyGrid);
    }
    base.validate()?;
    let mut records = Vec::with_capacity(alphas.len() * phis.len());
    if base.carry_state {
        let mut rng = RandomSource::seeded(base.seed);
        let mut circuit = Circuit::init(base.kind, base.gamma, &mut rng)?;
        for &alpha in alphas {
            for &phi in phis {
                let cfg = base.at_point(alpha, phi);
                let counts = circuit.run(&cfg, &mut rng);
                records.push(SweepRecord { alpha, phi, counts });
            }
        }
    } else {
        for &alpha in alphas {
            for &phi in phis {
                records.push(run_point(base, alpha, phi)?);
            }
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn freqs(counts: &JointCounts, n: u64) -> [[f64; 2]; 2] {
        let mut f = [[0.0; 2]; 2];
        for v in 0..2 {
            for u in 0..2 {
                f[v][u] = counts.n[v][u] as f64 / n as f64;
            }
        }
        f
    }

    #[test]
    fn every_pair_is_counted_once_for_each_kind() {
        for kind in [
            ExperimentKind::Mzi,
            ExperimentKind::WdcClassical,
            ExperimentKind::WdcQuantum,
        ] {
            let mut cfg = ExperimentConfig::<f64>::new(kind);
            cfg.alpha = 0.7;
            cfg.phi = 1.1;
            cfg.phi0 = 0.3;
            cfg.n_pairs = 3456;
            let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
            assert_eq!(counts.total(), cfg.n_pairs);
        }
    }

    #[test]
    fn identical_seed_and_config_reproduce_counts_bit_exactly() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_3;
        cfg.phi = 2.0;
        cfg.seed = 77;
        let a = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        let b = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kind_checked_wrappers_reject_mismatched_configs() {
        let cfg = ExperimentConfig::<f64>::new(ExperimentKind::Mzi);
        let err = run_quantum_controlled(&cfg, &mut cfg.derived_rng()).unwrap_err();
        assert!(matches!(err, Error::KindMismatch { .. }));
    }

    #[test]
    fn open_ancilla_keeps_the_photon_split_even() {
        // alpha = 0: the closer never engages; both photon ports get half
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = 0.0;
        cfg.phi = 1.3;
        cfg.seed = 3;
        let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        let f = freqs(&counts, cfg.n_pairs);
        assert!(f[0][1] + f[1][1] <= 0.02, "ancilla port 1 beyond transient");
        assert!((f[0][0] - 0.5).abs() < 0.015);
        assert!((f[1][0] - 0.5).abs() < 0.015);
    }

    #[test]
    fn closed_ancilla_gives_full_interference() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_2;
        cfg.phi = 0.0;
        cfg.seed = 5;
        let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        let f = freqs(&counts, cfg.n_pairs);
        assert!((f[0][1] - 1.0).abs() < 0.02);
        assert!(f[0][0] + f[1][0] + f[1][1] < 0.02);
    }

    #[test]
    fn joint_frequencies_track_the_reference_distribution() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_3;
        cfg.phi = PI;
        cfg.seed = 13;
        let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        let f = freqs(&counts, cfg.n_pairs);
        assert!((f[1][1] - 0.75).abs() < 0.015);
        assert!((f[0][0] - 0.125).abs() < 0.01);
        assert!((f[1][0] - 0.125).abs() < 0.01);
        assert!(f[0][1] < 0.01);
    }

    #[test]
    fn classical_coin_reproduces_the_same_statistics() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcClassical);
        cfg.alpha = FRAC_PI_2; // coin always closes the interferometer
        cfg.seed = 13;
        for (i, phi) in [0.9, 2.4, 4.4].into_iter().enumerate() {
            cfg.phi = phi;
            cfg.seed = 13 + i as u64;
            let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
            let f = freqs(&counts, cfg.n_pairs);
            let want = (phi / 2.0).cos().powi(2);
            assert!((f[0][1] - want).abs() < 0.015, "phi {phi}");
        }

        cfg.alpha = 0.0; // coin never closes: even split, no phase effect
        cfg.phi = 2.2;
        cfg.seed = 19;
        let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        let f = freqs(&counts, cfg.n_pairs);
        assert!((f[0][0] - 0.5).abs() < 0.015);
        assert!((f[1][0] - 0.5).abs() < 0.015);
    }

    #[test]
    fn bare_interferometer_fringe() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::Mzi);
        cfg.seed = 8;

        cfg.phi0 = 1.234;
        cfg.phi1 = 1.234;
        let [n0, _] = run_mzi(&cfg, &mut cfg.derived_rng()).unwrap();
        assert!(n0 as f64 / cfg.n_pairs as f64 > 0.98);

        cfg.phi0 = PI;
        cfg.phi1 = 0.0;
        let [n0, n1] = run_mzi(&cfg, &mut cfg.derived_rng()).unwrap();
        assert!((n0 as f64 / cfg.n_pairs as f64) < 0.02);
        assert_eq!(n0 + n1, cfg.n_pairs);

        cfg.phi0 = FRAC_PI_2;
        let [n0, _] = run_mzi(&cfg, &mut cfg.derived_rng()).unwrap();
        assert!((n0 as f64 / cfg.n_pairs as f64 - 0.5).abs() < 0.015);
    }

    #[test]
    fn single_point_sweep_equals_a_direct_run() {
        let mut base = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        base.n_pairs = 2000;
        base.seed = 23;
        let records = sweep(&base, &[0.8], &[1.7]).unwrap();
        assert_eq!(records.len(), 1);

        let cfg = base.at_point(0.8, 1.7);
        let direct = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        assert_eq!(records[0].counts, direct);
    }

    #[test]
    fn sweep_results_do_not_depend_on_grid_order() {
        let mut base = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        base.n_pairs = 1000;
        base.seed = 29;
        let phis = [0.1, 1.9, 4.2];
        let forward = sweep(&base, &[0.6], &phis).unwrap();
        let mut reversed = sweep(&base, &[0.6], &[4.2, 1.9, 0.1]).unwrap();
        reversed.reverse();
        for (a, b) in forward.iter().zip(&reversed) {
            assert_eq!(a.counts, b.counts);
            assert_eq!(a.phi, b.phi);
        }
    }

    #[test]
    fn carried_sweep_is_deterministic_and_counts_everything() {
        let mut base = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        base.n_pairs = 1000;
        base.carry_state = true;
        base.seed = 31;
        let phis = [0.5, 2.5];
        let a = sweep(&base, &[FRAC_PI_3], &phis).unwrap();
        let b = sweep(&base, &[FRAC_PI_3], &phis).unwrap();
        assert_eq!(a, b);
        for record in &a {
            assert_eq!(record.counts.total(), base.n_pairs);
        }
    }

    #[test]
    fn empty_grids_are_rejected() {
        let base = ExperimentConfig::<f64>::new(ExperimentKind::Mzi);
        assert_eq!(sweep(&base, &[], &[0.0]).unwrap_err(), Error::EmptyGrid);
        assert_eq!(sweep(&base, &[0.0], &[]).unwrap_err(), Error::EmptyGrid);
    }

    #[test]
    fn single_precision_runs_produce_the_same_physics() {
        let mut cfg = ExperimentConfig::<f32>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = std::f32::consts::FRAC_PI_3;
        cfg.phi = std::f32::consts::PI;
        cfg.seed = 37;
        let counts = run_counts(&cfg, &mut cfg.derived_rng()).unwrap();
        assert_eq!(counts.total(), cfg.n_pairs);
        let f11 = counts.n[1][1] as f64 / cfg.n_pairs as f64;
        assert!((f11 - 0.75).abs() < 0.02);
    }
}
