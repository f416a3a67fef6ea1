//! Counts-to-frequency conversion and comparison against the exact
//! reference, including per-cell binomial z-scores and sweep-level
//! deviation summaries.

use crate::error::{Error, Result};
use crate::experiments::{ExperimentConfig, JointCounts};
use crate::real::Real;

/// Reference probabilities this close to 0 or 1 carry no binomial scale;
/// their z-score is reported as `None` instead of an infinity.
const DEGENERATE_PROB: f64 = 1e-9;

/// One grid point's normalized frequencies next to the exact reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyRecord<T> {
    pub alpha: T,
    pub phi: T,
    pub n_pairs: u64,
    /// Normalized frequencies `f[v][u] = n[v][u] / N`.
    pub f: [[T; 2]; 2],
    /// Reference probabilities `p[v][u]`.
    pub p: [[T; 2]; 2],
    /// delta = f - p, entrywise.
    pub delta: [[T; 2]; 2],
    /// delta scaled by the binomial deviation sqrt(p (1 - p) / N);
    /// `None` where the reference cell is deterministic.
    pub z: [[Option<T>; 2]; 2],
}

/// Divide each counter by `n_pairs`. Rejects totals that do not match.
pub fn normalize<T: Real>(counts: &JointCounts, n_pairs: u64) -> Result<[[T; 2]; 2]> {
    let total = counts.total();
    if total != n_pairs {
        return Err(Error::CountMismatch { total, n_pairs });
    }
    let n = T::from_f64(n_pairs as f64);
    let mut f = [[T::zero(); 2]; 2];
    for v in 0..2 {
        for u in 0..2 {
            f[v][u] = T::from_f64(counts.n[v][u] as f64) / n;
        }
    }
    Ok(f)
}

/// Normalized frequencies of `counts` against the reference distribution
/// of `cfg`, with per-cell deviations and binomial z-scores.
pub fn compare<T: Real>(counts: &JointCounts, cfg: &ExperimentConfig<T>) -> Result<FrequencyRecord<T>> {
    let f = normalize(counts, cfg.n_pairs)?;
    let p = cfg.oracle_probs().p;
    let n = T::from_f64(cfg.n_pairs as f64);
    let eps = T::from_f64(DEGENERATE_PROB);

    let mut delta = [[T::zero(); 2]; 2];
    let mut z = [[None; 2]; 2];
    for v in 0..2 {
        for u in 0..2 {
            delta[v][u] = f[v][u] - p[v][u];
            if p[v][u] > eps && p[v][u] < T::one() - eps {
                let sigma = (p[v][u] * (T::one() - p[v][u]) / n).sqrt();
                z[v][u] = Some(delta[v][u] / sigma);
            }
        }
    }
    Ok(FrequencyRecord {
        alpha: cfg.alpha,
        phi: cfg.effective_phi(),
        n_pairs: cfg.n_pairs,
        f,
        p,
        delta,
        z,
    })
}

/// Maximum-absolute and root-mean-square deviation over all delta cells of
/// all records; order-independent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSummary<T> {
    pub max_abs_delta: T,
    pub rms_delta: T,
}

pub fn sweep_summary<T: Real>(records: &[FrequencyRecord<T>]) -> Result<SweepSummary<T>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut max_abs = T::zero();
    let mut sum_sq = T::zero();
    let mut cells = 0u64;
    for record in records {
        for row in record.delta {
            for d in row {
                max_abs = max_abs.max(d.abs());
                sum_sq = sum_sq + d * d;
                cells += 1;
            }
        }
    }
    Ok(SweepSummary {
        max_abs_delta: max_abs,
        rms_delta: (sum_sq / T::from_f64(cells as f64)).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentKind;
    use std::f64::consts::{FRAC_PI_3, PI};

    fn counts(n: [[u64; 2]; 2]) -> JointCounts {
        JointCounts { n }
    }

    #[test]
    fn normalization_at_reference_counts() {
        let f: [[f64; 2]; 2] =
            normalize(&counts([[2500, 2500], [2500, 2500]]), 10_000).unwrap();
        assert_eq!(f, [[0.25, 0.25], [0.25, 0.25]]);

        let f: [[f64; 2]; 2] = normalize(&counts([[10_000, 0], [0, 0]]), 10_000).unwrap();
        assert_eq!(f, [[1.0, 0.0], [0.0, 0.0]]);

        let f: [[f64; 2]; 2] =
            normalize(&counts([[1250, 7500], [1250, 0]]), 10_000).unwrap();
        assert_eq!(f, [[0.125, 0.75], [0.125, 0.0]]);
        let total: f64 = f.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_totals_are_rejected() {
        let err = normalize::<f64>(&counts([[1, 2], [3, 4]]), 11).unwrap_err();
        assert_eq!(
            err,
            Error::CountMismatch {
                total: 10,
                n_pairs: 11
            }
        );
    }

    #[test]
    fn perfectly_matching_counts_have_zero_delta() {
        // the alpha = pi/3, phi = pi reference point has exact cell counts
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_3;
        cfg.phi = PI;
        let record = compare(&counts([[1250, 0], [1250, 7500]]), &cfg).unwrap();
        for v in 0..2 {
            for u in 0..2 {
                assert!(record.delta[v][u].abs() < 1e-12);
            }
        }
        // degenerate reference cell carries no z-score
        assert!(record.z[0][1].is_none());
        assert!(record.z[0][0].is_some());
    }

    #[test]
    fn z_scores_scale_deviations_by_the_binomial_sigma() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_3;
        cfg.phi = PI / 2.0;
        let p = cfg.oracle_probs().p;
        let n: u64 = (p[0][0] * 10_000.0).round() as u64 + 100;
        let rest = 10_000 - n;
        let record = compare(
            &counts([
                [n, (p[0][1] * 10_000.0).round() as u64],
                [
                    (p[1][0] * 10_000.0).round() as u64,
                    rest - (p[0][1] * 10_000.0).round() as u64
                        - (p[1][0] * 10_000.0).round() as u64,
                ],
            ]),
            &cfg,
        )
        .unwrap();
        let sigma = (p[0][0] * (1.0 - p[0][0]) / 10_000.0).sqrt();
        let z = record.z[0][0].unwrap();
        assert!((z - record.delta[0][0] / sigma).abs() < 1e-12);
        assert!(z > 2.0, "a +100 count excess at p = 0.125 is > 2 sigma");
    }

    #[test]
    fn summary_at_reference_deltas() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = FRAC_PI_3;
        cfg.phi = PI;
        let zero = compare(&counts([[1250, 0], [1250, 7500]]), &cfg).unwrap();
        let s = sweep_summary(&[zero]).unwrap();
        assert!(s.max_abs_delta < 1e-12 && s.rms_delta < 1e-12);

        // symmetric +/- 0.01 deltas give rms exactly 0.01
        let mut plus = zero;
        plus.delta = [[0.01, -0.01], [0.01, -0.01]];
        let s = sweep_summary(&[plus]).unwrap();
        assert!((s.rms_delta - 0.01).abs() < 1e-15);
        assert!((s.max_abs_delta - 0.01).abs() < 1e-15);
    }

    #[test]
    fn summary_is_order_independent_and_rejects_empty_input() {
        let mut cfg = ExperimentConfig::<f64>::new(ExperimentKind::WdcQuantum);
        cfg.alpha = 0.4;
        cfg.phi = 1.0;
        cfg.n_pairs = 100;
        let a = compare(&counts([[40, 10], [30, 20]]), &cfg).unwrap();
        let b = compare(&counts([[10, 40], [20, 30]]), &cfg).unwrap();
        assert_eq!(
            sweep_summary(&[a, b]).unwrap(),
            sweep_summary(&[b, a]).unwrap()
        );
        assert_eq!(sweep_summary::<f64>(&[]).unwrap_err(), Error::EmptyRecords);
    }
}
