use rand::Rng;

use crate::error::{Error, Result};
use crate::game::Decision;

/// Log-probabilities never go below this value.
pub const LOG_PROB_FLOOR: f64 = -30.0;

const SUM_TOLERANCE: f64 = 1e-9;

/// Max-shifted softmax. Returns `(probs, log_probs)`; log-probabilities are
/// clamped at [`LOG_PROB_FLOOR`].
pub fn log_softmax(logits: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shifted = logits.map(|z| z - max);
    let sum: f64 = shifted.iter().map(|z| z.exp()).sum();
    let log_sum = sum.ln();
    let log_probs = shifted.map(|z| z - log_sum);
    (log_probs.map(f64::exp), log_probs.map(|l| l.max(LOG_PROB_FLOOR)))
}

pub fn softmax(logits: &[f64; 3]) -> [f64; 3] {
    log_softmax(logits).0
}

pub fn validate_distribution(probs: &[f64]) -> Result<()> {
    if probs.len() != Decision::COUNT {
        return Err(Error::InvalidDistribution(format!("expected {} entries, got {}", Decision::COUNT, probs.len())));
    }
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidDistribution(format!("{probs:?} has a negative or non-finite entry")));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("{probs:?} sums to {sum}")));
    }
    Ok(())
}

/// Draws a decision from `probs` by inverse CDF using one uniform draw.
/// Returns the decision and its (floored) natural-log probability.
pub fn sample_decision<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Result<(Decision, f64)> {
    validate_distribution(probs)?;
    let u: f64 = rng.gen();
    let mut cumulative = 0.0;
    let mut chosen = None;
    for (i, &p) in probs.iter().enumerate() {
        cumulative += p;
        if p > 0.0 && u < cumulative {
            chosen = Some(i);
            break;
        }
    }
    // Rounding can leave `u` above the final cumulative sum.
    let index = chosen.unwrap_or_else(|| probs.iter().rposition(|&p| p > 0.0).expect("some mass"));
    let decision = Decision::from_index(index).expect("three entries");
    Ok((decision, probs[index].ln().max(LOG_PROB_FLOOR)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_distribution_always_picks_its_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let (d, lp) = sample_decision(&[1.0, 0.0, 0.0], &mut rng).unwrap();
            assert_eq!(d, Decision::Accept);
            assert_eq!(lp, 0.0);
        }
        for _ in 0..1000 {
            assert_eq!(sample_decision(&[0.0, 0.0, 1.0], &mut rng).unwrap().0, Decision::Reject);
        }
    }

    #[test]
    fn uniform_frequencies_converge() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let third = 1.0 / 3.0;
        let mut counts = [0usize; 3];
        let n = 30_000;
        for _ in 0..n {
            counts[sample_decision(&[third; 3], &mut rng).unwrap().0.index()] += 1;
        }
        for c in counts {
            assert!((c as f64 / n as f64 - third).abs() < 0.02, "{counts:?}");
        }
    }

    #[test]
    fn log_probability_matches_sample() {
        let probs = [0.2, 0.5, 0.3];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let (d, lp) = sample_decision(&probs, &mut rng).unwrap();
            assert!((lp - probs[d.index()].ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_samples() {
        let probs = [0.25, 0.25, 0.5];
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            (0..50).map(|_| sample_decision(&probs, &mut rng).unwrap().0).collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn invalid_distributions_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_decision(&[0.5, 0.5], &mut rng).is_err());
        assert!(sample_decision(&[0.5, 0.6, -0.1], &mut rng).is_err());
        assert!(sample_decision(&[0.5, 0.6, 0.1], &mut rng).is_err());
        assert!(sample_decision(&[f64::NAN, 0.5, 0.5], &mut rng).is_err());
    }

    #[test]
    fn softmax_is_shift_invariant_and_stable() {
        let a = softmax(&[1.0, 2.0, 3.0]);
        let b = softmax(&[1001.0, 1002.0, 1003.0]);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-15);
        }
        assert_eq!(softmax(&[7.0; 3]), [1.0 / 3.0; 3]);
        let (p, lp) = log_softmax(&[0.0, -100.0, 0.0]);
        assert!(p[1] > 0.0 && p[1] < 1e-40);
        assert_eq!(lp[1], LOG_PROB_FLOOR);
    }
}
