use crate::game::Decision;
use crate::policy::LOG_PROB_FLOOR;

/// Voucher scheme on the unit scale.
pub fn reward_current(d1: Decision, d2: Decision, d_t: f64) -> f64 {
    if d1 == d2 && d1 != Decision::Revision {
        1.0
    } else {
        1.0 - d_t
    }
}

/// Graded scheme: agreement 1.0, adjacent verdicts 0.5, Accept vs Reject 0.2.
pub fn reward_proposed(d1: Decision, d2: Decision) -> f64 {
    match d1.index().abs_diff(d2.index()) {
        0 => 1.0,
        1 => 0.5,
        _ => 0.2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentLoss {
    pub loss: f64,
    /// Gradient of `loss` with respect to the three logits.
    pub dlogits: [f64; 3],
}

/// Per-agent loss `-R·log p(action) + λ·(-log p(true_decision))` and its
/// gradient through the softmax.
///
/// The first term is the score-function estimate of `-E[R]` (no baseline).
/// A log-probability at the floor contributes a constant, hence no gradient.
pub fn agent_loss(reward: f64, action: Decision, probs: &[f64; 3], true_decision: Decision, lambda: f64) -> AgentLoss {
    let mut dlogits = [0.0; 3];
    let mut loss = 0.0;
    let mut add_nll = |weight: f64, target: usize| {
        if weight == 0.0 {
            return;
        }
        let raw = probs[target].ln();
        let log_p = raw.max(LOG_PROB_FLOOR);
        loss -= weight * log_p;
        if raw > LOG_PROB_FLOOR {
            for (k, g) in dlogits.iter_mut().enumerate() {
                let onehot = if k == target { 1.0 } else { 0.0 };
                *g += weight * (probs[k] - onehot);
            }
        }
    };
    add_nll(reward, action.index());
    add_nll(lambda, true_decision.index());
    AgentLoss { loss, dlogits }
}
