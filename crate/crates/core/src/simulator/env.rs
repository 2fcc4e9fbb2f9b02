use rand::Rng;

use crate::game::{decide, Decision, QualityModel};

/// One submitted paper as seen by the two reviewers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperSample {
    /// Latent quality `S_p ~ U(0, 1)`.
    pub quality: f64,
    pub bias: [f64; 2],
    /// `quality + bias[i]`, the score reviewer `i` observes.
    pub estimate: [f64; 2],
    /// Verdict the unbiased quality calls for.
    pub true_decision: Decision,
}

pub fn sample_paper<R: Rng + ?Sized>(model: &QualityModel, rng: &mut R) -> PaperSample {
    let quality: f64 = rng.gen();
    let h = model.bias_halfwidth();
    let mut draw_bias = || h * (2.0 * rng.gen::<f64>() - 1.0);
    let bias = [draw_bias(), draw_bias()];
    PaperSample {
        quality,
        bias,
        estimate: [quality + bias[0], quality + bias[1]],
        true_decision: decide(quality, model).expect("uniform draw is finite"),
    }
}
