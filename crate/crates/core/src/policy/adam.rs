use super::network::{Params, PolicyNetwork};
use super::real::Real;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    /// Learning rate 1e-5 with the conventional moment decay and epsilon.
    fn default() -> Self {
        AdamConfig { lr: 1e-5, beta1: 0.9, beta2: 0.999, epsilon: 1e-8 }
    }
}

impl AdamConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.lr.is_finite()
            && self.lr > 0.0
            && (0.0..1.0).contains(&self.beta1)
            && (0.0..1.0).contains(&self.beta2)
            && self.epsilon.is_finite()
            && self.epsilon > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidNetwork(format!("invalid Adam settings {self:?}")))
        }
    }
}

#[inline(always)]
fn flush<T: Real>(x: T) -> T {
    if x.abs() < T::min_positive_value() {
        T::zero()
    } else {
        x
    }
}

/// Per-step constants of the bias-corrected update
/// `w -= (lr / (1 - β1ᵗ)) · m / (sqrt(v) / sqrt(1 - β2ᵗ) + ε)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AdamCoefficients<T> {
    beta1: T,
    one_minus_beta1: T,
    beta2: T,
    one_minus_beta2: T,
    step_size: T,
    inv_sqrt_correction2: T,
    epsilon: T,
}

impl<T: Real> AdamCoefficients<T> {
    /// Moments below the smallest normal value are stored as zero.
    #[inline(always)]
    pub(crate) fn update(&self, w: &mut T, m: &mut T, v: &mut T, g: T) {
        *m = flush(self.beta1 * *m + self.one_minus_beta1 * g);
        *v = flush(self.beta2 * *v + self.one_minus_beta2 * (g * g));
        *w -= self.step_size * *m / (v.sqrt() * self.inv_sqrt_correction2 + self.epsilon);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdamState<T> {
    config: AdamConfig,
    step_count: u64,
    first: Params<T>,
    second: Params<T>,
}

impl<T: Real> AdamState<T> {
    pub fn new(config: AdamConfig, net: &PolicyNetwork<T>) -> Self {
        AdamState {
            config,
            step_count: 0,
            first: Params::zeros(net.config()),
            second: Params::zeros(net.config()),
        }
    }

    pub fn from_parts(config: AdamConfig, step_count: u64, first: Params<T>, second: Params<T>) -> Result<Self> {
        config.validate()?;
        if !first.congruent(&second) {
            return Err(Error::ShapeMismatch("Adam moments differ in shape".into()));
        }
        Ok(AdamState { config, step_count, first, second })
    }

    pub fn config(&self) -> &AdamConfig {
        &self.config
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn first_moment(&self) -> &Params<T> {
        &self.first
    }

    pub fn second_moment(&self) -> &Params<T> {
        &self.second
    }

    pub(crate) fn moments_mut(&mut self) -> (&mut Params<T>, &mut Params<T>) {
        (&mut self.first, &mut self.second)
    }

    pub(crate) fn check_congruent(&self, params: &Params<T>) -> Result<()> {
        if self.first.congruent(params) && self.second.congruent(params) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("optimizer state does not match the parameters".into()))
        }
    }

    /// Increments the step counter and returns the constants for that step.
    pub(crate) fn advance(&mut self) -> AdamCoefficients<T> {
        self.step_count += 1;
        let c = &self.config;
        let t = self.step_count.min(i32::MAX as u64) as i32;
        let correction1 = 1.0 - c.beta1.powi(t);
        let correction2 = 1.0 - c.beta2.powi(t);
        AdamCoefficients {
            beta1: T::from_f64(c.beta1),
            one_minus_beta1: T::from_f64(1.0 - c.beta1),
            beta2: T::from_f64(c.beta2),
            one_minus_beta2: T::from_f64(1.0 - c.beta2),
            step_size: T::from_f64(c.lr / correction1),
            inv_sqrt_correction2: T::from_f64(1.0 / correction2.sqrt()),
            epsilon: T::from_f64(c.epsilon),
        }
    }

    /// Applies one bias-corrected Adam update with `grads`.
    pub fn step(&mut self, net: &mut PolicyNetwork<T>, grads: &Params<T>) -> Result<()> {
        self.check_congruent(net.params())?;
        if !grads.congruent(net.params()) {
            return Err(Error::ShapeMismatch("gradients do not match the parameters".into()));
        }
        let c = self.advance();
        for (((w, m), v), &g) in
            net.params_mut().values_mut().zip(self.first.values_mut()).zip(self.second.values_mut()).zip(grads.values())
        {
            c.update(w, m, v, g);
        }
        Ok(())
    }
}

/// Free-function form of [`AdamState::step`].
pub fn adam_step<T: Real>(net: &mut PolicyNetwork<T>, state: &mut AdamState<T>, grads: &Params<T>) -> Result<()> {
    state.step(net, grads)
}
