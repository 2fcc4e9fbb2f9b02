use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::adam::{AdamCoefficients, AdamState};
use super::real::Real;
use super::sampling::log_softmax;
use crate::error::{Error, Result};

/// The network reads one scalar score.
pub const INPUT_DIM: usize = 1;
/// One logit per decision.
pub const OUTPUT_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Activation {
    Relu,
    Tanh,
}

impl Activation {
    pub fn code(self) -> u8 {
        match self {
            Activation::Relu => 0,
            Activation::Tanh => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Activation::Relu),
            1 => Some(Activation::Tanh),
            _ => None,
        }
    }

    fn apply<T: Real>(self, x: T) -> T {
        match self {
            Activation::Relu => x.max(T::zero()),
            Activation::Tanh => x.tanh(),
        }
    }

    /// Derivative expressed through the activation's output.
    fn derivative_from_output<T: Real>(self, y: T) -> T {
        match self {
            Activation::Relu => {
                if y > T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Activation::Tanh => T::one() - y * y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkConfig {
    pub hidden_width: usize,
    pub residual_blocks: usize,
    pub activation: Activation,
    pub init_seed: u64,
}

impl NetworkConfig {
    /// Width 256 with ten residual blocks.
    pub fn standard(init_seed: u64) -> Self {
        NetworkConfig { hidden_width: 256, residual_blocks: 10, activation: Activation::Relu, init_seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hidden_width == 0 {
            return Err(Error::InvalidNetwork("hidden width must be at least 1".into()));
        }
        Ok(())
    }

    /// Affine layers in parameter order: input, two per block, output.
    pub fn layer_count(&self) -> usize {
        2 + 2 * self.residual_blocks
    }

    /// `(inputs, outputs)` of every affine layer in parameter order.
    pub fn layer_shapes(&self) -> Vec<(usize, usize)> {
        let w = self.hidden_width;
        let mut shapes = Vec::with_capacity(self.layer_count());
        shapes.push((INPUT_DIM, w));
        for _ in 0..self.residual_blocks {
            shapes.push((w, w));
            shapes.push((w, w));
        }
        shapes.push((w, OUTPUT_DIM));
        shapes
    }

    pub fn param_count(&self) -> usize {
        self.layer_shapes().iter().map(|(i, o)| i * o + o).sum()
    }
}

/// One affine map `y = W x + b` with `W` stored row-major (`outputs` rows).
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<T>,
    pub bias: Vec<T>,
}

impl<T: Real> Layer<T> {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Layer { inputs, outputs, weights: vec![T::zero(); inputs * outputs], bias: vec![T::zero(); outputs] }
    }

    fn uniform(inputs: usize, outputs: usize, rng: &mut impl Rng) -> Self {
        let bound = 1.0 / (inputs as f64).sqrt();
        let mut draw = || T::from_f64((2.0 * rng.gen::<f64>() - 1.0) * bound);
        let weights = (0..inputs * outputs).map(|_| draw()).collect();
        let bias = (0..outputs).map(|_| draw()).collect();
        Layer { inputs, outputs, weights, bias }
    }

    fn forward_into(&self, x: &[T], y: &mut [T]) {
        for ((out, row), b) in y.iter_mut().zip(self.weights.chunks_exact(self.inputs)).zip(&self.bias) {
            *out = *b + dot(row, x);
        }
    }

    /// Writes `dy ⊗ x` into `grad` and accumulates `Wᵀ dy` into `dx`.
    fn backward_into(&self, x: &[T], dy: &[T], grad: &mut Layer<T>, dx: Option<&mut [T]>) {
        grad.bias.copy_from_slice(dy);
        let rows = self.weights.chunks_exact(self.inputs).zip(grad.weights.chunks_exact_mut(self.inputs));
        match dx {
            Some(dx) => {
                for ((w, g), &d) in rows.zip(dy) {
                    for (((&w, g), &x), dx) in w.iter().zip(g.iter_mut()).zip(x).zip(dx.iter_mut()) {
                        *dx += w * d;
                        *g = d * x;
                    }
                }
            }
            None => {
                for ((_, g), &d) in rows.zip(dy) {
                    for (g, &x) in g.iter_mut().zip(x) {
                        *g = d * x;
                    }
                }
            }
        }
    }

    /// Same arithmetic as `backward_into` followed by an Adam step, without
    /// materializing the gradient. `dx` is computed from the weights before
    /// they are updated.
    fn backward_update(
        &mut self,
        x: &[T],
        dy: &[T],
        first: &mut Layer<T>,
        second: &mut Layer<T>,
        dx: Option<&mut [T]>,
        c: &AdamCoefficients<T>,
    ) {
        let n = self.inputs;
        for (((b, m), v), &d) in self.bias.iter_mut().zip(&mut first.bias).zip(&mut second.bias).zip(dy) {
            c.update(b, m, v, d);
        }
        let rows = self
            .weights
            .chunks_exact_mut(n)
            .zip(first.weights.chunks_exact_mut(n))
            .zip(second.weights.chunks_exact_mut(n))
            .zip(dy);
        match dx {
            Some(dx) => {
                for (((w, m), v), &d) in rows {
                    for ((((w, m), v), &x), dx) in w.iter_mut().zip(m.iter_mut()).zip(v.iter_mut()).zip(x).zip(dx.iter_mut()) {
                        *dx += *w * d;
                        c.update(w, m, v, d * x);
                    }
                }
            }
            None => {
                for (((w, m), v), &d) in rows {
                    for (((w, m), v), &x) in w.iter_mut().zip(m.iter_mut()).zip(v.iter_mut()).zip(x) {
                        c.update(w, m, v, d * x);
                    }
                }
            }
        }
    }

    pub fn same_shape(&self, other: &Layer<T>) -> bool {
        self.inputs == other.inputs
            && self.outputs == other.outputs
            && self.weights.len() == other.weights.len()
            && self.bias.len() == other.bias.len()
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 8];
    let chunks_a = a.chunks_exact(8);
    let chunks_b = b.chunks_exact(8);
    let (rest_a, rest_b) = (chunks_a.remainder(), chunks_b.remainder());
    for (x, y) in chunks_a.zip(chunks_b) {
        for k in 0..8 {
            acc[k] += x[k] * y[k];
        }
    }
    let mut sum = ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
    for (&x, &y) in rest_a.iter().zip(rest_b) {
        sum += x * y;
    }
    sum
}

/// An ordered set of layer tables congruent to a network's parameters. Used
/// for the parameters themselves, their gradients, and Adam moments.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T> {
    pub layers: Vec<Layer<T>>,
}

impl<T: Real> Params<T> {
    pub fn zeros(config: &NetworkConfig) -> Self {
        Params { layers: config.layer_shapes().into_iter().map(|(i, o)| Layer::zeros(i, o)).collect() }
    }

    pub fn congruent(&self, other: &Params<T>) -> bool {
        self.layers.len() == other.layers.len() && self.layers.iter().zip(&other.layers).all(|(a, b)| a.same_shape(b))
    }

    /// Every scalar, layer by layer, weights before bias.
    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.layers.iter().flat_map(|l| l.weights.iter().chain(&l.bias))
    }

    pub fn values_mut(&mut self) -> impl Iterator<Item = &mut T> {
        self.layers.iter_mut().flat_map(|l| l.weights.iter_mut().chain(l.bias.iter_mut()))
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.bias.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mutable access to the scalar at flat position `index` in `values()` order.
    pub fn get_mut(&mut self, mut index: usize) -> Option<&mut T> {
        for layer in &mut self.layers {
            let w = layer.weights.len();
            if index < w {
                return layer.weights.get_mut(index);
            }
            index -= w;
            if index < layer.bias.len() {
                return layer.bias.get_mut(index);
            }
            index -= layer.bias.len();
        }
        None
    }

    pub fn get(&self, index: usize) -> Option<T> {
        self.values().nth(index).copied()
    }
}

/// Activations retained by a forward pass for the backward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache<T> {
    input: T,
    /// Residual stream before each block and after the last (`blocks + 1` vectors).
    residual: Vec<Vec<T>>,
    /// Post-activation of the first affine map inside each block.
    hidden: Vec<Vec<T>>,
}

impl<T: Real> ForwardCache<T> {
    /// Which post-activation units are strictly positive, input layer first.
    /// Finite-difference checks use this to detect perturbations that cross a
    /// rectifier kink.
    pub fn active_units(&self) -> Vec<bool> {
        self.residual[0].iter().chain(self.hidden.iter().flatten()).map(|&v| v > T::zero()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ForwardPass<T> {
    pub logits: [f64; OUTPUT_DIM],
    pub probs: [f64; OUTPUT_DIM],
    /// Natural-log probabilities, floored at [`LOG_PROB_FLOOR`](super::LOG_PROB_FLOOR).
    pub log_probs: [f64; OUTPUT_DIM],
    pub cache: ForwardCache<T>,
}

/// Residual MLP: `h = act(W_in s + b_in)`, then per block
/// `h = h + A2 act(A1 h + c1) + c2`, then `logits = W_out h + b_out`,
/// followed by a softmax.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyNetwork<T> {
    config: NetworkConfig,
    params: Params<T>,
}

impl<T: Real> PolicyNetwork<T> {
    /// Seeded initialization, uniform in `±1/sqrt(fan_in)` for weights and biases.
    pub fn new(config: NetworkConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.init_seed);
        let layers = config.layer_shapes().into_iter().map(|(i, o)| Layer::uniform(i, o, &mut rng)).collect();
        Ok(PolicyNetwork { config, params: Params { layers } })
    }

    pub fn from_params(config: NetworkConfig, params: Params<T>) -> Result<Self> {
        config.validate()?;
        if !params.congruent(&Params::zeros(&config)) {
            return Err(Error::ShapeMismatch("parameters do not match the network configuration".into()));
        }
        Ok(PolicyNetwork { config, params })
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    pub fn params(&self) -> &Params<T> {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut Params<T> {
        &mut self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    fn block_layers(&self, block: usize) -> (&Layer<T>, &Layer<T>) {
        (&self.params.layers[1 + 2 * block], &self.params.layers[2 + 2 * block])
    }

    pub fn forward(&self, score: f64) -> Result<ForwardPass<T>> {
        if !score.is_finite() {
            return Err(Error::NonFinite("network input"));
        }
        let act = self.config.activation;
        let width = self.config.hidden_width;
        let input = T::from_f64(score);

        let mut h = vec![T::zero(); width];
        self.params.layers[0].forward_into(&[input], &mut h);
        h.iter_mut().for_each(|v| *v = act.apply(*v));

        let blocks = self.config.residual_blocks;
        let mut residual = Vec::with_capacity(blocks + 1);
        let mut hidden = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let (first, second) = self.block_layers(b);
            let mut u = vec![T::zero(); width];
            first.forward_into(&h, &mut u);
            u.iter_mut().for_each(|v| *v = act.apply(*v));
            let mut next = vec![T::zero(); width];
            second.forward_into(&u, &mut next);
            next.iter_mut().zip(&h).for_each(|(n, &x)| *n += x);
            residual.push(h);
            hidden.push(u);
            h = next;
        }

        let mut out = [T::zero(); OUTPUT_DIM];
        self.params.layers[self.params.layers.len() - 1].forward_into(&h, &mut out);
        residual.push(h);

        let logits = out.map(|v| v.to_f64());
        let (probs, log_probs) = log_softmax(&logits);
        Ok(ForwardPass { logits, probs, log_probs, cache: ForwardCache { input, residual, hidden } })
    }

    fn check_cache(&self, cache: &ForwardCache<T>) -> Result<()> {
        let blocks = self.config.residual_blocks;
        let width = self.config.hidden_width;
        let ok = cache.residual.len() == blocks + 1
            && cache.hidden.len() == blocks
            && cache.residual.iter().chain(&cache.hidden).all(|v| v.len() == width);
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("forward cache does not match this network".into()))
        }
    }

    /// Gradient of `Σ_k dlogits[k] * logit_k` with respect to every parameter.
    pub fn backward(&self, cache: &ForwardCache<T>, dlogits: [f64; OUTPUT_DIM]) -> Result<Params<T>> {
        self.check_cache(cache)?;
        let mut grads = Params::zeros(&self.config);
        let layers = &self.params.layers;
        backprop(cache, self.config.activation, dlogits, |idx, x, dy, dx| {
            layers[idx].backward_into(x, dy, &mut grads.layers[idx], dx)
        });
        Ok(grads)
    }

    /// Backward pass fused with an Adam update. Produces bit-for-bit the same
    /// parameters and optimizer state as [`backward`](Self::backward) followed
    /// by [`AdamState::step`], without allocating a gradient table.
    pub fn backward_and_step(
        &mut self,
        state: &mut AdamState<T>,
        cache: &ForwardCache<T>,
        dlogits: [f64; OUTPUT_DIM],
    ) -> Result<()> {
        self.check_cache(cache)?;
        state.check_congruent(&self.params)?;
        let coefficients = state.advance();
        let layers = &mut self.params.layers;
        let (first, second) = state.moments_mut();
        backprop(cache, self.config.activation, dlogits, |idx, x, dy, dx| {
            layers[idx].backward_update(x, dy, &mut first.layers[idx], &mut second.layers[idx], dx, &coefficients)
        });
        Ok(())
    }
}

/// Walks the network from the logits back to the input, calling
/// `visit(layer, x, dy, dx)` for every affine layer with its input `x`, the
/// upstream gradient `dy`, and (except for the input layer) the buffer that
/// must receive `Wᵀ dy`.
fn backprop<T: Real>(
    cache: &ForwardCache<T>,
    act: Activation,
    dlogits: [f64; OUTPUT_DIM],
    mut visit: impl FnMut(usize, &[T], &[T], Option<&mut [T]>),
) {
    let blocks = cache.hidden.len();
    let width = cache.residual[0].len();
    let dy = dlogits.map(T::from_f64);

    let mut dr = vec![T::zero(); width];
    visit(1 + 2 * blocks, &cache.residual[blocks], &dy, Some(&mut dr));

    let mut du = vec![T::zero(); width];
    for b in (0..blocks).rev() {
        let u = &cache.hidden[b];
        du.iter_mut().for_each(|v| *v = T::zero());
        visit(2 + 2 * b, u, &dr, Some(&mut du));
        du.iter_mut().zip(u).for_each(|(d, &y)| *d = *d * act.derivative_from_output(y));
        // The skip connection passes `dr` through; A1ᵀ dz accumulates on top.
        visit(1 + 2 * b, &cache.residual[b], &du, Some(&mut dr));
    }

    dr.iter_mut().zip(&cache.residual[0]).for_each(|(d, &y)| *d = *d * act.derivative_from_output(y));
    visit(0, &[cache.input], &dr, None);
}
