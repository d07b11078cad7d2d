//! Dense feed-forward classifier: affine layers with ReLU, a softmax
//! output and cross-entropy loss, trained by mini-batch SGD.
//!
//! A layer maps `x ↦ act(Wx + b)` with `W` stored `out x in`. Batches are
//! row-major `B x dim` buffers, so a layer computes `Z = A Wᵀ + 1bᵀ`.

use alloc::vec;
use alloc::vec::Vec;

use faer::{Accum, MatRef};
use rand::distr::Uniform;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bema::BemaConfig;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::math::{exp, ln, sqrt};
use crate::matrix::{gemm, Matrix};
use crate::prune::{dense_params, SplitResult};

/// Probabilities are floored here before taking logs.
pub const PROB_FLOOR: f64 = 1e-300;

const EVAL_CHUNK: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Activation {
    Relu,
    /// No activation; the affine output passes through.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub weights: Matrix,
    /// `None` for the bias-free first factor of a split layer.
    pub bias: Option<Vec<f64>>,
    pub activation: Activation,
}

impl Layer {
    pub fn new(weights: Matrix, bias: Option<Vec<f64>>, activation: Activation) -> Result<Self> {
        if let Some(bias) = &bias {
            if bias.len() != weights.rows() {
                return Err(Error::DimensionMismatch {
                    context: "bias length vs layer output dimension",
                    expected: weights.rows(),
                    found: bias.len(),
                });
            }
            if bias.iter().any(|b| !b.is_finite()) {
                return Err(Error::InvalidArgument("non-finite bias".into()));
            }
        }
        Ok(Self {
            weights,
            bias,
            activation,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn out_dim(&self) -> usize {
        self.weights.rows()
    }

    pub fn param_count(&self) -> usize {
        match self.bias {
            Some(_) => dense_params(self.out_dim(), self.in_dim()),
            None => self.out_dim() * self.in_dim(),
        }
    }

    // Z = A Wᵀ + b, then the activation, in place.
    fn apply(&self, input: &[f64], batch: usize, out: &mut [f64]) {
        let (din, dout) = (self.in_dim(), self.out_dim());
        let a = MatRef::from_row_major_slice(input, batch, din);
        let z = faer::MatMut::from_row_major_slice_mut(out, batch, dout);
        gemm(z, Accum::Replace, a, self.weights.view().transpose(), 1.0);
        if let Some(bias) = &self.bias {
            for row in out.chunks_exact_mut(dout) {
                for (z, b) in row.iter_mut().zip(bias) {
                    *z += b;
                }
            }
        }
        if self.activation == Activation::Relu {
            for z in out.iter_mut() {
                if *z < 0.0 {
                    *z = 0.0;
                }
            }
        }
    }
}

/// Gradient of the mean batch loss with respect to one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerGradient {
    pub weights: Matrix,
    pub bias: Option<Vec<f64>>,
}

/// Loss and training accuracy measured on one batch before the update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepStats {
    pub loss: f64,
    pub correct: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStats {
    pub mean_loss: f64,
    /// Fraction of training samples classified correctly by the network as
    /// it was when each batch was seen.
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
}

impl Network {
    /// Validates that dimensions chain and that the output layer has no
    /// activation (its logits feed the softmax).
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidArgument("network needs at least one layer".into()));
        }
        for pair in layers.windows(2) {
            if pair[1].in_dim() != pair[0].out_dim() {
                return Err(Error::DimensionMismatch {
                    context: "layer chain",
                    expected: pair[0].out_dim(),
                    found: pair[1].in_dim(),
                });
            }
        }
        if layers[layers.len() - 1].activation != Activation::None {
            return Err(Error::InvalidArgument(
                "the output layer must not have an activation".into(),
            ));
        }
        Ok(Self { layers })
    }

    /// Uniform `[−1/√n, 1/√n]` initialisation (`n` = layer input width) of
    /// all weights and biases from a seeded ChaCha8 stream. Hidden layers use
    /// ReLU.
    pub fn init(dims: &[usize], seed: u64) -> Result<Self> {
        if dims.len() < 2 || dims.contains(&0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "architecture needs at least two positive widths, got {dims:?}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let last = dims.len() - 2;
        let layers = dims
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let (din, dout) = (w[0], w[1]);
                let bound = 1.0 / sqrt(din as f64);
                let dist = Uniform::new_inclusive(-bound, bound).expect("finite bound");
                let weights: Vec<f64> = (0..din * dout).map(|_| rng.sample(dist)).collect();
                let bias: Vec<f64> = (0..dout).map(|_| rng.sample(dist)).collect();
                let activation = if k == last {
                    Activation::None
                } else {
                    Activation::Relu
                };
                Layer {
                    weights: Matrix::new(dout, din, weights).expect("finite uniform samples"),
                    bias: Some(bias),
                    activation,
                }
            })
            .collect();
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, index: usize) -> Option<&Layer> {
        self.layers.get(index)
    }

    pub fn into_layers(self) -> Vec<Layer> {
        self.layers
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].out_dim()
    }

    /// Width list `[in, h1, …, out]`.
    pub fn signature(&self) -> Vec<usize> {
        let mut dims = vec![self.input_dim()];
        dims.extend(self.layers.iter().map(Layer::out_dim));
        dims
    }

    /// Weights plus biases over all layers.
    pub fn param_count(&self) -> usize {
        self.layers.iter().map(Layer::param_count).sum()
    }

    /// Logits for one input.
    pub fn forward(&self, input: &[f64]) -> Result<Vec<f64>> {
        self.forward_batch(input, 1)
    }

    /// Logits for a row-major `batch x input_dim` buffer.
    pub fn forward_batch(&self, inputs: &[f64], batch: usize) -> Result<Vec<f64>> {
        self.check_input(inputs, batch)?;
        let mut current = inputs.to_vec();
        for layer in &self.layers {
            let mut next = vec![0.0; batch * layer.out_dim()];
            layer.apply(&current, batch, &mut next);
            current = next;
        }
        Ok(current)
    }

    fn check_input(&self, inputs: &[f64], batch: usize) -> Result<()> {
        if batch == 0 || inputs.len() != batch * self.input_dim() {
            return Err(Error::DimensionMismatch {
                context: "network input",
                expected: batch * self.input_dim(),
                found: inputs.len(),
            });
        }
        Ok(())
    }

    fn check_labels(&self, labels: &[u8]) -> Result<()> {
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= self.output_dim()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "label {bad} outside 0..{}",
                self.output_dim()
            )));
        }
        Ok(())
    }

    /// Gradients of the mean cross-entropy over the batch, without touching
    /// the parameters.
    pub fn gradients(&self, inputs: &[f64], labels: &[u8]) -> Result<(f64, Vec<LayerGradient>)> {
        let mut grads: Vec<LayerGradient> = self
            .layers
            .iter()
            .map(|l| LayerGradient {
                weights: Matrix::zeros(l.out_dim(), l.in_dim()),
                bias: l.bias.as_ref().map(|_| vec![0.0; l.out_dim()]),
            })
            .collect();
        let mut scratch = self.clone();
        let stats = scratch.backprop(inputs, labels, |k, _layer, dz, a_prev, db| {
            let g = &mut grads[k];
            gemm(g.weights.view_mut(), Accum::Replace, dz.transpose(), a_prev, 1.0);
            if let Some(b) = &mut g.bias {
                b.copy_from_slice(db);
            }
        })?;
        Ok((stats.loss, grads))
    }

    /// One SGD update `θ ← θ − τ ∇L` on the batch; returns the loss and the
    /// number of correct predictions before the update.
    pub fn sgd_step(&mut self, inputs: &[f64], labels: &[u8], tau: f64) -> Result<StepStats> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::domain("tau", tau, "tau >= 0"));
        }
        self.backprop(inputs, labels, |_k, layer, dz, a_prev, db| {
            gemm(layer.weights.view_mut(), Accum::Add, dz.transpose(), a_prev, -tau);
            if let Some(bias) = &mut layer.bias {
                for (b, g) in bias.iter_mut().zip(db) {
                    *b -= tau * g;
                }
            }
        })
    }

    /// Forward pass, softmax/cross-entropy, then backward from the last layer
    /// to the first. For each layer `sink(k, layer, dZ, A_prev, db)` is called
    /// after `dA_prev = dZ W` has been taken from the current weights, so the
    /// sink may update the layer in place.
    fn backprop<F>(&mut self, inputs: &[f64], labels: &[u8], mut sink: F) -> Result<StepStats>
    where
        F: FnMut(usize, &mut Layer, MatRef<'_, f64>, MatRef<'_, f64>, &[f64]),
    {
        let batch = labels.len();
        self.check_input(inputs, batch)?;
        self.check_labels(labels)?;

        let mut acts: Vec<Vec<f64>> = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let prev: &[f64] = acts.last().map_or(inputs, Vec::as_slice);
            let mut out = vec![0.0; batch * layer.out_dim()];
            layer.apply(prev, batch, &mut out);
            acts.push(out);
        }

        let classes = self.output_dim();
        let mut dz = acts.pop().expect("at least one layer");
        let mut loss = 0.0;
        let mut correct = 0;
        let inv_b = 1.0 / batch as f64;
        for (row, &label) in dz.chunks_exact_mut(classes).zip(labels) {
            if argmax(row) == label as usize {
                correct += 1;
            }
            softmax_in_place(row);
            loss -= ln(row[label as usize].max(PROB_FLOOR));
            row[label as usize] -= 1.0;
            row.iter_mut().for_each(|v| *v *= inv_b);
        }
        loss *= inv_b;

        let mut db = Vec::new();
        for k in (0..self.layers.len()).rev() {
            let layer = &self.layers[k];
            let (din, dout) = (layer.in_dim(), layer.out_dim());
            let prev_relu = k > 0 && self.layers[k - 1].activation == Activation::Relu;
            let a_prev: &[f64] = if k == 0 { inputs } else { &acts[k - 1] };

            // dA_prev = dZ W, masked by the previous layer's ReLU.
            let next_dz = if k > 0 {
                let mut da = vec![0.0; batch * din];
                gemm(
                    faer::MatMut::from_row_major_slice_mut(&mut da, batch, din),
                    Accum::Replace,
                    MatRef::from_row_major_slice(&dz, batch, dout),
                    layer.weights.view(),
                    1.0,
                );
                if prev_relu {
                    for (d, &a) in da.iter_mut().zip(a_prev) {
                        if a <= 0.0 {
                            *d = 0.0;
                        }
                    }
                }
                Some(da)
            } else {
                None
            };

            db.clear();
            db.resize(dout, 0.0);
            for row in dz.chunks_exact(dout) {
                for (g, v) in db.iter_mut().zip(row) {
                    *g += v;
                }
            }
            sink(
                k,
                &mut self.layers[k],
                MatRef::from_row_major_slice(&dz, batch, dout),
                MatRef::from_row_major_slice(a_prev, batch, din),
                &db,
            );
            if let Some(next) = next_dz {
                dz = next;
            }
        }
        Ok(StepStats { loss, correct })
    }

    /// Replaces layer `index` by the two factors of `result`: the first with
    /// no activation, the second carrying the bias and the original
    /// activation.
    pub fn replace_layer(&mut self, index: usize, result: SplitResult) -> Result<()> {
        let old = self.layers.get(index).ok_or(Error::InvalidArgument(alloc::format!(
            "layer index {index} out of range"
        )))?;
        if result.w_first.cols() != old.in_dim() {
            return Err(Error::DimensionMismatch {
                context: "split first factor input",
                expected: old.in_dim(),
                found: result.w_first.cols(),
            });
        }
        if result.w_second.rows() != old.out_dim() || result.bias.len() != old.out_dim() {
            return Err(Error::DimensionMismatch {
                context: "split second factor output",
                expected: old.out_dim(),
                found: result.w_second.rows(),
            });
        }
        if result.w_second.cols() != result.w_first.rows() {
            return Err(Error::DimensionMismatch {
                context: "split inner rank",
                expected: result.w_first.rows(),
                found: result.w_second.cols(),
            });
        }
        let activation = old.activation;
        let had_bias = old.bias.is_some();
        let first = Layer {
            weights: result.w_first,
            bias: None,
            activation: Activation::None,
        };
        let second = Layer {
            weights: result.w_second,
            bias: had_bias.then_some(result.bias),
            activation,
        };
        self.layers.splice(index..=index, [first, second]);
        Ok(())
    }
}

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn softmax_in_place(row: &mut [f64]) {
    let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in row.iter_mut() {
        *v = exp(*v - max);
        sum += *v;
    }
    for v in row.iter_mut() {
        *v /= sum;
    }
}

/// Numerically stable softmax (max subtracted before exponentiating).
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let mut out = logits.to_vec();
    softmax_in_place(&mut out);
    out
}

/// Mean of `−ln p[label]` over a row-major `batch x classes` buffer of
/// probabilities.
pub fn cross_entropy(probs: &[f64], classes: usize, labels: &[u8]) -> Result<f64> {
    if classes == 0 || probs.len() != labels.len() * classes || labels.is_empty() {
        return Err(Error::DimensionMismatch {
            context: "cross-entropy probabilities",
            expected: labels.len() * classes,
            found: probs.len(),
        });
    }
    let mut total = 0.0;
    for (row, &label) in probs.chunks_exact(classes).zip(labels) {
        let p = *row.get(label as usize).ok_or(Error::InvalidArgument(alloc::format!(
            "label {label} outside 0..{classes}"
        )))?;
        total -= ln(p.max(PROB_FLOOR));
    }
    Ok(total / labels.len() as f64)
}

/// Fraction of samples whose arg-max logit equals the label.
pub fn evaluate(net: &Network, data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("cannot evaluate on an empty dataset".into()));
    }
    let classes = net.output_dim();
    let mut correct = 0usize;
    let mut start = 0;
    while start < data.len() {
        let end = (start + EVAL_CHUNK).min(data.len());
        let rows = end - start;
        let logits =
            net.forward_batch(&data.images()[start * data.dim()..end * data.dim()], rows)?;
        correct += logits
            .chunks_exact(classes)
            .zip(&data.labels()[start..end])
            .filter(|(row, &label)| argmax(row) == label as usize)
            .count();
        start = end;
    }
    Ok(correct as f64 / data.len() as f64)
}

/// Per-epoch RNG: one ChaCha8 stream per epoch so any epoch's shuffle can be
/// reproduced from `(seed, epoch)` alone.
pub fn epoch_rng(seed: u64, epoch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(epoch as u64 + 1);
    rng
}

/// One pass of mini-batch SGD over `data` in an order shuffled by `rng`.
pub fn train_epoch<R: Rng + ?Sized>(
    net: &mut Network,
    data: &Dataset,
    batch_size: usize,
    tau: f64,
    rng: &mut R,
) -> Result<EpochStats> {
    if batch_size == 0 {
        return Err(Error::InvalidArgument("batch size must be positive".into()));
    }
    if data.is_empty() {
        return Err(Error::InvalidArgument("cannot train on an empty dataset".into()));
    }
    if data.dim() != net.input_dim() {
        return Err(Error::DimensionMismatch {
            context: "dataset dimension vs network input",
            expected: net.input_dim(),
            found: data.dim(),
        });
    }
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(rng);
    let dim = data.dim();
    let mut inputs = Vec::with_capacity(batch_size * dim);
    let mut labels = Vec::with_capacity(batch_size);
    let mut loss_sum = 0.0;
    let mut correct = 0usize;
    for chunk in order.chunks(batch_size) {
        inputs.clear();
        labels.clear();
        for &i in chunk {
            inputs.extend_from_slice(data.image(i));
            labels.push(data.labels()[i]);
        }
        let stats = net.sgd_step(&inputs, &labels, tau)?;
        loss_sum += stats.loss * chunk.len() as f64;
        correct += stats.correct;
    }
    Ok(EpochStats {
        mean_loss: loss_sum / data.len() as f64,
        accuracy: correct as f64 / data.len() as f64,
    })
}

/// Hyper-parameters of a training run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct TrainConfig {
    /// SGD step size `τ`.
    pub step_size: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
    /// Epochs between analyse-and-split cycles (`ℓ`).
    pub split_period: usize,
    /// Fraction of sub-edge singular values dropped per split.
    pub removal_fraction: f64,
    /// Goodness-of-fit threshold `γ`.
    pub gamma: f64,
    pub bema: BemaConfig,
    pub split_enabled: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            step_size: 0.05,
            epochs: 10,
            batch_size: 64,
            seed: 0,
            split_period: 3,
            removal_fraction: 0.45,
            gamma: 0.012,
            bema: BemaConfig::default(),
            split_enabled: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::domain("step_size", self.step_size, "step_size > 0"));
        }
        if self.split_period == 0 {
            return Err(Error::InvalidArgument("split_period must be at least 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch_size must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.removal_fraction) {
            return Err(Error::domain(
                "removal_fraction",
                self.removal_fraction,
                "0 <= removal_fraction < 1",
            ));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::domain("gamma", self.gamma, "0 <= gamma < 1"));
        }
        BemaConfig::new(self.bema.alpha(), self.bema.beta())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_bounds_and_determinism() {
        let a = Network::init(&[784, 1000, 10], 7).unwrap();
        assert_eq!(a.layers().len(), 2);
        let bound = 1.0 / 28.0;
        assert!(a.layers()[0].weights.as_slice().iter().all(|v| v.abs() <= bound));
        assert!(a.layers()[0]
            .bias
            .as_ref()
            .unwrap()
            .iter()
            .all(|v| v.abs() <= bound));
        assert_eq!(a.layers()[0].activation, Activation::Relu);
        assert_eq!(a.layers()[1].activation, Activation::None);
        let b = Network::init(&[784, 1000, 10], 7).unwrap();
        assert_eq!(a, b);
        let c = Network::init(&[784, 1000, 10], 8).unwrap();
        assert_ne!(a, c);

        let small = Network::init(&[5, 3], 1).unwrap();
        let b5 = 1.0 / libm::sqrt(5.0);
        assert!(small.layers()[0].weights.as_slice().iter().all(|v| v.abs() <= b5));
        assert!((b5 - 0.4472).abs() < 1e-4);
        assert!(Network::init(&[5], 1).is_err());
        assert!(Network::init(&[5, 0, 2], 1).is_err());
    }

    fn single(weights: Matrix, bias: Vec<f64>) -> Network {
        Network::new(vec![Layer::new(weights, Some(bias), Activation::None).unwrap()]).unwrap()
    }

    #[test]
    fn forward_examples() {
        let zero = Network::new(vec![
            Layer::new(Matrix::zeros(4, 3), Some(vec![0.0; 4]), Activation::Relu).unwrap(),
            Layer::new(Matrix::zeros(2, 4), Some(vec![0.0; 2]), Activation::None).unwrap(),
        ])
        .unwrap();
        assert_eq!(zero.forward(&[1.0, -2.0, 3.0]).unwrap(), vec![0.0, 0.0]);

        let id = single(Matrix::identity(3), vec![0.0; 3]);
        assert_eq!(id.forward(&[1.0, -2.0, 3.0]).unwrap(), vec![1.0, -2.0, 3.0]);

        let lin = single(
            Matrix::from_fn(2, 3, |i, j| (i as f64 + 1.0) * (j as f64 - 1.0)),
            vec![0.0; 2],
        );
        let x = [0.3, -0.7, 1.1];
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let y = lin.forward(&x).unwrap();
        let y2 = lin.forward(&x2).unwrap();
        for (a, b) in y.iter().zip(&y2) {
            assert!((2.0 * a - b).abs() < 1e-14);
        }
        assert!(id.forward(&[1.0]).is_err());
    }

    #[test]
    fn softmax_examples() {
        assert_eq!(softmax(&[0.0, 0.0]), vec![0.5, 0.5]);
        let big = softmax(&[1000.0, 0.0]);
        assert!((big[0] - 1.0).abs() < 1e-15 && big[1] >= 0.0 && big[1] < 1e-300);
        let p = softmax(&[core::f64::consts::LN_2, 0.0]);
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cross_entropy_examples() {
        assert_eq!(cross_entropy(&[0.0, 1.0, 0.0], 3, &[1]).unwrap(), 0.0);
        let uniform = vec![0.1; 10];
        assert!((cross_entropy(&uniform, 10, &[4]).unwrap() - libm::log(10.0)).abs() < 1e-12);
        let ce = cross_entropy(&[2.0 / 3.0, 1.0 / 3.0], 2, &[1]).unwrap();
        assert!((ce - libm::log(3.0)).abs() < 1e-12);
        // Zero probability is floored, not infinite.
        assert!(cross_entropy(&[1.0, 0.0], 2, &[1]).unwrap().is_finite());
        assert!(cross_entropy(&[1.0, 0.0], 2, &[2]).is_err());
    }

    #[test]
    fn zero_step_leaves_network_unchanged() {
        let mut net = Network::init(&[4, 3, 2], 3).unwrap();
        let before = net.clone();
        let x = [0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.8];
        net.sgd_step(&x, &[0, 1], 0.0).unwrap();
        assert_eq!(net, before);
    }

    #[test]
    fn evaluate_examples() {
        // Bias makes class 2 win for every input.
        let net = single(Matrix::zeros(3, 2), vec![0.0, 0.0, 1.0]);
        let all_two = Dataset::new(vec![0.5; 8], vec![2; 4], 2, 3, crate::Split::Test).unwrap();
        assert_eq!(evaluate(&net, &all_two).unwrap(), 1.0);
        let none = Dataset::new(vec![0.5; 8], vec![0, 1, 0, 1], 2, 3, crate::Split::Test).unwrap();
        assert_eq!(evaluate(&net, &none).unwrap(), 0.0);
        // Ties resolve to the lowest class index.
        let tie = single(Matrix::zeros(3, 2), vec![0.0; 3]);
        assert_eq!(evaluate(&tie, &none.head(1)).unwrap(), 1.0);
    }

    #[test]
    fn param_count_closed_form() {
        let net = Network::init(&[2, 2], 0).unwrap();
        assert_eq!(net.param_count(), 6);
        let net = Network::init(&[7, 5, 3], 0).unwrap();
        assert_eq!(net.param_count(), 7 * 5 + 5 + 5 * 3 + 3);
        assert_eq!(net.signature(), vec![7, 5, 3]);
    }

    #[test]
    fn network_rejects_broken_chains() {
        let a = Layer::new(Matrix::zeros(3, 2), Some(vec![0.0; 3]), Activation::Relu).unwrap();
        let b = Layer::new(Matrix::zeros(2, 4), Some(vec![0.0; 2]), Activation::None).unwrap();
        assert!(Network::new(vec![a.clone(), b]).is_err());
        assert!(Network::new(vec![a]).is_err());
        assert!(Layer::new(Matrix::zeros(3, 2), Some(vec![0.0; 2]), Activation::Relu).is_err());
        let no_bias = Layer::new(Matrix::zeros(3, 2), None, Activation::None).unwrap();
        assert_eq!(no_bias.param_count(), 6);
    }

    #[test]
    fn train_config_validation() {
        assert!(TrainConfig::default().validate().is_ok());
        let bad = TrainConfig {
            split_period: 0,
            ..TrainConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = TrainConfig {
            step_size: 0.0,
            ..TrainConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = TrainConfig {
            removal_fraction: 1.0,
            ..TrainConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
