//! Network representation, synthetic dataset generation, and the two-part
//! codelength objective with its gradients and the latent-state energy.
//!
//! Conventions used throughout the crate:
//!
//! * empirical risk `R̂(θ) = (1/N) Σᵢ ‖yᵢ − ŷᵢ‖² / (2σ²)` — Gaussian
//!   negative log-likelihood with additive constants dropped;
//! * model codelength `L(θ) = Σ_l (α_l/2) ‖θ_l‖²_F` — negative log of the
//!   isotropic Gaussian prior, constant dropped;
//! * two-part codelength `Ĉ(θ) = R̂(θ) + L(θ)/N`, the objective the PC
//!   engine descends blockwise and every report carries.

mod codelength;
mod energy;

pub use codelength::{
    codelength_gradient, empirical_risk, gradient_norms, model_codelength, per_sample_losses,
    risk_gradient, surrogate_risk, two_part_codelength, CodelengthReport,
};
pub use energy::{latent_gradients, pcn_energy, LatentState};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gaussian_sample, Matrix, RngStream};

/// Hidden-layer nonlinearity. The output layer is always identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    Identity,
    Softplus,
}

impl Activation {
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Identity => z,
            // max(z,0) + ln(1+e^{-|z|}) is the overflow-safe softplus
            Activation::Softplus => z.max(0.0) + (-z.abs()).exp().ln_1p(),
        }
    }

    /// Derivative at `z`; for softplus this is the logistic sigmoid, which
    /// is the numerically stable form.
    pub fn derivative(self, z: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Softplus => {
                if z >= 0.0 {
                    1.0 / (1.0 + (-z).exp())
                } else {
                    let e = z.exp();
                    e / (1.0 + e)
                }
            }
        }
    }
}

/// Layer sizes `(d₀, …, d_L)` plus the hidden activation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Architecture {
    layer_dims: Vec<usize>,
    activation: Activation,
}

impl Architecture {
    pub fn new(layer_dims: Vec<usize>, activation: Activation) -> Result<Self> {
        if layer_dims.len() < 2 {
            return Err(Error::UnsupportedArchitecture(format!(
                "need at least one layer, got dims {layer_dims:?}"
            )));
        }
        if layer_dims.iter().any(|&d| d == 0) {
            return Err(Error::UnsupportedArchitecture("zero-width layer".into()));
        }
        Ok(Architecture { layer_dims, activation })
    }

    pub fn dims(&self) -> &[usize] {
        &self.layer_dims
    }

    /// Number of weight layers L.
    pub fn depth(&self) -> usize {
        self.layer_dims.len() - 1
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    /// Activation applied after weight layer `l` (1-based): hidden layers
    /// use the configured nonlinearity, the output layer is identity.
    pub fn activation_at(&self, layer: usize) -> Activation {
        if layer == self.depth() {
            Activation::Identity
        } else {
            self.activation
        }
    }

    pub fn param_count(&self) -> usize {
        (1..=self.depth()).map(|l| self.layer_dims[l] * self.layer_dims[l - 1]).sum()
    }
}

/// Per-layer weight matrices θ = (θ₁, …, θ_L); layer l has shape
/// d_l × d_{l−1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    layers: Vec<Matrix>,
}

impl NetworkParams {
    pub fn new(arch: &Architecture, layers: Vec<Matrix>) -> Result<Self> {
        if layers.len() != arch.depth() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} layers, got {}",
                arch.depth(),
                layers.len()
            )));
        }
        for (l, m) in layers.iter().enumerate() {
            let (dr, dc) = (arch.dims()[l + 1], arch.dims()[l]);
            if m.rows() != dr || m.cols() != dc {
                return Err(Error::DimensionMismatch(format!(
                    "layer {}: expected {}x{}, got {}x{}",
                    l + 1,
                    dr,
                    dc,
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_finite() {
                return Err(Error::NonFiniteValue("NetworkParams entries"));
            }
        }
        Ok(NetworkParams { layers })
    }

    pub fn zeros(arch: &Architecture) -> Self {
        let layers =
            (1..=arch.depth()).map(|l| Matrix::zeros(arch.dims()[l], arch.dims()[l - 1])).collect();
        NetworkParams { layers }
    }

    /// i.i.d. N(0, std²) initialization.
    pub fn gaussian_init(arch: &Architecture, rng: &mut RngStream, std: f64) -> Self {
        let layers = (1..=arch.depth())
            .map(|l| gaussian_sample(rng, arch.dims()[l], arch.dims()[l - 1], std))
            .collect();
        NetworkParams { layers }
    }

    pub fn layers(&self) -> &[Matrix] {
        &self.layers
    }

    pub fn layer(&self, l: usize) -> &Matrix {
        &self.layers[l]
    }

    pub fn layer_mut(&mut self, l: usize) -> &mut Matrix {
        &mut self.layers[l]
    }

    pub fn set_layer(&mut self, l: usize, m: Matrix) {
        self.layers[l] = m;
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn is_finite(&self) -> bool {
        self.layers.iter().all(Matrix::is_finite)
    }

    /// Concatenates all entries (layer by layer, row-major) — used by the
    /// finite-difference oracles.
    pub fn flatten(&self) -> Vec<f64> {
        self.layers.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(arch: &Architecture, flat: &[f64]) -> Result<Self> {
        if flat.len() != arch.param_count() {
            return Err(Error::DimensionMismatch(format!(
                "flat length {} vs {} params",
                flat.len(),
                arch.param_count()
            )));
        }
        let mut layers = Vec::with_capacity(arch.depth());
        let mut off = 0;
        for l in 1..=arch.depth() {
            let (r, c) = (arch.dims()[l], arch.dims()[l - 1]);
            layers.push(Matrix::from_vec(r, c, flat[off..off + r * c].to_vec())?);
            off += r * c;
        }
        Ok(NetworkParams { layers })
    }
}

/// Per-layer Gaussian prior precisions α_l (1/weight²) and the observation
/// noise variance σ² (output²) of the likelihood.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianPrior {
    pub alpha: Vec<f64>,
    pub noise_var: f64,
}

impl GaussianPrior {
    pub fn new(alpha: Vec<f64>, noise_var: f64) -> Result<Self> {
        if alpha.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::InvalidConfig(format!("alpha must be positive: {alpha:?}")));
        }
        if !(noise_var > 0.0) || !noise_var.is_finite() {
            return Err(Error::InvalidConfig(format!("noise_var must be positive: {noise_var}")));
        }
        Ok(GaussianPrior { alpha, noise_var })
    }

    /// Same precision for every layer.
    pub fn uniform(depth: usize, alpha: f64, noise_var: f64) -> Result<Self> {
        GaussianPrior::new(vec![alpha; depth], noise_var)
    }
}

/// A regression dataset with its generating teacher (when synthetic).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub inputs: Matrix,
    pub targets: Matrix,
    pub teacher: Option<NetworkParams>,
    pub noise_std: f64,
}

impl Dataset {
    pub fn new(inputs: Matrix, targets: Matrix) -> Result<Self> {
        if inputs.rows() != targets.rows() || inputs.rows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "dataset rows: inputs {} vs targets {}",
                inputs.rows(),
                targets.rows()
            )));
        }
        Ok(Dataset { inputs, targets, teacher: None, noise_std: 0.0 })
    }

    pub fn len(&self) -> usize {
        self.inputs.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Draws a synthetic dataset from a ground-truth network of the same
/// architecture: teacher weights ~ N(0, teacher_std²), inputs ~ N(0, I),
/// targets = teacher forward pass plus N(0, noise_std²) noise.
///
/// Draw order is fixed (teacher, then inputs, then noise) so a given
/// substream always reproduces the same dataset.
pub fn generate_dataset(
    rng: &mut RngStream,
    arch: &Architecture,
    n: usize,
    noise_std: f64,
    teacher_std: f64,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::InvalidConfig("dataset size must be at least 1".into()));
    }
    let teacher = NetworkParams::gaussian_init(arch, rng, teacher_std);
    let inputs = gaussian_sample(rng, n, arch.input_dim(), 1.0);
    let clean = forward_batch(arch, &teacher, &inputs)?;
    let noise = gaussian_sample(rng, n, arch.output_dim(), noise_std);
    let targets = clean.last().unwrap().add(&noise)?;
    Ok(Dataset { inputs, targets, teacher: Some(teacher), noise_std })
}

/// Forward pass for a single input: returns all activations
/// `a₀ = input, a_l = f(θ_l a_{l−1})`.
pub fn forward(arch: &Architecture, params: &NetworkParams, input: &[f64]) -> Result<Vec<Vec<f64>>> {
    if input.len() != arch.input_dim() {
        return Err(Error::DimensionMismatch(format!(
            "input length {} vs d0 {}",
            input.len(),
            arch.input_dim()
        )));
    }
    let mut acts = Vec::with_capacity(arch.depth() + 1);
    acts.push(input.to_vec());
    for l in 1..=arch.depth() {
        let z = params.layer(l - 1).mul_vec(acts.last().unwrap())?;
        let f = arch.activation_at(l);
        acts.push(z.into_iter().map(|v| f.apply(v)).collect());
    }
    Ok(acts)
}

/// Batched forward pass: activation l is an N × d_l matrix (samples in
/// rows). Entry 0 is the input batch itself.
pub fn forward_batch(
    arch: &Architecture,
    params: &NetworkParams,
    inputs: &Matrix,
) -> Result<Vec<Matrix>> {
    if inputs.cols() != arch.input_dim() {
        return Err(Error::DimensionMismatch(format!(
            "input cols {} vs d0 {}",
            inputs.cols(),
            arch.input_dim()
        )));
    }
    let mut acts = Vec::with_capacity(arch.depth() + 1);
    acts.push(inputs.clone());
    for l in 1..=arch.depth() {
        let z = acts.last().unwrap().mul_tr(params.layer(l - 1))?;
        let f = arch.activation_at(l);
        acts.push(z.map(|v| f.apply(v)));
    }
    Ok(acts)
}

/// Pre-activations `z_l = a_{l−1} θ_lᵀ` for every layer, batched.
pub(crate) fn preactivations_batch(
    arch: &Architecture,
    params: &NetworkParams,
    inputs: &Matrix,
) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let mut acts = Vec::with_capacity(arch.depth() + 1);
    let mut pre = Vec::with_capacity(arch.depth());
    acts.push(inputs.clone());
    for l in 1..=arch.depth() {
        let z = acts.last().unwrap().mul_tr(params.layer(l - 1))?;
        let f = arch.activation_at(l);
        acts.push(z.map(|v| f.apply(v)));
        pre.push(z);
    }
    Ok((acts, pre))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_chain() -> (Architecture, NetworkParams) {
        let arch = Architecture::new(vec![1, 1, 1], Activation::Identity).unwrap();
        let params = NetworkParams::new(
            &arch,
            vec![
                Matrix::from_vec(1, 1, vec![2.0]).unwrap(),
                Matrix::from_vec(1, 1, vec![3.0]).unwrap(),
            ],
        )
        .unwrap();
        (arch, params)
    }

    #[test]
    fn scalar_chain_forward() {
        // θ₁=[[2]], θ₂=[[3]], input (1) → activations (1),(2),(6)
        let (arch, params) = scalar_chain();
        let acts = forward(&arch, &params, &[1.0]).unwrap();
        assert_eq!(acts, vec![vec![1.0], vec![2.0], vec![6.0]]);
    }

    #[test]
    fn softplus_hidden_at_zero_is_ln2() {
        let arch = Architecture::new(vec![1, 1], Activation::Softplus).unwrap();
        // single layer: output activation is identity, so use a 2-layer net
        let arch2 = Architecture::new(vec![1, 1, 1], Activation::Softplus).unwrap();
        let params = NetworkParams::new(
            &arch2,
            vec![
                Matrix::from_vec(1, 1, vec![0.0]).unwrap(),
                Matrix::from_vec(1, 1, vec![1.0]).unwrap(),
            ],
        )
        .unwrap();
        let acts = forward(&arch2, &params, &[5.0]).unwrap();
        assert!((acts[1][0] - 2.0f64.ln()).abs() < 1e-15);
        drop(arch);
    }

    #[test]
    fn zero_input_linear_gives_zero_activations() {
        let (arch, params) = scalar_chain();
        let acts = forward(&arch, &params, &[0.0]).unwrap();
        assert!(acts.iter().all(|a| a.iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn dataset_identity_teacher_no_noise() {
        // 1→1 identity teacher with zero noise must reproduce the inputs
        let arch = Architecture::new(vec![1, 1], Activation::Identity).unwrap();
        let mut rng = RngStream::new(0);
        let mut ds = generate_dataset(&mut rng, &arch, 50, 0.0, 1.0).unwrap();
        // overwrite the drawn teacher with the exact identity and rebuild targets
        let teacher = NetworkParams::new(&arch, vec![Matrix::identity(1)]).unwrap();
        ds.targets = forward_batch(&arch, &teacher, &ds.inputs).unwrap().pop().unwrap();
        ds.teacher = Some(teacher);
        assert_eq!(ds.inputs, ds.targets);
    }

    #[test]
    fn table1_shape_dataset() {
        let arch = Architecture::new(vec![2, 2, 1], Activation::Identity).unwrap();
        let mut rng = RngStream::new(42);
        let ds = generate_dataset(&mut rng, &arch, 100, 0.1, 1.0).unwrap();
        assert_eq!(ds.len(), 100);
        assert_eq!(ds.targets.cols(), 1);
    }

    #[test]
    fn dataset_generation_is_deterministic() {
        let arch = Architecture::new(vec![2, 2, 1], Activation::Identity).unwrap();
        let a = generate_dataset(&mut RngStream::new(42), &arch, 20, 0.1, 1.0).unwrap();
        let b = generate_dataset(&mut RngStream::new(42), &arch, 20, 0.1, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forward_rejects_bad_input_length() {
        let (arch, params) = scalar_chain();
        assert!(forward(&arch, &params, &[1.0, 2.0]).is_err());
    }
}
