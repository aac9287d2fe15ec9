//! Latent batches for generative models: Gaussian, Bernoulli, and the two
//! photonic kinds.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::formats::kv::{self, KeyValues};
use crate::formats::qls::{Payload, QlsBatch};
use crate::interferometer::{build_unitary, CircuitSpec};
use crate::rng;
use crate::sampler::{sample_boson, sample_distinguishable, InputSpec, SampleBatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatentKind {
    Gaussian,
    Bernoulli,
    Distinguishable,
    Boson,
}

impl LatentKind {
    pub fn is_photonic(self) -> bool {
        matches!(self, LatentKind::Distinguishable | LatentKind::Boson)
    }
}

impl fmt::Display for LatentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatentKind::Gaussian => "gaussian",
            LatentKind::Bernoulli => "bernoulli",
            LatentKind::Distinguishable => "dist",
            LatentKind::Boson => "boson",
        })
    }
}

impl FromStr for LatentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(LatentKind::Gaussian),
            "bernoulli" => Ok(LatentKind::Bernoulli),
            "dist" | "distinguishable" => Ok(LatentKind::Distinguishable),
            "boson" => Ok(LatentKind::Boson),
            other => Err(Error::Input(format!("unknown latent kind {other:?}"))),
        }
    }
}

/// Whether a photonic batch reuses the given circuit or redraws it from the
/// batch seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitPolicy {
    Fixed,
    PerSeed,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CenteringPolicy {
    None,
    BatchMean,
    Fixed(Vec<f64>),
}

/// Where a photonic batch came from.
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonicProvenance {
    pub circuit: CircuitSpec,
    pub input: InputSpec,
    pub circuit_policy: CircuitPolicy,
    pub attempts: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatentBatch {
    kind: LatentKind,
    dim: usize,
    seed: u64,
    values: Vec<f64>,
    offset: Option<Vec<f64>>,
    provenance: Option<PhotonicProvenance>,
}

impl LatentBatch {
    pub fn kind(&self) -> LatentKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Row-major `count × dim` values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_centered(&self) -> bool {
        self.offset.is_some()
    }

    /// The vector subtracted from every row, if centered.
    pub fn offset(&self) -> Option<&[f64]> {
        self.offset.as_deref()
    }

    pub fn provenance(&self) -> Option<&PhotonicProvenance> {
        self.provenance.as_ref()
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.dim];
        for row in self.values.chunks(self.dim) {
            for (m, x) in means.iter_mut().zip(row) {
                *m += x;
            }
        }
        let n = self.count().max(1) as f64;
        means.iter_mut().for_each(|m| *m /= n);
        means
    }

    /// Subtracts an offset from every row and records it. Centering an
    /// already centered batch composes the offsets.
    pub fn center(&self, policy: &CenteringPolicy) -> Result<LatentBatch> {
        let offset = match policy {
            CenteringPolicy::None => return Ok(self.clone()),
            CenteringPolicy::BatchMean => self.column_means(),
            CenteringPolicy::Fixed(v) => {
                if v.len() != self.dim {
                    return Err(Error::Dimension(format!("offset of length {} for dimension {}", v.len(), self.dim)));
                }
                v.clone()
            }
        };
        let mut out = self.clone();
        for row in out.values.chunks_mut(self.dim) {
            for (x, o) in row.iter_mut().zip(&offset) {
                *x -= o;
            }
        }
        out.offset = Some(match &self.offset {
            Some(prev) => prev.iter().zip(&offset).map(|(a, b)| a + b).collect(),
            None => offset,
        });
        Ok(out)
    }

    /// Adds the recorded offset back.
    pub fn uncenter(&self) -> LatentBatch {
        let mut out = self.clone();
        if let Some(offset) = out.offset.take() {
            for row in out.values.chunks_mut(self.dim) {
                for (x, o) in row.iter_mut().zip(&offset) {
                    *x += o;
                }
            }
        }
        out
    }

    /// True when all values are integers and no offset was applied.
    pub fn is_integer_valued(&self) -> bool {
        self.offset.is_none()
            && matches!(self.kind, LatentKind::Bernoulli | LatentKind::Distinguishable | LatentKind::Boson)
    }

    pub fn to_qls_f32(&self) -> QlsBatch {
        let payload = Payload::F32(self.values.iter().map(|&x| x as f32).collect());
        QlsBatch::new(self.count(), self.dim, payload).expect("consistent shape")
    }

    pub fn to_qls_i32(&self) -> Result<QlsBatch> {
        if !self.is_integer_valued() {
            return Err(Error::Input(format!(
                "{} batch (centered: {}) is not integer valued",
                self.kind,
                self.is_centered()
            )));
        }
        let payload = Payload::I32(self.values.iter().map(|&x| x as i32).collect());
        QlsBatch::new(self.count(), self.dim, payload)
    }

    /// Sidecar record describing how the batch was made.
    pub fn metadata(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.set("kind", self.kind)
            .set("dim", self.dim)
            .set("count", self.count())
            .set("seed", self.seed)
            .set("centered", self.is_centered());
        if let Some(offset) = &self.offset {
            kv.set("offset", kv::join(offset));
        }
        if let Some(p) = &self.provenance {
            let rate = if p.attempts == 0 { 1.0 } else { self.count() as f64 / p.attempts as f64 };
            kv.set(
                "circuit_policy",
                match p.circuit_policy {
                    CircuitPolicy::Fixed => "fixed",
                    CircuitPolicy::PerSeed => "per-seed",
                },
            );
            for (k, v) in p.circuit.to_key_values().iter() {
                kv.set(format!("circuit.{k}"), v);
            }
            sampler_metadata(&mut kv, &p.input, p.attempts, rate);
        }
        kv
    }
}

/// Keys shared by every photonic sidecar.
pub fn sampler_metadata(kv: &mut KeyValues, input: &InputSpec, attempts: u64, acceptance_rate: f64) {
    kv.set("photons", input.photons())
        .set("input_modes", kv::join(input.input_modes()))
        .set("placement", input.placement())
        .set("eta", input.transmission())
        .set("postselect_min", input.postselect_min())
        .set("attempts", attempts)
        .set("acceptance_rate", acceptance_rate);
}

fn check_shape(dim: usize, count: usize) -> Result<()> {
    if dim == 0 || count == 0 {
        return Err(Error::Input(format!("latent batch needs dim and count >= 1, got {dim}x{count}")));
    }
    Ok(())
}

fn per_row<F>(dim: usize, count: usize, seed: u64, mut draw: F) -> Vec<f64>
where
    F: FnMut(&mut rng::StreamRng) -> f64,
{
    let mut values = Vec::with_capacity(dim * count);
    for r in 0..count {
        let mut rng = rng::stream(seed, r as u64);
        values.extend((0..dim).map(|_| draw(&mut rng)));
    }
    values
}

/// i.i.d. standard normal entries.
pub fn gen_gaussian(dim: usize, count: usize, seed: u64) -> Result<LatentBatch> {
    check_shape(dim, count)?;
    Ok(LatentBatch {
        kind: LatentKind::Gaussian,
        dim,
        seed,
        values: per_row(dim, count, seed, |r| StandardNormal.sample(r)),
        offset: None,
        provenance: None,
    })
}

/// i.i.d. fair bits.
pub fn gen_bernoulli(dim: usize, count: usize, seed: u64) -> Result<LatentBatch> {
    check_shape(dim, count)?;
    Ok(LatentBatch {
        kind: LatentKind::Bernoulli,
        dim,
        seed,
        values: per_row(dim, count, seed, |r| f64::from(u8::from(r.random::<bool>()))),
        offset: None,
        provenance: None,
    })
}

/// Photon-count latents from a boson or distinguishable sampler.
///
/// With [`CircuitPolicy::PerSeed`] the circuit is redrawn from a seed derived
/// from `seed`; with [`CircuitPolicy::Fixed`] it is used as given. The circuit
/// actually used is recorded in the provenance.
pub fn gen_photonic(
    kind: LatentKind,
    circuit: &CircuitSpec,
    input: &InputSpec,
    count: usize,
    seed: u64,
    policy: CircuitPolicy,
) -> Result<LatentBatch> {
    if !kind.is_photonic() {
        return Err(Error::Input(format!("{kind} is not a photonic latent")));
    }
    if circuit.modes() != input.modes() {
        return Err(Error::Dimension(format!(
            "latent dimension {} differs from circuit modes {}",
            input.modes(),
            circuit.modes()
        )));
    }
    check_shape(circuit.modes(), count)?;
    let circuit = match policy {
        CircuitPolicy::Fixed => circuit.clone(),
        CircuitPolicy::PerSeed => circuit.reseeded(rng::derive_seed(seed, 1))?,
    };
    let u = build_unitary(&circuit)?;
    let batch: SampleBatch = match kind {
        LatentKind::Boson => sample_boson(&u, input, count, seed)?,
        _ => sample_distinguishable(&u, input, count, seed)?,
    };
    let values = batch.samples.iter().flat_map(|c| c.occupations().iter().map(|&t| f64::from(t))).collect();
    Ok(LatentBatch {
        kind,
        dim: circuit.modes(),
        seed,
        values,
        offset: None,
        provenance: Some(PhotonicProvenance {
            circuit,
            input: input.clone(),
            circuit_policy: policy,
            attempts: batch.attempts,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interferometer::{random_loop_spec, DELAYS_1_3_9};

    #[test]
    fn gaussian_moments() {
        let m = 100_000;
        let b = gen_gaussian(16, m, 4).unwrap();
        assert_eq!(b, gen_gaussian(16, m, 4).unwrap());
        for j in 0..16 {
            let col: Vec<f64> = (0..m).map(|i| b.row(i)[j]).collect();
            let mean = col.iter().sum::<f64>() / m as f64;
            let var = col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
            assert!(mean.abs() < 4.0 / (m as f64).sqrt());
            assert!((0.95..=1.05).contains(&var));
        }
        let one = gen_gaussian(3, 1, 0).unwrap();
        assert_eq!(one.count(), 1);
        assert!(one.values().iter().all(|x| x.is_finite()));
        assert!(gen_gaussian(0, 3, 0).is_err());
    }

    #[test]
    fn bernoulli_bits() {
        let m = 100_000;
        let b = gen_bernoulli(16, m, 8).unwrap();
        assert!(b.values().iter().all(|&x| x == 0.0 || x == 1.0));
        let bound = 4.0 * (0.25 / m as f64).sqrt();
        for mean in b.column_means() {
            assert!((mean - 0.5).abs() < bound);
        }
        assert_eq!(b, gen_bernoulli(16, m, 8).unwrap());
    }

    #[test]
    fn centering_policies() {
        let b = gen_bernoulli(4, 50, 1).unwrap();
        assert_eq!(b.center(&CenteringPolicy::None).unwrap(), b);
        let zero = b.center(&CenteringPolicy::Fixed(vec![0.0; 4])).unwrap();
        assert_eq!(zero.values(), b.values());
        let half = b.center(&CenteringPolicy::Fixed(vec![0.5; 4])).unwrap();
        assert!(half.values().iter().all(|&x| x == 0.5 || x == -0.5));
        assert_eq!(half.offset(), Some(&[0.5; 4][..]));
        assert_eq!(half.uncenter(), b);
        let mean = b.center(&CenteringPolicy::BatchMean).unwrap();
        assert!(mean.column_means().iter().all(|m| m.abs() < 1e-15));
        assert!(b.center(&CenteringPolicy::Fixed(vec![0.0; 3])).is_err());
        assert!(half.to_qls_i32().is_err());
        assert!(b.to_qls_i32().is_ok());
    }

    #[test]
    fn photonic_identity_circuit() {
        let circuit = CircuitSpec::loop_based(16, vec![1], vec![vec![0.0; 15]], 0).unwrap();
        let input = InputSpec::first_k(16, 8).unwrap();
        let b = gen_photonic(LatentKind::Boson, &circuit, &input, 50, 3, CircuitPolicy::Fixed).unwrap();
        let expected: Vec<f64> = (0..16).map(|j| if j < 8 { 1.0 } else { 0.0 }).collect();
        for i in 0..50 {
            assert_eq!(b.row(i), &expected[..]);
        }
    }

    #[test]
    fn photonic_conserves_photons() {
        let circuit = CircuitSpec::haar(16, 0).unwrap();
        let input = InputSpec::first_k(16, 8).unwrap();
        let b = gen_photonic(LatentKind::Boson, &circuit, &input, 2000, 11, CircuitPolicy::PerSeed).unwrap();
        for i in 0..b.count() {
            assert_eq!(b.row(i).iter().sum::<f64>(), 8.0);
        }
        assert!((b.column_means().iter().sum::<f64>() - 8.0).abs() < 1e-9);
        let seeded = b.provenance().unwrap().circuit.seed();
        assert_ne!(seeded, 0);
        let again = gen_photonic(LatentKind::Boson, &circuit, &input, 2000, 12, CircuitPolicy::PerSeed).unwrap();
        assert_ne!(again.provenance().unwrap().circuit.seed(), seeded);
    }

    #[test]
    fn photonic_dimension_mismatch() {
        let circuit = random_loop_spec(16, &DELAYS_1_3_9, 0).unwrap();
        let input = InputSpec::first_k(12, 6).unwrap();
        assert!(matches!(
            gen_photonic(LatentKind::Boson, &circuit, &input, 5, 0, CircuitPolicy::Fixed),
            Err(Error::Dimension(_))
        ));
        let input = InputSpec::first_k(16, 8).unwrap();
        assert!(gen_photonic(LatentKind::Gaussian, &circuit, &input, 5, 0, CircuitPolicy::Fixed).is_err());
    }

    #[test]
    fn metadata_records_provenance() {
        let circuit = random_loop_spec(8, &[1, 3], 5).unwrap();
        let input = InputSpec::evenly_spaced(8, 4).unwrap().with_loss(0.8, 2).unwrap();
        let b = gen_photonic(LatentKind::Distinguishable, &circuit, &input, 100, 9, CircuitPolicy::Fixed).unwrap();
        let kv = b.metadata();
        assert_eq!(kv.get("kind"), Some("dist"));
        assert_eq!(kv.get("circuit.seed"), Some("5"));
        assert_eq!(kv.get("input_modes"), Some("0,2,4,6"));
        assert_eq!(kv.get("eta"), Some("0.8"));
        let rate: f64 = kv.parse_value("acceptance_rate").unwrap();
        assert!(rate > 0.0 && rate <= 1.0);
    }
}
