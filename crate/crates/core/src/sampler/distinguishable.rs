use crate::error::Result;
use crate::fock::PhotonConfiguration;
use crate::matrix::UnitaryMatrix;
use crate::rng::StreamRng;
use crate::sampler::boson::check_context;
use crate::sampler::{pick_cumulative, run_shots, InputSpec, SampleBatch};

/// Routes each photon independently: input `i` exits at `j` with `|u_ji|²`.
#[derive(Clone, Debug)]
pub struct DistinguishableSampler {
    modes: usize,
    // cumulative[i * modes + j] = Σ_{j' ≤ j} |u_j'i|²
    cumulative: Vec<f64>,
}

impl DistinguishableSampler {
    pub fn new(u: &UnitaryMatrix) -> Self {
        let n = u.modes();
        let m = u.matrix();
        let mut cumulative = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += m[(j, i)].norm_sqr();
                cumulative.push(acc);
            }
        }
        DistinguishableSampler { modes: n, cumulative }
    }

    pub fn sample(&self, inputs: &[usize], rng: &mut StreamRng) -> PhotonConfiguration {
        let n = self.modes;
        let mut occ = vec![0u32; n];
        for &i in inputs {
            let j = pick_cumulative(&self.cumulative[i * n..(i + 1) * n], rng);
            occ[j] += 1;
        }
        PhotonConfiguration::new(occ)
    }
}

pub fn sample_distinguishable(u: &UnitaryMatrix, input: &InputSpec, count: usize, seed: u64) -> Result<SampleBatch> {
    check_context(u, input)?;
    let sampler = DistinguishableSampler::new(u);
    run_shots(input, count, seed, |inputs, rng| sampler.sample(inputs, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::haar_unitary;

    #[test]
    fn identity_reproduces_input() {
        let u = UnitaryMatrix::identity(6);
        let input = InputSpec::first_k(6, 3).unwrap();
        let batch = sample_distinguishable(&u, &input, 200, 0).unwrap();
        assert!(batch.samples.iter().all(|c| *c == input.input_configuration()));
    }

    #[test]
    fn coupler_flips_two_coins() {
        let u = UnitaryMatrix::balanced_coupler();
        let input = InputSpec::first_k(2, 2).unwrap();
        let m = 100_000;
        let batch = sample_distinguishable(&u, &input, m, 5).unwrap();
        let count = |v: [u32; 2]| batch.samples.iter().filter(|c| c.occupations() == v).count() as f64 / m as f64;
        let bound = |p: f64| 3.0 * (p * (1.0 - p) / m as f64).sqrt();
        assert!((count([1, 1]) - 0.5).abs() < bound(0.5));
        assert!((count([2, 0]) - 0.25).abs() < bound(0.25));
        assert!((count([0, 2]) - 0.25).abs() < bound(0.25));
    }

    #[test]
    fn marginals_are_column_sums() {
        let u = haar_unitary(6, 13);
        let input = InputSpec::new(6, vec![0, 3, 5]).unwrap();
        let m = 100_000;
        let batch = sample_distinguishable(&u, &input, m, 17).unwrap();
        for j in 0..6 {
            let probs: Vec<f64> = input.input_modes().iter().map(|&i| u.matrix()[(j, i)].norm_sqr()).collect();
            let expected: f64 = probs.iter().sum();
            let var: f64 = probs.iter().map(|p| p * (1.0 - p)).sum();
            let mean = batch.samples.iter().map(|c| c.occupations()[j] as f64).sum::<f64>() / m as f64;
            assert!((mean - expected).abs() <= 4.0 * (var / m as f64).sqrt(), "mode {j}");
        }
    }
}
