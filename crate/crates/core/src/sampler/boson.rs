//! Exact boson sampling by the chain rule over photon positions.
//!
//! The injected photons are put in a uniformly random order. Photon `m`
//! (1-based) is then placed in output `i` with weight
//! `|Perm(A[r₁…r_{m−1}, i ; 1…m])|²`, where `A` holds the input columns of
//! `U` in that order and `r` are the outputs already chosen. Expanding that
//! permanent along its last row gives `Σ_l A[i, l] · P_l`, with `P_l` the
//! permanents of the column-deleted minors of the already-chosen rows. All
//! `m` minors come out of one Gray-code pass, so step `m` costs `O(m·2^m)`
//! and a full sample `O(k·2^k)` plus `O(N·k²)` for the weights.

use num_complex::Complex64;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::fock::PhotonConfiguration;
use crate::matrix::UnitaryMatrix;
use crate::permanent::column_minor_permanents;
use crate::rng::StreamRng;
use crate::sampler::{pick_cumulative, run_shots, InputSpec, SampleBatch};

pub const MAX_SAMPLER_PHOTONS: usize = 26;

#[derive(Clone, Debug)]
pub struct BosonSampler<'a> {
    u: &'a UnitaryMatrix,
}

impl<'a> BosonSampler<'a> {
    pub fn new(u: &'a UnitaryMatrix) -> Self {
        BosonSampler { u }
    }

    /// One sample with a single photon entering each of `inputs`.
    pub fn sample(&self, inputs: &[usize], rng: &mut StreamRng) -> PhotonConfiguration {
        let n = self.u.modes();
        let k = inputs.len();
        if k == 0 {
            return PhotonConfiguration::new(vec![0; n]);
        }
        let m = self.u.matrix();
        let mut order = inputs.to_vec();
        order.shuffle(rng);
        // a[i*k + l] = U[i, order[l]]
        let a: Vec<Complex64> = (0..n)
            .flat_map(|i| {
                let row = m.row(i);
                order.iter().map(move |&c| row[c])
            })
            .collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut minors = Vec::with_capacity(k);
        let mut cumulative = vec![0.0f64; n];
        for step in 1..=k {
            {
                let rows: Vec<&[Complex64]> = chosen.iter().map(|&r| &a[r * k..r * k + step]).collect();
                column_minor_permanents(&rows, &mut minors);
            }
            let mut acc = 0.0;
            for (i, slot) in cumulative.iter_mut().enumerate() {
                let row = &a[i * k..i * k + step];
                let amp: Complex64 = row.iter().zip(&minors).map(|(x, p)| x * p).sum();
                acc += amp.norm_sqr();
                *slot = acc;
            }
            chosen.push(pick_cumulative(&cumulative, rng));
        }
        PhotonConfiguration::from_positions(n, &chosen)
    }
}

/// `count` samples of indistinguishable photons; see the module docs.
///
/// With loss, only the surviving photons are sampled and shots below the
/// post-selection threshold are redrawn until `count` are accepted.
pub fn sample_boson(u: &UnitaryMatrix, input: &InputSpec, count: usize, seed: u64) -> Result<SampleBatch> {
    check_context(u, input)?;
    let expected = if input.is_lossless() {
        input.photons()
    } else {
        (input.photons() as f64 * input.transmission()).ceil() as usize
    };
    if expected > MAX_SAMPLER_PHOTONS {
        return Err(Error::Guard { what: "boson sampler photons", got: expected, limit: MAX_SAMPLER_PHOTONS });
    }
    let sampler = BosonSampler::new(u);
    run_shots(input, count, seed, |inputs, rng| sampler.sample(inputs, rng))
}

pub(crate) fn check_context(u: &UnitaryMatrix, input: &InputSpec) -> Result<()> {
    if u.modes() != input.modes() {
        return Err(Error::Dimension(format!("unitary has {} modes, input has {}", u.modes(), input.modes())));
    }
    Ok(())
}
