//! Photon sources and samplers.
//!
//! Shots are numbered `0, 1, 2, …`. Shot `s` draws its loss pattern from
//! stream `2s` and its output positions from stream `2s + 1` of the run
//! seed, so a batch is fully determined by `(U, input, count, seed)` no
//! matter how many worker threads produce it.

mod boson;
mod distinguishable;
mod exact;
mod loss;

use std::fmt;

pub use boson::{sample_boson, BosonSampler, MAX_SAMPLER_PHOTONS};
pub use distinguishable::{sample_distinguishable, DistinguishableSampler};
pub use exact::{
    exact_distinguishable_distribution, exact_distribution, DistributionTable, MAX_EXACT_ENTRIES, MAX_EXACT_PHOTONS,
    NORMALIZATION_TOLERANCE,
};
pub use loss::{apply_loss_and_postselect, PostSelection};

use crate::error::{Error, Result};
use crate::fock::PhotonConfiguration;
use crate::rng::{self, StreamRng};

/// Upper bound on shots tried per requested sample before giving up.
pub const MAX_ATTEMPTS_PER_SAMPLE: u64 = 1_000_000;

/// How input photons were placed, recorded in sidecars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// The first `k` modes.
    First,
    /// Modes `⌊i·N/k⌋`, i.e. every other bin at half filling.
    EvenlySpaced,
    Explicit,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::First => "first",
            Placement::EvenlySpaced => "spaced",
            Placement::Explicit => "explicit",
        })
    }
}

/// Which modes receive a single photon, plus the loss model.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    modes: usize,
    input_modes: Vec<usize>,
    transmission: f64,
    postselect_min: usize,
    placement: Placement,
}

impl InputSpec {
    /// Lossless input with one photon in each listed mode.
    pub fn new(modes: usize, input_modes: Vec<usize>) -> Result<Self> {
        Self::with_placement(modes, input_modes, Placement::Explicit)
    }

    fn with_placement(modes: usize, input_modes: Vec<usize>, placement: Placement) -> Result<Self> {
        if input_modes.len() > modes {
            return Err(Error::Input(format!("{} photons do not fit in {modes} modes", input_modes.len())));
        }
        let mut seen = vec![false; modes];
        for &m in &input_modes {
            if m >= modes {
                return Err(Error::Input(format!("input mode {m} out of range for {modes} modes")));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::Input(format!("input mode {m} listed twice; one photon per input mode")));
            }
        }
        Ok(InputSpec { modes, input_modes, transmission: 1.0, postselect_min: 0, placement })
    }

    pub fn first_k(modes: usize, photons: usize) -> Result<Self> {
        Self::with_placement(modes, (0..photons).collect(), Placement::First)
    }

    pub fn evenly_spaced(modes: usize, photons: usize) -> Result<Self> {
        if photons == 0 {
            return Self::with_placement(modes, Vec::new(), Placement::EvenlySpaced);
        }
        let inputs = (0..photons).map(|i| i * modes / photons).collect();
        Self::with_placement(modes, inputs, Placement::EvenlySpaced)
    }

    /// Sets transmission `η ∈ (0, 1]` and the minimum detected photon count.
    pub fn with_loss(mut self, transmission: f64, postselect_min: usize) -> Result<Self> {
        if !(transmission > 0.0 && transmission <= 1.0) {
            return Err(Error::Input(format!("transmission {transmission} outside (0, 1]")));
        }
        if postselect_min > self.photons() {
            return Err(Error::Input(format!(
                "post-selection on {postselect_min} photons can never accept {} injected",
                self.photons()
            )));
        }
        self.transmission = transmission;
        self.postselect_min = postselect_min;
        Ok(self)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn input_modes(&self) -> &[usize] {
        &self.input_modes
    }

    pub fn photons(&self) -> usize {
        self.input_modes.len()
    }

    pub fn transmission(&self) -> f64 {
        self.transmission
    }

    pub fn postselect_min(&self) -> usize {
        self.postselect_min
    }

    pub fn placement(&self) -> Placement {
        self.placement
    }

    pub fn is_lossless(&self) -> bool {
        self.transmission == 1.0
    }

    /// The configuration with one photon in every input mode.
    pub fn input_configuration(&self) -> PhotonConfiguration {
        PhotonConfiguration::from_positions(self.modes, &self.input_modes)
    }
}

/// Accepted samples of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub modes: usize,
    pub samples: Vec<PhotonConfiguration>,
    /// Shots drawn, including those rejected by post-selection.
    pub attempts: u64,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            return 1.0;
        }
        self.samples.len() as f64 / self.attempts as f64
    }

    /// Row-major occupations.
    pub fn to_i32_rows(&self) -> Vec<i32> {
        self.samples.iter().flat_map(|c| c.occupations().iter().map(|&t| t as i32)).collect()
    }
}

pub(crate) fn loss_stream(seed: u64, shot: u64) -> StreamRng {
    rng::stream(seed, shot.wrapping_mul(2))
}

pub(crate) fn sample_stream(seed: u64, shot: u64) -> StreamRng {
    rng::stream(seed, shot.wrapping_mul(2).wrapping_add(1))
}

/// Drives `sample_one` over `count` accepted shots.
pub(crate) fn run_shots<F>(input: &InputSpec, count: usize, seed: u64, sample_one: F) -> Result<SampleBatch>
where
    F: Fn(&[usize], &mut StreamRng) -> PhotonConfiguration + Sync,
{
    if input.is_lossless() {
        let samples = map_shots(count, |s| {
            let mut rng = sample_stream(seed, s as u64);
            sample_one(input.input_modes(), &mut rng)
        });
        return Ok(SampleBatch { modes: input.modes(), samples, attempts: count as u64 });
    }
    // The loss stage is cheap and sequential; only accepted shots are sampled.
    let limit = (count as u64).saturating_mul(MAX_ATTEMPTS_PER_SAMPLE).max(MAX_ATTEMPTS_PER_SAMPLE);
    let mut kept = Vec::with_capacity(count);
    let mut shot = 0u64;
    while kept.len() < count {
        if shot >= limit {
            return Err(Error::Guard { what: "post-selection attempts", got: shot as usize, limit: limit as usize });
        }
        if let Some(survivors) = loss::survivors(input, seed, shot) {
            kept.push((shot, survivors));
        }
        shot += 1;
    }
    let samples = map_shots(kept.len(), |i| {
        let (s, ref survivors) = kept[i];
        let mut rng = sample_stream(seed, s);
        sample_one(survivors, &mut rng)
    });
    Ok(SampleBatch { modes: input.modes(), samples, attempts: shot })
}

#[cfg(feature = "parallel")]
fn map_shots<T: Send, F: Fn(usize) -> T + Sync>(count: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(&f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_shots<T: Send, F: Fn(usize) -> T + Sync>(count: usize, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

/// Samples an output mode from cumulative weights ending at the total.
pub(crate) fn pick_cumulative(cumulative: &[f64], rng: &mut StreamRng) -> usize {
    use rand::Rng;
    let total = *cumulative.last().expect("non-empty weights");
    let u = rng.random::<f64>() * total;
    let idx = cumulative.partition_point(|&c| c <= u);
    // u < total always, but rounding in the running sum can leave trailing
    // zero-weight modes equal to the total
    idx.min(cumulative.len() - 1)
}
