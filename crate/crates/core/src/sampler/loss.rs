use rand::Rng;

use crate::sampler::{loss_stream, InputSpec};

/// Outcome of running the loss stage alone over a number of shots.
#[derive(Clone, Debug, PartialEq)]
pub struct PostSelection {
    /// `(shot index, surviving input modes)` for every accepted shot.
    pub accepted: Vec<(u64, Vec<usize>)>,
    pub attempts: u64,
}

impl PostSelection {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            return 1.0;
        }
        self.accepted.len() as f64 / self.attempts as f64
    }
}

/// Input photons of `shot` that survive transmission, or `None` when fewer
/// than the post-selection minimum remain. Lost photons simply never enter.
pub(crate) fn survivors(input: &InputSpec, seed: u64, shot: u64) -> Option<Vec<usize>> {
    if input.is_lossless() {
        return Some(input.input_modes().to_vec());
    }
    let eta = input.transmission();
    let mut rng = loss_stream(seed, shot);
    let kept: Vec<usize> = input.input_modes().iter().copied().filter(|_| rng.random::<f64>() < eta).collect();
    (kept.len() >= input.postselect_min()).then_some(kept)
}

/// Applies loss and post-selection to `shots` consecutive shots.
///
/// The survivors of each accepted shot are exactly the inputs the samplers
/// use for that shot under the same seed.
pub fn apply_loss_and_postselect(input: &InputSpec, shots: u64, seed: u64) -> PostSelection {
    let accepted = (0..shots).filter_map(|s| survivors(input, seed, s).map(|kept| (s, kept))).collect();
    PostSelection { accepted, attempts: shots }
}
