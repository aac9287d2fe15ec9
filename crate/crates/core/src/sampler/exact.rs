use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::{configuration_count, Compositions, PhotonConfiguration};
use crate::matrix::{repeated_submatrix, UnitaryMatrix};
use crate::permanent::permanent_fast;
use crate::sampler::InputSpec;

pub const MAX_EXACT_PHOTONS: usize = 8;
pub const MAX_EXACT_ENTRIES: usize = 200_000;
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Every output configuration of `photons` photons in `modes` modes with its
/// probability, in [`Compositions`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTable {
    modes: usize,
    photons: usize,
    entries: Vec<(PhotonConfiguration, f64)>,
}

impl DistributionTable {
    /// Validates completeness, non-negativity and normalization.
    pub fn from_entries(modes: usize, photons: usize, entries: Vec<(PhotonConfiguration, f64)>) -> Result<Self> {
        let expected = configuration_count(modes, photons);
        if entries.len() as u128 != expected {
            return Err(Error::Dimension(format!(
                "{} entries, expected C({}, {photons}) = {expected}",
                entries.len(),
                modes + photons - 1
            )));
        }
        let mut sum = 0.0;
        for (c, p) in &entries {
            if c.modes() != modes || c.total() != photons {
                return Err(Error::Dimension(format!("configuration {c} out of context")));
            }
            if !(p.is_finite() && *p >= 0.0) {
                return Err(Error::Input(format!("probability {p} for {c}")));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Normalization { sum, tolerance: NORMALIZATION_TOLERANCE });
        }
        let mut sorted: Vec<&PhotonConfiguration> = entries.iter().map(|(c, _)| c).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("duplicate configuration in table".into()));
        }
        Ok(DistributionTable { modes, photons, entries })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn entries(&self) -> &[(PhotonConfiguration, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    pub fn probability(&self, config: &PhotonConfiguration) -> Option<f64> {
        self.entries.iter().find(|(c, _)| c == config).map(|&(_, p)| p)
    }

    pub fn to_map(&self) -> BTreeMap<PhotonConfiguration, f64> {
        self.entries.iter().cloned().collect()
    }

    /// `½ Σ |p − q|` against another table of the same context.
    pub fn tvd(&self, other: &DistributionTable) -> Result<f64> {
        if (self.modes, self.photons) != (other.modes, other.photons) {
            return Err(Error::Dimension(format!(
                "tables for ({}, {}) and ({}, {})",
                self.photons, self.modes, other.photons, other.modes
            )));
        }
        let theirs = other.to_map();
        let sum: f64 = self.entries.iter().map(|(c, p)| (p - theirs.get(c).copied().unwrap_or(0.0)).abs()).sum();
        Ok(0.5 * sum)
    }
}

fn enumerate<F>(u: &UnitaryMatrix, input: &InputSpec, weight: F) -> Result<DistributionTable>
where
    F: Fn(&PhotonConfiguration) -> Result<f64>,
{
    if u.modes() != input.modes() {
        return Err(Error::Dimension(format!("unitary has {} modes, input has {}", u.modes(), input.modes())));
    }
    if !input.is_lossless() {
        return Err(Error::Input("exact tables are defined for lossless inputs only".into()));
    }
    let k = input.photons();
    if k > MAX_EXACT_PHOTONS {
        return Err(Error::Guard { what: "exact enumeration photons", got: k, limit: MAX_EXACT_PHOTONS });
    }
    let count = configuration_count(u.modes(), k);
    if count > MAX_EXACT_ENTRIES as u128 {
        return Err(Error::Guard {
            what: "exact enumeration table size",
            got: usize::try_from(count).unwrap_or(usize::MAX),
            limit: MAX_EXACT_ENTRIES,
        });
    }
    let entries = Compositions::new(u.modes(), k).map(|c| weight(&c).map(|p| (c, p))).collect::<Result<Vec<_>>>()?;
    DistributionTable::from_entries(u.modes(), k, entries)
}

/// `p(t) = |Perm(U_T)|² / Π t_i!` for indistinguishable photons.
pub fn exact_distribution(u: &UnitaryMatrix, input: &InputSpec) -> Result<DistributionTable> {
    enumerate(u, input, |c| {
        let sub = repeated_submatrix(u, input.input_modes(), c)?;
        Ok(permanent_fast(&sub)?.norm_sqr() / c.factorial_product())
    })
}

/// `p(t) = Perm(|U_T|²) / Π t_i!`, the law of independently routed photons.
pub fn exact_distinguishable_distribution(u: &UnitaryMatrix, input: &InputSpec) -> Result<DistributionTable> {
    enumerate(u, input, |c| {
        let sub = repeated_submatrix(u, input.input_modes(), c)?.abs_squared();
        Ok(permanent_fast(&sub)?.re / c.factorial_product())
    })
}
