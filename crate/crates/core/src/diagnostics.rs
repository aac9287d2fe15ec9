//! Validation statistics and sampler benchmarks.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::fock::PhotonConfiguration;
use crate::haar::haar_unitary;
use crate::sampler::{sample_boson, DistributionTable, InputSpec, MAX_SAMPLER_PHOTONS};

/// Exact-match counts keyed by occupation vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    counts: BTreeMap<PhotonConfiguration, u64>,
    total: u64,
}

impl EmpiricalDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, config: PhotonConfiguration) {
        *self.counts.entry(config).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: EmpiricalDistribution) {
        for (c, n) in other.counts {
            *self.counts.entry(c).or_insert(0) += n;
        }
        self.total += other.total;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, config: &PhotonConfiguration) -> u64 {
        self.counts.get(config).copied().unwrap_or(0)
    }

    pub fn frequency(&self, config: &PhotonConfiguration) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(config) as f64 / self.total as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PhotonConfiguration, u64)> {
        self.counts.iter().map(|(c, &n)| (c, n))
    }
}

impl<'a> FromIterator<&'a PhotonConfiguration> for EmpiricalDistribution {
    fn from_iter<I: IntoIterator<Item = &'a PhotonConfiguration>>(iter: I) -> Self {
        let mut e = EmpiricalDistribution::new();
        for c in iter {
            e.add(c.clone());
        }
        e
    }
}

impl FromIterator<PhotonConfiguration> for EmpiricalDistribution {
    fn from_iter<I: IntoIterator<Item = PhotonConfiguration>>(iter: I) -> Self {
        let mut e = EmpiricalDistribution::new();
        for c in iter {
            e.add(c);
        }
        e
    }
}

/// `½ Σ |p̂ − p|` over every configuration of the exact table.
pub fn tvd(emp: &EmpiricalDistribution, exact: &DistributionTable) -> Result<f64> {
    if emp.total == 0 {
        return Err(Error::Input("empirical distribution has no shots".into()));
    }
    // every observed configuration has to live in the table's context
    if let Some(c) = emp.counts.keys().find(|c| c.modes() != exact.modes() || c.total() != exact.photons()) {
        return Err(Error::Dimension(format!(
            "sample {c} does not fit a table of {} photons in {} modes",
            exact.photons(),
            exact.modes()
        )));
    }
    let n = emp.total as f64;
    let sum: f64 = exact.entries().iter().map(|(c, p)| (emp.count(c) as f64 / n - p).abs()).sum();
    Ok(0.5 * sum)
}

/// Mean over all entries of `|x − round(x)|`.
pub fn l1_to_nearest_integer(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().map(|x| (x - x.round()).abs()).sum::<f64>() / values.len() as f64
}

/// Fraction of shots with at least one mode holding two or more photons.
pub fn bunching_fraction(samples: &[PhotonConfiguration]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.iter().filter(|c| c.is_bunched()).count() as f64 / samples.len() as f64
}

/// Occupations, empirical frequency and exact probability per configuration.
pub fn histogram_csv(emp: &EmpiricalDistribution, exact: &DistributionTable) -> String {
    let mut out = (0..exact.modes()).map(|j| format!("c{j}")).collect::<Vec<_>>().join(",");
    out.push_str(",empirical,exact\n");
    for (c, p) in exact.entries() {
        for t in c.occupations() {
            write!(out, "{t},").unwrap();
        }
        writeln!(out, "{:e},{:e}", emp.frequency(c), p).unwrap();
    }
    out
}

/// Timing of boson sampling on one thread.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub photons: usize,
    pub modes: usize,
    pub shots: usize,
    /// Wall time of each repetition, seconds.
    pub times: Vec<f64>,
}

impl BenchReport {
    pub fn median(&self) -> f64 {
        let mut t = self.times.clone();
        t.sort_by(|a, b| a.total_cmp(b));
        let n = t.len();
        if n == 0 {
            return f64::NAN;
        }
        if n % 2 == 1 {
            t[n / 2]
        } else {
            0.5 * (t[n / 2 - 1] + t[n / 2])
        }
    }

    pub fn to_text(&self) -> String {
        let min = self.times.iter().copied().fold(f64::INFINITY, f64::min);
        let max = self.times.iter().copied().fold(0.0, f64::max);
        format!(
            "k={} N={} shots={}: median {:.4} s over {} runs (min {:.4} s, max {:.4} s)\n",
            self.photons,
            self.modes,
            self.shots,
            self.median(),
            self.times.len(),
            min,
            max
        )
    }

    pub fn to_key_values(&self) -> crate::formats::KeyValues {
        let mut kv = crate::formats::KeyValues::new();
        kv.set("photons", self.photons)
            .set("modes", self.modes)
            .set("shots", self.shots)
            .set("repetitions", self.times.len())
            .set("median_seconds", self.median())
            .set("times_seconds", crate::formats::kv::join(&self.times));
        kv
    }
}

/// Times `shots` boson samples of `photons` photons in the first modes of a
/// Haar circuit on `modes` modes, `repetitions` times on a single thread.
pub fn bench_sampling(
    photons: usize,
    modes: usize,
    shots: usize,
    repetitions: usize,
    seed: u64,
) -> Result<BenchReport> {
    if photons > MAX_SAMPLER_PHOTONS {
        return Err(Error::Guard { what: "boson sampler photons", got: photons, limit: MAX_SAMPLER_PHOTONS });
    }
    let u = haar_unitary(modes, seed);
    let input = InputSpec::first_k(modes, photons)?;
    let mut times = Vec::with_capacity(repetitions);
    for rep in 0..repetitions {
        let start = Instant::now();
        let batch = single_thread(|| sample_boson(&u, &input, shots, seed.wrapping_add(rep as u64)))?;
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(batch);
    }
    Ok(BenchReport { photons, modes, shots, times })
}

#[cfg(feature = "parallel")]
fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn single_thread<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    f()
}
