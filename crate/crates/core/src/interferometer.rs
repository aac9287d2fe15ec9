//! Circuit specifications and their compilation to a static unitary.
//!
//! Two families are supported: Haar-random `N`-mode circuits and time-bin
//! loop circuits. A loop of delay `ℓ` couples bin `t` with bin `t + ℓ` for
//! every `t`, in ascending order, through a real rotation; a cascade of loops
//! applies them in the listed order.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::formats::kv::{self, KeyValues};
use crate::haar::haar_unitary;
use crate::matrix::{ComplexMatrix, UnitaryMatrix};
use crate::rng;

/// Two loops of equal length.
pub const DELAYS_1_1: [usize; 2] = [1, 1];
/// Three loops, each three times longer than the previous one.
pub const DELAYS_1_3_9: [usize; 3] = [1, 3, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitKind {
    HaarRandom,
    LoopBased,
}

impl fmt::Display for CircuitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitKind::HaarRandom => "haar",
            CircuitKind::LoopBased => "loop",
        })
    }
}

impl FromStr for CircuitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(CircuitKind::HaarRandom),
            "loop" => Ok(CircuitKind::LoopBased),
            other => Err(Error::Format(format!("unknown circuit kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    kind: CircuitKind,
    modes: usize,
    delays: Vec<usize>,
    coupling_angles: Vec<Vec<f64>>,
    seed: u64,
}

impl CircuitSpec {
    pub fn haar(modes: usize, seed: u64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Circuit("a circuit needs at least one mode".into()));
        }
        Ok(CircuitSpec { kind: CircuitKind::HaarRandom, modes, delays: Vec::new(), coupling_angles: Vec::new(), seed })
    }

    /// Loop circuit with explicit coupling angles, one list per loop.
    pub fn loop_based(modes: usize, delays: Vec<usize>, coupling_angles: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        let spec = CircuitSpec { kind: CircuitKind::LoopBased, modes, delays, coupling_angles, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> CircuitKind {
        self.kind
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn delays(&self) -> &[usize] {
        &self.delays
    }

    pub fn coupling_angles(&self) -> &[Vec<f64>] {
        &self.coupling_angles
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn angle_count(&self) -> usize {
        self.coupling_angles.iter().map(Vec::len).sum()
    }

    /// Same family and size, redrawn from a new seed.
    pub fn reseeded(&self, seed: u64) -> Result<Self> {
        match self.kind {
            CircuitKind::HaarRandom => CircuitSpec::haar(self.modes, seed),
            CircuitKind::LoopBased => random_loop_spec(self.modes, &self.delays, seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes == 0 {
            return Err(Error::Circuit("a circuit needs at least one mode".into()));
        }
        match self.kind {
            CircuitKind::HaarRandom => {
                if !self.delays.is_empty() || !self.coupling_angles.is_empty() {
                    return Err(Error::Circuit("haar circuits carry no delays or angles".into()));
                }
            }
            CircuitKind::LoopBased => {
                validate_delays(self.modes, &self.delays)?;
                if self.coupling_angles.len() != self.delays.len() {
                    return Err(Error::Circuit(format!(
                        "{} angle lists for {} loops",
                        self.coupling_angles.len(),
                        self.delays.len()
                    )));
                }
                for (i, (&d, angles)) in self.delays.iter().zip(&self.coupling_angles).enumerate() {
                    if angles.len() != self.modes - d {
                        return Err(Error::Circuit(format!(
                            "loop {i} (delay {d}) needs {} angles, got {}",
                            self.modes - d,
                            angles.len()
                        )));
                    }
                    if angles.iter().any(|a| !a.is_finite()) {
                        return Err(Error::Circuit(format!("loop {i} has a non-finite angle")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        kv.set("kind", self.kind).set("modes", self.modes).set("delays", kv::join(&self.delays)).set("seed", self.seed);
        for (i, angles) in self.coupling_angles.iter().enumerate() {
            kv.set(format!("angles.{i}"), kv::join(angles));
        }
        kv
    }

    pub fn to_text(&self) -> String {
        self.to_key_values().to_text()
    }

    /// Parses the `key=value` form. Loop specs without `angles.*` lines are
    /// regenerated from their seed.
    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        let kind: CircuitKind = kv.require("kind")?.parse()?;
        let modes: usize = kv.parse_value("modes")?;
        let seed: u64 = kv.parse_value("seed")?;
        let delays: Vec<usize> = kv::split(kv.get("delays").unwrap_or(""))?;
        match kind {
            CircuitKind::HaarRandom => {
                if !delays.is_empty() {
                    return Err(Error::Circuit("haar circuits carry no delays".into()));
                }
                CircuitSpec::haar(modes, seed)
            }
            CircuitKind::LoopBased => {
                let lists: Vec<Option<&str>> = (0..delays.len()).map(|i| kv.get(&format!("angles.{i}"))).collect();
                if lists.iter().all(Option::is_none) {
                    return random_loop_spec(modes, &delays, seed);
                }
                let angles = lists
                    .into_iter()
                    .enumerate()
                    .map(|(i, raw)| {
                        kv::split::<f64>(raw.ok_or_else(|| Error::Format(format!("missing key `angles.{i}`")))?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                CircuitSpec::loop_based(modes, delays, angles, seed)
            }
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_key_values(&KeyValues::parse(text)?)
    }
}

fn validate_delays(modes: usize, delays: &[usize]) -> Result<()> {
    if delays.is_empty() {
        return Err(Error::Circuit("loop circuits need at least one delay".into()));
    }
    if let Some(&d) = delays.iter().find(|&&d| d == 0 || d >= modes) {
        return Err(Error::Circuit(format!("delay {d} must satisfy 1 <= delay < {modes}")));
    }
    Ok(())
}

/// Loop circuit with angles drawn i.i.d. uniform on `[0, 2π)`.
pub fn random_loop_spec(modes: usize, delays: &[usize], seed: u64) -> Result<CircuitSpec> {
    validate_delays(modes, delays)?;
    let mut rng = rng::stream(seed, 0);
    let angles = delays.iter().map(|&d| (0..modes - d).map(|_| rng.random::<f64>() * TAU).collect()).collect();
    CircuitSpec::loop_based(modes, delays.to_vec(), angles, seed)
}

/// Compiles a circuit to its `N × N` transfer matrix.
pub fn build_unitary(spec: &CircuitSpec) -> Result<UnitaryMatrix> {
    spec.validate()?;
    match spec.kind {
        CircuitKind::HaarRandom => Ok(haar_unitary(spec.modes, spec.seed)),
        CircuitKind::LoopBased => {
            let mut m = ComplexMatrix::identity(spec.modes);
            for (&delay, angles) in spec.delays.iter().zip(&spec.coupling_angles) {
                for (t, &theta) in angles.iter().enumerate() {
                    rotate_rows(&mut m, t, t + delay, theta);
                }
            }
            UnitaryMatrix::new(m)
        }
    }
}

/// Left-multiplies by `[[cos θ, −sin θ], [sin θ, cos θ]]` acting on rows `a`, `b`.
fn rotate_rows(m: &mut ComplexMatrix, a: usize, b: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for j in 0..m.cols() {
        let x = m[(a, j)];
        let y = m[(b, j)];
        m[(a, j)] = x * c - y * s;
        m[(b, j)] = x * s + y * c;
    }
}
