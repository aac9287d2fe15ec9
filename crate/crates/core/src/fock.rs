//! Occupation-number configurations and their enumeration.

use std::fmt;

/// Photon counts per output mode.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhotonConfiguration(Vec<u32>);

impl PhotonConfiguration {
    pub fn new(occupations: Vec<u32>) -> Self {
        PhotonConfiguration(occupations)
    }

    /// Aggregates a list of output-mode indices, one per detected photon.
    pub fn from_positions(modes: usize, positions: &[usize]) -> Self {
        let mut occ = vec![0u32; modes];
        for &p in positions {
            occ[p] += 1;
        }
        PhotonConfiguration(occ)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&t| t as usize).sum()
    }

    /// `Π t_i!`
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&t| factorial(t)).product()
    }

    /// True when some mode holds two or more photons.
    pub fn is_bunched(&self) -> bool {
        self.0.iter().any(|&t| t >= 2)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for PhotonConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `C(n, r)` as u128, saturating at `u128::MAX`.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of ways to place `photons` indistinguishable photons in `modes` modes.
pub fn configuration_count(modes: usize, photons: usize) -> u128 {
    if modes == 0 {
        return u128::from(photons == 0);
    }
    binomial((modes + photons - 1) as u64, photons as u64)
}

/// Iterator over all weak compositions of `photons` into `modes` parts, in
/// descending lexicographic order starting from `(photons, 0, …, 0)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(modes: usize, photons: usize) -> Self {
        let current = if modes == 0 {
            (photons == 0).then(Vec::new)
        } else {
            let mut v = vec![0u32; modes];
            v[0] = photons as u32;
            Some(v)
        };
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = PhotonConfiguration;

    fn next(&mut self) -> Option<PhotonConfiguration> {
        let cur = self.current.as_mut()?;
        let out = PhotonConfiguration(cur.clone());
        let n = cur.len();
        // Rightmost nonzero entry before the last slot gives one photon to its
        // neighbour, which also absorbs everything in the tail.
        match (0..n.saturating_sub(1)).rev().find(|&i| cur[i] > 0) {
            Some(i) => {
                let tail = cur[n - 1];
                cur[n - 1] = 0;
                cur[i] -= 1;
                cur[i + 1] = tail + 1;
            }
            None => self.current = None,
        }
        Some(out)
    }
}
