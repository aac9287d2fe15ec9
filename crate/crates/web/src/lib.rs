//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Everything here is plain Rust exported through `wasm-bindgen`; natively
//! the functions are ordinary and are tested as such.

use photonic_latents::{
    build_unitary, exact_distinguishable_distribution, exact_distribution, haar_unitary, random_loop_spec,
    sample_boson, sample_distinguishable, tvd, ComplexMatrix, DistributionTable, EmpiricalDistribution, InputSpec,
    UnitaryMatrix,
};
use wasm_bindgen::prelude::*;

pub const MAX_DEMO_PHOTONS: usize = 5;
pub const MAX_DEMO_MODES: usize = 12;
pub const MAX_DEMO_SHOTS: usize = 200_000;
pub const MAX_HEATMAP_MODES: usize = 64;

fn msg(e: photonic_latents::Error) -> String {
    e.to_string()
}

/// Two photons on a real beamsplitter of angle θ ∈ [0, π/2].
///
/// Returns `points` triples `(θ, P_boson(1,1), P_dist(1,1))` flattened.
#[wasm_bindgen(js_name = couplerCurve)]
pub fn coupler_curve(points: usize) -> Result<Vec<f64>, String> {
    if !(2..=10_000).contains(&points) {
        return Err(format!("points must be in 2..=10000, got {points}"));
    }
    let input = InputSpec::first_k(2, 2).map_err(msg)?;
    let apart =
        |t: &DistributionTable| t.entries().iter().find(|(c, _)| c.occupations() == [1, 1]).map_or(0.0, |(_, p)| *p);
    let mut out = Vec::with_capacity(3 * points);
    for i in 0..points {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (points - 1) as f64;
        let (s, c) = theta.sin_cos();
        let m = ComplexMatrix::from_real_rows(&[[c, -s], [s, c]]).map_err(msg)?;
        let u = UnitaryMatrix::new(m).map_err(msg)?;
        let boson = exact_distribution(&u, &input).map_err(msg)?;
        let dist = exact_distinguishable_distribution(&u, &input).map_err(msg)?;
        out.extend([theta, apart(&boson), apart(&dist)]);
    }
    Ok(out)
}

/// Exact and sampled output law on one Haar circuit.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct Histogram {
    labels: Vec<String>,
    exact: Vec<f64>,
    empirical: Vec<f64>,
    tvd: f64,
    tvd_to_other: f64,
}

#[wasm_bindgen]
impl Histogram {
    /// Occupation vectors, one per bar, separated by newlines.
    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> String {
        self.labels.join("\n")
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn empirical(&self) -> Vec<f64> {
        self.empirical.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn tvd(&self) -> f64 {
        self.tvd
    }

    /// Distance between the exact laws of the two photon models.
    #[wasm_bindgen(getter, js_name = tvdToOther)]
    pub fn tvd_to_other(&self) -> f64 {
        self.tvd_to_other
    }
}

#[wasm_bindgen(js_name = sampleHistogram)]
pub fn sample_histogram(
    photons: usize,
    modes: usize,
    seed: u32,
    shots: usize,
    boson: bool,
) -> Result<Histogram, String> {
    if photons == 0 || photons > MAX_DEMO_PHOTONS {
        return Err(format!("photons must be in 1..={MAX_DEMO_PHOTONS}"));
    }
    if modes < photons || modes > MAX_DEMO_MODES {
        return Err(format!("modes must be in {photons}..={MAX_DEMO_MODES}"));
    }
    if shots == 0 || shots > MAX_DEMO_SHOTS {
        return Err(format!("shots must be in 1..={MAX_DEMO_SHOTS}"));
    }
    let seed = u64::from(seed);
    let u = haar_unitary(modes, seed);
    let input = InputSpec::first_k(modes, photons).map_err(msg)?;
    let bos = exact_distribution(&u, &input).map_err(msg)?;
    let dis = exact_distinguishable_distribution(&u, &input).map_err(msg)?;
    let (table, batch) = if boson {
        (&bos, sample_boson(&u, &input, shots, seed).map_err(msg)?)
    } else {
        (&dis, sample_distinguishable(&u, &input, shots, seed).map_err(msg)?)
    };
    let emp: EmpiricalDistribution = batch.samples.into_iter().collect();
    let entries = table.entries();
    Ok(Histogram {
        labels: entries.iter().map(|(c, _)| c.to_string()).collect(),
        exact: entries.iter().map(|(_, p)| *p).collect(),
        empirical: entries.iter().map(|(c, _)| emp.frequency(c)).collect(),
        tvd: tvd(&emp, table).map_err(msg)?,
        tvd_to_other: bos.tvd(&dis).map_err(msg)?,
    })
}

/// `|U_ij|²` of a random loop circuit, row-major, `modes × modes` values.
///
/// `delays` is a comma-separated list such as `1,3,9`.
#[wasm_bindgen(js_name = loopHeatmap)]
pub fn loop_heatmap(modes: usize, delays: &str, seed: u32) -> Result<Vec<f64>, String> {
    if !(2..=MAX_HEATMAP_MODES).contains(&modes) {
        return Err(format!("modes must be in 2..={MAX_HEATMAP_MODES}"));
    }
    let delays = delays
        .split(',')
        .map(|d| d.trim().parse::<usize>().map_err(|_| format!("bad delay {d:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = random_loop_spec(modes, &delays, u64::from(seed)).map_err(msg)?;
    let u = build_unitary(&spec).map_err(msg)?;
    Ok(u.matrix().as_slice().iter().map(|z| z.norm_sqr()).collect())
}
