//! Cross-checks of the exact tables and samplers against independent routes.

use std::collections::BTreeMap;

use num_complex::Complex64;
use photonic_latents::*;

/// Expands `Π_photons (Σ_j U[j, c] x_j)` and reads off the coefficient of
/// each monomial; `|coef|² · Π t_j!` is the output probability. No
/// permanents involved.
fn boson_by_polynomial(u: &UnitaryMatrix, inputs: &[usize]) -> BTreeMap<Vec<u32>, f64> {
    let n = u.modes();
    let mut poly: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    poly.insert(vec![0; n], Complex64::new(1.0, 0.0));
    for &c in inputs {
        let mut next: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (mono, coef) in &poly {
            for j in 0..n {
                let mut m = mono.clone();
                m[j] += 1;
                *next.entry(m).or_default() += coef * u.matrix()[(j, c)];
            }
        }
        poly = next;
    }
    poly.into_iter()
        .map(|(m, coef)| {
            let fact: f64 = m.iter().map(|&t| (1..=t).map(f64::from).product::<f64>()).product();
            (m, coef.norm_sqr() * fact)
        })
        .collect()
}

/// Routes every photon to every output and accumulates products of `|u|²`.
fn distinguishable_by_enumeration(u: &UnitaryMatrix, inputs: &[usize]) -> BTreeMap<Vec<u32>, f64> {
    let n = u.modes();
    let k = inputs.len();
    let mut out = BTreeMap::new();
    let total = n.pow(k as u32);
    for code in 0..total {
        let mut occ = vec![0u32; n];
        let mut p = 1.0;
        let mut rest = code;
        for &c in inputs {
            let j = rest % n;
            rest /= n;
            occ[j] += 1;
            p *= u.matrix()[(j, c)].norm_sqr();
        }
        *out.entry(occ).or_insert(0.0) += p;
    }
    out
}

fn assert_matches(table: &DistributionTable, oracle: &BTreeMap<Vec<u32>, f64>) {
    assert_eq!(table.len(), oracle.len());
    for (c, p) in table.entries() {
        let q = oracle[c.occupations()];
        assert!((p - q).abs() < 1e-12, "{c}: {p} vs {q}");
    }
}

#[test]
fn boson_table_matches_polynomial_expansion() {
    for (n, inputs, seed) in
        [(4, vec![0, 1], 1), (6, vec![0, 1, 2], 2), (5, vec![1, 3, 4], 3), (7, vec![0, 2, 4, 6], 4)]
    {
        let u = haar_unitary(n, seed);
        let input = InputSpec::new(n, inputs.clone()).unwrap();
        assert_matches(&exact_distribution(&u, &input).unwrap(), &boson_by_polynomial(&u, &inputs));
    }
    let loop_u = build_unitary(&random_loop_spec(6, &[1, 3], 8).unwrap()).unwrap();
    let input = InputSpec::evenly_spaced(6, 3).unwrap();
    assert_matches(&exact_distribution(&loop_u, &input).unwrap(), &boson_by_polynomial(&loop_u, input.input_modes()));
}

#[test]
fn distinguishable_table_matches_enumeration() {
    for (n, inputs, seed) in [(2, vec![0, 1], 0), (6, vec![0, 1, 2], 5), (5, vec![0, 2, 4], 6)] {
        let u = haar_unitary(n, seed);
        let input = InputSpec::new(n, inputs.clone()).unwrap();
        assert_matches(
            &exact_distinguishable_distribution(&u, &input).unwrap(),
            &distinguishable_by_enumeration(&u, &inputs),
        );
    }
}

#[test]
fn samplers_converge_to_exact_tables() {
    let m = 200_000;
    let u = haar_unitary(6, 31);
    let input = InputSpec::first_k(6, 3).unwrap();
    let boson: EmpiricalDistribution = sample_boson(&u, &input, m, 1).unwrap().samples.into_iter().collect();
    let dist: EmpiricalDistribution = sample_distinguishable(&u, &input, m, 1).unwrap().samples.into_iter().collect();
    let exact_b = exact_distribution(&u, &input).unwrap();
    let exact_d = exact_distinguishable_distribution(&u, &input).unwrap();
    // expected sampling noise ≈ Σ sqrt(p/(2πM)) stays below 0.02 at this M
    assert!(tvd(&boson, &exact_b).unwrap() < 0.02);
    assert!(tvd(&dist, &exact_d).unwrap() < 0.02);
    // and each sampler is far from the other law
    assert!(tvd(&boson, &exact_d).unwrap() > 0.1);
}

#[test]
fn loop_circuit_sampler_matches_exact() {
    let spec = random_loop_spec(8, &[1, 3], 12).unwrap();
    let u = build_unitary(&spec).unwrap();
    let input = InputSpec::evenly_spaced(8, 3).unwrap();
    let emp: EmpiricalDistribution = sample_boson(&u, &input, 200_000, 4).unwrap().samples.into_iter().collect();
    assert!(tvd(&emp, &exact_distribution(&u, &input).unwrap()).unwrap() < 0.03);
}

#[test]
fn lossy_sampler_is_a_mixture_over_survivors() {
    // With η < 1 and no post-selection, photon number k' ~ Binomial(k, η).
    let u = haar_unitary(5, 2);
    let input = InputSpec::first_k(5, 3).unwrap().with_loss(0.5, 0).unwrap();
    let m = 80_000;
    let batch = sample_boson(&u, &input, m, 6).unwrap();
    assert_eq!(batch.attempts, m as u64);
    let zero = batch.samples.iter().filter(|c| c.total() == 0).count() as f64 / m as f64;
    assert!((zero - 0.125).abs() < 4.0 * (0.125 * 0.875 / m as f64).sqrt());
}

#[test]
fn interference_shows_in_exact_tables() {
    let input = InputSpec::first_k(6, 3).unwrap();
    let separated = (0..20)
        .filter(|&s| {
            let u = haar_unitary(6, 500 + s);
            let a = exact_distribution(&u, &input).unwrap();
            let b = exact_distinguishable_distribution(&u, &input).unwrap();
            a.tvd(&b).unwrap() > 0.05
        })
        .count();
    assert!(separated >= 18);
}
