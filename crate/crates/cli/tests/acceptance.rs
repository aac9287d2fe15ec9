//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use photonic_latents::fock::binomial;
use photonic_latents::interferometer::{DELAYS_1_1, DELAYS_1_3_9};
use photonic_latents::rng;
use photonic_latents::*;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn permanent_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = rng::stream(2024, 0);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = 2 + i % 7;
        let data =
            (0..n * n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let m = ComplexMatrix::from_vec(n, n, data).unwrap();
        let fast = permanent_fast(&m).unwrap();
        let naive = permanent_naive(&m).unwrap();
        worst = worst.max((fast - naive).norm() / naive.norm());
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-10 && secs < 10.0,
        format!("200 matrices n=2..8, max rel err {worst:.2e} (<= 1e-10), {secs:.2} s (< 10 s)"),
    )
}

fn hom_exactness() -> Outcome {
    let u = UnitaryMatrix::balanced_coupler();
    let input = InputSpec::first_k(2, 2).unwrap();
    let boson = exact_distribution(&u, &input).unwrap();
    let dist = exact_distinguishable_distribution(&u, &input).unwrap();
    let p = |t: &DistributionTable, v: [u32; 2]| t.probability(&PhotonConfiguration::new(v.to_vec())).unwrap();
    let (b11, b20, b02) = (p(&boson, [1, 1]), p(&boson, [2, 0]), p(&boson, [0, 2]));
    let d11 = p(&dist, [1, 1]);
    check(
        b11.abs() <= 1e-12 && (b20 - 0.5).abs() <= 1e-12 && (b02 - 0.5).abs() <= 1e-12 && (d11 - 0.5).abs() <= 1e-12,
        format!("boson P(1,1)={b11:.1e} P(2,0)={b20} P(0,2)={b02}; distinguishable P(1,1)={d11}"),
    )
}

fn normalization() -> Outcome {
    let input = InputSpec::first_k(6, 3).unwrap();
    let mut worst = 0.0f64;
    let mut sizes_ok = true;
    for s in 0..20 {
        let t = exact_distribution(&haar_unitary(6, 100 + s), &input).unwrap();
        sizes_ok &= t.len() == 56;
        worst = worst.max((t.total() - 1.0).abs());
    }
    check(sizes_ok && worst <= 1e-9, format!("20 circuits, 56 entries each, max |sum - 1| = {worst:.2e}"))
}

fn sampler_oracle_tvd() -> Outcome {
    let m = 1_000_000;
    let u = haar_unitary(6, 7);
    let input = InputSpec::first_k(6, 3).unwrap();
    let boson: EmpiricalDistribution = sample_boson(&u, &input, m, 11).unwrap().samples.into_iter().collect();
    let dist: EmpiricalDistribution = sample_distinguishable(&u, &input, m, 11).unwrap().samples.into_iter().collect();
    let tb = tvd(&boson, &exact_distribution(&u, &input).unwrap()).unwrap();
    let td = tvd(&dist, &exact_distinguishable_distribution(&u, &input).unwrap()).unwrap();
    check(
        tb <= 0.01 && td <= 0.01,
        format!("10^6 shots at k=3 N=6: boson TVD {tb:.4}, distinguishable TVD {td:.4} (<= 0.01)"),
    )
}

fn interference_separation() -> Outcome {
    let input = InputSpec::first_k(6, 3).unwrap();
    let tvds: Vec<f64> = (0..20)
        .map(|s| {
            let u = haar_unitary(6, 900 + s);
            let a = exact_distribution(&u, &input).unwrap();
            let b = exact_distinguishable_distribution(&u, &input).unwrap();
            a.tvd(&b).unwrap()
        })
        .collect();
    let separated = tvds.iter().filter(|&&t| t > 0.05).count();
    let min = tvds.iter().copied().fold(f64::INFINITY, f64::min);
    check(separated >= 18, format!("{separated}/20 circuits with TVD > 0.05 (min {min:.3})"))
}

fn loop_unitarity() -> Outcome {
    let mut worst = 0.0f64;
    let mut identity_ok = true;
    for delays in [&DELAYS_1_1[..], &DELAYS_1_3_9[..]] {
        for n in [16, 32] {
            let spec = random_loop_spec(n, delays, 31 + n as u64).unwrap();
            worst = worst.max(build_unitary(&spec).unwrap().matrix().unitarity_deviation());
            let zeros = delays.iter().map(|&d| vec![0.0; n - d]).collect();
            let flat = CircuitSpec::loop_based(n, delays.to_vec(), zeros, 0).unwrap();
            identity_ok &= build_unitary(&flat).unwrap().matrix() == &ComplexMatrix::identity(n);
        }
    }
    check(
        worst <= 1e-10 && identity_ok,
        format!("1-1 and 1-3-9 at N=16,32: max deviation {worst:.2e}; zero angles give I exactly: {identity_ok}"),
    )
}

fn scaling_trend() -> Outcome {
    let small = bench_sampling(8, 16, 500, 5, 1).unwrap();
    let large = bench_sampling(16, 32, 500, 5, 1).unwrap();
    let ratio = large.median() / small.median();
    check(
        ratio >= 50.0,
        format!(
            "median 500-shot time k=8/N=16 {:.4} s, k=16/N=32 {:.3} s, ratio {ratio:.0} (>= 50)",
            small.median(),
            large.median()
        ),
    )
}

fn postselection_acceptance() -> Outcome {
    let shots = 100_000;
    let input = InputSpec::first_k(32, 32).unwrap().with_loss(0.5, 16).unwrap();
    let rate = apply_loss_and_postselect(&input, shots, 5).acceptance_rate();
    let p = (16..=32).map(|j| binomial(32, j) as f64).sum::<f64>() / 2f64.powi(32);
    let sigma = (p * (1.0 - p) / shots as f64).sqrt();
    check(
        (rate - p).abs() <= 3.0 * sigma,
        format!(
            "measured {rate:.5}, binomial tail {p:.5}, |diff| {:.5} (<= 3 sigma = {:.5})",
            (rate - p).abs(),
            3.0 * sigma
        ),
    )
}

struct Cli {
    bin: PathBuf,
}

impl Cli {
    fn run(&self, threads: usize, args: &[&str]) -> Result<(), String> {
        let out = Command::new(&self.bin)
            .arg("--threads")
            .arg(threads.to_string())
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.success() {
            Ok(())
        } else {
            Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)))
        }
    }
}

fn artifacts(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.is_file()).collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect()
}

/// Runs the full pipeline into `dir` with the given thread count.
fn pipeline(cli: &Cli, dir: &Path, threads: usize) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    cli.run(threads, &["unitary", "--modes", "16", "--kind", "haar", "--seed", "7", "--out", &p("haar.qum")])?;
    cli.run(
        threads,
        &["unitary", "--modes", "16", "--kind", "loop", "--delays", "1,3,9", "--seed", "7", "--out", &p("loop.qum")],
    )?;
    cli.run(threads, &["unitary", "--modes", "6", "--seed", "3", "--out", &p("u6.qum")])?;
    cli.run(
        threads,
        &[
            "sample",
            "--unitary",
            &p("haar.qum"),
            "--photons",
            "8",
            "--count",
            "2000",
            "--seed",
            "1",
            "--out",
            &p("boson.qls"),
            "--csv",
        ],
    )?;
    cli.run(
        threads,
        &[
            "sample",
            "--unitary",
            &p("loop.qum"),
            "--photons",
            "8",
            "--count",
            "2000",
            "--mode",
            "dist",
            "--seed",
            "1",
            "--out",
            &p("dist.qls"),
        ],
    )?;
    cli.run(
        threads,
        &[
            "sample",
            "--unitary",
            &p("loop.qum"),
            "--photons",
            "12",
            "--count",
            "500",
            "--seed",
            "2",
            "--eta",
            "0.5",
            "--postselect-min",
            "6",
            "--out",
            &p("lossy.qls"),
        ],
    )?;
    cli.run(threads, &["exact", "--unitary", &p("u6.qum"), "--photons", "3", "--out", &p("exact.csv")])?;
    cli.run(
        threads,
        &[
            "sample",
            "--unitary",
            &p("u6.qum"),
            "--photons",
            "3",
            "--count",
            "200000",
            "--seed",
            "4",
            "--out",
            &p("s6.qls"),
        ],
    )?;
    cli.run(
        threads,
        &[
            "validate",
            "--exact",
            &p("exact.csv"),
            "--samples",
            &p("s6.qls"),
            "--tvd-max",
            "0.02",
            "--histogram",
            &p("hist.csv"),
            "--out",
            &p("validate.txt"),
        ],
    )?;
    for kind in ["gaussian", "bernoulli", "boson", "dist"] {
        let out = p(&format!("latent_{kind}.qls"));
        cli.run(threads, &["latent", "--kind", kind, "--dim", "16", "--count", "1000", "--seed", "1", "--out", &out])?;
    }
    cli.run(
        threads,
        &[
            "latent",
            "--kind",
            "boson",
            "--dim",
            "16",
            "--count",
            "500",
            "--seed",
            "2",
            "--circuit",
            "loop",
            "--delays",
            "1,1",
            "--circuit-seed",
            "9",
            "--center",
            "mean",
            "--out",
            &p("latent_loop.qls"),
        ],
    )?;
    cli.run(
        threads,
        &["bench", "--photons", "4", "--modes", "8", "--shots", "20", "--repetitions", "1", "--out", &p("bench.txt")],
    )?;
    Ok(())
}

fn reproducibility() -> Outcome {
    let cli = Cli { bin: PathBuf::from(env!("CARGO_BIN_EXE_photonic")) };
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    // same flags, including output paths, so every run writes into one directory
    let dir = root.path().join("run");
    let mut snapshots = Vec::new();
    for (name, threads) in [("1 thread", 1), ("1 thread again", 1), ("8 threads", 8)] {
        if dir.exists() {
            std::fs::remove_dir_all(&dir).map_err(|e| e.to_string())?;
        }
        pipeline(&cli, &dir, threads)?;
        snapshots.push((name, artifacts(&dir)));
    }
    let (_, reference) = &snapshots[0];
    let mut compared = 0;
    for (name, other) in &snapshots[1..] {
        if other.len() != reference.len() {
            return Err(format!("{name}: {} files, expected {}", other.len(), reference.len()));
        }
        for ((fa, ba), (fb, bb)) in reference.iter().zip(other) {
            // timing reports are the one artifact allowed to differ
            if fa == "bench.txt" {
                continue;
            }
            if fa != fb || ba != bb {
                return Err(format!("{fa} differs between the first run and the {name} run"));
            }
            compared += 1;
        }
    }
    check(
        compared > 0,
        format!(
            "{} artifacts per run, {compared} byte-identical comparisons across two 1-thread runs and one 8-thread run",
            reference.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("permanent oracle equivalence", permanent_oracle_equivalence),
        ("HOM exactness", hom_exactness),
        ("normalization", normalization),
        ("sampler-oracle TVD", sampler_oracle_tvd),
        ("interference separation", interference_separation),
        ("loop-circuit unitarity and identity", loop_unitarity),
        ("scaling trend", scaling_trend),
        ("post-selection acceptance", postselection_acceptance),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1} s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.1} s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
