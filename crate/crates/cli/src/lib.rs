//! `photonic` command implementations.
//!
//! Every command writes its artifacts next to a `.provenance` record echoing
//! the resolved configuration. Exit codes: 0 ok, 1 failed check, 2 usage,
//! 3 I/O or unreadable input file, 4 cost guard.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photonic_latents::diagnostics::histogram_csv;
use photonic_latents::formats::{csv, kv, qum, KeyValues, QlsBatch};
use photonic_latents::interferometer::{DELAYS_1_1, DELAYS_1_3_9};
use photonic_latents::latent::sampler_metadata;
use photonic_latents::{
    bench_sampling, build_unitary, exact_distinguishable_distribution, exact_distribution, gen_bernoulli, gen_gaussian,
    gen_photonic, random_loop_spec, sample_boson, sample_distinguishable, tvd, CenteringPolicy, CircuitKind,
    CircuitPolicy, CircuitSpec, EmpiricalDistribution, Error, InputSpec, LatentKind, PhotonConfiguration,
    UnitaryMatrix,
};

/// Environment variable naming the directory for default output paths.
pub const OUT_DIR_ENV: &str = "PHOTONIC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "photonic", version, about = "Photonic latent distributions: circuits, exact tables, samplers")]
pub struct Cli {
    /// Worker threads for sampling (outputs do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an interferometer and write it as QUM1 plus a `.spec` sidecar.
    Unitary(UnitaryArgs),
    /// Sample photon configurations into a QLS1 (i32) batch.
    Sample(SampleArgs),
    /// Enumerate the exact output distribution into a CSV table.
    Exact(ExactArgs),
    /// Compare a sample batch against an exact table by total variation distance.
    Validate(ValidateArgs),
    /// Generate a latent batch of any of the four kinds.
    Latent(LatentArgs),
    /// Time 500-shot boson sampling on one thread.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Haar,
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Boson,
    Dist,
}

impl fmt::Display for ModeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeArg::Boson => "boson",
            ModeArg::Dist => "dist",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    First,
    Spaced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatentKindArg {
    Gaussian,
    Bernoulli,
    Dist,
    Boson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DtypeArg {
    F32,
    I32,
}

#[derive(Debug, Args)]
pub struct UnitaryArgs {
    /// Number of modes N.
    #[arg(long)]
    pub modes: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Haar)]
    pub kind: KindArg,
    /// Loop delays for `--kind loop`, e.g. `1,1` or `1,3,9`.
    #[arg(long, value_delimiter = ',')]
    pub delays: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output QUM1 path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Input photon placement shared by `sample` and `exact`.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Number of injected photons k.
    #[arg(long)]
    pub photons: usize,
    /// Explicit input modes (0-based), overriding `--placement`.
    #[arg(long, value_delimiter = ',')]
    pub inputs: Option<Vec<usize>>,
    /// Default: `first` for Haar circuits, `spaced` for loop circuits.
    #[arg(long, value_enum)]
    pub placement: Option<PlacementArg>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// QUM1 unitary; a `.spec` sidecar next to it is read if present.
    #[arg(long)]
    pub unitary: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of accepted samples M.
    #[arg(long)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Boson)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-photon transmission in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Discard shots with fewer detected photons than this.
    #[arg(long, default_value_t = 0)]
    pub postselect_min: usize,
    /// Also write a CSV copy of the batch.
    #[arg(long)]
    pub csv: bool,
    /// Output QLS1 path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub unitary: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Boson)]
    pub mode: ModeArg,
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Exact table written by `exact`.
    #[arg(long)]
    pub exact: PathBuf,
    /// QLS1 batch written by `sample`.
    #[arg(long)]
    pub samples: PathBuf,
    /// Pass threshold on total variation distance.
    #[arg(long, default_value_t = 0.01)]
    pub tvd_max: f64,
    /// Optional histogram CSV (empirical vs exact per configuration).
    #[arg(long)]
    pub histogram: Option<PathBuf>,
    /// key=value report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LatentArgs {
    #[arg(long, value_enum)]
    pub kind: LatentKindArg,
    /// Latent dimension L (the circuit's mode count for photonic kinds).
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Circuit family for photonic kinds.
    #[arg(long, value_enum, default_value_t = KindArg::Haar)]
    pub circuit: KindArg,
    #[arg(long, value_delimiter = ',')]
    pub delays: Option<Vec<usize>>,
    /// Keep this circuit seed instead of redrawing the circuit from `--seed`.
    #[arg(long)]
    pub circuit_seed: Option<u64>,
    /// Photons for photonic kinds; default L/2.
    #[arg(long)]
    pub photons: Option<usize>,
    #[arg(long, value_enum)]
    pub placement: Option<PlacementArg>,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 0)]
    pub postselect_min: usize,
    /// `none`, `mean`, or a constant subtracted from every entry.
    #[arg(long, default_value = "none")]
    pub center: String,
    #[arg(long, value_enum, default_value_t = DtypeArg::F32)]
    pub dtype: DtypeArg,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub photons: usize,
    #[arg(long)]
    pub modes: usize,
    #[arg(long, default_value_t = 500)]
    pub shots: usize,
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// key=value report path; the text report always goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Check(String),
    Usage(String),
    Io(String),
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(m) | CliError::Usage(m) | CliError::Io(m) | CliError::Guard(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Guard { .. } => CliError::Guard(msg),
            Error::Io(_) | Error::Format(_) | Error::NotUnitary { .. } | Error::NonFinite { .. } => CliError::Io(msg),
            Error::Normalization { .. } => CliError::Check(msg),
            Error::Dimension(_) | Error::Circuit(_) | Error::Input(_) => CliError::Usage(msg),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn main_with(cli: Cli) -> ExitCode {
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let threads = cli.threads;
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start {threads:?} threads: {e}")))?;
    pool.install(|| match cli.command {
        Command::Unitary(a) => cmd_unitary(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Latent(a) => cmd_latent(a),
        Command::Bench(a) => cmd_bench(a),
    })
}

fn out_path(out: Option<PathBuf>, default_name: &str) -> PathBuf {
    out.unwrap_or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")).join(default_name)
    })
}

/// `path` with `suffix` appended to the full file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_provenance(out: &Path, command: &str, config: &KeyValues) -> CliResult<()> {
    let mut kv = KeyValues::new();
    kv.set("command", command).set("tool_version", env!("CARGO_PKG_VERSION"));
    for (k, v) in config.iter() {
        kv.set(k, v);
    }
    write(&sidecar(out, ".provenance"), kv.to_text())
}

fn fmt_opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn resolve_delays(kind: KindArg, delays: &Option<Vec<usize>>) -> CliResult<Vec<usize>> {
    match (kind, delays) {
        (KindArg::Haar, None) => Ok(Vec::new()),
        (KindArg::Haar, Some(_)) => Err(CliError::Usage("--delays only applies to --kind loop".into())),
        (KindArg::Loop, Some(d)) => Ok(d.clone()),
        (KindArg::Loop, None) => Err(CliError::Usage(format!(
            "--kind loop needs --delays (e.g. {} or {})",
            kv::join(&DELAYS_1_1),
            kv::join(&DELAYS_1_3_9)
        ))),
    }
}

fn circuit_spec(kind: KindArg, modes: usize, delays: &[usize], seed: u64) -> CliResult<CircuitSpec> {
    Ok(match kind {
        KindArg::Haar => CircuitSpec::haar(modes, seed)?,
        KindArg::Loop => random_loop_spec(modes, delays, seed)?,
    })
}

pub fn cmd_unitary(a: UnitaryArgs) -> CliResult<()> {
    let delays = resolve_delays(a.kind, &a.delays)?;
    let spec = circuit_spec(a.kind, a.modes, &delays, a.seed)?;
    let u = build_unitary(&spec)?;
    let out = out_path(a.out, "unitary.qum");
    write(&out, qum::encode(&u))?;
    write(&sidecar(&out, ".spec"), spec.to_text())?;
    let mut cfg = KeyValues::new();
    cfg.set("modes", a.modes)
        .set("kind", spec.kind())
        .set("delays", kv::join(&delays))
        .set("seed", a.seed)
        .set("out", path_str(&out));
    write_provenance(&out, "unitary", &cfg)?;
    println!(
        "wrote {} ({}x{} {}, max |U^dag U - I| = {:.2e}, {} coupling angles)",
        out.display(),
        u.modes(),
        u.modes(),
        spec.kind(),
        u.matrix().unitarity_deviation(),
        spec.angle_count()
    );
    Ok(())
}

/// Loads a QUM1 unitary and its optional `.spec` sidecar.
fn load_unitary(path: &Path) -> CliResult<(UnitaryMatrix, Option<CircuitSpec>)> {
    let u = qum::decode(&read(path)?)?;
    let spec_path = sidecar(path, ".spec");
    let spec = if spec_path.exists() {
        let text = String::from_utf8(read(&spec_path)?)
            .map_err(|_| CliError::Io(format!("{}: not UTF-8", spec_path.display())))?;
        let spec = CircuitSpec::from_text(&text)?;
        if spec.modes() != u.modes() {
            return Err(CliError::Io(format!(
                "{} describes {} modes but the unitary has {}",
                spec_path.display(),
                spec.modes(),
                u.modes()
            )));
        }
        Some(spec)
    } else {
        None
    };
    Ok((u, spec))
}

fn resolve_input(args: &InputArgs, modes: usize, family: Option<CircuitKind>) -> CliResult<InputSpec> {
    if let Some(inputs) = &args.inputs {
        if inputs.len() != args.photons {
            return Err(CliError::Usage(format!(
                "--inputs lists {} modes but --photons is {}",
                inputs.len(),
                args.photons
            )));
        }
        return Ok(InputSpec::new(modes, inputs.clone())?);
    }
    let placement = args.placement.unwrap_or(match family {
        Some(CircuitKind::LoopBased) => PlacementArg::Spaced,
        _ => PlacementArg::First,
    });
    Ok(match placement {
        PlacementArg::First => InputSpec::first_k(modes, args.photons)?,
        PlacementArg::Spaced => InputSpec::evenly_spaced(modes, args.photons)?,
    })
}

pub fn cmd_sample(a: SampleArgs) -> CliResult<()> {
    let (u, spec) = load_unitary(&a.unitary)?;
    let input =
        resolve_input(&a.input, u.modes(), spec.as_ref().map(CircuitSpec::kind))?.with_loss(a.eta, a.postselect_min)?;
    let batch = match a.mode {
        ModeArg::Boson => sample_boson(&u, &input, a.count, a.seed)?,
        ModeArg::Dist => sample_distinguishable(&u, &input, a.count, a.seed)?,
    };
    let qls = QlsBatch::new(batch.len(), u.modes(), photonic_latents::formats::Payload::I32(batch.to_i32_rows()))?;
    let out = out_path(a.out, "samples.qls");
    write(&out, qls.encode())?;
    if a.csv {
        write(&sidecar(&out, ".csv"), csv::batch_to_csv(&qls))?;
    }
    let mut meta = KeyValues::new();
    meta.set("mode", a.mode)
        .set("count", batch.len())
        .set("modes", u.modes())
        .set("seed", a.seed)
        .set("circuit_seed", spec.as_ref().map_or_else(String::new, |s| s.seed().to_string()))
        .set("circuit_kind", spec.as_ref().map_or_else(String::new, |s| s.kind().to_string()));
    sampler_metadata(&mut meta, &input, batch.attempts, batch.acceptance_rate());
    write(&sidecar(&out, ".meta"), meta.to_text())?;
    let mut cfg = KeyValues::new();
    cfg.set("unitary", path_str(&a.unitary))
        .set("photons", a.input.photons)
        .set("inputs", a.input.inputs.as_deref().map(kv::join::<usize>).unwrap_or_default())
        .set("placement", input.placement())
        .set("count", a.count)
        .set("mode", a.mode)
        .set("seed", a.seed)
        .set("eta", a.eta)
        .set("postselect_min", a.postselect_min)
        .set("csv", a.csv)
        .set("out", path_str(&out));
    write_provenance(&out, "sample", &cfg)?;
    println!(
        "wrote {} ({} x {} {} samples, acceptance rate {:.6})",
        out.display(),
        batch.len(),
        u.modes(),
        a.mode,
        batch.acceptance_rate()
    );
    Ok(())
}

pub fn cmd_exact(a: ExactArgs) -> CliResult<()> {
    let (u, spec) = load_unitary(&a.unitary)?;
    let input = resolve_input(&a.input, u.modes(), spec.as_ref().map(CircuitSpec::kind))?;
    let table = match a.mode {
        ModeArg::Boson => exact_distribution(&u, &input)?,
        ModeArg::Dist => exact_distinguishable_distribution(&u, &input)?,
    };
    let out = out_path(a.out, "exact.csv");
    write(&out, csv::table_to_csv(&table))?;
    let mut cfg = KeyValues::new();
    cfg.set("unitary", path_str(&a.unitary))
        .set("photons", a.input.photons)
        .set("input_modes", kv::join(input.input_modes()))
        .set("placement", input.placement())
        .set("mode", a.mode)
        .set("entries", table.len())
        .set("out", path_str(&out));
    write_provenance(&out, "exact", &cfg)?;
    println!("wrote {} ({} configurations, total probability {:.12})", out.display(), table.len(), table.total());
    Ok(())
}

pub fn cmd_validate(a: ValidateArgs) -> CliResult<()> {
    let text =
        String::from_utf8(read(&a.exact)?).map_err(|_| CliError::Io(format!("{}: not UTF-8", a.exact.display())))?;
    let table = csv::table_from_csv(&text)?;
    let batch = QlsBatch::decode(&read(&a.samples)?)?;
    let photonic_latents::formats::Payload::I32(values) = batch.payload() else {
        return Err(CliError::Io(format!("{}: expected i32 occupations", a.samples.display())));
    };
    if batch.cols() != table.modes() {
        return Err(CliError::Usage(format!("samples have {} modes, table has {}", batch.cols(), table.modes())));
    }
    let mut emp = EmpiricalDistribution::new();
    for row in values.chunks(batch.cols().max(1)) {
        if row.iter().any(|&t| t < 0) {
            return Err(CliError::Io(format!("{}: negative occupation", a.samples.display())));
        }
        emp.add(PhotonConfiguration::new(row.iter().map(|&t| t as u32).collect()));
    }
    let distance = tvd(&emp, &table)?;
    let pass = distance <= a.tvd_max;
    if let Some(h) = &a.histogram {
        write(h, histogram_csv(&emp, &table))?;
    }
    let out = out_path(a.out, "validate.txt");
    let mut report = KeyValues::new();
    report
        .set("exact", path_str(&a.exact))
        .set("samples", path_str(&a.samples))
        .set("shots", emp.total())
        .set("tvd", distance)
        .set("tvd_max", a.tvd_max)
        .set("result", if pass { "PASS" } else { "FAIL" });
    write(&out, report.to_text())?;
    let mut cfg = KeyValues::new();
    cfg.set("exact", path_str(&a.exact))
        .set("samples", path_str(&a.samples))
        .set("tvd_max", a.tvd_max)
        .set("histogram", a.histogram.as_deref().map(path_str).unwrap_or_default())
        .set("out", path_str(&out));
    write_provenance(&out, "validate", &cfg)?;
    println!("tvd={distance:.6} threshold={} shots={} {}", a.tvd_max, emp.total(), if pass { "PASS" } else { "FAIL" });
    if pass {
        Ok(())
    } else {
        Err(CliError::Check(format!("tvd {distance} exceeds {}", a.tvd_max)))
    }
}

fn parse_center(raw: &str, dim: usize) -> CliResult<CenteringPolicy> {
    match raw {
        "none" => Ok(CenteringPolicy::None),
        "mean" => Ok(CenteringPolicy::BatchMean),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(|x| CenteringPolicy::Fixed(vec![x; dim]))
            .ok_or_else(|| CliError::Usage(format!("--center expects none, mean or a number, got {other:?}"))),
    }
}

pub fn cmd_latent(a: LatentArgs) -> CliResult<()> {
    let center = parse_center(&a.center, a.dim)?;
    let kind = match a.kind {
        LatentKindArg::Gaussian => LatentKind::Gaussian,
        LatentKindArg::Bernoulli => LatentKind::Bernoulli,
        LatentKindArg::Dist => LatentKind::Distinguishable,
        LatentKindArg::Boson => LatentKind::Boson,
    };
    let mut cfg = KeyValues::new();
    cfg.set("kind", kind).set("dim", a.dim).set("count", a.count).set("seed", a.seed);
    let batch = if kind.is_photonic() {
        let delays = resolve_delays(a.circuit, &a.delays)?;
        let (policy, circuit_seed) = match a.circuit_seed {
            Some(s) => (CircuitPolicy::Fixed, s),
            None => (CircuitPolicy::PerSeed, 0),
        };
        let circuit = circuit_spec(a.circuit, a.dim, &delays, circuit_seed)?;
        let input_args = InputArgs { photons: a.photons.unwrap_or(a.dim / 2), inputs: None, placement: a.placement };
        let input = resolve_input(&input_args, a.dim, Some(circuit.kind()))?.with_loss(a.eta, a.postselect_min)?;
        cfg.set("circuit", circuit.kind())
            .set("delays", kv::join(&delays))
            .set("circuit_seed", fmt_opt(&a.circuit_seed))
            .set("photons", input.photons())
            .set("placement", input.placement())
            .set("eta", a.eta)
            .set("postselect_min", a.postselect_min);
        gen_photonic(kind, &circuit, &input, a.count, a.seed, policy)?
    } else {
        match kind {
            LatentKind::Gaussian => gen_gaussian(a.dim, a.count, a.seed)?,
            _ => gen_bernoulli(a.dim, a.count, a.seed)?,
        }
    };
    let batch = batch.center(&center)?;
    let qls = match a.dtype {
        DtypeArg::F32 => batch.to_qls_f32(),
        DtypeArg::I32 => batch.to_qls_i32()?,
    };
    let out = out_path(a.out, "latent.qls");
    write(&out, qls.encode())?;
    if a.csv {
        write(&sidecar(&out, ".csv"), csv::batch_to_csv(&qls))?;
    }
    let mut meta = batch.metadata();
    meta.set(
        "dtype",
        match a.dtype {
            DtypeArg::F32 => "f32",
            DtypeArg::I32 => "i32",
        },
    );
    write(&sidecar(&out, ".meta"), meta.to_text())?;
    cfg.set("center", &a.center)
        .set("dtype", meta.get("dtype").unwrap_or_default())
        .set("csv", a.csv)
        .set("out", path_str(&out));
    write_provenance(&out, "latent", &cfg)?;
    println!("wrote {} ({} x {} {} latents)", out.display(), batch.count(), batch.dim(), kind);
    Ok(())
}

pub fn cmd_bench(a: BenchArgs) -> CliResult<()> {
    if a.repetitions == 0 {
        return Err(CliError::Usage("--repetitions must be at least 1".into()));
    }
    let report = bench_sampling(a.photons, a.modes, a.shots, a.repetitions, a.seed)?;
    print!("{}", report.to_text());
    if let Some(out) = a.out {
        write(&out, report.to_key_values().to_text())?;
        let mut cfg = KeyValues::new();
        cfg.set("photons", a.photons)
            .set("modes", a.modes)
            .set("shots", a.shots)
            .set("repetitions", a.repetitions)
            .set("seed", a.seed)
            .set("out", path_str(&out));
        write_provenance(&out, "bench", &cfg)?;
    }
    Ok(())
}
