//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sidonlab_core::constructions::{
    best_singer_for, erdos_turan_construction, mian_chowla, odd_double, Limits,
};
use sidonlab_core::equations::{partition_experiment, LinearEquation, PartitionConfig};
use sidonlab_core::equidistribution::BohrSpec;
use sidonlab_core::io::{read_set, to_text, write_set, SetFormat};
use sidonlab_core::primes::primes_in;
use sidonlab_core::set::is_sidon;
use sidonlab_core::IntegerSet;

use crate::config::Config;
use crate::equidist::{
    bohr_rows, dyadic_intervals, interval_rows, parse_bohr_spec, parse_frequency, random_intervals,
    residue_rows, write_equidist_csv,
};
use crate::error::{HarnessError, Result, EXIT_FAILURE, EXIT_OK};
use crate::selfcheck::run_selfcheck;
use crate::sweep::{parse_q_list, uniformity_sweep, write_sweep_csv};

#[derive(Debug, Parser)]
#[command(
    name = "sidonlab",
    version,
    about = "Sidon set constructions and experiments"
)]
pub struct Cli {
    /// Singer cache directory [env: SIDONLAB_CACHE]
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads, 0 for all cores [env: SIDONLAB_THREADS]
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Sidon set and write it to a file
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,

        /// Output path; `.json` selects JSON, anything else the text form.
        /// Without it the set is printed.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Fourier uniformity of full Singer sets, one CSV row per q
    UniformitySweep(SweepArgs),
    /// Discrepancy probes for a set file
    Equidist(EquidistArgs),
    /// Colouring experiment for a linear equation
    Partition(PartitionArgs),
    /// Run the invariant battery
    Selfcheck,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Singer set for a prime q, embedded in [1, q²+q+1]
    Singer {
        #[arg(long)]
        q: u64,
    },
    /// {2pk + (k² mod p) + 1 : 0 <= k < p} for a prime p
    ErdosTuran {
        #[arg(long)]
        p: u64,
    },
    /// First n terms of the greedy Sidon sequence
    MianChowla {
        #[arg(long)]
        n: usize,
    },
    /// {2s + 1 : s ∈ S} for a set file S
    OddDouble {
        #[arg(long)]
        from: PathBuf,
    },
    /// Largest truncated Singer set inside [1, N]
    BestSinger {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated primes
    #[arg(long, default_value = "")]
    pub q: String,

    /// Add every prime in [q-min, q-max]
    #[arg(long, requires = "q_max")]
    pub q_min: Option<u64>,

    #[arg(long, requires = "q_min")]
    pub q_max: Option<u64>,

    /// Grid points per unit of N^{9/8}
    #[arg(long, default_value_t = sidonlab_core::fourier::DEFAULT_OVERSAMPLE)]
    pub oversample: u64,

    /// Output CSV; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquidistArgs {
    /// Set file (text or JSON)
    #[arg(long)]
    pub set: PathBuf,

    /// Probe every dyadic interval inside [1, N]
    #[arg(long)]
    pub all_dyadic: bool,

    /// Number of random intervals to probe
    #[arg(long, default_value_t = 0)]
    pub random_intervals: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Probe residue classes a mod q for every q up to this bound
    #[arg(long)]
    pub max_q: Option<u64>,

    /// Bohr set frequencies (with --rho), comma-separated, `p/q` for exact
    #[arg(long, requires = "rho")]
    pub alpha: Option<String>,

    #[arg(long, requires = "alpha")]
    pub rho: Option<f64>,

    /// Further Bohr specs as ALPHA[,ALPHA…]:RHO
    #[arg(long)]
    pub bohr: Vec<String>,

    /// Output CSV; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    /// Coefficients, e.g. 1,1,1,1,-4
    #[arg(long, allow_hyphen_values = true)]
    pub eq: String,

    /// Set file
    #[arg(
        long,
        conflicts_with = "best_singer",
        required_unless_present = "best_singer"
    )]
    pub set: Option<PathBuf>,

    /// Use the best truncated Singer set in [1, N]
    #[arg(long)]
    pub best_singer: Option<u64>,

    /// Number of colours
    #[arg(long, default_value_t = 2)]
    pub r: usize,

    /// Random colourings
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Adversarial local searches
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,

    /// Rounds per adversarial search
    #[arg(long, default_value_t = 20)]
    pub effort: usize,

    /// Output JSON; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, body: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().write_all(body)?,
    }
    Ok(())
}

fn set_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().replace(',', "_"))
        .unwrap_or_else(|| "set".into())
}

fn construct(kind: &ConstructKind, out: Option<&Path>, cfg: &Config) -> Result<()> {
    let set: IntegerSet = match kind {
        ConstructKind::Singer { q } => cfg
            .cache()
            .get_or_build(*q, &Limits::default())?
            .0
            .full_embedding(),
        ConstructKind::ErdosTuran { p } => erdos_turan_construction(*p)?,
        ConstructKind::MianChowla { n } => mian_chowla(*n)?,
        ConstructKind::OddDouble { from } => odd_double(&read_set(from)?),
        ConstructKind::BestSinger { n } => best_singer_for(*n)?.set,
    };
    let cert = is_sidon(&set);
    let sidon = match cert.violation {
        None => "Sidon".to_string(),
        Some((a, b, c, d)) => format!("not Sidon: {a} - {b} = {c} - {d}"),
    };
    eprintln!(
        "|S| = {}, N = {}, deviation = {}, {sidon}",
        set.len(),
        set.ambient(),
        set.deviation()
    );
    match out {
        Some(p) => write_set(p, &set, SetFormat::for_path(p))?,
        None => print!("{}", to_text(&set)),
    }
    Ok(())
}

fn sweep(args: &SweepArgs, cfg: &Config) -> Result<i32> {
    let mut qs = parse_q_list(&args.q)?;
    if let (Some(lo), Some(hi)) = (args.q_min, args.q_max) {
        qs.extend(primes_in(lo, hi));
    }
    let cache = cfg.cache();
    let entries = uniformity_sweep(&qs, args.oversample, Some(&cache));
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &entries)?;
    emit(args.out.as_deref(), &buf)?;
    let mut code = EXIT_OK;
    for e in &entries {
        if let Err(reason) = &e.row {
            eprintln!("q = {}: {reason}", e.q);
            code = EXIT_FAILURE;
        }
    }
    Ok(code)
}

fn equidist(args: &EquidistArgs) -> Result<()> {
    let set = read_set(&args.set)?;
    let id = set_id(&args.set);
    let mut rows = Vec::new();
    let mut intervals = Vec::new();
    if args.all_dyadic {
        intervals.extend(dyadic_intervals(set.ambient()));
    }
    if args.random_intervals > 0 {
        intervals.extend(random_intervals(
            set.ambient(),
            args.random_intervals,
            args.seed,
        ));
    }
    rows.extend(interval_rows(&set, &id, &intervals)?);
    if let Some(q) = args.max_q {
        rows.extend(residue_rows(&set, &id, q)?);
    }
    let mut specs: Vec<BohrSpec> = Vec::new();
    if let (Some(alpha), Some(rho)) = (&args.alpha, args.rho) {
        let alpha = alpha
            .split(',')
            .map(parse_frequency)
            .collect::<Result<Vec<_>>>()?;
        specs.push(BohrSpec::new(alpha, rho)?);
    }
    for s in &args.bohr {
        specs.push(parse_bohr_spec(s)?);
    }
    rows.extend(bohr_rows(&set, &id, &specs)?);
    let mut buf = Vec::new();
    write_equidist_csv(&mut buf, &rows)?;
    emit(args.out.as_deref(), &buf)
}

fn partition(args: &PartitionArgs) -> Result<()> {
    let eq: LinearEquation = args.eq.parse()?;
    let (set, id) = match (&args.set, args.best_singer) {
        (Some(p), _) => (read_set(p)?, set_id(p)),
        (None, Some(n)) => {
            let best = best_singer_for(n)?;
            (best.set, format!("best-singer-N{n}-q{}", best.q))
        }
        (None, None) => return Err(HarnessError::Usage("need --set or --best-singer".into())),
    };
    let cfg = PartitionConfig {
        r: args.r,
        trials: args.trials,
        seed: args.seed,
        restarts: args.restarts,
        effort: args.effort,
    };
    let report = partition_experiment(&eq, &set, &id, &cfg)?;
    if !report.hypothesis.in_hypothesis {
        eprintln!("warning: equation {eq} is outside the theorem's hypotheses; result flagged");
    }
    emit(args.out.as_deref(), (report.to_json() + "\n").as_bytes())
}

fn selfcheck(cfg: &Config) -> Result<i32> {
    let suites = run_selfcheck(&cfg.cache());
    let mut code = EXIT_OK;
    for s in &suites {
        let passed = s.checks.iter().filter(|c| c.passed).count();
        println!(
            "suite {:<17} {passed}/{} passed  ({:.1} ms)",
            s.name,
            s.checks.len(),
            s.elapsed_ms
        );
        for c in s.checks.iter().filter(|c| !c.passed) {
            println!("  FAIL {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
            code = EXIT_FAILURE;
        }
    }
    println!(
        "{}",
        if code == EXIT_OK {
            "selfcheck: pass"
        } else {
            "selfcheck: FAIL"
        }
    );
    Ok(code)
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let cfg = Config::from_process(cli.cache.clone(), cli.threads)?;
    let pool = cfg.thread_pool()?;
    pool.install(|| match &cli.command {
        Command::Construct { kind, out } => construct(kind, out.as_deref(), &cfg).map(|_| EXIT_OK),
        Command::UniformitySweep(a) => sweep(a, &cfg),
        Command::Equidist(a) => equidist(a).map(|_| EXIT_OK),
        Command::Partition(a) => partition(a).map(|_| EXIT_OK),
        Command::Selfcheck => selfcheck(&cfg),
    })
}
