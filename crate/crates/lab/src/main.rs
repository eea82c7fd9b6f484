use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heightlab::{presets, run, ExperimentConfig, LabError, Outcome, RayonExecutor};

/// Height, gcd and gamma-invariant experiments.
///
/// Settings are layered: a preset, then a config file, then subcommand
/// flags, later ones winning. With --out the CSV goes to the file and the
/// summary to stdout; otherwise CSV to stdout and summary to stderr.
///
/// Exit codes: 0 pass, 1 invariant failure, 2 invalid input, 3 resource guard.
#[derive(Parser, Debug)]
#[command(name = "heightlab", version)]
struct Cli {
    /// Key-value config file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named preset (see --list-presets)
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Write the CSV here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Print the presets and exit
    #[arg(long)]
    list_presets: bool,
    #[command(subcommand)]
    mode: Option<Mode>,
}

#[derive(Args, Debug, Default)]
struct ScanArgs {
    /// First polynomial, e.g. "x - 1"
    #[arg(long)]
    f: Option<String>,
    /// Second polynomial, coprime to f
    #[arg(long)]
    g: Option<String>,
    /// Variable order, e.g. "x, y"
    #[arg(long)]
    vars: Option<String>,
    /// e.g. "(2, 1); (1, 2)"
    #[arg(long)]
    generators: Option<String>,
    /// `sunits` for all S-units
    #[arg(long)]
    group: Option<String>,
    /// none, all, or coordinates "1, 2"
    #[arg(long)]
    signs: Option<String>,
    /// Primes of S, e.g. "2, 3"
    #[arg(long = "S", alias = "s")]
    s: Option<String>,
    /// Exponent box bound
    #[arg(long = "B", alias = "b")]
    b: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Mode {
    /// Sweep a box of the group and record gcd ratios
    Scan(ScanArgs),
    /// Scan, then search for exceptional translates
    Detect {
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        theta: Option<String>,
        /// Bound on normal vector entries
        #[arg(long = "A", alias = "a")]
        a: Option<String>,
    },
    /// Truncated gamma-invariant and its bound
    Gamma {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        ell: Option<String>,
        /// Levels, e.g. "50, 100, 200"
        #[arg(long)]
        grid: Option<String>,
    },
    /// The invariant suite
    Verify {
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        samples: Option<String>,
    },
    /// Local Weil functions, proximity and counting per point
    Heights {
        /// e.g. "[2:3:1]; [5:25:1]"
        #[arg(long)]
        points: Option<String>,
        /// Forms cutting out Y, e.g. "X; Y"
        #[arg(long = "Y", alias = "y")]
        y: Option<String>,
        /// Divisor for an integrality check
        #[arg(long = "D", alias = "d")]
        d: Option<String>,
        /// Primes of S, e.g. "2, 3"
        #[arg(long = "S", alias = "s")]
        s: Option<String>,
        /// Coordinate names, e.g. "X, Y, Z"
        #[arg(long)]
        coords: Option<String>,
    },
}

impl Mode {
    fn settings(&self) -> (&'static str, Vec<(&'static str, &Option<String>)>) {
        fn scan(a: &ScanArgs) -> Vec<(&'static str, &Option<String>)> {
            vec![
                ("f", &a.f),
                ("g", &a.g),
                ("vars", &a.vars),
                ("generators", &a.generators),
                ("group", &a.group),
                ("signs", &a.signs),
                ("S", &a.s),
                ("B", &a.b),
            ]
        }
        match self {
            Mode::Scan(a) => ("scan", scan(a)),
            Mode::Detect { scan: s, theta, a } => {
                let mut v = scan(s);
                v.extend([("theta", theta), ("A", a)]);
                ("detect", v)
            }
            Mode::Gamma { n, ell, grid } => ("gamma", vec![("n", n), ("ell", ell), ("grid", grid)]),
            Mode::Verify { seed, samples } => {
                ("verify", vec![("seed", seed), ("samples", samples)])
            }
            Mode::Heights {
                points,
                y,
                d,
                s,
                coords,
            } => (
                "heights",
                vec![
                    ("points", points),
                    ("Y", y),
                    ("D", d),
                    ("S", s),
                    ("coords", coords),
                ],
            ),
        }
    }
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, LabError> {
    let mut cfg = ExperimentConfig::default();
    if let Some(name) = &cli.preset {
        let preset = presets::find(name).ok_or_else(|| LabError::UnknownPreset(name.clone()))?;
        cfg.merge(&preset.config()?);
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
            path: path.clone(),
            source,
        })?;
        let file = ExperimentConfig::parse(&text).map_err(|mut e| {
            e.origin = format!("{}: {}", path.display(), e.origin);
            e
        })?;
        cfg.merge(&file);
    }
    if let Some(mode) = &cli.mode {
        let (name, settings) = mode.settings();
        cfg.set("mode", name, "subcommand")?;
        for (key, value) in settings {
            if let Some(v) = value {
                cfg.set(key, v, &format!("--{key}"))?;
            }
        }
    }
    if let Some(out) = &cli.out {
        cfg.set("out", &out.to_string_lossy(), "--out")?;
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<Outcome, LabError> {
    let cfg = build_config(cli)?;
    let job = cfg.validate()?;
    let exec = RayonExecutor::new(cli.threads)?;
    let outcome = run(&job, &exec)?;
    match cfg.out() {
        Some(path) => {
            std::fs::write(&path, &outcome.csv).map_err(|source| LabError::Io { path, source })?;
            print!("{}", outcome.summary);
        }
        None => {
            print!("{}", outcome.csv);
            eprint!("{}", outcome.summary);
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_presets {
        for p in presets::PRESETS {
            println!("{:<18} {}", p.name, p.about);
        }
        return ExitCode::SUCCESS;
    }
    match execute(&cli) {
        Ok(outcome) => ExitCode::from(outcome.status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
