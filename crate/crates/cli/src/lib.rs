//! Command-line front end for `tiltmult`.

mod svg;
mod verify;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tiltmult::matchings::{dyck_to_matching, enumerate_matchings, matching_to_dyck, NoncrossingMatching};
use tiltmult::paths::{enumerate_bounded, enumerate_paths, BoundedPathQuery, CatalanPath};
use tiltmult::plot::{plot_rows, write_plot_csv};
use tiltmult::sl2::t_dp;
use tiltmult::spectral::{matrix_power_column, p_spectral_auto, SpectralValue, DEFAULT_PRECISION_BITS};
use tiltmult::tilting::{p_dp, p_explicit, p_from_paths, PathBackend};
use tiltmult::{BigNat, Error, RootOrder};

pub use svg::render_svg;
pub use verify::{run_suite, CheckOutcome};

/// Environment variable holding the starting precision, in bits, of the
/// extended-precision spectral evaluation.
pub const PRECISION_ENV: &str = "TILTMULT_PRECISION_BITS";

/// Widest precision the spectral backend escalates to.
pub const MAX_PRECISION_BITS: u32 = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "tiltmult", version, about = "Tilting and sl2 multiplicities in tensor powers of the fundamental module")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical multiplicities t(k, N) of V(k) in V(1)^N.
    T {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Tilting multiplicities p(k, N) of T(k) in T(1)^N.
    P {
        #[arg(long)]
        l: RootOrder,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Backend::Dp)]
        backend: Backend,
    },
    /// Full decomposition of T(1)^N into tilting modules.
    Decompose {
        #[arg(long)]
        l: RootOrder,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Catalan and partially l-bounded paths.
    Paths {
        #[command(subcommand)]
        action: PathsAction,
    },
    /// Noncrossing perfect matchings.
    Matchings {
        #[command(subcommand)]
        action: MatchingsAction,
    },
    /// Image of a Dyck path or a noncrossing matching under the bijection.
    Bijection {
        #[arg(long, conflicts_with = "matching", required_unless_present = "matching")]
        path: Option<String>,
        #[arg(long)]
        matching: Option<String>,
    },
    /// Cross-check every backend against every other one.
    Verify {
        #[arg(long)]
        l: RootOrder,
        #[arg(long = "max-N")]
        max_n: usize,
    },
    /// Plot data comparing p(k, N) with its leading asymptotic term.
    Asymptotics {
        #[arg(long)]
        l: RootOrder,
        #[arg(long)]
        k: usize,
        #[arg(long = "max-N")]
        max_n: usize,
        #[arg(long = "min-N", default_value_t = 0)]
        min_n: usize,
        /// Also write an SVG plot to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the CSV to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PathsAction {
    /// List the paths of length N ending at height k, in lexicographic order of
    /// their steps with down before up.
    Enumerate {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Restrict to partially l-bounded paths.
        #[arg(long)]
        l: Option<RootOrder>,
        #[arg(long, requires = "l")]
        k1: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatchingsAction {
    /// List the matchings on 2N points next to their Dyck paths.
    Enumerate {
        #[arg(long = "N")]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Dp,
    Explicit,
    Paths,
    Spectral,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Usage(String),
    /// A computed value disagreed with another backend or failed a check; exit
    /// status 1.
    Failure(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precision { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Starting precision for the spectral backend, from [`PRECISION_ENV`].
pub fn precision_bits() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(b) if (1..=MAX_PRECISION_BITS).contains(&b) => Ok(b),
            _ => Err(CliError::Usage(format!(
                "{PRECISION_ENV} must be an integer in 1..={MAX_PRECISION_BITS}, got {s:?}"
            ))),
        },
    }
}

/// Spectral value at the smallest certified precision, starting from `bits` and
/// doubling.
pub fn spectral_value(k: usize, n: usize, l: RootOrder, mut bits: u32) -> Result<SpectralValue, Error> {
    loop {
        match p_spectral_auto(k, n, l, bits) {
            Err(Error::Precision { .. }) if bits < MAX_PRECISION_BITS => bits = (bits * 2).min(MAX_PRECISION_BITS),
            other => return other,
        }
    }
}

pub fn run(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::T { n, k } => {
            let row = t_dp(*n);
            match k {
                Some(k) => writeln!(out, "{}", row.get(*k))?,
                None => {
                    for (k, m) in row.to_table().iter() {
                        writeln!(out, "{k}: {m}")?;
                    }
                }
            }
            Ok(())
        }
        Command::P { l, n, k, backend } => run_p(*l, *n, *k, *backend, out),
        Command::Decompose { l, n, format } => {
            let table = p_dp(*n, *l).to_table();
            match format {
                Format::Json => writeln!(out, "{}", table.to_json())?,
                Format::Csv => {
                    writeln!(out, "k,multiplicity")?;
                    for (k, m) in table.iter() {
                        writeln!(out, "{k},{m}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Paths {
            action: PathsAction::Enumerate { n, k, l, k1 },
        } => {
            let paths = match l {
                None => enumerate_paths(*n, *k)?,
                Some(l) => enumerate_bounded(&bounded_query(*n, *k, *l, *k1)?)?,
            };
            for p in paths {
                writeln!(out, "{p}")?;
            }
            Ok(())
        }
        Command::Matchings {
            action: MatchingsAction::Enumerate { n },
        } => {
            for m in enumerate_matchings(*n)? {
                writeln!(out, "{}  {}", display_matching(&m), matching_to_dyck(&m))?;
            }
            Ok(())
        }
        Command::Bijection { path, matching } => {
            if let Some(p) = path {
                let p: CatalanPath = p.parse()?;
                writeln!(out, "{}", display_matching(&dyck_to_matching(&p)?))?;
            } else if let Some(m) = matching {
                let m: NoncrossingMatching = m.parse()?;
                writeln!(out, "{}", matching_to_dyck(&m))?;
            }
            Ok(())
        }
        Command::Verify { l, max_n } => {
            let bits = precision_bits()?;
            let outcomes = run_suite(*l, *max_n, bits);
            let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
            let mut failed = 0;
            for o in &outcomes {
                match &o.failure {
                    None => writeln!(out, "PASS  {:width$}  {}", o.name, o.detail)?,
                    Some(f) => {
                        failed += 1;
                        writeln!(out, "FAIL  {:width$}  {}", o.name, f.message)?;
                        writeln!(out, "      reproduce: {}", f.reproduce)?;
                    }
                }
            }
            if failed > 0 {
                return Err(CliError::Failure(format!("{failed} of {} checks failed", outcomes.len())));
            }
            writeln!(out, "all {} checks passed", outcomes.len())?;
            Ok(())
        }
        Command::Asymptotics {
            l,
            k,
            max_n,
            min_n,
            svg,
            output,
        } => {
            if min_n > max_n {
                return Err(CliError::Usage(format!("--min-N {min_n} exceeds --max-N {max_n}")));
            }
            let rows = plot_rows(*l, *k, *min_n..=*max_n)?;
            match output {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    write_plot_csv(&mut w, &rows)?;
                    w.flush()?;
                }
                None => write_plot_csv(out, &rows)?,
            }
            if let Some(path) = svg {
                std::fs::write(path, render_svg(&rows))?;
            }
            Ok(())
        }
    }
}

fn display_matching(m: &NoncrossingMatching) -> String {
    if m.size() == 0 {
        "(empty)".to_string()
    } else {
        m.to_string()
    }
}

fn bounded_query(n: usize, k: usize, l: RootOrder, k1: Option<usize>) -> Result<BoundedPathQuery, CliError> {
    let q = BoundedPathQuery::ending_at(n, l, k);
    match k1 {
        Some(k1) if k1 != q.k1 => Err(CliError::Usage(format!(
            "end height k={k} lies in block k1={} for l={l}, not k1={k1}",
            q.k1
        ))),
        _ => Ok(q),
    }
}

fn run_p(l: RootOrder, n: usize, k: Option<usize>, backend: Backend, out: &mut dyn Write) -> Result<(), CliError> {
    let row = p_dp(n, l);
    let small = matches!(backend, Backend::Spectral | Backend::Matrix);
    if let Some(k) = k {
        if small && k + 2 > l.get() {
            return Err(CliError::Usage(format!(
                "the {} backend needs k <= l-2, got k={k}, l={l}",
                backend.to_possible_value().expect("no skipped variants").get_name()
            )));
        }
    }
    let weights: Vec<usize> = match k {
        Some(k) => vec![k],
        None if small => (0..=n.min(l.get() - 2)).collect(),
        None => (0..=n).collect(),
    };
    let bits = if backend == Backend::Spectral { precision_bits()? } else { 0 };
    let column = if backend == Backend::Matrix { matrix_power_column(n, l) } else { Vec::new() };
    let mut mismatches = 0;
    for &w in &weights {
        let value: BigNat = match backend {
            Backend::Dp => row.get(w).clone(),
            Backend::Explicit => p_explicit(w, n, l),
            Backend::Paths => p_from_paths(w, n, l, PathBackend::Count)?,
            Backend::Spectral => spectral_value(w, n, l, bits)?.rounded,
            Backend::Matrix => column[w].clone(),
        };
        let marker = if backend == Backend::Dp {
            String::new()
        } else if &value == row.get(w) {
            " (matches dp)".to_string()
        } else {
            mismatches += 1;
            format!(" (MISMATCH: dp gives {})", row.get(w))
        };
        if k.is_some() {
            writeln!(out, "{value}{marker}")?;
        } else {
            writeln!(out, "{w}: {value}{marker}")?;
        }
    }
    if mismatches > 0 {
        return Err(CliError::Failure(format!("{mismatches} value(s) disagree with dp")));
    }
    Ok(())
}
