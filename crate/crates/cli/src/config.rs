//! Run configuration: command-line flags layered over an optional TOML file.
//!
//! Defaults (used when neither the file nor a flag sets a value):
//!
//! | field | default |
//! |---|---|
//! | `grid.n` | `1,2,3` |
//! | `grid.x` | `0.5,1,2,5` |
//! | `grid.n-max` | `3` |
//! | `grid.terms` | `8` |
//! | `suite` | `all` |
//! | `method` | `direct` |
//! | `budget` | per-command (library defaults) |
//! | `output.format` | from the `--out` extension, else `csv` |
//! | `output.path` | stdout |

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use sqbessel_core::kernels::{KernelKind, Method, MAX_ARGUMENT, MAX_INDEX};
use sqbessel_core::quadrature::QuadratureBudget;
use sqbessel_core::transforms::TransformKind;
use sqbessel_core::verify::Suite;

/// A problem with the command line or config file. Always exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Kernel,
    Forward,
    Inverse,
    Verify,
    Roundtrip,
    Calibrate,
}

/// A transform (`nicholson`, `re`, `im`) or a kernel. `nicholson` names both
/// the transform and its forward kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum KindName {
    Nicholson,
    Re,
    Im,
    ReSquare,
    ImSquare,
    Phi,
    Psi,
    Omega,
}

impl KindName {
    pub fn kernel(self) -> KernelKind {
        match self {
            KindName::Nicholson => KernelKind::Nicholson,
            KindName::Re | KindName::ReSquare => KernelKind::ReSquare,
            KindName::Im | KindName::ImSquare => KernelKind::ImSquare,
            KindName::Phi => KernelKind::Phi,
            KindName::Psi => KernelKind::Psi,
            KindName::Omega => KernelKind::Omega,
        }
    }

    pub fn transform(self) -> Option<TransformKind> {
        match self {
            KindName::Nicholson => Some(TransformKind::Nicholson),
            KindName::Re => Some(TransformKind::Re),
            KindName::Im => Some(TransformKind::Im),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Identities,
    Bounds,
    Roundtrips,
    All,
}

impl SuiteName {
    pub fn suite(self) -> Suite {
        match self {
            SuiteName::Identities => Suite::Identities,
            SuiteName::Bounds => Suite::Bounds,
            SuiteName::Roundtrips => Suite::Roundtrips,
            SuiteName::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodName {
    Direct,
    Integral,
}

impl MethodName {
    pub fn method(self) -> Method {
        match self {
            MethodName::Direct => Method::Direct,
            MethodName::Integral => Method::Integral,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct GridConfig {
    pub n: Vec<u32>,
    pub x: Vec<f64>,
    pub n_max: u32,
    pub terms: u32,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { n: vec![1, 2, 3], x: vec![0.5, 1.0, 2.0, 5.0], n_max: 3, terms: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct BudgetConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub max_tail_blocks: usize,
}

impl From<QuadratureBudget> for BudgetConfig {
    fn from(b: QuadratureBudget) -> Self {
        BudgetConfig {
            rel_tol: b.rel_tol,
            abs_tol: b.abs_tol,
            max_subdivisions: b.max_subdivisions,
            max_tail_blocks: b.max_tail_blocks,
        }
    }
}

impl BudgetConfig {
    pub fn budget(&self) -> QuadratureBudget {
        QuadratureBudget {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
            max_tail_blocks: self.max_tail_blocks,
        }
    }
}

/// A trigonometric profile `Σ s_k sin(ku) + Σ c_k cos(ku)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub struct ProfileConfig {
    #[serde(default)]
    pub sines: Vec<f64>,
    #[serde(default)]
    pub cosines: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<KindName>,
    pub suite: SuiteName,
    pub method: MethodName,
    /// Coefficients `a_1, a_2, …` of a forward series.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<f64>>,
    pub grid: GridConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileConfig>,
    /// `None` leaves each command on its library default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetConfig>,
    pub output: OutputConfig,
}

/// The config file: every field optional, nested like [`RunConfig`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    command: Option<CommandName>,
    kind: Option<KindName>,
    suite: Option<SuiteName>,
    method: Option<MethodName>,
    sequence: Option<Vec<f64>>,
    #[serde(default)]
    grid: FileGrid,
    profile: Option<ProfileConfig>,
    budget: Option<FileBudget>,
    #[serde(default)]
    output: FileOutput,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileGrid {
    n: Option<Vec<u32>>,
    x: Option<Vec<f64>>,
    n_max: Option<u32>,
    terms: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileBudget {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_subdivisions: Option<usize>,
    max_tail_blocks: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileOutput {
    path: Option<PathBuf>,
    format: Option<Format>,
}

/// Index transforms whose kernels are squares of Bessel functions of
/// imaginary order.
#[derive(Debug, Parser)]
#[command(name = "sqbessel", version)]
struct Cli {
    /// What to run; may instead come from the config file.
    #[arg(value_enum)]
    command: Option<CommandName>,
    /// TOML file mirroring the run configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<KindName>,
    /// Comma-separated indices.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Comma-separated arguments.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<f64>>,
    #[arg(long)]
    n_max: Option<u32>,
    /// Reconstruction terms.
    #[arg(long)]
    terms: Option<u32>,
    #[arg(long, value_enum)]
    suite: Option<SuiteName>,
    #[arg(long, value_enum)]
    method: Option<MethodName>,
    /// Comma-separated coefficients a_1, a_2, ….
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sequence: Option<Vec<f64>>,
    /// Comma-separated sine coefficients of the profile.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sines: Option<Vec<f64>>,
    /// Comma-separated cosine coefficients of the profile.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    cosines: Option<Vec<f64>>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    max_subdivisions: Option<usize>,
    #[arg(long)]
    max_tail_blocks: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Outcome of reading the command line.
#[derive(Debug)]
pub enum Parsed {
    Run(Box<RunConfig>),
    /// `--help` or `--version`: print the text and exit 0.
    Info(String),
}

/// Parses `args` (including the program name), reading `--config` if given.
pub fn parse_args<I, T>(args: I) -> Result<Parsed, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Ok(Parsed::Info(e.to_string()))
                }
                _ => usage(e.to_string()),
            }
        }
    };
    let file = match &cli.config {
        Some(path) => Some(read_file(path)?),
        None => None,
    };
    parse_config(cli, file).map(|c| Parsed::Run(Box::new(c)))
}

/// Reads and parses a TOML run file.
pub fn config_from_toml(text: &str) -> Result<RunConfig, UsageError> {
    let file: FileConfig = toml::from_str(text).map_err(|e| UsageError(format!("config file: {e}")))?;
    resolve(file)
}

impl RunConfig {
    /// TOML text that [`config_from_toml`] turns back into `self`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configs always serialize")
    }

    pub fn transform(&self) -> Result<TransformKind, UsageError> {
        match self.kind {
            None => usage("--kind is required for this command"),
            Some(k) => k
                .transform()
                .map_or_else(|| usage(format!("--kind {k:?} is a kernel, not a transform (use nicholson, re or im)").to_lowercase()), Ok),
        }
    }
}

fn read_file(path: &Path) -> Result<FileConfig, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("--config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("--config {}: {e}", path.display())))
}

fn parse_config(cli: Cli, file: Option<FileConfig>) -> Result<RunConfig, UsageError> {
    let mut f = file.unwrap_or_default();
    // flags win over the file
    macro_rules! overlay {
        ($($dst:expr => $src:expr),* $(,)?) => { $( if let Some(v) = $src { $dst = Some(v); } )* };
    }
    overlay!(
        f.command => cli.command,
        f.kind => cli.kind,
        f.suite => cli.suite,
        f.method => cli.method,
        f.sequence => cli.sequence,
        f.grid.n => cli.n,
        f.grid.x => cli.x,
        f.grid.n_max => cli.n_max,
        f.grid.terms => cli.terms,
        f.output.path => cli.out,
        f.output.format => cli.format,
    );
    if cli.sines.is_some() || cli.cosines.is_some() {
        let p = f.profile.get_or_insert_with(ProfileConfig::default);
        if let Some(s) = cli.sines {
            p.sines = s;
        }
        if let Some(c) = cli.cosines {
            p.cosines = c;
        }
    }
    if cli.rel_tol.is_some() || cli.abs_tol.is_some() || cli.max_subdivisions.is_some() || cli.max_tail_blocks.is_some() {
        let b = f.budget.get_or_insert_with(FileBudget::default);
        overlay!(
            b.rel_tol => cli.rel_tol,
            b.abs_tol => cli.abs_tol,
            b.max_subdivisions => cli.max_subdivisions,
            b.max_tail_blocks => cli.max_tail_blocks,
        );
    }
    resolve(f)
}

fn resolve(f: FileConfig) -> Result<RunConfig, UsageError> {
    let Some(command) = f.command else {
        return usage("missing command (kernel, forward, inverse, verify, roundtrip or calibrate)");
    };
    let defaults = GridConfig::default();
    let grid = GridConfig {
        n: f.grid.n.unwrap_or(defaults.n),
        x: f.grid.x.unwrap_or(defaults.x),
        n_max: f.grid.n_max.unwrap_or(defaults.n_max),
        terms: f.grid.terms.unwrap_or(defaults.terms),
    };
    let budget = f.budget.map(|b| {
        let d = QuadratureBudget::default();
        BudgetConfig {
            rel_tol: b.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: b.abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: b.max_subdivisions.unwrap_or(d.max_subdivisions),
            max_tail_blocks: b.max_tail_blocks.unwrap_or(d.max_tail_blocks),
        }
    });
    let format = f.output.format.unwrap_or_else(|| match &f.output.path {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => Format::Json,
        _ => Format::Csv,
    });
    let config = RunConfig {
        command,
        kind: f.kind,
        suite: f.suite.unwrap_or(SuiteName::All),
        method: f.method.unwrap_or(MethodName::Direct),
        sequence: f.sequence,
        grid,
        profile: f.profile,
        budget,
        output: OutputConfig { path: f.output.path, format },
    };
    validate(&config)?;
    Ok(config)
}

fn validate(c: &RunConfig) -> Result<(), UsageError> {
    let g = &c.grid;
    if g.n.is_empty() || g.x.is_empty() {
        return usage("--n and --x need at least one value");
    }
    if let Some(&n) = g.n.iter().find(|&&n| n == 0 || n > MAX_INDEX) {
        return usage(format!("--n: index {n} outside 1..={MAX_INDEX}"));
    }
    if let Some(&x) = g.x.iter().find(|&&x| !(x > 0.0 && x <= MAX_ARGUMENT)) {
        return usage(format!("--x: argument {x} outside (0, {MAX_ARGUMENT}]"));
    }
    if g.n_max == 0 || g.n_max > MAX_INDEX {
        return usage(format!("--n-max: {} outside 1..={MAX_INDEX}", g.n_max));
    }
    if g.terms == 0 || g.terms > MAX_INDEX {
        return usage(format!("--terms: {} outside 1..={MAX_INDEX}", g.terms));
    }
    if let Some(b) = &c.budget {
        if b.budget().validate().is_err() {
            return usage("--rel-tol/--abs-tol must be positive and limits nonzero");
        }
    }
    if c.sequence.is_some() && c.profile.is_some() {
        return usage("--sequence and a profile (--sines/--cosines) are mutually exclusive");
    }
    if let Some(s) = &c.sequence {
        if s.is_empty() || s.len() > MAX_INDEX as usize || s.iter().any(|v| !v.is_finite()) {
            return usage(format!("--sequence: 1 to {MAX_INDEX} finite coefficients required"));
        }
    }
    if let Some(p) = &c.profile {
        if p.sines.iter().chain(&p.cosines).any(|v| !v.is_finite()) || p.sines.len() + p.cosines.len() == 0 {
            return usage("--sines/--cosines: at least one finite coefficient required");
        }
    }
    match c.command {
        CommandName::Kernel if c.kind.is_none() => usage("--kind is required for the kernel command"),
        CommandName::Forward | CommandName::Inverse | CommandName::Roundtrip => {
            c.transform()?;
            if c.command == CommandName::Forward && c.sequence.is_none() && c.profile.is_none() {
                return usage("forward needs --sequence or a profile (--sines/--cosines)");
            }
            if c.command == CommandName::Inverse && c.sequence.is_none() {
                return usage("inverse needs --sequence (the inversion applies to forward series)");
            }
            Ok(())
        }
        CommandName::Calibrate if c.kind.is_some() => c.transform().map(|_| ()),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunConfig, UsageError> {
        match parse_args(std::iter::once("sqbessel").chain(args.iter().copied()))? {
            Parsed::Run(c) => Ok(*c),
            Parsed::Info(_) => panic!("unexpected info"),
        }
    }

    #[test]
    fn verify_flags() {
        let c = run(&["verify", "--suite", "identities", "--n-max", "4", "--out", "report.csv"]).unwrap();
        assert_eq!(c.command, CommandName::Verify);
        assert_eq!(c.suite, SuiteName::Identities);
        assert_eq!(c.grid.n_max, 4);
        assert_eq!(c.output.format, Format::Csv);
    }

    #[test]
    fn kernel_table_request() {
        let c = run(&["kernel", "--kind", "nicholson", "--n", "1,2", "--x", "0.5,1,2", "--format", "json"]).unwrap();
        assert_eq!(c.kind, Some(KindName::Nicholson));
        assert_eq!(c.grid.n, vec![1, 2]);
        assert_eq!(c.grid.x, vec![0.5, 1.0, 2.0]);
        assert_eq!(c.output.format, Format::Json);
    }

    #[test]
    fn missing_kind_names_the_flag() {
        let e = run(&["kernel", "--n", "1"]).unwrap_err();
        assert!(e.0.contains("--kind"), "{e}");
    }

    #[test]
    fn bad_values_are_rejected() {
        assert!(run(&["kernel", "--kind", "phi", "--x", "-1"]).unwrap_err().0.contains("--x"));
        assert!(run(&["kernel", "--kind", "phi", "--n", "0"]).unwrap_err().0.contains("--n"));
        assert!(run(&["forward", "--kind", "psi", "--sequence", "1"]).is_err());
        assert!(run(&["forward", "--kind", "re"]).is_err());
        assert!(run(&["bogus"]).is_err());
    }

    #[test]
    fn json_extension_selects_json() {
        let c = run(&["calibrate", "--out", "cal.JSON"]).unwrap();
        assert_eq!(c.output.format, Format::Json);
    }

    #[test]
    fn toml_round_trip() {
        let c = run(&[
            "roundtrip", "--kind", "im", "--sines", "1,0,0.25", "--x", "0.5,1", "--rel-tol", "1e-8", "--out", "r.json",
        ])
        .unwrap();
        let back = config_from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_file_keys_are_rejected() {
        assert!(config_from_toml("command = \"verify\"\nbogus = 1\n").is_err());
    }
}
