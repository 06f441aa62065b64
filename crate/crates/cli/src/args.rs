use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "jackht", version, about = "Jack measures, cumulant transforms and high-temperature experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Each can also be set through the
/// matching `JACKHT_*` environment variable.
#[derive(Args, Debug, Serialize)]
pub struct Global {
    /// Base seed for every random stream.
    #[arg(long, global = true, env = "JACKHT_SEED")]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[serde(skip)]
    #[arg(long, global = true, env = "JACKHT_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Output file; standard output when absent.
    #[serde(skip)]
    #[arg(long, global = true, env = "JACKHT_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "JACKHT_FORMAT", value_enum)]
    pub format: Option<Format>,
    /// Cap on total degree of exact symmetric-function expansions.
    #[arg(long, global = true, env = "JACKHT_DEGREE_CAP", default_value_t = 12)]
    pub degree_cap: usize,
    /// Cap on path length in the transforms.
    #[arg(long, global = true, env = "JACKHT_PATH_CAP", default_value_t = 14)]
    pub path_cap: usize,
    /// Largest partition size kept in measure tables; chosen from the
    /// tolerance when absent.
    #[arg(long, global = true, env = "JACKHT_SUPPORT_CUTOFF")]
    pub support_cutoff: Option<usize>,
    /// Truncation tolerance for tables and transition kernels.
    #[arg(long, global = true, env = "JACKHT_TOLERANCE", default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Moment/cumulant transforms.
    Transform(TransformArgs),
    /// Jack polynomial expansion, evaluation and LR coefficients.
    #[command(subcommand)]
    Jack(JackCommand),
    /// Exact algebraic checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Draw partitions from a Jack measure family.
    Sample(SampleArgs),
    /// Run the Markov chain and export particle trajectories.
    SimulateChain(ChainArgs),
    /// Law-of-large-numbers experiment from a JSON config.
    Lln(LlnArgs),
    /// LR convolution of two finite measures.
    Convolve(ConvolveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Cumulants to moments.
    K2m,
    /// Moments to cumulants.
    M2k,
    /// Cumulants to moments at γ = ∞.
    K2mInf,
    /// Top-degree part of the transform.
    K2mTop,
    /// γ = ∞ transform through Lagrange inversion.
    K2mLagrange,
}

#[derive(Args, Debug, Serialize)]
pub struct TransformArgs {
    #[arg(long = "dir", value_enum)]
    pub direction: Direction,
    /// `p/q` or `inf`.
    #[arg(long, default_value = "1")]
    pub gamma: String,
    /// JSON array of rationals, e.g. `["1/2", 0, 3]`.
    #[arg(long)]
    pub kappa: Option<String>,
    /// JSON array of rationals; input of `m2k`.
    #[arg(long)]
    pub moments: Option<String>,
    /// Output length; the input length by default.
    #[arg(long = "len")]
    pub len: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    P,
    Q,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JackCommand {
    /// Monomial-symmetric expansion of `P_λ` or `Q_λ`.
    Expand(JackExpandArgs),
    /// `P_λ(1^N)`, `Q_λ/P_λ`, and optionally the values on a specialization.
    Evaluate(JackEvalArgs),
    /// Coefficients of the product of two normalized Jack polynomials.
    Lr(LrArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct JackExpandArgs {
    /// JSON array; negative entries give a Laurent signature of length N.
    #[arg(long)]
    pub lambda: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    #[arg(long, value_enum, default_value_t = Normalization::P)]
    pub normalization: Normalization,
}

#[derive(Args, Debug, Serialize)]
pub struct JackEvalArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    /// Specialization as JSON, e.g. `{"kind":"pure_alpha","values":["1/2"]}`.
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct LrArgs {
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub nu: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCommand {
    /// Hecke exchange relations and commutativity on a monomial basis.
    Hecke(HeckeArgs),
    /// `F(ξ) P_λ = F(ℒ) P_λ` for small partitions.
    Eigen(EigenArgs),
    /// Skew Cauchy identity for two single-variable alpha specializations.
    SkewCauchy(SkewCauchyArgs),
    /// Transition probabilities out of one state sum to one.
    Stochastic(StochasticArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct HeckeArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EigenArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    /// Largest `|λ|` checked.
    #[arg(long, default_value_t = 5)]
    pub max_size: usize,
    /// Comma-separated symmetric functions from p1, p2, p3, …, e1, e2, ….
    #[arg(long, default_value = "p1,p2,p3,e2")]
    pub functions: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SkewCauchyArgs {
    #[arg(long)]
    pub theta: String,
    /// The alpha variable on the Q side.
    #[arg(long, default_value = "1/2")]
    pub a: String,
    /// The alpha variable on the P side.
    #[arg(long, default_value = "2/3")]
    pub b: String,
    /// Largest total degree `|λ|`.
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    /// Largest size of the inner partitions μ, ν.
    #[arg(long, default_value_t = 2)]
    pub inner: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct StochasticArgs {
    #[arg(long, default_value = "[]")]
    pub lambda: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    /// Specialization as JSON.
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 10)]
    pub jump_cutoff: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Table,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    /// Family as JSON, e.g. `{"family":"plancherel","t":"1"}`.
    #[arg(long)]
    pub family: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Write the measure table instead of samples.
    #[arg(long)]
    pub table: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// N = 60, θ = 1.
    FixedTemp,
    /// N = 60, θ = 2/N.
    Gamma2,
    /// N = 60, θ = 1/(2N).
    GammaHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Kernel,
    Growth,
}

#[derive(Args, Debug, Serialize)]
pub struct ChainArgs {
    /// Step specialization as JSON. Presets use `Planch(1/θ)`.
    #[arg(long, required_unless_present = "preset")]
    pub spec: Option<String>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub trajectories: usize,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Initial partition as JSON.
    #[arg(long, default_value = "[]")]
    pub initial: String,
    #[arg(long, default_value_t = 10)]
    pub jump_cutoff: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct LlnArgs {
    /// Experiment config file; `-` reads standard input.
    #[arg(long)]
    pub config: PathBuf,
    /// Also write the per-moment rows as CSV here.
    #[serde(skip)]
    #[arg(long)]
    pub rows_csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ConvolveArgs {
    /// Measure as JSON `[[[2,1], "1/2"], …]`.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub theta: String,
    /// Degree of the log-JGF comparison.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
}
