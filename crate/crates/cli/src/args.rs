use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Finite decimal numbers only; `inf`, `nan` and friends are rejected.
pub fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(format!("'{s}' is not a finite number")),
        Err(_) => Err(format!("'{s}' is not a decimal number")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

pub fn sign(s: &str) -> Result<SignArg, String> {
    match s {
        "+" | "plus" => Ok(SignArg::Plus),
        "-" | "minus" => Ok(SignArg::Minus),
        _ => Err(format!("'{s}' is not a sign (expected + or -)")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NMaxArg {
    Auto,
    Upto(usize),
}

pub fn n_max(s: &str) -> Result<NMaxArg, String> {
    if s == "auto" {
        return Ok(NMaxArg::Auto);
    }
    s.parse().map(NMaxArg::Upto).map_err(|_| format!("'{s}' is neither 'auto' nor a non-negative integer"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "scarf",
    version,
    about = "Spectra, eigenfunctions, scattering and deformations of the complex Scarf II potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long = "A", value_parser = finite)]
    pub a: Option<f64>,
    #[arg(long = "B", value_parser = finite)]
    pub b: Option<f64>,
    #[arg(long = "C", value_parser = finite, default_value = "0")]
    pub c: f64,
    #[arg(long, value_parser = finite, default_value = "1")]
    pub alpha: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format; `classify` prints the bare class name when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Defaults to `-12/alpha`.
    #[arg(long, value_parser = finite)]
    pub xmin: Option<f64>,
    /// Defaults to `12/alpha`.
    #[arg(long, value_parser = finite)]
    pub xmax: Option<f64>,
    #[arg(long, default_value = "401")]
    pub points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    One,
    Two,
    Both,
    Pt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LadderBranch {
    #[value(alias = "One")]
    One,
    #[value(alias = "Two")]
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    None,
    Sup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// `Pt` at `C = 0`, `general` otherwise.
    Auto,
    Pt,
    General,
    /// `W² - W'` of `--branch`.
    PartnerMinus,
    /// `W² + W'` of `--branch`.
    PartnerPlus,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bernoulli,
    Miura,
    Kdv,
    Mkdv,
    Ladder,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Domain of a parameter point.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form eigenvalues.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "both")]
        branch: BranchArg,
        /// Highest level index, or `auto` for every bound level.
        #[arg(long, value_parser = n_max, default_value = "auto")]
        n_max: NMaxArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form eigenfunction on a grid (PT line only).
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = sign, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "none")]
        normalize: NormalizeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Potential on a grid.
    #[command(allow_negative_numbers = true)]
    Potential {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "auto")]
        kind: KindArg,
        /// Sign of the general potential.
        #[arg(long, value_parser = sign, default_value = "+", allow_hyphen_values = true)]
        sign: SignArg,
        /// Superpotential branch for the partner kinds.
        #[arg(long, value_enum, default_value = "one")]
        branch: LadderBranch,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Refractive-index profile of the equivalent optical structure.
    #[command(allow_negative_numbers = true)]
    Index {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = finite)]
        k0: f64,
        #[arg(long, value_parser = finite)]
        epsb: f64,
        /// Incidence angle in radians.
        #[arg(long, value_parser = finite, default_value = "0")]
        theta: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reflection and transmission at one energy or over a scan.
    #[command(allow_negative_numbers = true)]
    Scatter {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "E", value_parser = finite, conflicts_with_all = ["emin", "emax"])]
        e: Option<f64>,
        #[arg(long = "Emin", value_parser = finite, requires = "emax")]
        emin: Option<f64>,
        #[arg(long = "Emax", value_parser = finite, requires = "emin")]
        emax: Option<f64>,
        #[arg(long, default_value = "101")]
        samples: usize,
        /// First scan index to compute (resume point).
        #[arg(long, default_value = "0")]
        from: usize,
        /// One past the last scan index to compute.
        #[arg(long)]
        to: Option<usize>,
        /// Half-width of the integration window; defaults to `15/alpha + 5`.
        #[arg(long = "L", value_parser = finite)]
        l: Option<f64>,
        /// Largest `|V(±L)|` accepted.
        #[arg(long, value_parser = finite, default_value = "1e-4")]
        decay_tol: f64,
        #[arg(long, value_enum, default_value = "auto")]
        kind: KindArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classification and ground state along a one-parameter line.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long = "start", value_parser = finite)]
        start: f64,
        #[arg(long = "stop", value_parser = finite)]
        stop: f64,
        #[arg(long, default_value = "61")]
        steps: usize,
        /// Keep `B = A + alpha/2` at every point.
        #[arg(long)]
        pt_line: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerical checks of the closed forms.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "one")]
        branch: LadderBranch,
        /// Ladder levels compared.
        #[arg(long, default_value = "8")]
        k: usize,
        /// Miura sign; both when omitted.
        #[arg(long, value_parser = sign, allow_hyphen_values = true)]
        sign: Option<SignArg>,
        /// Oracle box half-width; defaults to `max(20/alpha, 20)`.
        #[arg(long = "L", value_parser = finite)]
        l: Option<f64>,
        /// Oracle interior points of the coarse grid.
        #[arg(long = "N", default_value = "2000")]
        n: usize,
        /// Sample points on `[-5/alpha, 5/alpha]` for the deformation suites.
        #[arg(long, default_value = "21")]
        points: usize,
        /// Absolute eigenvalue tolerance of the oracle and ladder suites.
        #[arg(long, value_parser = finite, default_value = "1e-6")]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Raster of the real-phase `(A, B)` plane with asymptotes and markers.
    #[command(allow_negative_numbers = true)]
    Atlas {
        #[arg(long, value_parser = finite, default_value = "1")]
        alpha: f64,
        #[arg(long, value_parser = finite, default_value = "-3")]
        amin: f64,
        #[arg(long, value_parser = finite, default_value = "3")]
        amax: f64,
        #[arg(long, value_parser = finite, default_value = "-3")]
        bmin: f64,
        #[arg(long, value_parser = finite, default_value = "3")]
        bmax: f64,
        /// Cells per axis.
        #[arg(long, default_value = "121")]
        resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}
