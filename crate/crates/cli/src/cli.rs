//! Command-line surface. Verbs: generate, spectrum, stieltjes, moments,
//! ball, concentrate, converge. Complex flags use the `a+bi` literal form.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "paspectra",
    version,
    about = "Preferential-attachment multigraphs, normalized Laplacian spectra, and Stieltjes/Neumann studies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Eigenvalue sum over the computed spectrum
    Direct,
    /// n complex linear solves (L - zI) x = delta_u
    Solve,
    /// Truncated Neumann series with rigorous tail bound (z in D only)
    Neumann,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grow a preferential-attachment multigraph and write a .pa file
    Generate {
        /// Number of vertices (integer >= 2)
        #[arg(long, value_name = "INT")]
        n: u32,
        /// Edges per new vertex (integer >= 2)
        #[arg(long, value_name = "INT")]
        m: u32,
        /// 64-bit PRNG seed
        #[arg(long, value_name = "INT", default_value_t = 0)]
        seed: u64,
        /// Output graph file path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Eigenvalues of the normalized Laplacian, with optional ESD histogram
    Spectrum {
        /// Input .pa graph file
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Output file (CSV: index,eigenvalue)
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Histogram bins over [0, 2]
        #[arg(long, value_name = "INT", default_value_t = 100)]
        bins: usize,
        /// Also write the ESD histogram to this CSV path
        #[arg(long, value_name = "PATH")]
        hist: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, value_name = "FMT", default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Stieltjes transform m_n(z); single graph or seed-ensemble estimate
    Stieltjes {
        /// Input .pa graph file (single-graph mode)
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Evaluation point a+bi with Im z > 0 (repeatable)
        #[arg(
            long = "z",
            value_name = "COMPLEX",
            required = true,
            allow_hyphen_values = true
        )]
        z: Vec<String>,
        /// Evaluation method
        #[arg(long, value_enum, value_name = "METHOD", default_value_t = Method::Direct)]
        method: Method,
        /// Neumann truncation level (integer >= 1)
        #[arg(long = "K", value_name = "INT")]
        k: Option<u32>,
        /// Neumann accuracy target; K becomes the smallest level whose tail
        /// bound is <= eps
        #[arg(long, value_name = "REAL")]
        eps: Option<f64>,
        /// Ensemble mode: edges per new vertex
        #[arg(long, value_name = "INT")]
        m: Option<u32>,
        /// Ensemble mode: comma-separated graph sizes
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        n_list: Vec<u32>,
        /// Explicit comma-separated seed list
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Seed range start:count (default 0:30 in ensemble mode)
        #[arg(long, value_name = "START:COUNT")]
        seed_range: Option<String>,
        /// Output file path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Output format
        #[arg(long, value_enum, value_name = "FMT", default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Normalized trace moments (1/n) Tr(W^k) for k = 0..=k-max
    Moments {
        /// Input .pa graph file
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Largest moment order
        #[arg(long, value_name = "INT", default_value_t = 8)]
        k_max: u32,
        /// Output file path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Output format
        #[arg(long, value_enum, value_name = "FMT", default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Extract a decorated rooted ball and write its dump
    Ball {
        /// Input .pa graph file
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Root vertex (1-based label)
        #[arg(long, value_name = "INT")]
        root: u32,
        /// Ball radius (integer >= 0)
        #[arg(long, value_name = "INT")]
        r: u32,
        /// Output file path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Multi-seed self-averaging study of local return-probability averages
    Concentrate {
        /// Edges per new vertex
        #[arg(long, value_name = "INT", default_value_t = 2)]
        m: u32,
        /// Comma-separated graph sizes
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            default_value = "500,4000"
        )]
        n_list: Vec<u32>,
        /// Explicit comma-separated seed list
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Seed range start:count (default 0:30)
        #[arg(long, value_name = "START:COUNT")]
        seed_range: Option<String>,
        /// Comma-separated walk lengths k
        #[arg(long, value_name = "LIST", value_delimiter = ',', default_value = "4")]
        k_list: Vec<u32>,
        /// Degree-truncation rule: `logn` or `fixed:<K>`
        #[arg(long, value_name = "RULE", default_value = "logn")]
        k_rule: String,
        /// Output directory (files embed the config hash)
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        /// Worker threads over (n, seed) cells; results independent of N
        #[arg(long, value_name = "INT", default_value_t = 1)]
        jobs: usize,
    },
    /// Cross-size stabilization study: moments, ESD, and Stieltjes values
    Converge {
        /// Edges per new vertex
        #[arg(long, value_name = "INT", default_value_t = 2)]
        m: u32,
        /// Comma-separated graph sizes (need >= 3)
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            default_value = "250,1000,4000"
        )]
        n_list: Vec<u32>,
        /// Explicit comma-separated seed list
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Seed range start:count (default 0:5)
        #[arg(long, value_name = "START:COUNT")]
        seed_range: Option<String>,
        /// Comma-separated moment orders
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            default_value = "2,3,4"
        )]
        k_list: Vec<u32>,
        /// Comma-separated a+bi evaluation points (direct method)
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "1+1.25i,1+1.5i,1+2i,1+3i,3+i,-1+i"
        )]
        z_list: Vec<String>,
        /// Histogram bins over [0, 2]
        #[arg(long, value_name = "INT", default_value_t = 100)]
        bins: usize,
        /// Output directory (files embed the config hash)
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        /// Worker threads over (n, seed) cells; results independent of N
        #[arg(long, value_name = "INT", default_value_t = 1)]
        jobs: usize,
    },
}
