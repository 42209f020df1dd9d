use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fpcoh_core::towers::{Criterion, TowerTemplate};
use fpcoh_core::weights::GaloisData;
use fpcoh_core::SubgroupSpec;

use crate::commands::{
    cmd_cohom, cmd_tower, cmd_verify41, cmd_weights, CohomArgs, LatticeArgs, Output, TowerArgs, Verify41Args,
    WeightsArgs,
};
use crate::survey::{run_survey, survey_csv, survey_json, PrimeRange};
use crate::{Cache, CliError, Corpus, Options};

#[derive(Debug, Parser)]
#[command(name = "fpcoh", version, about = "Mod-p first cohomology along congruence towers")]
pub struct Cli {
    /// Directory for cached JSON results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest module dimension attempted.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_dim: usize,
    /// Worker threads for the survey.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for randomized checks; computations themselves are deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Corpus file; the built-in corpus when absent.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H⁰, H¹, Ω¹ and Δ⁰ with coefficients in a coset module.
    Cohom(CohomCmd),
    /// H¹ along a congruence tower with the growth criteria.
    Tower(TowerCmd),
    /// Survey table over the corpus and a range of primes.
    Survey(SurveyCmd),
    /// Lowest-degree coverage of Δ and ∂ ⊕ δ on truncated modules.
    Verify41(Verify41Cmd),
    /// Representation-theoretic data at p: decomposition, lattices, admissible weights.
    Weights(WeightsCmd),
}

#[derive(Debug, Args)]
pub struct CohomCmd {
    pub entry: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a1: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// principal(j), borel0(j), H(j), P(j,l) or full.
    #[arg(long, default_value = "principal(1)")]
    pub subgroup: SubgroupSpec,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TowerCmd {
    pub entry: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a1: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
    /// principal, borel0 or H.
    #[arg(long, default_value = "principal")]
    pub template: TowerTemplate,
    #[arg(long, default_value_t = 3)]
    pub uniform_dim: u64,
    /// Restrict the reported verdicts (analytic, boston-ellenberg, saving).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SurveyCmd {
    #[arg(long, default_value_t = 5)]
    pub min_prime: u64,
    #[arg(long, default_value_t = 13)]
    pub max_prime: u64,
    /// Write the table as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Verify41Cmd {
    #[arg(default_value = "SL2(O-2)")]
    pub entry: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
}

#[derive(Debug, Args)]
pub struct WeightsCmd {
    #[arg(long)]
    pub p: u64,
    /// Degree of the integral-valued polynomial lattice to reduce.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Working level; k + 2 when absent.
    #[arg(long)]
    pub m: Option<u32>,
    /// JSON file with embedding labels, complex conjugation and Galois translates.
    #[arg(long)]
    pub galois: Option<PathBuf>,
    /// Weight per embedding, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub weight: Vec<u64>,
}

fn parse_criterion(s: &str) -> Result<Criterion, CliError> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| CliError::Usage(format!("unknown criterion {s:?}")))
}

impl Cli {
    pub fn options(&self) -> Options {
        Options { cache: Cache::new(self.cache_dir.clone()), max_dim: self.max_dim, jobs: self.jobs }
    }

    fn corpus(&self) -> Result<Corpus, CliError> {
        Ok(match &self.corpus {
            Some(path) => Corpus::load(path)?,
            None => Corpus::builtin(),
        })
    }

    /// Runs the command and returns its JSON output and exit code.
    pub fn run(&self) -> Result<Output, CliError> {
        let opts = self.options();
        match &self.command {
            Command::Cohom(c) => {
                let corpus = self.corpus()?;
                let args = CohomArgs { p: c.p, a1: c.a1, k: c.k, subgroup: c.subgroup, d: c.d };
                cmd_cohom(corpus.entry(&c.entry)?, &args, &opts)
            }
            Command::Tower(c) => {
                let corpus = self.corpus()?;
                let criteria = c.criteria.iter().map(|s| parse_criterion(s)).collect::<Result<_, _>>()?;
                let args = TowerArgs {
                    p: c.p,
                    a1: c.a1,
                    k_max: c.k_max,
                    template: c.template,
                    uniform_dim: c.uniform_dim,
                    criteria,
                };
                cmd_tower(corpus.entry(&c.entry)?, &args, &opts)
            }
            Command::Survey(c) => {
                let corpus = self.corpus()?;
                let range = PrimeRange { min: c.min_prime, max: c.max_prime };
                let rows = run_survey(&corpus, range, &opts)?;
                if let Some(path) = &c.csv {
                    std::fs::write(path, survey_csv(&rows)?)?;
                }
                Ok(Output { json: survey_json(rows, range), exit_code: 0 })
            }
            Command::Verify41(c) => {
                let corpus = self.corpus()?;
                cmd_verify41(corpus.entry(&c.entry)?, &Verify41Args { p: c.p, n: c.n }, &opts)
            }
            Command::Weights(c) => {
                let lattice = c.d.map(|d| LatticeArgs { d, k: c.k, m: c.m.unwrap_or(c.k + 2) });
                let galois = match &c.galois {
                    Some(path) => {
                        let text = std::fs::read_to_string(path)?;
                        let gd: GaloisData = serde_json::from_str(&text)
                            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                        Some((gd, c.weight.clone()))
                    }
                    None => None,
                };
                cmd_weights(&WeightsArgs { p: c.p, lattice, galois }, &opts)
            }
        }
    }
}

/// Parses `args`, runs the command, prints the result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.run() {
        Ok(out) => {
            print!("{}", out.json);
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
