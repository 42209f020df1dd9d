use std::collections::BTreeMap;

use fpcoh_core::cohomology::cohomology_dims;
use fpcoh_core::congruence::{coset_module, sym_module, tensor_module};
use fpcoh_core::towers::{check_delta_constant, run_tower, tower_family, ConstantCheck, Criterion, TowerOptions, TowerTemplate};
use fpcoh_core::trunc::{minimal_level, verify_weight_hypothesis, WeightHypothesisReport};
use fpcoh_core::weights::{
    admissible_weights, bn_decomposition, expected_h1_profile, lattice_reduction, psl2_order, AdmissibilityReport,
    BnDecomposition, GaloisData, InvarianceCertificate,
};
use fpcoh_core::{CohomologyResult, Error, SubgroupSpec, TowerReport};
use serde::{Deserialize, Serialize};

use crate::report::{status_of, Envelope, Provenance, Status};
use crate::{CliError, CorpusEntry, Options};

/// A finished command: the JSON document and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub json: String,
    pub exit_code: i32,
}

impl Output {
    fn from_json(json: String) -> Output {
        let exit_code = status_of(&json).exit_code();
        Output { json, exit_code }
    }
}

fn cached<T: Serialize>(
    opts: &Options,
    material: &impl Serialize,
    compute: impl FnOnce() -> Result<Envelope<T>, CliError>,
) -> Result<Output, CliError> {
    let json = opts.cache.get_or_compute(material, || Ok(compute()?.to_json()))?;
    Ok(Output::from_json(json))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomArgs {
    pub p: u64,
    /// Root of the minimal polynomial mod p; the first unramified one when absent.
    pub a1: Option<u64>,
    pub k: u32,
    pub subgroup: SubgroupSpec,
    /// Tensor the coset module with Sym^d.
    pub d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomOutput {
    pub label: String,
    pub p: u64,
    pub a1: u64,
    pub k: u32,
    pub subgroup: String,
    pub d: Option<usize>,
    pub index: usize,
    pub module_dim: usize,
    pub h0: usize,
    pub h1: usize,
    pub omega1: usize,
    pub delta0: usize,
}

pub fn compute_cohom(entry: &CorpusEntry, args: &CohomArgs, opts: &Options) -> Result<Envelope<CohomOutput>, CliError> {
    let pres = entry.presentation()?;
    let a1 = match args.a1 {
        Some(a) => a,
        None => entry.default_root(args.p)?,
    };
    let hom = entry.congruence_map(args.p, a1, args.k)?;
    let coset = coset_module(&hom, &args.subgroup, opts.max_dim)?;
    let index = coset.dim();
    let module = match args.d {
        None => coset,
        Some(d) => {
            let needed = index * (d + 1);
            if needed > opts.max_dim {
                return Err(Error::ResourceCap { what: "tensor module".into(), needed, cap: opts.max_dim }.into());
            }
            tensor_module(&coset, &sym_module(&hom, d)?)?
        }
    };
    let CohomologyResult { h1, omega1, delta0, h0 } = cohomology_dims(&pres, &module)?;
    let out = CohomOutput {
        label: entry.label.clone(),
        p: args.p,
        a1,
        k: args.k,
        subgroup: args.subgroup.to_string(),
        d: args.d,
        index,
        module_dim: module.dim(),
        h0,
        h1,
        omega1,
        delta0,
    };
    let mut env = Envelope::new("cohom", out);
    for f in ["index", "module_dim", "h0", "h1", "omega1", "delta0"] {
        env = env.tag(f, Provenance::Computed);
    }
    Ok(env)
}

pub fn cmd_cohom(entry: &CorpusEntry, args: &CohomArgs, opts: &Options) -> Result<Output, CliError> {
    cached(opts, &("cohom", entry, args, opts.max_dim), || compute_cohom(entry, args, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerArgs {
    pub p: u64,
    pub a1: Option<u64>,
    pub k_max: u32,
    pub template: TowerTemplate,
    /// Dimension of the uniform group defining the tower.
    pub uniform_dim: u64,
    /// Verdicts to report; all when empty.
    pub criteria: Vec<Criterion>,
}

pub fn compute_tower(entry: &CorpusEntry, args: &TowerArgs, opts: &Options) -> Result<Envelope<TowerReport>, CliError> {
    let pres = entry.presentation()?;
    let a1 = match args.a1 {
        Some(a) => a,
        None => entry.default_root(args.p)?,
    };
    let top = entry.congruence_map(args.p, a1, args.k_max)?;
    let homs = tower_family(&top, args.k_max)?;
    let tower_opts = TowerOptions { index_cap: opts.max_dim, d: args.uniform_dim, congruence: entry.congruence };
    let mut report = run_tower(&pres, &homs, args.template, args.k_max, &tower_opts)?;
    if !args.criteria.is_empty() {
        report.verdicts.retain(|v| args.criteria.contains(&v.criterion));
    }
    let status = if report.truncated.is_some() { Status::Truncated } else { Status::Complete };
    Ok(Envelope::new("tower", report)
        .with_status(status)
        .tag("levels", Provenance::Computed)
        .tag("fitted_exponent", Provenance::Computed)
        .tag("full_image_level1", Provenance::Computed)
        .tag("verdicts", Provenance::Computed)
        .tag("verdicts.threshold", Provenance::PaperCited)
        .tag("tower_type", Provenance::Computed))
}

pub fn cmd_tower(entry: &CorpusEntry, args: &TowerArgs, opts: &Options) -> Result<Output, CliError> {
    cached(opts, &("tower", entry, args, opts.max_dim), || compute_tower(entry, args, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verify41Args {
    pub p: u64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verify41Output {
    pub label: String,
    pub a1: u64,
    pub conjugate_a1: Option<u64>,
    /// The presentation and images are a sourcing choice recorded in the corpus.
    pub presentation_note: String,
    pub report: WeightHypothesisReport,
}

pub fn compute_verify41(
    entry: &CorpusEntry,
    args: &Verify41Args,
    _opts: &Options,
) -> Result<Envelope<Verify41Output>, CliError> {
    let pres = entry.presentation()?;
    let pair = entry.conjugate_primes.iter().find(|q| q.p == args.p).copied();
    let a1 = match pair {
        Some(q) => q.a1,
        None => entry.default_root(args.p)?,
    };
    let conjugate_a1 = pair.and_then(|q| q.conjugate_a1);
    let m = minimal_level(args.p, args.n);
    let hom_p = entry.congruence_map(args.p, a1, m)?;
    let hom_pbar = conjugate_a1.map(|b| entry.congruence_map(args.p, b, 1)).transpose()?;
    let report = verify_weight_hypothesis(&pres, &hom_p, hom_pbar.as_ref(), args.n)?;
    let out = Verify41Output {
        label: entry.label.clone(),
        a1,
        conjugate_a1,
        presentation_note: entry.provenance.clone(),
        report,
    };
    Ok(Envelope::new("verify41", out)
        .tag("report", Provenance::Computed)
        .tag("presentation_note", Provenance::AssumptionFlagged))
}

pub fn cmd_verify41(entry: &CorpusEntry, args: &Verify41Args, opts: &Options) -> Result<Output, CliError> {
    cached(opts, &("verify41", entry, args), || compute_verify41(entry, args, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeArgs {
    pub d: usize,
    pub k: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsArgs {
    pub p: u64,
    pub lattice: Option<LatticeArgs>,
    pub galois: Option<(GaloisData, Vec<u64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub d: usize,
    pub k: u32,
    pub m: u32,
    pub dim: usize,
    pub certificate: InvarianceCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightsOutput {
    pub p: u64,
    pub psl2_order: u64,
    pub bn: Option<BnDecomposition>,
    pub expected_profile: Option<BTreeMap<usize, usize>>,
    pub lattice: Option<LatticeSummary>,
    pub admissibility: Option<AdmissibilityReport>,
    pub delta_constant: ConstantCheck,
}

pub fn compute_weights(args: &WeightsArgs) -> Result<Envelope<WeightsOutput>, CliError> {
    let p = args.p;
    if !fpcoh_core::linalg::is_prime(p) {
        return Err(Error::NotPrime(p).into());
    }
    let (bn, expected_profile) = if p >= 5 { (Some(bn_decomposition(p)?), Some(expected_h1_profile(p)?)) } else { (None, None) };
    let lattice = args
        .lattice
        .as_ref()
        .map(|l| -> Result<LatticeSummary, Error> {
            let r = lattice_reduction(p, l.d, l.k, l.m)?;
            Ok(LatticeSummary { d: l.d, k: l.k, m: l.m, dim: r.dim(), certificate: r.certificate })
        })
        .transpose()?;
    let admissibility = args.galois.as_ref().map(|(gd, w)| admissible_weights(gd, w)).transpose()?;
    let out = WeightsOutput {
        p,
        psl2_order: psl2_order(p),
        bn,
        expected_profile,
        lattice,
        admissibility,
        delta_constant: check_delta_constant(),
    };
    Ok(Envelope::new("weights", out)
        .tag("psl2_order", Provenance::PaperCited)
        .tag("bn", Provenance::PaperCited)
        .tag("expected_profile", Provenance::AssumptionFlagged)
        .tag("lattice", Provenance::Computed)
        .tag("admissibility", Provenance::Computed)
        .tag("delta_constant", Provenance::Computed))
}

pub fn cmd_weights(args: &WeightsArgs, opts: &Options) -> Result<Output, CliError> {
    cached(opts, &("weights", args), || compute_weights(args))
}
