use std::collections::BTreeMap;

use fpcoh_core::cohomology::cohomology_dims;
use fpcoh_core::congruence::{coset_module, sl2_order, sym_module};
use fpcoh_core::linalg::is_prime;
use fpcoh_core::towers::check_analytic;
use fpcoh_core::weights::{expected_h1_profile, predict_gamma_p_h1};
use fpcoh_core::{Error, SubgroupSpec, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{Envelope, Provenance};
use crate::{CliError, Corpus, CorpusEntry, Options};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRange {
    pub min: u64,
    pub max: u64,
}

impl Default for PrimeRange {
    fn default() -> Self {
        PrimeRange { min: 5, max: 13 }
    }
}

/// One degree-one prime (p, x − a1) of one entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeDetail {
    pub p: u64,
    pub a1: u64,
    /// d ↦ dim H¹(Γ, Sym^d) for 0 ≤ d < p.
    pub profile: BTreeMap<usize, usize>,
    pub profile_matches: bool,
    pub predicted_gamma_p_h1: Option<usize>,
    pub anomaly: Option<String>,
    /// |Γ : Γ(𝔭)| and dim H¹(Γ(𝔭), F_p) when the level-one module fits under the cap.
    pub index_level1: Option<usize>,
    pub h1_level1: Option<usize>,
    pub analytic: Option<Verdict>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub label: String,
    pub arithmetic: bool,
    pub congruence: bool,
    pub primes_tested: usize,
    pub analytic_holds: usize,
    pub profile_matches: usize,
    pub details: Vec<PrimeDetail>,
}

impl SurveyRow {
    pub fn prime_list(&self) -> String {
        self.details.iter().map(|d| format!("({},x-{})", d.p, d.a1)).collect::<Vec<_>>().join(" ")
    }
}

fn run_prime(entry: &CorpusEntry, p: u64, a1: u64, opts: &Options) -> PrimeDetail {
    let mut detail = PrimeDetail {
        p,
        a1,
        profile: BTreeMap::new(),
        profile_matches: false,
        predicted_gamma_p_h1: None,
        anomaly: None,
        index_level1: None,
        h1_level1: None,
        analytic: None,
        error: None,
    };
    if let Err(e) = fill_prime(entry, &mut detail, opts) {
        detail.error = Some(e.to_string());
    }
    detail
}

fn fill_prime(entry: &CorpusEntry, detail: &mut PrimeDetail, opts: &Options) -> Result<(), Error> {
    let pres = entry.presentation()?;
    let hom = entry.congruence_map(detail.p, detail.a1, 1)?;
    for d in 0..detail.p as usize {
        detail.profile.insert(d, cohomology_dims(&pres, &sym_module(&hom, d)?)?.h1);
    }
    detail.profile_matches = expected_h1_profile(detail.p)? == detail.profile;
    let pred = predict_gamma_p_h1(detail.p, &detail.profile)?;
    detail.predicted_gamma_p_h1 = pred.predicted;
    detail.anomaly = pred.anomaly;

    let coset = coset_module(&hom, &SubgroupSpec::Principal { j: 1 }, opts.max_dim)?;
    detail.index_level1 = Some(coset.dim());
    let h1 = cohomology_dims(&pres, &coset)?.h1;
    detail.h1_level1 = Some(h1);
    detail.analytic = Some(if coset.dim() as u64 == sl2_order(detail.p, 1) {
        check_analytic(detail.p, h1, entry.congruence).verdict
    } else {
        Verdict::NotApplicable
    });
    Ok(())
}

/// Runs every surveyed entry at every unramified degree-one prime in range.
///
/// Jobs run on a pool of `opts.jobs` threads; the output order depends only on
/// the corpus order and the primes.
pub fn run_survey(corpus: &Corpus, range: PrimeRange, opts: &Options) -> Result<Vec<SurveyRow>, CliError> {
    let entries: Vec<&CorpusEntry> = corpus.entries.iter().filter(|e| e.survey).collect();
    let mut jobs = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        for p in (range.min.max(5)..=range.max).filter(|&p| is_prime(p)) {
            for a1 in e.degree_one_primes(p)? {
                jobs.push((i, p, a1));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let details: Vec<(usize, PrimeDetail)> =
        pool.install(|| jobs.par_iter().map(|&(i, p, a1)| (i, run_prime(entries[i], p, a1, opts))).collect());

    let mut rows: Vec<SurveyRow> = entries
        .iter()
        .map(|e| SurveyRow {
            label: e.label.clone(),
            arithmetic: e.arithmetic,
            congruence: e.congruence,
            primes_tested: 0,
            analytic_holds: 0,
            profile_matches: 0,
            details: Vec::new(),
        })
        .collect();
    for (i, d) in details {
        let row = &mut rows[i];
        if d.error.is_none() {
            row.primes_tested += 1;
        }
        row.analytic_holds += usize::from(d.analytic == Some(Verdict::Holds));
        row.profile_matches += usize::from(d.profile_matches);
        row.details.push(d);
    }
    Ok(rows)
}

/// RFC 4180 table with one line per entry.
pub fn survey_csv(rows: &[SurveyRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(["parameters", "arithmetic", "primes_tested", "analytic_holds", "profile_matches", "primes"])?;
    for r in rows {
        w.write_record([
            r.label.clone(),
            if r.arithmetic { "yes" } else { "no" }.to_string(),
            r.primes_tested.to_string(),
            r.analytic_holds.to_string(),
            r.profile_matches.to_string(),
            r.prime_list(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn survey_json(rows: Vec<SurveyRow>, range: PrimeRange) -> String {
    #[derive(Serialize)]
    struct Table {
        range: PrimeRange,
        rows: Vec<SurveyRow>,
    }
    Envelope::new("survey", Table { range, rows })
        .tag("rows.profile", Provenance::Computed)
        .tag("rows.h1_level1", Provenance::Computed)
        .tag("rows.analytic", Provenance::Computed)
        .tag("rows.predicted_gamma_p_h1", Provenance::AssumptionFlagged)
        .to_json()
}
