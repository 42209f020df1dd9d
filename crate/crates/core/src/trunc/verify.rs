use serde::{Deserialize, Serialize};

use super::algebra::TruncatedAlgebra;
use super::coverage::{lowest_degree_coverage, CoverageReport, CoverageStatus, Grading};
use super::module::TruncatedModule;
use crate::congruence::poly::pow_u64;
use crate::congruence::CongruenceMap;
use crate::error::{Error, Result};
use crate::group::GroupPresentation;

/// Operators whose images are tested for lowest-degree coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageOperator {
    /// Δ = Σ 2 − g − g⁻¹ on C⁰.
    Laplacian,
    /// ∂ ⊕ δ, tested through its transpose C² ⊕ C⁰ → C¹.
    Codifferential,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCoverage {
    pub d: usize,
    pub module_dim: usize,
    pub operator: CoverageOperator,
    pub report: CoverageReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightHypothesisReport {
    pub p: u64,
    pub level: u32,
    pub trunc_degree: usize,
    pub results: Vec<DegreeCoverage>,
    /// Degrees d that were not examined.
    pub skipped: Vec<usize>,
    pub partial: bool,
    pub pass: bool,
}

/// Smallest m ≥ 2 with p^{m−1} > n.
pub fn minimal_level(p: u64, n: usize) -> u32 {
    let mut m = 2;
    while pow_u64(p, m - 1) as usize <= n {
        m += 1;
    }
    m
}

/// Coverage of one operator on a truncated module.
pub fn operator_coverage(
    module: &TruncatedModule,
    pres: &GroupPresentation,
    operator: CoverageOperator,
) -> Result<CoverageReport> {
    let grading = Grading { degrees: module.degrees(), labels: module.labels() };
    let n = module.algebra().trunc_degree();
    match operator {
        CoverageOperator::Laplacian => lowest_degree_coverage(&module.laplacian_operator(), &grading, &grading, n),
        CoverageOperator::Codifferential => {
            let op = module.codifferential_operator(pres)?;
            let target = grading.repeat(pres.n_generators());
            let source = grading.repeat(pres.n_relators() + 1);
            lowest_degree_coverage(&op, &target, &source, n)
        }
    }
}

/// Runs the coverage test for Δ and ∂ ⊕ δ on V^{≤n} ⊗ Sym^d for d = 0, 1, 2.
///
/// `hom_p` must reach level m = minimal_level(p, n); `hom_pbar` is the map at the
/// conjugate prime used for the symmetric powers. Without it only d = 0 is run
/// and the report is partial.
pub fn verify_weight_hypothesis(
    pres: &GroupPresentation,
    hom_p: &CongruenceMap,
    hom_pbar: Option<&CongruenceMap>,
    n: usize,
) -> Result<WeightHypothesisReport> {
    let p = hom_p.p();
    let m = minimal_level(p, n);
    if hom_p.k() < m {
        return Err(Error::Precondition(format!("degree {n} needs the map at level {p}^{m}, got {p}^{}", hom_p.k())));
    }
    if let Some(h) = hom_pbar {
        if h.p() != p {
            return Err(Error::Precondition(format!("conjugate map is at p = {}, expected {p}", h.p())));
        }
    }
    let algebra = TruncatedAlgebra::new(p, m, n)?;
    let degrees: Vec<usize> = if hom_pbar.is_some() { vec![0, 1, 2] } else { vec![0] };
    let skipped: Vec<usize> = (0..=2).filter(|d| !degrees.contains(d)).collect();
    let mut results = Vec::new();
    for &d in &degrees {
        let sym = if d == 0 { None } else { hom_pbar.map(|h| (h, d)) };
        let module = TruncatedModule::new(algebra.clone(), hom_p, sym)?;
        module.check_relators(pres)?;
        for operator in [CoverageOperator::Laplacian, CoverageOperator::Codifferential] {
            let report = operator_coverage(&module, pres, operator)?;
            results.push(DegreeCoverage { d, module_dim: module.dim(), operator, report });
        }
    }
    let partial = !skipped.is_empty();
    let pass = !partial && results.iter().all(|r| r.report.status == CoverageStatus::Full);
    Ok(WeightHypothesisReport { p, level: m, trunc_degree: n, results, skipped, partial, pass })
}
