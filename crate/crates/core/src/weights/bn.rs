use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// One isotypic block of F_p[PSL(2, F_p)].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnComponent {
    pub name: String,
    pub multiplicity: usize,
    /// Dimension of one copy.
    pub dim: usize,
    /// Composition factors as degrees d of Sym^d, bottom to top.
    pub factors: Vec<usize>,
}

impl BnComponent {
    pub fn total_dim(&self) -> usize {
        self.multiplicity * self.dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnDecomposition {
    pub p: u64,
    pub components: Vec<BnComponent>,
}

impl BnDecomposition {
    pub fn total_dim(&self) -> usize {
        self.components.iter().map(BnComponent::total_dim).sum()
    }
}

/// |PSL(2, F_p)| = p(p² − 1)/2 for odd p.
pub fn psl2_order(p: u64) -> u64 {
    p * (p * p - 1) / 2
}

/// F_p[PSL(2, F_p)] = (Sym^{p−1})^{⊕p} ⊕ W ⊕ ⊕_{i even, 2 ≤ i ≤ p−3} V_i^{⊕(i+1)}.
pub fn bn_decomposition(p: u64) -> Result<BnDecomposition> {
    if !is_prime(p) || p < 5 {
        return Err(Error::Validation(format!("the decomposition needs a prime p >= 5, got {p}")));
    }
    let q = p as usize;
    let mut components = vec![
        BnComponent { name: format!("Sym^{}", q - 1), multiplicity: q, dim: q, factors: vec![q - 1] },
        BnComponent { name: "W".into(), multiplicity: 1, dim: 0, factors: vec![0, q - 3, 0] },
    ];
    for i in (2..=q - 3).step_by(2) {
        components.push(BnComponent {
            name: format!("V_{i}"),
            multiplicity: i + 1,
            dim: 0,
            factors: vec![i, q - i - 1, q - i - 3, i],
        });
    }
    for c in &mut components {
        c.dim = c.factors.iter().map(|d| d + 1).sum();
    }
    let out = BnDecomposition { p, components };
    if out.total_dim() as u64 != psl2_order(p) {
        return Err(Error::Invariant(format!(
            "decomposition at p = {p} has dimension {}, expected {}",
            out.total_dim(),
            psl2_order(p)
        )));
    }
    Ok(out)
}

/// Cancellation assumptions behind the prediction of dim H¹(Γ(𝔭), F_p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionAssumption {
    /// The copies of Sym^{p−3} inside W and at the bottom of V_{p−3} contribute
    /// nothing beyond what H⁰(Γ, F_p) absorbs.
    CancelledByH0,
    /// The copy of Sym^{p−3} at the top of V_{p−3} is absorbed by H²(Γ, Sym^{p−3}),
    /// i.e. the corresponding spectral sequence term does not degenerate.
    CancelledByH2,
}

impl PredictionAssumption {
    pub fn describe(self) -> &'static str {
        match self {
            PredictionAssumption::CancelledByH0 => {
                "Sym^(p-3) inside W and as a submodule of V_(p-3) contributes only what H^0(Gamma, F_p) cancels"
            }
            PredictionAssumption::CancelledByH2 => {
                "Sym^(p-3) as a quotient of V_(p-3) is cancelled by H^2(Gamma, Sym^(p-3)) (spectral sequence term assumed nonzero)"
            }
        }
    }
}

/// The minimal profile d ↦ dim H¹(Γ, Sym^d) for 0 ≤ d ≤ p − 1: one class at d = p − 3.
/// Advisory: this is the expected shape, not a theorem about any given Γ.
pub fn expected_h1_profile(p: u64) -> Result<BTreeMap<usize, usize>> {
    if !is_prime(p) || p < 5 {
        return Err(Error::Validation(format!("the profile needs a prime p >= 5, got {p}")));
    }
    let q = p as usize;
    Ok((0..q).map(|d| (d, usize::from(d == q - 3))).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPPrediction {
    pub p: u64,
    pub measured: BTreeMap<usize, usize>,
    /// Predicted dim H¹(Γ(𝔭), F_p) when the measured profile is the expected one.
    pub predicted: Option<usize>,
    pub assumptions: Vec<PredictionAssumption>,
    pub anomaly: Option<String>,
}

/// Predicts dim H¹(Γ(𝔭), F_p) = 3 from a measured profile equal to the expected one.
pub fn predict_gamma_p_h1(p: u64, measured: &BTreeMap<usize, usize>) -> Result<GammaPPrediction> {
    let expected = expected_h1_profile(p)?;
    let q = p as usize;
    let mut out = GammaPPrediction { p, measured: measured.clone(), predicted: None, assumptions: Vec::new(), anomaly: None };
    if let Some(d) = measured.keys().find(|&&d| d >= q) {
        out.anomaly = Some(format!("Sym^{d} is not a composition factor for p = {p}"));
        return Ok(out);
    }
    if measured.get(&(q - 3)) == Some(&0) {
        out.anomaly = Some(format!("no class at d = p-3 = {}; the pulled back class is expected to be nonzero", q - 3));
        return Ok(out);
    }
    if expected.iter().all(|(d, e)| measured.get(d) == Some(e)) {
        out.predicted = Some(3);
        out.assumptions = vec![PredictionAssumption::CancelledByH0, PredictionAssumption::CancelledByH2];
    }
    Ok(out)
}
