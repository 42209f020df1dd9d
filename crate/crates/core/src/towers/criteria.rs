use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Level-one bound that forces the flat growth type.
    Analytic,
    /// Γ(𝔭)/Γ(𝔭)^p of rank exactly three.
    BostonEllenberg,
    /// Bound at level k that forces growth below the maximal rate.
    Saving,
    /// Coimage bound for an operator on a finite quotient.
    Coimage,
}

/// A verdict together with the exact numbers it was decided on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub params: BTreeMap<String, String>,
}

impl CriterionReport {
    fn new(criterion: Criterion, verdict: Verdict) -> Self {
        CriterionReport { criterion, verdict, params: BTreeMap::new() }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn factorial(d: u64) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// |G : G_k| = p^{d(k−1)} for the lower p-series of a uniform group of dimension d.
pub fn uniform_index(p: u64, d: u64, k: u64) -> BigInt {
    big_pow(p, d * k.saturating_sub(1))
}

/// h1 at level one against p − 9, or p − 5 for congruence groups.
pub fn check_analytic(p: u64, h1_at_level1: usize, congruence: bool) -> CriterionReport {
    let slack = if congruence { 5 } else { 9 };
    let threshold = p as i64 - slack;
    let r = |v| {
        CriterionReport::new(Criterion::Analytic, v)
            .with("p", p)
            .with("h1", h1_at_level1)
            .with("congruence", congruence)
            .with("threshold", threshold)
    };
    // h1 ≥ 3 on every such tower, so a threshold below 3 can never be met.
    if threshold < 3 {
        return r(Verdict::NotApplicable).with("reason", "threshold below the floor h1 >= 3");
    }
    r(if h1_at_level1 as i64 <= threshold { Verdict::Holds } else { Verdict::Fails })
}

pub fn check_boston_ellenberg(h1_at_level1: usize) -> CriterionReport {
    let v = if h1_at_level1 == 3 { Verdict::Holds } else { Verdict::Fails };
    CriterionReport::new(Criterion::BostonEllenberg, v).with("h1", h1_at_level1)
}

/// (1/d! − 2d·p^{−(k−1)})·p^{d(k−1)}.
pub fn saving_threshold(p: u64, d: u64, k: u64) -> BigRational {
    let km1 = k.saturating_sub(1);
    let factor = BigRational::new(BigInt::one(), factorial(d))
        - BigRational::new(BigInt::from(2 * d), big_pow(p, km1));
    factor * BigRational::from_integer(uniform_index(p, d, k))
}

pub fn check_saving(p: u64, d: u64, k: u64, h1_at_k: usize) -> Result<CriterionReport> {
    if k == 0 {
        return Err(Error::Precondition("saving criterion needs k >= 1".into()));
    }
    let t = saving_threshold(p, d, k);
    let r = |v| {
        CriterionReport::new(Criterion::Saving, v)
            .with("p", p)
            .with("d", d)
            .with("k", k)
            .with("h1", h1_at_k)
            .with("threshold", &t)
    };
    if !t.is_positive() {
        return Ok(r(Verdict::NotApplicable));
    }
    let h = BigRational::from_integer(BigInt::from(h1_at_k));
    Ok(r(if h < t { Verdict::Holds } else { Verdict::Fails }))
}

/// dim target − rank T against p^{d·k0}/d!.
pub fn check_coimage(t: &FpMatrix, d: u64, p: u64, k0: u64) -> Result<CriterionReport> {
    if u64::from(t.p()) != p {
        return Err(Error::ModulusMismatch(t.p(), p as u32));
    }
    let coim = t.rows() - t.rank();
    let bound = BigRational::new(big_pow(p, d * k0), factorial(d));
    let v = if BigRational::from_integer(BigInt::from(coim)) < bound { Verdict::Holds } else { Verdict::Fails };
    let mut r = CriterionReport::new(Criterion::Coimage, v)
        .with("coimage", coim)
        .with("bound", &bound)
        .with("d", d)
        .with("p", p)
        .with("k0", k0);
    if v == Verdict::Holds {
        r = r.with("implied", format!("dim coim T_k <= {d} * {p}^({k0} - k) * dim N_k for k >= {k0}"));
    }
    Ok(r)
}
