use serde::{Deserialize, Serialize};

use super::criteria::{check_analytic, check_boston_ellenberg, check_saving, CriterionReport};
use crate::cohomology::cohomology_dims;
use crate::congruence::{coset_module, sl2_order, CongruenceMap, SubgroupSpec, DEFAULT_INDEX_CAP};
use crate::error::{Error, Result};
use crate::group::GroupPresentation;

/// How the subgroup at level k is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerTemplate {
    Principal,
    Borel0,
    H,
}

impl TowerTemplate {
    pub fn at(&self, k: u32) -> SubgroupSpec {
        match self {
            TowerTemplate::Principal => SubgroupSpec::Principal { j: k },
            TowerTemplate::Borel0 => SubgroupSpec::Borel0 { j: k },
            TowerTemplate::H => SubgroupSpec::H { j: k },
        }
    }
}

impl std::str::FromStr for TowerTemplate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "principal" => Ok(TowerTemplate::Principal),
            "borel0" => Ok(TowerTemplate::Borel0),
            "H" | "h" => Ok(TowerTemplate::H),
            _ => Err(Error::Parse(format!("unknown tower template {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerOptions {
    /// Largest coset index attempted.
    pub index_cap: usize,
    /// Dimension of the uniform group whose lower p-series defines the tower.
    pub d: u64,
    pub congruence: bool,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { index_cap: DEFAULT_INDEX_CAP, d: 3, congruence: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub k: u32,
    pub subgroup: SubgroupSpec,
    pub index: usize,
    pub h1: usize,
    pub omega1: usize,
    pub delta0: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub at_level: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerType {
    /// h1 equals dim Hom(G_k, F_p) at every level, certified by the analytic criterion.
    A,
    /// Growth type not decidable from finitely many levels.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerReport {
    pub label: String,
    pub p: u64,
    pub template: TowerTemplate,
    pub levels: Vec<TowerLevel>,
    /// Least-squares slope of log_p h1 against k.
    pub fitted_exponent: Option<f64>,
    /// Levels left out of the fit because h1 = 0 there.
    pub excluded_from_fit: Vec<u32>,
    /// Whether the images generate all of SL(2, Z/p) at level one.
    pub full_image_level1: Option<bool>,
    pub verdicts: Vec<CriterionReport>,
    pub tower_type: TowerType,
    pub note: String,
    pub truncated: Option<Truncation>,
}

/// The maps at levels 1..=k_max obtained by reducing `top`.
pub fn tower_family(top: &CongruenceMap, k_max: u32) -> Result<Vec<CongruenceMap>> {
    (1..=k_max).map(|k| top.reduce_to(k)).collect()
}

/// Ordinary least squares slope of (k, log_p h1) over levels with h1 > 0.
pub fn fitted_exponent(levels: &[TowerLevel], p: u64) -> (Option<f64>, Vec<u32>) {
    let excluded = levels.iter().filter(|l| l.h1 == 0).map(|l| l.k).collect();
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .filter(|l| l.h1 > 0)
        .map(|l| (f64::from(l.k), (l.h1 as f64).ln() / (p as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return (None, excluded);
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / n;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|q| (q.0 - mx).powi(2)).sum();
    (Some(sxy / sxx), excluded)
}

/// Computes H¹ of the level-k subgroups for k = 1..=k_max.
///
/// `homs[i]` is the map at level i + 1. A resource cap stops the run and the
/// levels already computed are kept.
pub fn run_tower(
    pres: &GroupPresentation,
    homs: &[CongruenceMap],
    template: TowerTemplate,
    k_max: u32,
    opts: &TowerOptions,
) -> Result<TowerReport> {
    let p = homs.first().map(CongruenceMap::p).ok_or_else(|| Error::Precondition("no congruence maps".into()))?;
    if homs.len() < k_max as usize {
        return Err(Error::Precondition(format!("{} maps for {k_max} levels", homs.len())));
    }
    for (i, h) in homs.iter().take(k_max as usize).enumerate() {
        if h.k() != i as u32 + 1 || h.p() != p {
            return Err(Error::Precondition(format!("map {i} has level {}^{}", h.p(), h.k())));
        }
        if i > 0 && h.reduce_to(i as u32)? != homs[i - 1] {
            return Err(Error::Precondition(format!("level {} does not reduce to level {i}", i + 1)));
        }
    }

    let mut levels = Vec::new();
    let mut truncated = None;
    for k in 1..=k_max {
        let sub = template.at(k);
        let computed = coset_module(&homs[k as usize - 1], &sub, opts.index_cap)
            .and_then(|m| Ok((m.dim(), cohomology_dims(pres, &m)?)));
        match computed {
            Ok((index, r)) => {
                levels.push(TowerLevel { k, subgroup: sub, index, h1: r.h1, omega1: r.omega1, delta0: r.delta0 });
            }
            Err(e @ Error::ResourceCap { .. }) => {
                truncated = Some(Truncation { at_level: k, reason: e.to_string() });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    for w in levels.windows(2) {
        if w[1].index <= w[0].index {
            return Err(Error::Invariant(format!("index did not grow from level {} to {}", w[0].k, w[1].k)));
        }
    }

    let full_image_level1 = homs[0].generated_order(opts.index_cap).ok().map(|n| n as u64 == sl2_order(p, 1));
    let mut verdicts = Vec::new();
    let principal_l1 = template == TowerTemplate::Principal && !levels.is_empty();
    if principal_l1 && full_image_level1 == Some(true) {
        verdicts.push(check_analytic(p, levels[0].h1, opts.congruence));
        verdicts.push(check_boston_ellenberg(levels[0].h1));
    }
    if template == TowerTemplate::Principal {
        for l in &levels {
            verdicts.push(check_saving(p, opts.d, u64::from(l.k), l.h1)?);
        }
    }
    let analytic_holds = verdicts
        .iter()
        .any(|v| v.criterion == super::Criterion::Analytic && v.verdict == super::Verdict::Holds);
    let flat = !levels.is_empty() && levels.iter().all(|l| l.h1 as u64 == opts.d);
    let (tower_type, note) = if flat && analytic_holds {
        (TowerType::A, "h1 = dim Hom(G_k, F_p) at every level and the analytic criterion holds".to_string())
    } else {
        (
            TowerType::Undetermined,
            "growth types are asymptotic; only the fitted exponent and criterion verdicts are reported".to_string(),
        )
    };
    let (fitted, excluded) = fitted_exponent(&levels, p);
    Ok(TowerReport {
        label: pres.label().to_string(),
        p,
        template,
        levels,
        fitted_exponent: fitted,
        excluded_from_fit: excluded,
        full_image_level1,
        verdicts,
        tower_type,
        note,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> (GroupPresentation, CongruenceMap) {
        let pres = GroupPresentation::parse("Z^2", 2, &["abAB"]).unwrap();
        let top = CongruenceMap::from_integer_images(3, 3, &[[1, 1, 0, 1], [1, 2, 0, 1]]).unwrap();
        (pres, top)
    }

    #[test]
    fn z2_is_flat() {
        let (pres, top) = z2();
        let homs = tower_family(&top, 3).unwrap();
        let r = run_tower(&pres, &homs, TowerTemplate::Principal, 3, &TowerOptions::default()).unwrap();
        assert!(r.levels.iter().all(|l| l.h1 == 2));
        assert_eq!(r.levels.iter().map(|l| l.index).collect::<Vec<_>>(), vec![3, 9, 27]);
        assert!(r.fitted_exponent.unwrap().abs() < 1e-12);
        assert_eq!(r.full_image_level1, Some(false));
        assert!(r.verdicts.iter().all(|v| v.criterion == super::super::Criterion::Saving));
        assert_eq!(r.tower_type, TowerType::Undetermined);
    }

    #[test]
    fn free_group_follows_schreier() {
        let pres = GroupPresentation::parse("F2", 2, &[]).unwrap();
        let top = CongruenceMap::from_integer_images(3, 2, &[[1, 1, 0, 1], [1, 0, 1, 1]]).unwrap();
        for template in [TowerTemplate::Principal, TowerTemplate::Borel0] {
            let r = run_tower(&pres, &tower_family(&top, 2).unwrap(), template, 2, &TowerOptions::default()).unwrap();
            for l in &r.levels {
                assert_eq!(l.h1, l.index + 1, "{l:?}");
            }
        }
    }

    #[test]
    fn cap_truncates() {
        let pres = GroupPresentation::parse("F2", 2, &[]).unwrap();
        let top = CongruenceMap::from_integer_images(3, 2, &[[1, 1, 0, 1], [1, 0, 1, 1]]).unwrap();
        let opts = TowerOptions { index_cap: 30, ..TowerOptions::default() };
        let r = run_tower(&pres, &tower_family(&top, 2).unwrap(), TowerTemplate::Principal, 2, &opts).unwrap();
        assert_eq!(r.levels.len(), 1);
        assert_eq!(r.truncated.as_ref().map(|t| t.at_level), Some(2));
    }

    #[test]
    fn inconsistent_levels_rejected() {
        let (pres, top) = z2();
        let mut homs = tower_family(&top, 2).unwrap();
        homs[0] = CongruenceMap::from_integer_images(3, 1, &[[1, 0, 0, 1], [1, 2, 0, 1]]).unwrap();
        assert!(run_tower(&pres, &homs, TowerTemplate::Principal, 2, &TowerOptions::default()).is_err());
    }

    #[test]
    fn fit_needs_three_levels() {
        let lv = |k, h1| TowerLevel { k, subgroup: SubgroupSpec::Full, index: 1, h1, omega1: 0, delta0: 0 };
        assert_eq!(fitted_exponent(&[lv(1, 3), lv(2, 9)], 3).0, None);
        let (e, ex) = fitted_exponent(&[lv(1, 3), lv(2, 0), lv(3, 27), lv(4, 81)], 3);
        assert!((e.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(ex, vec![2]);
    }
}
