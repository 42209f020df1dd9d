use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Embedding labels with complex conjugation τ and a set of permutations of the
/// labels (coset translates of the Galois group).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisData {
    pub labels: Vec<String>,
    pub conjugation: Vec<usize>,
    pub group_elements: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl GaloisData {
    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if !is_permutation(&self.conjugation, n) {
            return Err(Error::Validation("conjugation is not a permutation of the labels".into()));
        }
        if (0..n).any(|i| self.conjugation[self.conjugation[i]] != i) {
            return Err(Error::Validation("conjugation is not an involution".into()));
        }
        if let Some(i) = self.group_elements.iter().position(|g| !is_permutation(g, n)) {
            return Err(Error::Validation(format!("group element {i} is not a permutation of the labels")));
        }
        Ok(())
    }

    /// Orbits of the group generated by the conjugates g τ g⁻¹.
    pub fn conjugation_orbits(&self) -> Result<Vec<Vec<usize>>> {
        self.validate()?;
        let n = self.labels.len();
        let mut gens = vec![self.conjugation.clone()];
        for g in &self.group_elements {
            let gi = inverse(g);
            gens.push((0..n).map(|x| g[self.conjugation[gi[x]]]).collect());
        }
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            orbit_of[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                for g in &gens {
                    if orbit_of[g[x]] == usize::MAX {
                        orbit_of[g[x]] = id;
                        orbit.push(g[x]);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub orbits: Vec<Vec<String>>,
}

/// A weight is admissible iff it is constant on every orbit of the normal
/// closure of complex conjugation.
pub fn admissible_weights(gd: &GaloisData, weight: &[u64]) -> Result<AdmissibilityReport> {
    if weight.len() != gd.labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} embeddings",
            weight.len(),
            gd.labels.len()
        )));
    }
    let orbits = gd.conjugation_orbits()?;
    let admissible = orbits.iter().all(|o| o.iter().all(|&i| weight[i] == weight[o[0]]));
    let orbits = orbits.iter().map(|o| o.iter().map(|&i| gd.labels[i].clone()).collect()).collect();
    Ok(AdmissibilityReport { admissible, orbits })
}
