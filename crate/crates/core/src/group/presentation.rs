use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::congruence::CongruenceMap;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct GroupPresentation {
    label: String,
    generators: Vec<char>,
    relators: Vec<Word>,
}

/// Text form: generator names as a string of distinct lowercase letters and
/// relators as words in those letters, uppercase for inverses.
#[derive(Serialize, Deserialize)]
struct RawPresentation {
    label: String,
    generators: String,
    relators: Vec<String>,
}

impl TryFrom<RawPresentation> for GroupPresentation {
    type Error = Error;
    fn try_from(r: RawPresentation) -> Result<Self> {
        let rels: Vec<&str> = r.relators.iter().map(String::as_str).collect();
        GroupPresentation::parse_named(&r.label, &r.generators, &rels)
    }
}

impl From<GroupPresentation> for RawPresentation {
    fn from(p: GroupPresentation) -> Self {
        RawPresentation {
            label: p.label.clone(),
            generators: p.generators.iter().collect(),
            relators: p.relators.iter().map(|w| w.format_with(&p.generators)).collect(),
        }
    }
}

impl GroupPresentation {
    /// Generators named `a, b, c, ...`.
    pub fn new(label: &str, n_generators: usize, relators: Vec<Word>) -> Result<Self> {
        if n_generators > 26 {
            return Err(Error::Validation(format!("{n_generators} generators; at most 26 are supported")));
        }
        let names = ('a'..='z').take(n_generators).collect();
        Self::with_names(label, names, relators)
    }

    fn with_names(label: &str, generators: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(Error::GeneratorOutOfRange { index: g, n });
                }
            }
        }
        Ok(GroupPresentation { label: label.to_string(), generators, relators })
    }

    pub fn parse(label: &str, n_generators: usize, relators: &[&str]) -> Result<Self> {
        let rs = relators.iter().map(|s| Word::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(label, n_generators, rs)
    }

    /// Generators named by the characters of `names`, e.g. `"atuz"`.
    pub fn parse_named(label: &str, names: &str, relators: &[&str]) -> Result<Self> {
        let gens: Vec<char> = names.chars().collect();
        let mut seen = std::collections::HashSet::new();
        if gens.iter().any(|c| !c.is_ascii_lowercase() || !seen.insert(*c)) {
            return Err(Error::Parse(format!("generator names {names:?} must be distinct lowercase letters")));
        }
        let rs = relators.iter().map(|s| Word::parse_with(s, &gens)).collect::<Result<Vec<_>>>()?;
        Self::with_names(label, gens, rs)
    }

    pub fn generator_names(&self) -> &[char] {
        &self.generators
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format_with(&self.generators)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn n_relators(&self) -> usize {
        self.relators.len()
    }
}

/// True iff every relator maps to the identity under `hom`.
pub fn validate_presentation(pres: &GroupPresentation, hom: &CongruenceMap) -> bool {
    hom.n_generators() == pres.n_generators()
        && pres.relators().iter().all(|r| hom.word_image(r).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_letters() {
        assert!(GroupPresentation::parse("bad", 1, &["ab"]).is_err());
        assert!(GroupPresentation::parse("ok", 2, &["abAB"]).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let p = GroupPresentation::parse("Z^2", 2, &["abAB"]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"label":"Z^2","generators":"ab","relators":["abAB"]}"#);
        let q: GroupPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<GroupPresentation>(r#"{"label":"x","generators":"a","relators":["b"]}"#).is_err());
        let named: GroupPresentation =
            serde_json::from_str(r#"{"label":"k","generators":"xy","relators":["xYXy"]}"#).unwrap();
        assert_eq!(named.relators()[0], Word::parse("aBAb").unwrap());
        assert_eq!(serde_json::to_string(&named).unwrap(), r#"{"label":"k","generators":"xy","relators":["xYXy"]}"#);
        assert!(GroupPresentation::parse_named("dup", "aa", &[]).is_err());
    }
}
