use std::path::Path;

use fpcoh_core::group::validate_presentation;
use fpcoh_core::{CongruenceMap, Error, GroupPresentation, Poly, RingSpec};
use serde::{Deserialize, Serialize};

const BUILTIN: &str = include_str!("../corpus/corpus.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingData {
    pub label: String,
    /// Coefficients of the minimal polynomial, constant term first.
    pub min_poly: Vec<i64>,
}

/// A prime p split as 𝔭 = (p, x − a1) and its conjugate (p, x − conjugate_a1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePair {
    pub p: u64,
    pub a1: u64,
    pub conjugate_a1: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub generators: String,
    pub relators: Vec<String>,
    pub ring: RingData,
    /// Generator images with entries in Z[x]/(f), row major.
    pub images: Vec<[String; 4]>,
    pub arithmetic: bool,
    pub congruence: bool,
    #[serde(default)]
    pub survey: bool,
    #[serde(default)]
    pub conjugate_primes: Vec<PrimePair>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        Corpus::parse(BUILTIN).expect("built-in corpus parses")
    }

    pub fn parse(text: &str) -> Result<Corpus, Error> {
        let corpus: Corpus = serde_json::from_str(text).map_err(|e| Error::Parse(format!("corpus: {e}")))?;
        for e in &corpus.entries {
            e.presentation()?;
            e.ring_spec()?;
            e.poly_images()?;
        }
        Ok(corpus)
    }

    pub fn load(path: &Path) -> Result<Corpus, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Corpus::parse(&text)
    }

    pub fn entry(&self, label: &str) -> Result<&CorpusEntry, Error> {
        self.entries.iter().find(|e| e.label == label).ok_or_else(|| {
            let known: Vec<&str> = self.entries.iter().map(|e| e.label.as_str()).collect();
            Error::Validation(format!("no corpus entry {label:?}; known entries: {}", known.join(", ")))
        })
    }
}

impl CorpusEntry {
    pub fn presentation(&self) -> Result<GroupPresentation, Error> {
        let rels: Vec<&str> = self.relators.iter().map(String::as_str).collect();
        GroupPresentation::parse_named(&self.label, &self.generators, &rels)
    }

    pub fn ring_spec(&self) -> Result<RingSpec, Error> {
        RingSpec::new(Poly::new(self.ring.min_poly.clone()), &self.ring.label)
    }

    pub fn poly_images(&self) -> Result<Vec<[Poly; 4]>, Error> {
        if self.images.len() != self.generators.chars().count() {
            return Err(Error::Validation(format!(
                "{}: {} images for {} generators",
                self.label,
                self.images.len(),
                self.generators.chars().count()
            )));
        }
        self.images
            .iter()
            .map(|m| {
                let mut out: [Poly; 4] = Default::default();
                for (o, s) in out.iter_mut().zip(m) {
                    *o = Poly::parse(s)?;
                }
                Ok(out)
            })
            .collect()
    }

    /// Residues a mod p at which the reduction is defined and unramified.
    pub fn degree_one_primes(&self, p: u64) -> Result<Vec<u64>, Error> {
        Ok(self.ring_spec()?.simple_roots_mod(p))
    }

    /// The reduction at (p, x − a1) to level p^k, checked against every relator.
    pub fn congruence_map(&self, p: u64, a1: u64, k: u32) -> Result<CongruenceMap, Error> {
        let pres = self.presentation()?;
        let hom = CongruenceMap::from_ring(&self.ring_spec()?, &self.poly_images()?, p, a1, k)?;
        if !validate_presentation(&pres, &hom) {
            let bad = pres
                .relators()
                .iter()
                .find(|r| !hom.word_image(r).is_identity())
                .map(|r| pres.format_word(r))
                .unwrap_or_default();
            return Err(Error::Validation(format!(
                "{}: relator {bad} does not map to the identity mod {p}^{k} at a1 = {a1}",
                self.label
            )));
        }
        Ok(hom)
    }

    /// The first degree-one prime above p, if any.
    pub fn default_root(&self, p: u64) -> Result<u64, Error> {
        self.degree_one_primes(p)?
            .first()
            .copied()
            .ok_or_else(|| Error::UnusablePrime(format!("{} has no unramified degree-one prime above {p}", self.label)))
    }
}
