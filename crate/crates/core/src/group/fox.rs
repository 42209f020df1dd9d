use super::presentation::GroupPresentation;
use super::ring::FreeRingElement;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Fox derivative ∂r/∂g_j. Walking left to right, the prefix u before each letter
/// contributes u for an occurrence of g_j and −u·g_j⁻¹ for an occurrence of g_j⁻¹.
pub fn fox_derivative(r: &Word, j: usize, n_generators: usize) -> Result<FreeRingElement> {
    if j >= n_generators {
        return Err(Error::GeneratorOutOfRange { index: j, n: n_generators });
    }
    if let Some(g) = r.max_generator() {
        if g >= n_generators {
            return Err(Error::GeneratorOutOfRange { index: g, n: n_generators });
        }
    }
    let mut out = FreeRingElement::zero();
    for (pos, &l) in r.letters().iter().enumerate() {
        if l.gen != j {
            continue;
        }
        let prefix = r.prefix(pos);
        if l.inverse {
            out.add_term(-1, prefix.concat(&Word::new([Letter::new(j, true)])));
        } else {
            out.add_term(1, prefix);
        }
    }
    Ok(out)
}

/// Boundary maps of the free resolution: `d0[i] = 1 − g_i` and
/// `d1[r][j] = ∂R_r/∂g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    pub d0: Vec<FreeRingElement>,
    pub d1: Vec<Vec<FreeRingElement>>,
}

pub fn boundary_data(pres: &GroupPresentation) -> BoundaryData {
    let n = pres.n_generators();
    let d0 = (0..n)
        .map(|i| FreeRingElement::from_terms([(1, Word::empty()), (-1, Word::generator(i))]))
        .collect();
    let d1 = pres
        .relators()
        .iter()
        .map(|r| {
            (0..n)
                .map(|j| fox_derivative(r, j, n).expect("presentation validated at construction"))
                .collect()
        })
        .collect();
    BoundaryData { d0, d1 }
}

/// Σᵢ (2 − g_i − g_i⁻¹).
pub fn laplacian_element(pres: &GroupPresentation) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    for i in 0..pres.n_generators() {
        out.add_term(2, Word::empty());
        out.add_term(-1, Word::generator(i));
        out.add_term(-1, Word::generator_inverse(i));
    }
    out
}

/// Σⱼ (∂R/∂g_j)(g_j − 1) − (R − 1); zero for every word R.
pub fn fundamental_identity_defect(r: &Word, n_generators: usize) -> Result<FreeRingElement> {
    let mut lhs = FreeRingElement::zero();
    for j in 0..n_generators {
        let gm1 = FreeRingElement::from_terms([(1, Word::generator(j)), (-1, Word::empty())]);
        lhs = lhs.add(&fox_derivative(r, j, n_generators)?.mul(&gm1));
    }
    let rm1 = FreeRingElement::from_terms([(1, r.clone()), (-1, Word::empty())]);
    Ok(lhs.sub(&rm1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn e(terms: &[(i64, &str)]) -> FreeRingElement {
        FreeRingElement::from_terms(terms.iter().map(|&(c, s)| (c, w(s))))
    }

    #[test]
    fn small_derivatives() {
        assert_eq!(fox_derivative(&w("ab"), 0, 2).unwrap(), e(&[(1, "1")]));
        assert_eq!(fox_derivative(&w("abAB"), 0, 2).unwrap(), e(&[(1, "1"), (-1, "abA")]));
        assert_eq!(fox_derivative(&w("abAB"), 1, 2).unwrap(), e(&[(1, "a"), (-1, "abAB")]));
        assert!(fox_derivative(&w("ab"), 2, 2).is_err());
    }

    #[test]
    fn boundary_examples() {
        let f2 = GroupPresentation::new("F2", 2, vec![]).unwrap();
        let b = boundary_data(&f2);
        assert!(b.d1.is_empty());
        assert_eq!(b.d0, vec![e(&[(1, "1"), (-1, "a")]), e(&[(1, "1"), (-1, "b")])]);

        let z2 = GroupPresentation::parse("Z2", 1, &["aa"]).unwrap();
        assert_eq!(boundary_data(&z2).d1, vec![vec![e(&[(1, "1"), (1, "a")])]]);

        let zz = GroupPresentation::parse("Z^2", 2, &["abAB"]).unwrap();
        assert_eq!(
            boundary_data(&zz).d1,
            vec![vec![e(&[(1, "1"), (-1, "abA")]), e(&[(1, "a"), (-1, "abAB")])]]
        );
    }

    #[test]
    fn laplacian_matches_squared_form() {
        let pres = GroupPresentation::parse("F2", 2, &[]).unwrap();
        let lap = laplacian_element(&pres);
        assert_eq!(lap, e(&[(4, "1"), (-1, "a"), (-1, "A"), (-1, "b"), (-1, "B")]));
        let mut alt = FreeRingElement::zero();
        for i in 0..2 {
            let one_minus = FreeRingElement::from_terms([(1, Word::empty()), (-1, Word::generator(i))]);
            let sq = one_minus.mul(&one_minus);
            alt = alt.sub(&sq.left_mul_word(&Word::generator_inverse(i)));
        }
        assert_eq!(lap, alt);
        let one = GroupPresentation::parse("Z", 1, &[]).unwrap();
        assert_eq!(laplacian_element(&one), e(&[(2, "1"), (-1, "a"), (-1, "A")]));
    }

    #[test]
    fn fundamental_identity_on_commutator() {
        assert!(fundamental_identity_defect(&w("abAB"), 2).unwrap().is_zero());
        assert!(fundamental_identity_defect(&w("aaBaBBa"), 2).unwrap().is_zero());
    }
}
