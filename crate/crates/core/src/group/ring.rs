use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::Word;

/// An element of the integral group ring of the free group.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(1, w)
    }

    pub fn from_term(c: i64, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(c, w);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Word)>) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(c, w);
        }
        e
    }

    pub fn add_term(&mut self, c: i64, w: Word) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (c * s, w.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(a * b, u.concat(v));
            }
        }
        out
    }

    /// Left multiplication by a single group element.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        Self::from_terms(self.terms().map(|(u, c)| (c, w.concat(u))))
    }

    /// The anti-involution g ↦ g⁻¹ extended linearly.
    pub fn involution(&self) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (c, w.inverse())))
    }

    /// Image under the augmentation map to Z.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Evaluates in an algebra given generator images, their inverses, a unit and
    /// the ring operations.
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate<T, M, A, S>(&self, one: &T, gens: &[T], gen_invs: &[T], mul: M, add: A, scale: S, zero: T) -> T
    where
        T: Clone,
        M: Fn(&T, &T) -> T,
        A: Fn(&T, &T) -> T,
        S: Fn(&T, i64) -> T,
    {
        self.terms().fold(zero, |acc, (w, c)| {
            let g = w.evaluate(one.clone(), gens, gen_invs, &mul);
            add(&acc, &scale(&g, c))
        })
    }
}

impl fmt::Display for FreeRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            if i > 0 {
                write!(f, "{sep}{sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeRingElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = FreeRingElement::from_terms([(1, w("a")), (2, w("b"))]);
        let b = FreeRingElement::from_terms([(-1, w("a")), (1, w("1"))]);
        let s = a.add(&b);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&w("a")), 0);
        assert_eq!(s.to_string(), "1 + 2b");
    }

    #[test]
    fn products_reduce_freely() {
        let x = FreeRingElement::from_terms([(1, w("1")), (-1, w("a"))]);
        let y = FreeRingElement::from_terms([(1, w("1")), (-1, w("A"))]);
        // (1 − a)(1 − a⁻¹) = 2 − a − a⁻¹
        let p = x.mul(&y);
        assert_eq!(p, FreeRingElement::from_terms([(2, w("1")), (-1, w("a")), (-1, w("A"))]));
    }
}
