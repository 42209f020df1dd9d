use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn to_char(self) -> char {
        let c = (b'a' + self.gen as u8) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A freely reduced word in the free group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
    }

    pub fn generator_inverse(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, true)] }
    }

    /// Parses letters `a..z`, capitals denoting inverses (`"aBAb"` is a b⁻¹ a⁻¹ b).
    /// `"1"` and `""` are the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let names: Vec<char> = ('a'..='z').collect();
        Self::parse_with(s, &names)
    }

    /// Parses a word over the generator names `names` (lowercase letters); the
    /// uppercase letter denotes the inverse.
    pub fn parse_with(s: &str, names: &[char]) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            if ch.is_whitespace() {
                continue;
            }
            let lower = ch.to_ascii_lowercase();
            let gen = names
                .iter()
                .position(|&n| n == lower)
                .filter(|_| ch.is_ascii_alphabetic())
                .ok_or_else(|| Error::Parse(format!("unexpected character {ch:?} in word {s:?}")))?;
            letters.push(Letter::new(gen, ch.is_ascii_uppercase()));
        }
        Ok(Word::new(letters))
    }

    pub fn format_with(&self, names: &[char]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| if l.inverse { names[l.gen].to_ascii_uppercase() } else { names[l.gen] })
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn prefix(&self, len: usize) -> Self {
        Word { letters: self.letters[..len].to_vec() }
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    /// Evaluates the word in a group given generator images and their inverses.
    pub fn evaluate<T, F>(&self, one: T, gens: &[T], gen_invs: &[T], mul: F) -> T
    where
        F: Fn(&T, &T) -> T,
    {
        self.letters.iter().fold(one, |acc, l| {
            let g = if l.inverse { &gen_invs[l.gen] } else { &gens[l.gen] };
            mul(&acc, g)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Word::parse(&s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let w = Word::parse("aBbA").unwrap();
        assert!(w.is_empty());
        let w = Word::parse("aBAb").unwrap();
        assert_eq!(w.to_string(), "aBAb");
        assert_eq!(w.inverse().to_string(), "BabA");
        assert_eq!(w.concat(&w.inverse()), Word::empty());
        assert!(Word::parse("a1").is_err());
        let names = ['a', 't', 'u', 'z'];
        let w = Word::parse_with("tUtuZ", &names).unwrap();
        assert_eq!(w.to_string(), "bCbcD");
        assert_eq!(w.format_with(&names), "tUtuZ");
        assert!(Word::parse_with("b", &names).is_err());
    }

    #[test]
    fn evaluation_in_integers() {
        // exponent sums via evaluation in (Z, +)
        let w = Word::parse("aabAb").unwrap();
        let v = w.evaluate(0i64, &[1, 10], &[-1, -10], |x, y| x + y);
        assert_eq!(v, 1 + 20);
        assert_eq!(w.exponent_sum(0), 1);
    }
}
