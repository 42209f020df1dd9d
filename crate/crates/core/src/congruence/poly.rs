use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;

/// Integer polynomial, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect())
    }

    /// Value at `x` modulo `m`, in `0..m`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m128 = m as i128;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x as i128 + c as i128).rem_euclid(m128);
        }
        acc as u64
    }

    /// Parses expressions such as `"x^3 - x^2 + 2x - 1"` in a single variable.
    pub fn parse(s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let err = || Error::Parse(format!("cannot parse polynomial {s:?}"));
        let mut var: Option<char> = None;
        let mut coeffs: Vec<i64> = Vec::new();
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1i64, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let split = body.find(|c: char| c.is_ascii_alphabetic());
            let (coef, exp) = match split {
                None => (body.parse::<i64>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let v = body[pos..].chars().next().unwrap();
                    if *var.get_or_insert(v) != v {
                        return Err(Error::Parse(format!("more than one variable in {s:?}")));
                    }
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| err())? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] += sign * coef;
        }
        Ok(Poly::new(coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "x")?,
                _ => write!(f, "{mag}x")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl TryFrom<String> for Poly {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Poly::parse(&s)
    }
}

impl From<Poly> for String {
    fn from(p: Poly) -> String {
        p.to_string()
    }
}

/// The ring of integers of the trace field, presented as Z[x]/(f).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub min_poly: Poly,
    pub label: String,
}

impl RingSpec {
    pub fn new(min_poly: Poly, label: &str) -> Result<Self> {
        if !min_poly.is_monic() {
            return Err(Error::Validation(format!("minimal polynomial {min_poly} is not monic")));
        }
        Ok(RingSpec { min_poly, label: label.to_string() })
    }

    /// Residues a mod p with f(a) ≡ 0 and f'(a) ≢ 0: the degree-one primes above p
    /// at which the reduction map is unramified.
    pub fn simple_roots_mod(&self, p: u64) -> Vec<u64> {
        let df = self.min_poly.derivative();
        (0..p)
            .filter(|&a| self.min_poly.eval_mod(a, p) == 0 && df.eval_mod(a, p) != 0)
            .collect()
    }
}

pub fn pow_u64(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("prime power overflows u64")
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Lifts a simple root of f mod p to a root mod p^k congruent to `a1`.
pub fn hensel_root(f: &Poly, p: u64, a1: u64, k: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Ok(0);
    }
    let a1 = a1 % p;
    if f.eval_mod(a1, p) != 0 {
        return Err(Error::Precondition(format!("{a1} is not a root of {f} mod {p}")));
    }
    let df = f.derivative();
    let d1 = df.eval_mod(a1, p);
    if d1 == 0 {
        return Err(Error::UnusablePrime(format!("{a1} is a repeated root of {f} mod {p}")));
    }
    let dinv = inv_mod(d1, p).expect("p prime");
    let mut a = a1;
    let mut q = p;
    for _ in 1..k {
        let next = q * p;
        // f(a + tq) ≡ f(a) + tq f'(a) mod q p
        let fa = f.eval_mod(a, next);
        let t = ((fa / q) % p * (p - dinv)) % p;
        a = (a + t * q) % next;
        q = next;
    }
    Ok(a)
}
