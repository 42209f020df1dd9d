//! Rigorous enclosure of (2 − log₂(1 + √3))/4 with dyadic interval arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Fixed-point scale of the dyadic endpoints.
const SCALE_BITS: usize = 96;

/// Closed interval [lo, hi] with endpoints m / 2^SCALE_BITS.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Dyadic {
    lo: BigUint,
    hi: BigUint,
}

impl Dyadic {
    fn one() -> BigUint {
        BigUint::one() << SCALE_BITS
    }

    fn sqrt_of(n: u64) -> Self {
        let s = (BigUint::from(n) << (2 * SCALE_BITS)).sqrt();
        let exact = &s * &s == BigUint::from(n) << (2 * SCALE_BITS);
        let hi = if exact { s.clone() } else { &s + 1u32 };
        Dyadic { lo: s, hi }
    }

    fn add_int(&self, n: u64) -> Self {
        let c = BigUint::from(n) << SCALE_BITS;
        Dyadic { lo: &self.lo + &c, hi: &self.hi + &c }
    }

    fn square(&self) -> Self {
        let lo = (&self.lo * &self.lo) >> SCALE_BITS;
        let (q, r) = (&self.hi * &self.hi).div_rem(&Self::one());
        let hi = if r.is_zero() { q } else { q + 1u32 };
        Dyadic { lo, hi }
    }

    fn halve(&self) -> Self {
        let lo = &self.lo >> 1;
        let hi = (&self.hi + 1u32) >> 1;
        Dyadic { lo, hi }
    }
}

fn rat(m: BigUint, shift: usize) -> BigRational {
    BigRational::new(BigInt::from(m), BigInt::one() << shift)
}

/// Encloses log₂ of a number in [1, 2^64) to `bits` fractional bits.
///
/// Each squaring of y ∈ [1, 2) yields the next binary digit of log₂ y. If the
/// enclosure straddles 2 the digit is undetermined and the interval is widened
/// to cover both choices.
fn log2_enclosure(x: &Dyadic, bits: usize) -> (BigRational, BigRational) {
    let two = BigUint::from(2u32) << SCALE_BITS;
    let mut y = x.clone();
    let mut int_part = 0u64;
    while y.lo >= two {
        y = y.halve();
        int_part += 1;
    }
    assert!(y.hi < two, "integer part undetermined");
    let mut acc = BigUint::zero();
    let mut width_bits = bits;
    for i in 1..=bits {
        y = y.square();
        if y.lo >= two {
            acc += BigUint::one() << (bits - i);
            y = y.halve();
        } else if y.hi >= two {
            // digit i undetermined: [acc, acc + 2^{-(i-1)}]
            width_bits = i - 1;
            break;
        }
    }
    let base = BigRational::from_integer(BigInt::from(int_part)) + rat(acc, bits);
    let width = BigRational::new(BigInt::one(), BigInt::one() << width_bits);
    (base.clone(), base + width)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantCheck {
    pub lower: String,
    pub upper: String,
    pub width_below: String,
    pub width_ok: bool,
    pub exceeds_one_eighth: bool,
}

/// Interval containing (2 − log₂(1 + √3))/4.
pub fn delta_constant_interval(bits: usize) -> (BigRational, BigRational) {
    let y = Dyadic::sqrt_of(3).add_int(1);
    let (llo, lhi) = log2_enclosure(&y, bits);
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    ((&two - lhi) / &four, (two - llo) / four)
}

/// Certifies that the constant exceeds 1/8 on an interval narrower than 10⁻⁶.
pub fn check_delta_constant() -> ConstantCheck {
    let (lo, hi) = delta_constant_interval(24);
    let eps = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    ConstantCheck {
        lower: format!("{:.9}", to_f64(&lo)),
        upper: format!("{:.9}", to_f64(&hi)),
        width_below: "1e-6".into(),
        width_ok: &hi - &lo < eps,
        exceeds_one_eighth: lo > eighth,
    }
}

fn to_f64(x: &BigRational) -> f64 {
    // only for display; decisions above are exact
    let scale: BigInt = BigInt::one() << 60;
    let n = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    n.to_string().parse::<f64>().unwrap_or(f64::NAN) / 2f64.powi(60)
}
