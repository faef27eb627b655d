//! Exact rational arithmetic helpers.
//!
//! All weights, biases and intermediate activations in this crate are
//! arbitrary-precision rationals. The step boundary `x >= 0` is decided
//! exactly; no floating point appears anywhere on a decision path.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Least common multiple of the denominators of `values`, as a positive
/// integer. Returns 1 for an empty iterator. Computed by iterated
/// `lcm(a, b) = a * b / gcd(a, b)`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc.abs()
}

/// Number of decimal digits needed on each side of the point to write `r`
/// as a plain decimal, i.e. the least `K` with `r * 10^K` integral and
/// `|r| < 10^(K+1)`. `None` when the denominator has a prime factor other
/// than 2 or 5, in which case no finite decimal expansion exists.
pub fn decimal_digit_span(r: &Rational) -> Option<u32> {
    let mut den = r.denom().magnitude().clone();
    let mut frac_digits = 0u32;
    for p in [2u32, 5u32] {
        let p = BigUint::from(p);
        let mut count = 0u32;
        while (&den % &p).is_zero() {
            den /= &p;
            count += 1;
        }
        frac_digits = frac_digits.max(count);
    }
    if !den.is_one() {
        return None;
    }
    let int_part = r.numer().magnitude() / r.denom().magnitude();
    let int_digits = decimal_digits(&int_part);
    Some(frac_digits.max(int_digits.saturating_sub(1)))
}

/// Number of decimal digits of `n`, with `digits(0) = 1`.
pub fn decimal_digits(n: &BigUint) -> u32 {
    if n.is_zero() {
        1
    } else {
        n.to_str_radix(10).len() as u32
    }
}

/// Parses a rational from `p`, `p/q` or a plain decimal `d.ddd`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| format!("bad integer part in {s:?}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad fractional part in {s:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_num: BigInt = frac.parse().map_err(|_| format!("bad fractional part in {s:?}"))?;
        let magnitude = int.abs() * &scale + frac_num;
        let signed = if neg { -magnitude } else { magnitude };
        return Ok(BigRational::new(signed, scale));
    }
    let p: BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
    Ok(BigRational::from_integer(p))
}

/// Renders a rational as `p` or `p/q`, matching [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Extracts the integer value of `r`, or `None` if it has a fractional part.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// Converts an exact nonnegative rational to a `BigUint`. Panics if `r` is
/// negative or non-integral; callers use this only where exactness is a
/// structural invariant.
pub fn to_count(r: &Rational) -> BigUint {
    let n = to_integer(r).expect("count must be integral");
    match n.sign() {
        Sign::Minus => panic!("count must be nonnegative"),
        _ => n.magnitude().clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = ratio(1, 3);
        let b = ratio(2, 7);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert!(ratio(-1, 2) < rat(0));
    }

    #[test]
    fn lcm_of_denominators() {
        let vals = [ratio(1, 2), ratio(1, 3), rat(5)];
        assert_eq!(denominator_lcm(vals.iter()), BigInt::from(6));
        assert_eq!(denominator_lcm([].iter()), BigInt::one());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-7", "3/4", "-3/4", "12345678901234567890/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("2.0").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_span() {
        assert_eq!(decimal_digit_span(&rat(0)), Some(0));
        assert_eq!(decimal_digit_span(&rat(7)), Some(0));
        assert_eq!(decimal_digit_span(&rat(10)), Some(1));
        assert_eq!(decimal_digit_span(&ratio(1, 4)), Some(2));
        assert_eq!(decimal_digit_span(&ratio(-3, 10)), Some(1));
        assert_eq!(decimal_digit_span(&ratio(1, 3)), None);
        assert_eq!(decimal_digit_span(&ratio(123, 10)), Some(2));
    }
}
