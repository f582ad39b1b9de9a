//! The numeric abstraction every algorithm in the crate is written against.
//!
//! All set, function, and measure code is generic over [`Scalar`]. The exact
//! instantiation ([`crate::Rational`]) is the one the identities are checked
//! with; the float instantiations exist for plotting and quick estimates and
//! only satisfy the identities up to rounding.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, Zero};

pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Parse the textual wire form (`"p/q"`, `"p"`, or a decimal for floats).
    fn parse_wire(s: &str) -> Option<Self>;

    /// Canonical textual form. For exact scalars this is `"p/q"` in lowest
    /// terms, or `"p"` for integers.
    fn to_wire(&self) -> String;

    /// True when equality and ordering are exact for this type.
    const EXACT: bool;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn parse_wire(s: &str) -> Option<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).ok()?;
                let d = BigInt::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n, d))
            }
            None => {
                if let Some((whole, frac)) = s.split_once('.') {
                    // finite decimals are exact rationals
                    let neg = whole.starts_with('-');
                    let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
                    let n = BigInt::from_str(&digits).ok()?;
                    let d = num_traits::pow(BigInt::from(10), frac.len());
                    let r = BigRational::new(n, d);
                    return Some(if neg { -r } else { r });
                }
                BigInt::from_str(&s).ok().map(BigRational::from_integer)
            }
        }
    }

    fn to_wire(&self) -> String {
        self.to_string()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn parse_wire(s: &str) -> Option<Self> {
                let s = s.trim().replace('\u{2212}', "-");
                match s.split_once('/') {
                    Some((n, d)) => {
                        let n: $t = n.trim().parse().ok()?;
                        let d: $t = d.trim().parse().ok()?;
                        if d == 0.0 {
                            None
                        } else {
                            Some(n / d)
                        }
                    }
                    None => s.parse().ok().filter(|x: &$t| x.is_finite()),
                }
            }

            fn to_wire(&self) -> String {
                self.to_string()
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Total order for scalars; panics on NaN, which no operation here produces
/// from finite inputs.
pub fn cmp<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).expect("scalar comparison on NaN")
}

pub fn max_of<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_of<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Sort and deduplicate a list of scalars.
pub fn sort_dedup<S: Scalar>(v: &mut Vec<S>) {
    v.sort_by(cmp);
    v.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_round_trip_exact() {
        let r = BigRational::parse_wire("6/-4").unwrap();
        assert_eq!(r.to_wire(), "-3/2");
        assert_eq!(BigRational::parse_wire("7").unwrap().to_wire(), "7");
        assert_eq!(BigRational::parse_wire("-0.25").unwrap().to_wire(), "-1/4");
        assert_eq!(BigRational::parse_wire("\u{2212}1/2").unwrap().to_wire(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(BigRational::parse_wire("1/0").is_none());
        assert!(f64::parse_wire("1/0").is_none());
        assert!(BigRational::parse_wire("abc").is_none());
    }

    #[test]
    fn float_parse() {
        assert_eq!(f64::parse_wire("1/4"), Some(0.25));
        assert_eq!(f32::parse_wire("2"), Some(2.0));
    }
}
