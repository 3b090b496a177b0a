//! Exact rational helpers shared by the LP and geometry code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Renders as `numerator/denominator`, also for integers (`3/1`).
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `a/b` or a plain integer.
pub fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}

/// Lossy conversion for rendering only.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_q(&q(4, 10)), "2/5");
        assert_eq!(format_q(&qi(3)), "3/1");
        assert_eq!(parse_q("2/5"), Some(q(2, 5)));
        assert_eq!(parse_q("-7"), Some(qi(-7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    proptest! {
        #[test]
        fn round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let x = q(n, d);
            prop_assert_eq!(parse_q(&format_q(&x)), Some(x));
        }
    }
}
