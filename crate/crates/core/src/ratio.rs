//! Exact rational helpers: parsing/printing in the `p/q` form used by every
//! JSON schema in this workspace.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::str::FromStr;

use crate::error::StructureError;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, StructureError> {
    let s = s.trim();
    let bad = || StructureError::new(format!("cannot parse rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let numer = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(StructureError::new(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(numer, denom))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["0", "1", "-3", "1/2", "-7/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
