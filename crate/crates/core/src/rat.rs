//! Exact arithmetic aliases and small helpers shared across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Floor of an exact rational as an integer.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Least common multiple of the denominators of `values`; always positive.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rat>) -> Int {
    let mut l = Int::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l.abs()
}

/// Parses a decimal integer or a `p/q` rational.
pub fn parse_rat(token: &str) -> Result<Rat, String> {
    let parse_int = |s: &str| -> Result<Int, String> {
        s.parse::<Int>()
            .map_err(|_| format!("invalid number `{s}`"))
    };
    match token.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(token)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{token}`"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Prints a rational as `p` or `p/q` in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "-7", "3/4", "-5/9", "12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn denominator_lcm_positive() {
        let vals = [ratio(1, 6), ratio(-3, 4), rat(2)];
        assert_eq!(denominator_lcm(vals.iter()), int(12));
    }
}
