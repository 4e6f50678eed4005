//! Exact rationals used for segment endpoints, twists and shifts.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

pub fn half() -> Rat {
    Rat::new(1, 2)
}

/// Formats as `p` or `p/q`.
pub fn format(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<i64>().ok().map(Rat::from_integer),
    }
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

/// Reduces an integer modulo 2 into {0,1}.
pub fn parity(n: i64) -> u8 {
    n.mod_floor(&2) as u8
}

pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(x))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [rat(-1, 2), int(3), int(0), rat(7, 4)] {
            assert_eq!(parse(&format(&x)), Some(x));
        }
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn parity_is_non_negative() {
        assert_eq!(parity(-3), 1);
        assert_eq!(parity(4), 0);
    }
}
