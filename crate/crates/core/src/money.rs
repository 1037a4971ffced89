//! Exact money amounts.
//!
//! Payoffs are only ever compared, never summed, so a fixed-width rational is
//! enough: `Ratio::cmp` does not overflow. Parsing is where overflow can
//! happen, and it is reported as an error there.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact amount of money.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Money(Ratio<i128>);

impl Money {
    pub const ZERO: Money = Money(Ratio::new_raw(0, 1));

    pub fn from_int(value: i64) -> Self {
        Money(Ratio::from_integer(value as i128))
    }

    pub fn ratio(self) -> Ratio<i128> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(self) -> bool {
        self.0.is_positive()
    }
}

impl Default for Money {
    fn default() -> Self {
        Money::ZERO
    }
}

impl From<i64> for Money {
    fn from(value: i64) -> Self {
        Money::from_int(value)
    }
}

impl FromStr for Money {
    type Err = Error;

    /// Accepts integers, terminating decimals (`"-2.75"`) and fractions (`"7/3"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid money amount {s:?}"));
        let text = s.trim();
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((num, den)) = text.split_once('/') {
            let num: i128 = num.trim().parse().map_err(|_| bad())?;
            let den: i128 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Money(Ratio::new(num, den)));
        }

        let (negative, body) = match text.as_bytes()[0] {
            b'-' => (true, &text[1..]),
            b'+' => (false, &text[1..]),
            _ => (false, text),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut numer: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            numer = numer.checked_mul(10).and_then(|n| n.checked_add(i128::from(b - b'0'))).ok_or_else(bad)?;
        }
        let denom = 10i128.checked_pow(u32::try_from(frac_part.len()).map_err(|_| bad())?).ok_or_else(bad)?;
        if negative {
            numer = -numer;
        }
        Ok(Money(Ratio::new(numer, denom)))
    }
}

impl fmt::Display for Money {
    /// Integers print bare, terminating fractions as decimals, everything
    /// else as `p/q`. The output always parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = *self.0.numer();
        let denom = *self.0.denom();
        if denom == 1 {
            return write!(f, "{numer}");
        }
        let (mut twos, mut fives, mut rest) = (0u32, 0u32, denom);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return write!(f, "{numer}/{denom}");
        }
        let digits = twos.max(fives);
        let scale = 10i128.pow(digits);
        let scaled = numer * (scale / denom);
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let scale = scale as u128;
        write!(f, "{sign}{}.{:0width$}", abs / scale, abs % scale, width = digits as usize)
    }
}

impl Serialize for Money {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Money {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Literal {
            Int(i64),
            Text(String),
        }
        match Literal::deserialize(deserializer)? {
            Literal::Int(v) => Ok(Money::from_int(v)),
            Literal::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Money {
        s.parse().unwrap()
    }

    #[test]
    fn parses_exact_decimals() {
        assert_eq!(m("3"), Money::from_int(3));
        assert_eq!(m("0.1").ratio(), Ratio::new(1, 10));
        assert_eq!(m("-2.75").ratio(), Ratio::new(-11, 4));
        assert_eq!(m("+.5").ratio(), Ratio::new(1, 2));
        assert_eq!(m("7/3").ratio(), Ratio::new(7, 3));
        assert!(m("0.1") < m("0.10000000000000000001"));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "-", ".", "1e3", "1.2.3", "abc", "1/0", "99999999999999999999999999999999999999999"] {
            assert!(s.parse::<Money>().is_err(), "{s}");
        }
    }

    #[test]
    fn displays_canonically() {
        assert_eq!(m("4").to_string(), "4");
        assert_eq!(m("-2.750").to_string(), "-2.75");
        assert_eq!(m("-0.5").to_string(), "-0.5");
        assert_eq!(m("1/3").to_string(), "1/3");
        assert_eq!(m("3/40").to_string(), "0.075");
    }

    #[test]
    fn json_accepts_ints_and_strings() {
        let v: Vec<Money> = serde_json::from_str(r#"[3, "1.5", "-2"]"#).unwrap();
        assert_eq!(v, vec![m("3"), m("1.5"), m("-2")]);
        assert!(serde_json::from_str::<Money>("1.5").is_err());
        assert_eq!(serde_json::to_string(&m("1.5")).unwrap(), r#""1.5""#);
    }

    proptest! {
        #[test]
        fn display_round_trips(n in -10_000i64..10_000, d in 1i64..2_000) {
            let x = Money(Ratio::new(n as i128, d as i128));
            prop_assert_eq!(x.to_string().parse::<Money>().unwrap(), x);
        }
    }
}
