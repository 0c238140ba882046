use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::Error;

/// A vanishing order `m ≥ 1`, or the `m = ∞` limit.
///
/// `∞` stands for the pointwise limit of the corresponding term:
/// `x^∞ = 0` on `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(m: u32) -> crate::Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("order must be >= 1".into()));
        }
        Ok(Order::Finite(m))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    pub fn as_finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    /// `x^m` for `0 <= x < 1`, with `x^∞ = 0`.
    pub fn pow(self, x: f64) -> f64 {
        match self {
            Order::Finite(m) => x.powi(m as i32),
            Order::Infinite => 0.0,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Order::Infinite);
        }
        let m: u32 = s
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad order {s:?}: expected integer >= 1 or \"inf\"")))?;
        Order::finite(m)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => serializer.serialize_u32(*m),
            Order::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inf_and_integers() {
        assert_eq!("inf".parse::<Order>().unwrap(), Order::Infinite);
        assert_eq!("INF".parse::<Order>().unwrap(), Order::Infinite);
        assert_eq!("3".parse::<Order>().unwrap(), Order::Finite(3));
        assert!("0".parse::<Order>().is_err());
        assert!("-1".parse::<Order>().is_err());
        assert!("two".parse::<Order>().is_err());
    }

    #[test]
    fn infinite_power_is_zero() {
        assert_eq!(Order::Infinite.pow(0.99), 0.0);
        assert_eq!(Order::Finite(2).pow(0.5), 0.25);
    }
}
