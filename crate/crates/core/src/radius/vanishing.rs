use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// The vanishing orders `h(n)` of the Schwarz functions `w*_n` multiplying the
/// coefficient terms.
///
/// Anything other than the identity carries an affine lower bound
/// `h(n) ≥ slope·n + offset`, which certifies the tail of `Σ A_n x^{h(n)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingOrderSpec {
    /// `h(n) = n`.
    Identity,
    /// `h(n) = slope·n + offset`.
    Affine { slope: u32, offset: u32 },
    /// Explicit `h(1), …, h(len)`; beyond the table only the declared bound is known.
    Table { values: Vec<u32>, slope: u32, offset: u32 },
}

impl VanishingOrderSpec {
    pub fn affine(slope: u32, offset: u32) -> Result<Self> {
        if slope == 0 {
            return Err(Error::InvalidParameter("h slope must be >= 1".into()));
        }
        Ok(Self::Affine { slope, offset })
    }

    pub fn table(values: Vec<u32>, slope: u32, offset: u32) -> Result<Self> {
        if slope == 0 {
            return Err(Error::InvalidParameter("h slope must be >= 1".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidParameter("h(n) must be >= 1".into()));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter("h must be nondecreasing".into()));
        }
        for (i, &h) in values.iter().enumerate() {
            let bound = slope as u64 * (i as u64 + 1) + offset as u64;
            if (h as u64) < bound {
                return Err(Error::InvalidParameter(format!("h({}) = {h} is below the declared bound {bound}", i + 1)));
            }
        }
        Ok(Self::Table { values, slope, offset })
    }

    /// `h(n)` where known.
    pub fn value(&self, n: usize) -> Option<u64> {
        match self {
            Self::Identity => Some(n as u64),
            Self::Affine { slope, offset } => Some(*slope as u64 * n as u64 + *offset as u64),
            Self::Table { values, .. } => n.checked_sub(1).and_then(|i| values.get(i)).map(|&h| h as u64),
        }
    }

    /// Declared `(slope, offset)` with `h(n) ≥ slope·n + offset`.
    pub fn lower_bound(&self) -> (u32, u32) {
        match self {
            Self::Identity => (1, 0),
            Self::Affine { slope, offset } | Self::Table { slope, offset, .. } => (*slope, *offset),
        }
    }

    /// Last index with a known `h(n)`, `None` when `h` is known everywhere.
    pub fn known_until(&self) -> Option<usize> {
        match self {
            Self::Table { values, .. } => Some(values.len()),
            _ => None,
        }
    }
}

impl fmt::Display for VanishingOrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => f.write_str("n"),
            Self::Affine { slope, offset } => write!(f, "{slope}*n+{offset}"),
            Self::Table { values, slope, offset } => {
                let list: Vec<String> = values.iter().map(u32::to_string).collect();
                write!(f, "[{}]>={slope}*n+{offset}", list.join(","))
            }
        }
    }
}

impl Serialize for VanishingOrderSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Grammar: `n`, `a*n`, `n+b`, `a*n+b` with integers `a ≥ 1`, `b ≥ 0`.
impl FromStr for VanishingOrderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad h spec {s:?}: expected \"n\" or \"a*n+b\""));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "n" {
            return Ok(Self::Identity);
        }
        let (linear, offset) = match compact.split_once('+') {
            Some((l, b)) => (l, b.parse::<u32>().map_err(|_| bad())?),
            None => (compact.as_str(), 0),
        };
        let slope = match linear {
            "n" => 1,
            _ => linear.strip_suffix("*n").ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
        };
        if slope == 1 && offset == 0 {
            return Ok(Self::Identity);
        }
        Self::affine(slope, offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!("n".parse::<VanishingOrderSpec>().unwrap(), VanishingOrderSpec::Identity);
        assert_eq!("1*n+0".parse::<VanishingOrderSpec>().unwrap(), VanishingOrderSpec::Identity);
        assert_eq!("2*n+1".parse::<VanishingOrderSpec>().unwrap(), VanishingOrderSpec::Affine { slope: 2, offset: 1 });
        assert_eq!(
            " 3 * n ".parse::<VanishingOrderSpec>().unwrap(),
            VanishingOrderSpec::Affine { slope: 3, offset: 0 }
        );
        assert_eq!("n+2".parse::<VanishingOrderSpec>().unwrap(), VanishingOrderSpec::Affine { slope: 1, offset: 2 });
        for bad in ["", "0*n+1", "2n+1", "n-1", "x", "2*n+-1"] {
            assert!(bad.parse::<VanishingOrderSpec>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["n", "2*n+1", "4*n+0"] {
            let h: VanishingOrderSpec = s.parse().unwrap();
            assert_eq!(h.to_string().parse::<VanishingOrderSpec>().unwrap(), h);
        }
    }

    #[test]
    fn table_validation() {
        assert!(VanishingOrderSpec::table(vec![1, 3, 2], 1, 0).is_err());
        assert!(VanishingOrderSpec::table(vec![0, 3], 1, 0).is_err());
        assert!(VanishingOrderSpec::table(vec![2, 3], 2, 0).is_err());
        let t = VanishingOrderSpec::table(vec![2, 4, 7], 2, 0).unwrap();
        assert_eq!(t.value(3), Some(7));
        assert_eq!(t.value(4), None);
        assert_eq!(t.known_until(), Some(3));
    }
}
