use crate::{Error, Result};

/// A bracket `[lo, hi]` with `value_lo < 0 <= value_hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub value_lo: f64,
    pub value_hi: f64,
    pub iterations: u32,
}

impl Bracket {
    /// One secant step between the endpoints, kept strictly inside the bracket.
    pub fn polished_root(&self) -> f64 {
        let mid = self.lo + 0.5 * (self.hi - self.lo);
        let slope = self.value_hi - self.value_lo;
        if !(slope > 0.0) {
            return mid;
        }
        let x = self.lo - self.value_lo * (self.hi - self.lo) / slope;
        if x > self.lo && x < self.hi {
            x
        } else {
            mid
        }
    }
}

/// Bisection for an increasing function with a sign change on `[lo, hi]`.
///
/// `f` must return a value whose sign is trustworthy; only signs steer the
/// iteration. Stops once `hi − lo <= tol` or the midpoint no longer splits the
/// bracket in floating point.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Bracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let value_lo = f(lo)?;
    let value_hi = f(hi)?;
    if !(value_lo < 0.0 && value_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, value_lo, value_hi });
    }
    let mut b = Bracket { lo, hi, value_lo, value_hi, iterations: 0 };
    while b.hi - b.lo > tol {
        let mid = b.lo + 0.5 * (b.hi - b.lo);
        if mid <= b.lo || mid >= b.hi {
            break;
        }
        let v = f(mid)?;
        b.iterations += 1;
        if v < 0.0 {
            b.lo = mid;
            b.value_lo = v;
        } else {
            b.hi = mid;
            b.value_hi = v;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let b = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-13).unwrap();
        assert!(b.hi - b.lo <= 1e-13);
        assert!(b.lo < 2f64.sqrt() && 2f64.sqrt() <= b.hi);
        assert!((b.polished_root() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_missing_sign_change() {
        assert!(matches!(bisect(|x| Ok(x + 1.0), 0.0, 1.0, 1e-12), Err(Error::NoSignChange { .. })));
        assert!(matches!(bisect(|x| Ok(x - 2.0), 0.0, 1.0, 1e-12), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(bisect(Ok, -1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn terminates_below_ulp() {
        let b = bisect(|x| Ok(x - 0.3), 0.0, 1.0, 1e-30).unwrap();
        assert!(b.lo < 0.3 + 1e-16 && b.hi > 0.3 - 1e-16);
    }
}
