//! Minimal double-double arithmetic for recurrences that amplify rounding.

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        Dd::renorm(s, e + self.lo + o.lo)
    }

    pub(crate) fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub(crate) fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    pub(crate) fn div_f64(self, b: f64) -> Dd {
        let q = self.hi / b;
        let r = self.add(Dd::from_f64(b).mul_f64(q).neg());
        Dd::renorm(q, r.to_f64() / b)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CDd {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl CDd {
    pub(crate) fn from_c64(z: Complex64) -> Self {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub(crate) fn mul(self, o: CDd) -> CDd {
        CDd { re: self.re.mul(o.re).add(self.im.mul(o.im).neg()), im: self.re.mul(o.im).add(self.im.mul(o.re)) }
    }

    pub(crate) fn scale(self, w: Dd) -> CDd {
        CDd { re: self.re.mul(w), im: self.im.mul(w) }
    }

    pub(crate) fn div_f64(self, b: f64) -> CDd {
        CDd { re: self.re.div_f64(b), im: self.im.div_f64(b) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let a = Dd::from_f64(1.0).add(Dd::from_f64(1e-20));
        let b = a.add(Dd::from_f64(-1.0));
        assert_eq!(b.to_f64(), 1e-20);
    }

    #[test]
    fn division_is_accurate() {
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third.mul_f64(3.0).add(Dd::from_f64(-1.0));
        assert!(back.to_f64().abs() < 1e-30);
    }
}
