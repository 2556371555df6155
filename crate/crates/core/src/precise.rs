//! Double-double reals and big fixed-point complex numbers, used where the
//! functional equation is checked far beyond the conditioning of `f64`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const TWO_PI: Dd = Dd { hi: std::f64::consts::TAU, lo: 2.449_293_598_294_706_4e-16 };

#[allow(clippy::should_implement_trait)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let r = self.sub(Dd::from_f64(d).mul_f64(q1));
        let q2 = r.hi / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(self) -> Dd {
        let f = self.hi.floor();
        let mut r = Dd { hi: self.hi - f, lo: self.lo };
        let (hi, lo) = quick_two_sum(r.hi, r.lo);
        r = Dd { hi, lo };
        if r.hi < 0.0 {
            r = r.add(Dd::ONE);
        } else if r.hi >= 1.0 {
            r = r.sub(Dd::ONE);
        }
        r
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// `(cos 2πθ, sin 2πθ)`.
    pub fn cos_sin_turns(self) -> (Dd, Dd) {
        let theta = self.fract();
        let quadrant = (theta.hi * 4.0).round();
        let t = theta.sub(Dd::from_f64(quadrant / 4.0));
        let a = t.mul(TWO_PI);
        let (c, s) = taylor_cos_sin(a);
        match (quadrant as i64).rem_euclid(4) {
            0 => (c, s),
            1 => (s.neg(), c),
            2 => (c.neg(), s.neg()),
            _ => (s, c.neg()),
        }
    }
}

/// Taylor series for `|a| <= π/4`.
fn taylor_cos_sin(a: Dd) -> (Dd, Dd) {
    let a2 = a.mul(a);
    let mut cos = Dd::ONE;
    let mut sin = a;
    let mut term_c = Dd::ONE;
    let mut term_s = a;
    let mut n = 1.0;
    loop {
        term_c = term_c.mul(a2).div_f64(-(n * (n + 1.0)));
        term_s = term_s.mul(a2).div_f64(-((n + 1.0) * (n + 2.0)));
        cos = cos.add(term_c);
        sin = sin.add(term_s);
        n += 2.0;
        if term_c.hi.abs() < 1e-36 && term_s.hi.abs() < 1e-36 {
            break;
        }
    }
    (cos, sin)
}

/// Complex number as `(re, im) * 2^-FRAC_BITS` with big-integer parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

pub const FRAC_BITS: u32 = 256;

fn dd_to_fixed(x: Dd) -> BigInt {
    let scale = 2f64.powi(FRAC_BITS as i32);
    big_from_f64(x.hi * scale) + big_from_f64(x.lo * scale)
}

fn big_from_f64(x: f64) -> BigInt {
    <BigInt as num_traits::FromPrimitive>::from_f64(x.trunc()).unwrap_or_else(BigInt::zero)
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        Fixed { re: BigInt::from(1) << FRAC_BITS, im: BigInt::zero() }
    }

    pub fn from_dd(re: Dd, im: Dd) -> Self {
        Fixed { re: dd_to_fixed(re), im: dd_to_fixed(im) }
    }

    pub fn from_int(c: &BigInt) -> Self {
        Fixed { re: c << FRAC_BITS, im: BigInt::zero() }
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        let re = (&self.re * &o.re - &self.im * &o.im) >> FRAC_BITS;
        let im = (&self.re * &o.im + &self.im * &o.re) >> FRAC_BITS;
        Fixed { re, im }
    }

    /// Integer multiple, no rescaling.
    pub fn scale_int(&self, c: &BigInt) -> Fixed {
        Fixed { re: &self.re * c, im: &self.im * c }
    }

    pub fn norm(&self) -> f64 {
        let to = |x: &BigInt| {
            let bits = x.bits();
            if bits > 900 {
                let shift = bits - 900;
                (x >> shift).to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32 - FRAC_BITS as i32)
            } else {
                x.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(FRAC_BITS as i32)
            }
        };
        to(&self.re).hypot(to(&self.im))
    }
}
