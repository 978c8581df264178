//! Exact coefficient fields: rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Signed, ToPrimitive, Zero};
use num::{BigInt, BigRational};

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`.
///
/// Panics if `d == 0`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational from decimal notation, either `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("invalid rational {s:?}: zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as `p` when the denominator is one, else `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Converts exactly when the float is finite; `None` otherwise.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Scalar field interface shared by [`Rat`] and [`GaussRat`].
///
/// All operations are exact; `inverse` returns `None` only for zero.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
    /// Real and imaginary parts as floats, for numeric evaluation.
    fn to_f64_parts(&self) -> (f64, f64);
}

impl Coefficient for Rat {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_f64_parts(&self) -> (f64, f64) {
        (self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Gaussian rational `re + im * i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussRat {
            re: rat(re),
            im: rat(im),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<Rat> for GaussRat {
    fn from(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        Coefficient::mul_ref(&self, &rhs)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }
}

impl Coefficient for GaussRat {
    fn add_ref(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm_sq();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
    fn from_rat(r: &Rat) -> Self {
        GaussRat {
            re: r.clone(),
            im: Rat::zero(),
        }
    }
    fn to_f64_parts(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        let im_mag = self.im.abs();
        let im_part = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{im_mag}i")
        };
        if Zero::is_zero(&self.re) {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else if self.im.is_negative() {
            write!(f, "{}-{im_part}", self.re)
        } else {
            write!(f, "{}+{im_part}", self.re)
        }
    }
}
