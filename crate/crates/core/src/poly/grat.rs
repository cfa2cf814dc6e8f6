//! Exact Gaussian rationals `p/q + (r/s)i`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element of `Q(i)`, always stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    re: BigRational,
    im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Panics on zero, like rational division.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "GRat::inv of zero");
        Self::new(&self.re / &n, -&self.im / &n)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(&self.re * &k, &self.im * &k)
    }
}

impl Default for GRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GRat {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, o: &GRat) -> GRat {
        GRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, o: &GRat) -> GRat {
        GRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, o: &GRat) -> GRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GRat::real(&self.re * &o.re);
        }
        GRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for &GRat {
    type Output = GRat;
    fn div(self, o: &GRat) -> GRat {
        if o.im.is_zero() {
            return GRat::new(&self.re / &o.re, &self.im / &o.re);
        }
        self * &o.inv()
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GRat {
            type Output = GRat;
            fn $m(self, o: GRat) -> GRat {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -&self
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// Canonical text: `p/q`, or `p/q,r/s` when the imaginary part is nonzero.
impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ratio(f, &self.re)?;
        if !self.im.is_zero() {
            f.write_str(",")?;
            write_ratio(f, &self.im)?;
        }
        Ok(())
    }
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad rational `{s}`");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for GRat {
    type Err = String;

    /// Accepts `p/q`, `p/q,r/s`, and bare integers in either slot.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once(',') {
            Some((re, im)) => Ok(GRat::new(parse_ratio(re)?, parse_ratio(im)?)),
            None => Ok(GRat::real(parse_ratio(s)?)),
        }
    }
}

/// Exact Gaussian integer, used by the fraction-free elimination kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    pub fn mul(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact in `Z[i]`.
    pub fn div_exact(&self, o: &GInt) -> GInt {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
        GInt { re: re / &n, im: im / n }
    }
}

/// Sign of a real rational, used for point classification.
pub fn sign(r: &BigRational) -> std::cmp::Ordering {
    if r.is_positive() {
        std::cmp::Ordering::Greater
    } else if r.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GRat {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = GRat::from_ints(1, 2);
        let b = GRat::from_ints(3, -1);
        assert_eq!(&a * &b, GRat::from_ints(5, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a + &b, GRat::from_ints(4, 1));
        assert_eq!(a.conj(), GRat::from_ints(1, -2));
        assert_eq!(&GRat::i() * &GRat::i(), GRat::from_int(-1));
        assert_eq!(&a * &a.inv(), GRat::one());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(g("2/4").to_string(), "1/2");
        assert_eq!(g("3").to_string(), "3/1");
        assert_eq!(g("-1/3,2/-6").to_string(), "-1/3,-1/3");
        assert_eq!(g("5/1,0/1").to_string(), "5/1");
        assert!("1/0".parse::<GRat>().is_err());
        assert!("x".parse::<GRat>().is_err());
    }

    #[test]
    fn gaussian_exact_division() {
        let a = GInt {
            re: BigInt::from(3),
            im: BigInt::from(4),
        };
        let b = GInt {
            re: BigInt::from(1),
            im: BigInt::from(-2),
        };
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }
}
