//! Exact complex numbers over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericError;

/// A complex number `re + im·i` with arbitrary-precision rational parts.
///
/// Both parts are kept in lowest terms with positive denominators (this is
/// what [`BigRational`] maintains), so derived equality is exact equality of
/// values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

/// Binary operation selector for [`gr_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`. Only division can fail.
pub fn gr_arith(
    a: &GaussianRational,
    b: &GaussianRational,
    op: GrOp,
) -> Result<GaussianRational, NumericError> {
    match op {
        GrOp::Add => Ok(a + b),
        GrOp::Sub => Ok(a - b),
        GrOp::Mul => Ok(a * b),
        GrOp::Div => a.checked_div(b),
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real value. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, always real and exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Result<Self, NumericError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest double-precision value of each part.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

/// Canonical text: `3/2`, `-i`, `1/2i`, `(1+3/4i)`.
///
/// A pure imaginary number carries the unit suffix directly; a number with
/// both parts is parenthesised so it can be used as a factor.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(im: &BigRational) -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => f.write_str(&imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{})", self.re, sign, imag(&self.im.abs()))
            }
        }
    }
}

/// Parses a real rational literal: `3`, `-7`, `1/2`, `2.5`.
///
/// Decimal literals are converted exactly (`2.5` becomes `5/2`).
impl FromStr for GaussianRational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Self::real)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, NumericError> {
    let bad = || NumericError::Parse(s.to_string());
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn examples() {
        let a = gr((1, 1), (1, 1));
        let b = gr((1, 1), (-1, 1));
        assert_eq!(gr_arith(&a, &b, GrOp::Mul).unwrap(), GaussianRational::from(2));

        let half = GaussianRational::ratio(1, 2);
        let third = GaussianRational::ratio(1, 3);
        assert_eq!(
            gr_arith(&half, &third, GrOp::Add).unwrap(),
            GaussianRational::ratio(5, 6)
        );

        let z = gr((3, 1), (4, 1));
        assert_eq!(gr_arith(&z, &z, GrOp::Div).unwrap(), GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = GaussianRational::from(1);
        assert_eq!(
            gr_arith(&z, &GaussianRational::zero(), GrOp::Div),
            Err(NumericError::DivisionByZero)
        );
    }

    #[test]
    fn reduced_form() {
        let a = gr((2, 4), (-6, -8));
        assert_eq!(a.re(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(*a.im().denom(), BigInt::from(4));
        assert_eq!(*a.im().numer(), BigInt::from(3));
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::ratio(3, 2).to_string(), "3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(gr((0, 1), (1, 2)).to_string(), "1/2i");
        assert_eq!(gr((1, 1), (-3, 4)).to_string(), "(1-3/4i)");
        assert_eq!(GaussianRational::zero().to_string(), "0");
    }

    #[test]
    fn parse() {
        assert_eq!("1/2".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(1, 2));
        assert_eq!("-7".parse::<GaussianRational>().unwrap(), GaussianRational::from(-7));
        assert_eq!("2.5".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(5, 2));
        assert_eq!("-0.25".parse::<GaussianRational>().unwrap(), GaussianRational::ratio(-1, 4));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1.".parse::<GaussianRational>().is_err());
    }
}
