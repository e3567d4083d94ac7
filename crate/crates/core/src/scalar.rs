//! Exact scalars: the field abstraction used by [`crate::matrix::Matrix`] and
//! its one shipped instance, the Gaussian rationals ℚ(i).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ArithmeticError, ParseError};

/// The operations every matrix entry type must provide.
///
/// The `*_ref` methods exist so generic code can avoid cloning arbitrary
/// precision values; implementors with cheap references should override them.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn neg_ref(&self) -> Self {
        -self.clone()
    }

    /// Multiplicative inverse; zero has none.
    fn inv(&self) -> Result<Self, ArithmeticError>;

    fn div_ref(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        Ok(self.mul_ref(&rhs.inv()?))
    }
}

/// An element `re + im·i` of ℚ(i).
///
/// Both parts are `BigRational`, which keeps numerator and denominator coprime
/// with a positive denominator after every operation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real scalar. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(a/b) + (c/d)·i`. Panics on a zero denominator.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussianRational::new(BigRational::from_integer(n), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
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
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True for `+1` and `-1` exactly.
    pub fn is_plus_minus_one(&self) -> bool {
        self.im.is_zero() && (self.re.is_one() || (-&self.re).is_one())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        self.div_ref(rhs)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Result<Self, ArithmeticError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = GaussianRational::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// `(-1)^k`, for any integer `k`.
    pub fn sign_power(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        }
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg_ref(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }

    fn inv(&self) -> Result<Self, ArithmeticError> {
        if Field::is_zero(self) {
            return Err(ArithmeticError::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(GaussianRational::new(self.re.recip(), BigRational::zero()));
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        <GaussianRational as Field>::zero()
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        self.add_ref(rhs)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        self.sub_ref(rhs)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        self.mul_ref(rhs)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.neg_ref()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }
}

/// Lexicographic on `(re, im)`. Only used to put specs in a canonical order;
/// it has no algebraic meaning.
impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.is_zero();
        let im_zero = self.im.is_zero();
        if im_zero {
            return write_rational(f, &self.re);
        }
        if !re_zero {
            write_rational(f, &self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        let mag = self.im.abs();
        if self.im.is_negative() {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
        }
        f.write_str("i")
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(b'-') {
            Some(true)
        } else if self.eat(b'+') {
            Some(false)
        } else {
            None
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<BigInt>().expect("validated digits"))
    }

    /// `int [ "/" posint ]`, without sign.
    fn unsigned_rat(&mut self) -> Result<BigRational, ParseError> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Parses the scalar grammar
/// `real | real imag | imag` where `imag := [+|-] rat "i" | [+|-] "i"`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ParseError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let mut cur = Cursor { bytes: trimmed.as_bytes(), pos: 0 };
    let shift = |e: ParseError| ParseError::new(e.position + offset, e.message);

    if cur.bytes.is_empty() {
        return Err(ParseError::new(offset, "empty scalar"));
    }

    // leading term: either the real part or a lone imaginary part
    let neg = cur.sign() == Some(true);
    let first = if cur.peek() == Some(b'i') {
        None
    } else {
        Some(cur.unsigned_rat().map_err(shift)?)
    };
    if cur.eat(b'i') {
        let mag = first.unwrap_or_else(BigRational::one);
        if cur.pos != cur.bytes.len() {
            return Err(shift(ParseError::new(cur.pos, "trailing characters after imaginary part")));
        }
        let im = if neg { -mag } else { mag };
        return Ok(GaussianRational::new(BigRational::zero(), im));
    }
    let re = {
        let mag = first.expect("real part parsed");
        if neg {
            -mag
        } else {
            mag
        }
    };
    if cur.pos == cur.bytes.len() {
        return Ok(GaussianRational::new(re, BigRational::zero()));
    }

    let sign_at = cur.pos;
    let im_neg = match cur.sign() {
        Some(n) => n,
        None => return Err(shift(ParseError::new(sign_at, "expected '+' or '-' before imaginary part"))),
    };
    let mag = if cur.peek() == Some(b'i') {
        BigRational::one()
    } else {
        cur.unsigned_rat().map_err(shift)?
    };
    if !cur.eat(b'i') {
        return Err(shift(ParseError::new(cur.pos, "expected 'i'")));
    }
    if cur.pos != cur.bytes.len() {
        return Err(shift(ParseError::new(cur.pos, "trailing characters after imaginary part")));
    }
    let im = if im_neg { -mag } else { mag };
    Ok(GaussianRational::new(re, im))
}

impl FromStr for GaussianRational {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(q("1+i") * q("1-i"), q("2"));
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("i") * q("i"), q("-1"));
        assert_eq!(q("3/4i").checked_div(&q("i")).unwrap(), q("3/4"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q("1").checked_div(&q("0")), Err(ArithmeticError::DivisionByZero));
        assert_eq!(q("0").pow(-1), Err(ArithmeticError::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(q("2").pow(-3).unwrap(), q("1/8"));
        assert_eq!(q("i").pow(4).unwrap(), q("1"));
        assert_eq!(q("-7/3+2i").pow(0).unwrap(), q("1"));
        assert_eq!(q("i").pow(-1).unwrap(), q("-i"));
    }

    #[test]
    fn parse_examples() {
        let z = q("3/2-1/2i");
        assert_eq!(z, GaussianRational::from_parts(3, 2, -1, 2));
        assert_eq!(q("-1"), GaussianRational::from_integer(-1));
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), -GaussianRational::i());
        assert_eq!(q("1/2+3/4i"), GaussianRational::from_parts(1, 2, 3, 4));
        assert_eq!(q("2i"), GaussianRational::from_parts(0, 1, 2, 1));
        assert_eq!(q("+i"), GaussianRational::i());
        assert_eq!(q("4/6"), q("2/3"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_scalar("1/0").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_scalar("1+2").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_scalar("abc").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_scalar("1 2i").unwrap_err();
        assert_eq!(e.position, 1);
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1+ii").is_err());
        assert!(parse_scalar("-/2").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("-i").to_string(), "-i");
        assert_eq!(q("1/2i").to_string(), "1/2i");
        assert_eq!(q("3/2-1/2i").to_string(), "3/2-1/2i");
        assert_eq!(q("1+i").to_string(), "1+i");
        assert_eq!(q("-5").to_string(), "-5");
    }

    #[test]
    fn plus_minus_one_detection() {
        assert!(q("1").is_plus_minus_one());
        assert!(q("-1").is_plus_minus_one());
        assert!(!q("i").is_plus_minus_one());
        assert!(!q("2").is_plus_minus_one());
        assert!(!q("1+i").is_plus_minus_one());
    }
}
