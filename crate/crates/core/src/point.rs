//! Exact rational points and sticks in 3-space.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for every coordinate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `"7"`, `"-3/4"`, or a finite decimal such as `"1.7"` or `"-6.5"` exactly.
pub fn parse_rational(text: &str) -> Result<Q, ParseRationalError> {
    let t = text.trim();
    let err = || ParseRationalError(text.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all_digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
    let scale = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Q::new(mantissa, scale);
    Ok(if neg { -value } else { value })
}

/// Lowest-terms `num/den` text; integers keep the `/1` suffix so the format is uniform.
pub fn format_rational(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Nearest `f64`, for lossy views only.
pub fn to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        // numerator or denominator too wide for a direct conversion
        let n = v.numer().to_f64().unwrap_or(f64::NAN);
        let d = v.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3 {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl Point3 {
    pub fn new(x: Q, y: Q, z: Q) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(q(x), q(y), q(z))
    }

    pub fn origin() -> Self {
        Point3::from_ints(0, 0, 0)
    }

    pub fn dot(&self, o: &Point3) -> Q {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3::new(&self.y * &o.z - &self.z * &o.y, &self.z * &o.x - &self.x * &o.z, &self.x * &o.y - &self.y * &o.x)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, s: &Q) -> Point3 {
        Point3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point3, t: &Q) -> Point3 {
        self + &(other - self).scale(t)
    }

    pub fn coords(&self) -> [&Q; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &Point3 {
    type Output = Point3;
    fn add(self, o: &Point3) -> Point3 {
        Point3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl Sub for &Point3 {
    type Output = Point3;
    fn sub(self, o: &Point3) -> Point3 {
        Point3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Neg for &Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Mul<&Q> for &Point3 {
    type Output = Point3;
    fn mul(self, s: &Q) -> Point3 {
        self.scale(s)
    }
}

/// A closed straight segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stick {
    pub a: Point3,
    pub b: Point3,
}

impl Stick {
    pub fn new(a: Point3, b: Point3) -> Option<Stick> {
        (a != b).then_some(Stick { a, b })
    }

    pub fn direction(&self) -> Point3 {
        &self.b - &self.a
    }

    pub fn reversed(&self) -> Stick {
        Stick { a: self.b.clone(), b: self.a.clone() }
    }
}

/// Sign of an exact rational as -1, 0 or 1.
pub fn sign(v: &Q) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rational("1.7").unwrap(), qf(17, 10));
        assert_eq!(parse_rational("-6.5").unwrap(), qf(-13, 2));
        assert_eq!(parse_rational("-130").unwrap(), q(-130));
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational(".5").unwrap(), qf(1, 2));
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn rational_text_is_lowest_terms() {
        assert_eq!(format_rational(&qf(6, -4)), "-3/2");
        assert_eq!(format_rational(&q(5)), "5/1");
        assert_eq!(parse_rational(&format_rational(&qf(-22, 7))).unwrap(), qf(-22, 7));
    }

    #[test]
    fn cross_product_orientation() {
        let e1 = Point3::from_ints(1, 0, 0);
        let e2 = Point3::from_ints(0, 1, 0);
        assert_eq!(e1.cross(&e2), Point3::from_ints(0, 0, 1));
    }
}
