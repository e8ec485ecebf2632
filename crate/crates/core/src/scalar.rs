//! Number backends for every geometric predicate.
//!
//! Two backends implement [`Scalar`]: [`BigRational`] for exact arithmetic,
//! where every zero test is decidable, and `f64`, where "zero" means the
//! value is negligible relative to a scale chosen by the predicate and a
//! relative tolerance carried in [`Tolerance`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tolerances used by float-mode predicates. Ignored by exact backends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative tolerance for zero tests of normalized residuals.
    pub eps: f64,
    /// Gap below which a Poncelet chain counts as closed.
    pub closure: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps: 1e-9,
            closure: 1e-7,
        }
    }
}

impl Tolerance {
    /// Used to reject numerically coincident inputs to join/meet.
    pub(crate) const STRICT: Tolerance = Tolerance {
        eps: 1e-13,
        closure: 1e-7,
    };

    pub fn new(eps: f64) -> Self {
        Tolerance {
            eps,
            ..Default::default()
        }
    }

    pub fn with_closure(mut self, closure: f64) -> Self {
        self.closure = closure;
        self
    }
}

/// A field element usable as a homogeneous coordinate.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for backends whose zero tests are exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `n / d`; `d` must be nonzero.
    fn from_ratio(n: i64, d: i64) -> Self;
    /// Exact conversion for rationals (binary expansion), `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    /// Exact zero test.
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Zero test against `scale`: exact zero for exact backends,
    /// `|x| <= eps * scale` for floats.
    fn negligible(&self, scale: f64, tol: &Tolerance) -> bool;

    /// Divides a float residual by `norm`; exact backends return `self`.
    fn normalized(self, norm: f64) -> Self;

    /// Square root if it exists in the backend: `None` for negative input,
    /// and for rationals that are not perfect squares.
    fn try_sqrt(&self) -> Option<Self>;

    /// Canonical representative of a nonzero homogeneous triple.
    fn canonical_triple(v: [Self; 3]) -> [Self; 3];

    /// Parses `"p/q"`, an integer, or a decimal literal (optionally with exponent).
    fn parse(text: &str) -> Option<Self>;

    /// Lossless text form (`"p/q"` for rationals, shortest round-trip for floats).
    fn to_text(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        f64::abs(*self) <= tol.eps * scale
    }
    fn normalized(self, norm: f64) -> Self {
        if norm > 0.0 {
            self / norm
        } else {
            self
        }
    }
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn canonical_triple(v: [Self; 3]) -> [Self; 3] {
        let mut k = 0;
        for i in 1..3 {
            if v[i].abs() > v[k].abs() {
                k = i;
            }
        }
        let pivot = v[k];
        // `+ 0.0` folds negative zero into positive zero.
        [v[0] / pivot + 0.0, v[1] / pivot + 0.0, v[2] / pivot + 0.0]
    }
    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            return (d != 0.0).then(|| n / d).filter(|v| v.is_finite());
        }
        text.parse::<f64>().ok().filter(|v| v.is_finite())
    }
    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).ok()?;
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-shift) as usize))
    };
    Some(value)
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(n.into(), d.into())
    }
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negligible(&self, _scale: f64, _tol: &Tolerance) -> bool {
        Zero::is_zero(self)
    }
    fn normalized(self, _norm: f64) -> Self {
        self
    }
    fn try_sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = int_sqrt(self.numer())?;
        let d = int_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
    fn canonical_triple(v: [Self; 3]) -> [Self; 3] {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let first = ints.iter().find(|x| !Zero::is_zero(*x)).cloned();
        let sign = match first {
            Some(f) if Signed::is_negative(&f) => -BigInt::one(),
            _ => BigInt::one(),
        };
        let divisor = gcd * sign;
        let mut out = ints
            .into_iter()
            .map(|x| BigRational::from_integer(x / &divisor));
        [out.next().unwrap(), out.next().unwrap(), out.next().unwrap()]
    }
    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            return (!Zero::is_zero(&d)).then(|| BigRational::new(n, d));
        }
        parse_decimal(text)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Shorthand for exact rationals in tests and examples.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::from_ratio(n, d)
}
