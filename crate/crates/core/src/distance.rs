//! Distance values.
//!
//! Instances are exact nonnegative integers by default ([`u64`]). A real-valued
//! mode ([`Real`]) is available for data that is not integral; comparisons there
//! use a fixed absolute tolerance of `1e-9` when validating the triangle
//! inequality.
//!
//! Cutoffs such as `R / (2k)` are never materialized as divided values. A
//! [`Cutoff`] keeps the numerator and an integer divisor, and the test
//! `d < R / q` is evaluated as `d * q < R`, which is exact for integers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A nonnegative distance value.
pub trait Distance:
    Copy + Ord + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    const ZERO: Self;

    /// Absolute tolerance used by triangle-inequality validation.
    const TOLERANCE: f64;

    fn checked_add(self, other: Self) -> Option<Self>;

    /// Returns `self * factor < bound` without rounding or overflow.
    fn scaled_lt(self, factor: u64, bound: Self) -> bool;

    /// Returns `self * factor`, or `None` on overflow.
    fn checked_scale(self, factor: u64) -> Option<Self>;

    fn to_f64(self) -> f64;

    fn to_value(self) -> DistanceValue;

    /// Parses one numeric token of an input file.
    fn parse_token(token: &str) -> Result<Self, TokenError>;

    /// `direct > via_a + via_b + tolerance`, with the signed slack
    /// `via_a + via_b - direct` returned when violated.
    fn triangle_violation(direct: Self, via_a: Self, via_b: Self) -> Option<f64>;

    fn is_negative(self) -> bool;
}

/// Why a token failed to parse as a distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenError {
    /// Numeric, but not representable in this distance type (e.g. `1.5` as an integer).
    NotIntegral,
    Negative,
    NotNumeric,
}

impl fmt::Display for TokenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenError::NotIntegral => f.write_str("not a nonnegative integer"),
            TokenError::Negative => f.write_str("negative value"),
            TokenError::NotNumeric => f.write_str("not a number"),
        }
    }
}

impl Distance for u64 {
    const ZERO: Self = 0;
    const TOLERANCE: f64 = 0.0;

    fn checked_add(self, other: Self) -> Option<Self> {
        u64::checked_add(self, other)
    }

    fn scaled_lt(self, factor: u64, bound: Self) -> bool {
        (self as u128) * (factor as u128) < bound as u128
    }

    fn checked_scale(self, factor: u64) -> Option<Self> {
        self.checked_mul(factor)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn to_value(self) -> DistanceValue {
        DistanceValue::Int(self)
    }

    fn parse_token(token: &str) -> Result<Self, TokenError> {
        if let Ok(v) = token.parse::<u64>() {
            return Ok(v);
        }
        if token.parse::<i128>().is_ok() {
            return Err(TokenError::Negative);
        }
        match token.parse::<f64>() {
            Ok(v) if v < 0.0 => Err(TokenError::Negative),
            Ok(v) if v.is_finite() && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
            Ok(_) => Err(TokenError::NotIntegral),
            Err(_) => Err(TokenError::NotNumeric),
        }
    }

    fn triangle_violation(direct: Self, via_a: Self, via_b: Self) -> Option<f64> {
        let path = via_a as u128 + via_b as u128;
        (direct as u128 > path).then(|| -((direct as u128 - path) as f64))
    }

    fn is_negative(self) -> bool {
        false
    }
}

/// A finite real distance with a total order. NaN is rejected at construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Real(f64);

impl Real {
    pub fn new(value: f64) -> Option<Self> {
        value.is_finite().then_some(Real(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Real {
    type Error = String;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Real::new(value).ok_or_else(|| format!("non-finite distance {value}"))
    }
}

impl From<Real> for f64 {
    fn from(value: Real) -> Self {
        value.0
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Real {
    type Err = TokenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Real as Distance>::parse_token(s)
    }
}

impl Distance for Real {
    // +0.0; -0.0 would sort below it under total_cmp.
    const ZERO: Self = Real(0.0);
    const TOLERANCE: f64 = 1e-9;

    fn checked_add(self, other: Self) -> Option<Self> {
        Real::new(self.0 + other.0)
    }

    fn scaled_lt(self, factor: u64, bound: Self) -> bool {
        self.0 * (factor as f64) < bound.0
    }

    fn checked_scale(self, factor: u64) -> Option<Self> {
        Real::new(self.0 * factor as f64)
    }

    fn to_f64(self) -> f64 {
        self.0
    }

    fn to_value(self) -> DistanceValue {
        DistanceValue::Real(self.0)
    }

    fn parse_token(token: &str) -> Result<Self, TokenError> {
        match token.parse::<f64>() {
            Ok(v) if v.is_nan() || v.is_infinite() => Err(TokenError::NotNumeric),
            Ok(v) if v < 0.0 => Err(TokenError::Negative),
            // normalizes -0.0
            Ok(v) => Ok(Real(v + 0.0)),
            Err(_) => Err(TokenError::NotNumeric),
        }
    }

    fn triangle_violation(direct: Self, via_a: Self, via_b: Self) -> Option<f64> {
        let slack = via_a.0 + via_b.0 - direct.0;
        (slack < -Self::TOLERANCE).then_some(slack)
    }

    fn is_negative(self) -> bool {
        self.0 < 0.0
    }
}

/// A distance in serialized form: plain JSON/CSV number, integer when exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistanceValue {
    Int(u64),
    Real(f64),
}

impl DistanceValue {
    pub fn as_f64(self) -> f64 {
        match self {
            DistanceValue::Int(v) => v as f64,
            DistanceValue::Real(v) => v,
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Int(v) => write!(f, "{v}"),
            // keep a decimal point so the value reads back as real
            DistanceValue::Real(v) if v.is_finite() && v.fract() == 0.0 => write!(f, "{v:.1}"),
            DistanceValue::Real(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for DistanceValue {
    type Err = TokenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<u64>() {
            return Ok(DistanceValue::Int(v));
        }
        s.parse::<f64>()
            .map(DistanceValue::Real)
            .map_err(|_| TokenError::NotNumeric)
    }
}

/// The threshold `value / divisor`. A distance `d` falls below it when
/// `d * divisor < value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cutoff<T> {
    pub value: T,
    pub divisor: u64,
}

impl<T: Distance> Cutoff<T> {
    pub fn exact(value: T) -> Self {
        Cutoff { value, divisor: 1 }
    }

    pub fn fraction(value: T, divisor: u64) -> Self {
        assert!(divisor > 0, "cutoff divisor must be positive");
        Cutoff { value, divisor }
    }

    /// `d < value / divisor`.
    pub fn admits(&self, d: T) -> bool {
        d.scaled_lt(self.divisor, self.value)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64() / self.divisor as f64
    }

    /// Orders two cutoffs by the rational value they denote.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        // a/p vs b/q  <=>  a*q vs b*p
        let lhs_lt = self.value.scaled_lt_cross(other.divisor, other.value, self.divisor);
        let rhs_lt = other.value.scaled_lt_cross(self.divisor, self.value, other.divisor);
        match (lhs_lt, rhs_lt) {
            (true, _) => Ordering::Less,
            (_, true) => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl<T: Distance> fmt::Display for Cutoff<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisor == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}/{}", self.value, self.divisor)
        }
    }
}

trait CrossScale: Distance {
    /// `self * p < other * q`
    fn scaled_lt_cross(self, p: u64, other: Self, q: u64) -> bool;
}

impl<T: Distance> CrossScale for T {
    fn scaled_lt_cross(self, p: u64, other: Self, q: u64) -> bool {
        match (self.checked_scale(p), other.checked_scale(q)) {
            (Some(a), Some(b)) => a < b,
            _ => self.to_f64() * (p as f64) < other.to_f64() * (q as f64),
        }
    }
}
