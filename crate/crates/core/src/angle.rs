//! Exact angles on the unit circle.
//!
//! An [`Angle`] is a reduced fraction γ ∈ [0,1) standing for the eigenvalue
//! λ = exp(−2iπγ).  Products of eigenvalues add angles mod 1, complex
//! conjugation sends γ to (1−γ) mod 1.  No floating point anywhere: two
//! angles are equal iff their reduced fractions are.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Reduced fraction in [0,1) representing exp(−2iπγ).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    /// Builds the angle (num/den) mod 1, reduced.  Errors on `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let (mut num, mut den) = (num as i128, den as i128);
        if den < 0 {
            num = -num;
            den = -den;
        }
        num = num.rem_euclid(den);
        let g = (num as u128).gcd(&(den as u128)) as i128;
        Ok(Angle {
            num: (num / g) as u64,
            den: (den / g) as u64,
        })
    }

    pub fn zero() -> Self {
        Angle { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Angle of the conjugate eigenvalue λ̄, i.e. (1−γ) mod 1.
    pub fn conjugate(&self) -> Self {
        if self.num == 0 {
            *self
        } else {
            Angle {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    /// Angle of the product of eigenvalues, (γ + γ') mod 1.
    pub fn add(&self, other: &Angle) -> Self {
        let den = (self.den as u128).lcm(&(other.den as u128));
        let num = (self.num as u128 * (den / self.den as u128)
            + other.num as u128 * (den / other.den as u128))
            % den;
        let g = num.gcd(&den);
        Angle {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    /// (γ − γ') mod 1.
    pub fn sub(&self, other: &Angle) -> Self {
        self.add(&other.neg())
    }

    /// (−γ) mod 1; coincides with `conjugate`.
    pub fn neg(&self) -> Self {
        self.conjugate()
    }

    /// Exact comparison of γ with a/b (no normalization of a/b required).
    fn cmp_frac(&self, a: u64, b: u64) -> std::cmp::Ordering {
        (self.num as u128 * b as u128).cmp(&(a as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_frac(other.num, other.den)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Parses "a/b" (strict: reduced and in range is NOT required here;
    /// use [`parse_canonical`] for document parsing).
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = split_fraction(s)?;
        Angle::new(a, b)
    }
}

/// Parses "a/b" requiring the canonical form: reduced, 0 ≤ a < b.
pub fn parse_canonical(s: &str) -> Result<Angle> {
    let (a, b) = split_fraction(s)?;
    if b <= 0 {
        return Err(Error::Parse(format!("invalid denominator in '{s}'")));
    }
    if a < 0 || a >= b {
        return Err(Error::Parse(format!("fraction '{s}' not in [0,1)")));
    }
    if a.gcd(&b) != 1 && a != 0 {
        return Err(Error::Parse(format!("unreduced fraction '{s}'")));
    }
    if a == 0 && b != 1 {
        return Err(Error::Parse(format!("unreduced fraction '{s}'")));
    }
    Angle::new(a, b)
}

fn split_fraction(s: &str) -> Result<(i64, i64)> {
    let err = || Error::Parse(format!("expected a fraction 'a/b', got '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = a.trim().parse::<i64>().map_err(|_| err())?;
            let b = b.trim().parse::<i64>().map_err(|_| err())?;
            Ok((a, b))
        }
        None => {
            let a = s.trim().parse::<i64>().map_err(|_| err())?;
            Ok((a, 1))
        }
    }
}
