//! Exact scalar arithmetic over the ground rings used throughout the crate:
//! the integers, the rationals and prime fields F_p with p < 2^31.
//!
//! No floating point appears anywhere. Scalars are plain data; every
//! arithmetic operation goes through a [`ScalarRing`], which knows which
//! variant its elements carry.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert {0} in a non-field ring")]
    NotAField(String),
    #[error("malformed scalar literal `{0}`")]
    Parse(String),
}

/// One of the supported exact coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Integers,
    Rationals,
    PrimeField(u32),
}

/// An element of one of the supported rings. Which variant is valid is
/// determined by the ring in whose context the scalar travels; mixing
/// variants across rings is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p >= (1 << 31) {
            return Err(ScalarError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(ScalarRing::PrimeField(p as u32))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarRing::Integers)
    }

    /// The field in which ranks are computed: F_p stays put, Z is replaced
    /// by its fraction field Q.
    pub fn fraction_field(&self) -> ScalarRing {
        match self {
            ScalarRing::Integers => ScalarRing::Rationals,
            r => *r,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ScalarRing::Integers => Scalar::Int(BigInt::zero()),
            ScalarRing::Rationals => Scalar::Rat(BigRational::zero()),
            ScalarRing::PrimeField(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            ScalarRing::Integers => Scalar::Int(BigInt::one()),
            ScalarRing::Rationals => Scalar::Rat(BigRational::one()),
            ScalarRing::PrimeField(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            ScalarRing::Integers => Scalar::Int(BigInt::from(v)),
            ScalarRing::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            ScalarRing::PrimeField(p) => {
                let p = *p as i64;
                Scalar::Mod(v.rem_euclid(p) as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_one(),
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => *x == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (ScalarRing::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (ScalarRing::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod((x + y) % (*p as u64))
            }
            _ => panic!("scalar variant does not match ring {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (ScalarRing::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (ScalarRing::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (ScalarRing::PrimeField(p), Scalar::Mod(x)) => {
                let p = *p as u64;
                Scalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar variant does not match ring {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarRing::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (ScalarRing::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (ScalarRing::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(x * y % (*p as u64))
            }
            _ => panic!("scalar variant does not match ring {self:?}"),
        }
    }

    /// Multiplicative inverse. Errors on zero and over Z.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        if self.is_zero(a) {
            return Err(ScalarError::DivisionByZero);
        }
        match (self, a) {
            (ScalarRing::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (ScalarRing::PrimeField(p), Scalar::Mod(x)) => Ok(Scalar::Mod(mod_inverse(*x, *p as u64))),
            (ScalarRing::Integers, Scalar::Int(x)) => {
                if x.is_one() || (-x).is_one() {
                    Ok(Scalar::Int(x.clone()))
                } else {
                    Err(ScalarError::NotAField(x.to_string()))
                }
            }
            _ => panic!("scalar variant does not match ring {self:?}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Lift a scalar of this ring into its fraction field.
    pub fn to_fraction_field(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (ScalarRing::Integers, Scalar::Int(x)) => {
                Scalar::Rat(BigRational::from(x.clone()))
            }
            _ => a.clone(),
        }
    }

    /// Parse a literal: an integer, or `a/b` over the rationals. Over F_p
    /// the integer is reduced mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        match self {
            ScalarRing::Integers => {
                let x: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Int(x))
            }
            ScalarRing::Rationals => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(Scalar::Rat(BigRational::from(n)))
                }
            }
            ScalarRing::PrimeField(_) => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(self.from_i64(n))
            }
        }
    }

    /// Stable textual name used in files and CLI flags: `Z`, `Q`, `F<p>`.
    pub fn name(&self) -> String {
        match self {
            ScalarRing::Integers => "Z".to_string(),
            ScalarRing::Rationals => "Q".to_string(),
            ScalarRing::PrimeField(p) => format!("F{p}"),
        }
    }

    pub fn parse_name(s: &str) -> Result<Self, ScalarError> {
        match s.trim() {
            "Z" => Ok(ScalarRing::Integers),
            "Q" => Ok(ScalarRing::Rationals),
            t => {
                let rest = t
                    .strip_prefix('F')
                    .ok_or_else(|| ScalarError::Parse(t.to_string()))?;
                let p: u64 = rest.parse().map_err(|_| ScalarError::Parse(t.to_string()))?;
                ScalarRing::prime_field(p)
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on i128; p < 2^31 so everything fits comfortably
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "element not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn as_int(&self) -> &BigInt {
        match self {
            Scalar::Int(x) => x,
            _ => panic!("scalar is not an integer"),
        }
    }

    pub fn abs_int(&self) -> BigInt {
        self.as_int().abs()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Rat(x) => write!(f, "{x}"),
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}
