//! Exact scalars and the ground field.
//!
//! Every structure constant, matrix entry and chain coefficient is a
//! [`Scalar`], an arbitrary-precision rational. Over a prime field the
//! rationals are reduced modulo `p` only when ranks are computed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn sign(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Parses `"3"`, `"-2/5"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The ground field: ℚ or 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Coefficients {
    Rational,
    PrimeField { p: u64 },
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::Rational
    }
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Coefficients::PrimeField { p })
    }

    /// Reduces an exact rational to a residue modulo `p`.
    pub fn reduce(self, x: &Scalar) -> Result<u64> {
        match self {
            Coefficients::Rational => Err(Error::InvalidInput("reduce called over ℚ".into())),
            Coefficients::PrimeField { p } => reduce_mod(x, p),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::PrimeField { p } => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" | "rational" => Ok(Coefficients::Rational),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix("F"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("bad coefficients {s:?}")))?;
                Coefficients::prime_field(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn reduce_mod(x: &Scalar, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(Error::NotInvertible(x.denom().to_string(), p));
    }
    Ok(mul_mod(n, inv_mod(d, p), p))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Clears denominators of a list of rationals, returning primitive integers
/// spanning the same line.
pub(crate) fn primitive_integers(xs: &[Scalar]) -> Vec<BigInt> {
    let lcm = xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = xs.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
