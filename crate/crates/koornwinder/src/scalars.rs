//! Exact rational scalars, the Hecke/dilation parameters, and torus points.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use std::fmt;
use thiserror::Error;

/// The coefficient field: arbitrary-precision rationals, always in reduced
/// form with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("torus coordinate {0} is zero")]
    ZeroTorusCoordinate(usize),
    #[error("expected {expected} comma-separated coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
}

/// Shorthand for `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p". Accepts an optional leading ASCII or U+2212 minus.
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let mk_err = || ScalarError::Parse(s.to_string());
    let (num_str, den_str) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim().to_string(), Some(d.trim().to_string())),
        None => (cleaned.clone(), None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| mk_err())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| mk_err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ScalarError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(numer, denom))
}

/// Parses a comma-separated coordinate vector of exactly `rank` rationals.
pub fn parse_vector(text: &str, rank: usize) -> Result<Vec<Rat>, ScalarError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != rank {
        return Err(ScalarError::WrongArity {
            expected: rank,
            got: parts.len(),
        });
    }
    parts.iter().map(|s| parse_rat(s)).collect()
}

/// Renders a rational as "p/q", or just "p" when the denominator is 1.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Greatest integer `<= x`.
pub fn rational_floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Greatest even integer `<= x`: `2*floor(x/2)`.
pub fn floor_even(x: &Rat) -> BigInt {
    let half = x / rat_int(2);
    rational_floor(&half) * BigInt::from(2)
}

/// Greatest odd integer `<= x`: `floor_even(x + 1) - 1`.
pub fn floor_odd(x: &Rat) -> BigInt {
    floor_even(&(x + rat_int(1))) - BigInt::one()
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Indicator of the even integers (0 on every non-integer).
pub fn is_even_integer(x: &Rat) -> bool {
    is_integer(x) && (x.numer() % BigInt::from(2)).is_zero()
}

/// Indicator of the odd integers (0 on every non-integer).
pub fn is_odd_integer(x: &Rat) -> bool {
    is_integer(x) && !(x.numer() % BigInt::from(2)).is_zero()
}

/// +1 on positive integers, -1 on nonpositive integers, 0 elsewhere.
pub fn eta(x: &Rat) -> i64 {
    if !is_integer(x) {
        0
    } else if x.numer().sign() == Sign::Plus {
        1
    } else {
        -1
    }
}

/// Exact integer power with arbitrary-sign exponent (base must be nonzero
/// when the exponent is negative).
pub fn pow_i64(base: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let b = if e < 0 {
        assert!(!base.is_zero(), "zero base with negative exponent");
        base.recip()
    } else {
        base.clone()
    };
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= &b;
    }
    out
}

/// The specialized parameters: rank, the square root of the dilation
/// parameter q, and the five Hecke parameters. All scalars are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpec {
    pub rank: usize,
    pub sqrt_q: Rat,
    pub k0: Rat,
    pub u0: Rat,
    pub k: Rat,
    pub kr: Rat,
    pub ur: Rat,
}

impl ParamSpec {
    pub fn new(
        rank: usize,
        sqrt_q: Rat,
        k0: Rat,
        u0: Rat,
        k: Rat,
        kr: Rat,
        ur: Rat,
    ) -> Result<Self, ScalarError> {
        if rank == 0 {
            return Err(ScalarError::ZeroRank);
        }
        for (name, v) in [
            ("sqrt_q", &sqrt_q),
            ("k0", &k0),
            ("u0", &u0),
            ("k", &k),
            ("kr", &kr),
            ("ur", &ur),
        ] {
            if v.is_zero() {
                return Err(ScalarError::ZeroParameter(name));
            }
        }
        Ok(ParamSpec {
            rank,
            sqrt_q,
            k0,
            u0,
            k,
            kr,
            ur,
        })
    }

    /// q^(half_steps/2), i.e. the given power of sqrt_q. Exponents of q are
    /// carried as integer counts of sqrt_q factors throughout.
    pub fn q_power(&self, half_steps: i64) -> Rat {
        pow_i64(&self.sqrt_q, half_steps)
    }

    /// The dilation parameter q itself.
    pub fn q(&self) -> Rat {
        self.q_power(2)
    }
}

/// A point of the algebraic torus: the value of the character at each
/// coordinate co-weight. `coords[i]` is the value at `eps_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    pub coords: Vec<Rat>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, ScalarError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                return Err(ScalarError::ZeroTorusCoordinate(i + 1));
            }
        }
        Ok(TorusPoint { coords })
    }

    /// The identity element 1_T.
    pub fn one(rank: usize) -> Self {
        TorusPoint {
            coords: vec![Rat::one(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// t^mu for an integer co-weight mu: the product of coordinate powers.
    pub fn eval(&self, mu: &[i64]) -> Rat {
        assert_eq!(mu.len(), self.coords.len(), "co-weight length mismatch");
        let mut out = Rat::one();
        for (c, &e) in self.coords.iter().zip(mu) {
            out *= pow_i64(c, e);
        }
        out
    }

    /// Coordinatewise product of torus points.
    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        assert_eq!(self.rank(), other.rank(), "torus rank mismatch");
        TorusPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}
