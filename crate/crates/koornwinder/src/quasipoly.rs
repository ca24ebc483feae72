//! Sparse quasi-polynomials: finite rational-coefficient sums of
//! quasi-monomials x^y with rational exponent vectors y. This is the state
//! space every operator in the crate acts on.

use crate::scalars::{fmt_rat, parse_rat, rat_int, ParamSpec, Rat, ScalarError};
use crate::weyl::{self, length, min_alcove_rep};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum QuasiPolyError {
    #[error("zero quasi-polynomial has no degree")]
    ZeroPolynomial,
    #[error("support spans more than one W-orbit (basepoints {0} and {1})")]
    MixedOrbits(String, String),
    #[error("support has {0} incomparable maximal exponents, no unique degree")]
    NoUniqueMaximum(usize),
    #[error("term {index}: exponent has {got} coordinates, expected {expected}")]
    RankMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A finite sum of quasi-monomials with nonzero rational coefficients,
/// in canonical form: no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    rank: usize,
    terms: BTreeMap<Vec<Rat>, Rat>,
}

/// One serialized term: exponent coordinates and coefficient as exact
/// "p/q" strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDto {
    pub exponent: Vec<String>,
    pub coeff: String,
}

impl QuasiPolynomial {
    pub fn zero(rank: usize) -> Self {
        QuasiPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The quasi-monomial x^y.
    pub fn mono(y: Vec<Rat>) -> Self {
        Self::mono_scaled(y, rat_int(1))
    }

    pub fn mono_scaled(y: Vec<Rat>, coeff: Rat) -> Self {
        let mut p = Self::zero(y.len());
        p.add_term(y, coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, y: &[Rat]) -> Rat {
        self.terms.get(y).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Rat>, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.terms.keys()
    }

    /// Adds c·x^y in place, dropping the term if the sum cancels.
    pub fn add_term(&mut self, y: Vec<Rat>, c: Rat) {
        assert_eq!(y.len(), self.rank, "exponent dimension mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(y);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (y, c) in &other.terms {
            out.add_term(y.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &QuasiPolynomial) {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        for (y, c) in &other.terms {
            self.add_term(y.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> QuasiPolynomial {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        QuasiPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(y, v)| (y.clone(), v * c)).collect(),
        }
    }

    /// Multiplication by the q-shifted monomial q^{q_half_steps/2} x^mu:
    /// every exponent moves by mu and every coefficient picks up the same
    /// power of sqrt(q).
    pub fn shift(&self, mu: &[i64], q_half_steps: i64, params: &ParamSpec) -> QuasiPolynomial {
        assert_eq!(mu.len(), self.rank, "shift dimension mismatch");
        let factor = params.q_power(q_half_steps);
        QuasiPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(y, v)| {
                    let shifted: Vec<Rat> =
                        y.iter().zip(mu).map(|(a, &m)| a + rat_int(m)).collect();
                    (shifted, v * &factor)
                })
                .collect(),
        }
    }

    /// The unique maximal exponent of the support in the W-orbit order,
    /// with its coefficient. Errors if the polynomial is zero, if the
    /// support meets two different orbits, or if two maximal exponents are
    /// incomparable.
    pub fn degree_and_leading(&self) -> Result<(Vec<Rat>, Rat), QuasiPolyError> {
        if self.is_zero() {
            return Err(QuasiPolyError::ZeroPolynomial);
        }
        let keyed: Vec<(&Vec<Rat>, weyl::AffineWeylElement, Vec<Rat>)> = self
            .terms
            .keys()
            .map(|y| {
                let (g, c) = min_alcove_rep(y);
                (y, g, c)
            })
            .collect();
        for (_, _, c) in &keyed[1..] {
            if *c != keyed[0].2 {
                return Err(QuasiPolyError::MixedOrbits(
                    fmt_point(&keyed[0].2),
                    fmt_point(c),
                ));
            }
        }
        let maximal: Vec<&Vec<Rat>> = keyed
            .iter()
            .filter(|(y, g, _)| {
                !keyed
                    .iter()
                    .any(|(z, h, _)| z != y && weyl::bruhat_leq(g, h))
            })
            .map(|(y, _, _)| *y)
            .collect();
        match maximal.as_slice() {
            [y] => Ok(((*y).clone(), self.terms[*y].clone())),
            more => Err(QuasiPolyError::NoUniqueMaximum(more.len())),
        }
    }

    /// Terms in the deterministic linear extension of the orbit order:
    /// ascending by (length of g_y, then lexicographic on y).
    pub fn sorted_terms(&self) -> Vec<(Vec<Rat>, Rat)> {
        let mut keyed: Vec<(usize, Vec<Rat>, Rat)> = self
            .terms
            .iter()
            .map(|(y, c)| {
                let (g, _) = min_alcove_rep(y);
                (length(&g), y.clone(), c.clone())
            })
            .collect();
        keyed.sort();
        keyed.into_iter().map(|(_, y, c)| (y, c)).collect()
    }

    pub fn to_terms(&self) -> Vec<TermDto> {
        self.sorted_terms()
            .into_iter()
            .map(|(y, c)| TermDto {
                exponent: y.iter().map(fmt_rat).collect(),
                coeff: fmt_rat(&c),
            })
            .collect()
    }

    pub fn from_terms(rank: usize, terms: &[TermDto]) -> Result<Self, QuasiPolyError> {
        let mut p = Self::zero(rank);
        for (index, t) in terms.iter().enumerate() {
            if t.exponent.len() != rank {
                return Err(QuasiPolyError::RankMismatch {
                    index,
                    got: t.exponent.len(),
                    expected: rank,
                });
            }
            let y = t
                .exponent
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<Rat>, _>>()?;
            p.add_term(y, parse_rat(&t.coeff)?);
        }
        Ok(p)
    }
}

fn fmt_point(y: &[Rat]) -> String {
    let parts: Vec<String> = y.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (y, c)) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*x^{}", fmt_rat(c), fmt_point(y))?;
        }
        Ok(())
    }
}
