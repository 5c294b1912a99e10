//! Sparse polynomials in `x_1..x_N` with coefficients in `ℚ(κ)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kappa::KappaRational;

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, KappaRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// `x^e`
    pub fn monomial(exponent: Exponent) -> Self {
        let mut p = Self::zero(exponent.len());
        p.terms.insert(exponent, KappaRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &KappaRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[u32]) -> KappaRational {
        self.terms.get(exponent).cloned().unwrap_or_else(KappaRational::zero)
    }

    fn check(&self, exponent: &[u32]) -> Result<()> {
        if exponent.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: exponent.len(),
            });
        }
        Ok(())
    }

    /// Add `c·x^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, exponent: Exponent, c: &KappaRational) -> Result<()> {
        self.check(&exponent)?;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&exponent) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&exponent);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exponent, c.clone());
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if other.nvars != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.scale(&KappaRational::from_int(-1)))
    }

    pub fn scale(&self, c: &KappaRational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degrees = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&d| d as u64).sum::<u64>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{d}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
