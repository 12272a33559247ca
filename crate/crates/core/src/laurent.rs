//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a Laurent monomial.
pub type Exponent = Vec<i64>;

/// Element of `Q[x_1^±, ..., x_r^±]`. No zero coefficients are stored and the
/// terms are kept in lexicographic exponent order, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ambient_rank: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(ambient_rank: usize) -> Self {
        LaurentPoly {
            ambient_rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient_rank: usize, c: impl Into<BigRational>) -> Self {
        Self::monomial(ambient_rank, vec![0; ambient_rank], c)
    }

    pub fn one(ambient_rank: usize) -> Self {
        Self::constant(ambient_rank, BigRational::one())
    }

    pub fn monomial(ambient_rank: usize, exponent: Exponent, c: impl Into<BigRational>) -> Self {
        assert_eq!(
            exponent.len(),
            ambient_rank,
            "exponent length must match the ambient rank"
        );
        let mut p = Self::zero(ambient_rank);
        p.add_term(exponent, c.into());
        p
    }

    /// The coordinate `x_i`.
    pub fn variable(ambient_rank: usize, i: usize) -> Self {
        let mut e = vec![0; ambient_rank];
        e[i] = 1;
        Self::monomial(ambient_rank, e, BigRational::one())
    }

    /// Builds from `(exponent, integer coefficient)` pairs, combining like terms.
    pub fn from_terms<I>(ambient_rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        let mut p = Self::zero(ambient_rank);
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                ambient_rank,
                "exponent length must match the ambient rank"
            );
            p.add_term(e, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if this polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&vec![0; self.ambient_rank]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, exponent: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent);
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

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ambient_rank);
        }
        LaurentPoly {
            ambient_rank: self.ambient_rank,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Applies `f` to every exponent and combines like terms.
    pub fn map_exponents<F>(&self, target_rank: usize, mut f: F) -> Self
    where
        F: FnMut(&[i64]) -> Exponent,
    {
        let mut out = Self::zero(target_rank);
        for (e, c) in &self.terms {
            let image = f(e);
            debug_assert_eq!(image.len(), target_rank);
            out.add_term(image, c.clone());
        }
        out
    }

    /// Embeds into a larger Laurent ring, placing these variables at `offset`.
    pub fn embed(&self, target_rank: usize, offset: usize) -> Self {
        self.map_exponents(target_rank, |e| {
            let mut v = vec![0; target_rank];
            v[offset..offset + e.len()].copy_from_slice(e);
            v
        })
    }

    fn check_rank(&self, other: &Self) {
        assert_eq!(
            self.ambient_rank, other.ambient_rank,
            "Laurent polynomials live in different rings"
        );
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_rank(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ambient_rank: self.ambient_rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // monomials multiply by adding exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_rank(rhs);
        let mut out = LaurentPoly::zero(self.ambient_rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponents first reads more naturally.
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, a)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let x = LaurentPoly::variable(1, 0);
        let xinv = LaurentPoly::monomial(1, vec![-1], BigRational::one());
        let p = &x * &xinv;
        assert_eq!(p, LaurentPoly::one(1));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms(2, [(vec![1, 0], 1), (vec![0, -1], -2), (vec![0, 0], 3)]);
        assert_eq!(p.to_string(), "x1 + 3 - 2*x2^-1");
    }
}
