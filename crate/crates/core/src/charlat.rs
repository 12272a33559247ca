//! Closed subgroups of a torus, described by their annihilating character
//! sublattices, and restriction of characters to subtori.
//!
//! A closed subgroup `S` of the rank-`r` torus `T` is recorded as
//! `k = K_S`, the characters of `T` that are trivial on `S`. The dictionary is
//! inclusion-reversing: `K_{S1 ∩ S2} = K_{S1} + K_{S2}`, `rank S = r - rank k`,
//! and `S` is connected exactly when `k` is a direct summand of `Z^r`.
//!
//! Restriction to a subtorus needs coordinates on its character lattice
//! `Z^r / k`. These are taken from the Smith form of `k`'s basis, so raw
//! restricted polynomials depend on that choice; ranks, dimensions and
//! invariant factors computed from them do not.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use crate::laurent::{Exponent, LaurentPoly};

use crate::error::{Error, Result};
use crate::intlin::{left_kernel, smith_normal_form, FinAbPresentation, IntMatrix, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusSubgroup {
    k: Sublattice,
}

impl TorusSubgroup {
    /// The subgroup annihilated by exactly the characters in `k`.
    pub fn from_kernel(k: Sublattice) -> Self {
        TorusSubgroup { k }
    }

    /// The whole torus.
    pub fn full(r: usize) -> Self {
        TorusSubgroup {
            k: Sublattice::zero(r),
        }
    }

    pub fn trivial(r: usize) -> Self {
        TorusSubgroup {
            k: Sublattice::full(r),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.k.ambient_rank()
    }

    pub fn kernel(&self) -> &Sublattice {
        &self.k
    }

    pub fn rank(&self) -> usize {
        self.ambient_rank() - self.k.rank()
    }

    pub fn is_subtorus(&self) -> bool {
        self.k.is_direct_summand()
    }

    /// Character group of the subgroup, `Z^r / k`.
    pub fn character_group(&self) -> FinAbPresentation {
        self.k.quotient_invariants()
    }

    /// Coordinates on `Z^r / k` for a subtorus.
    pub fn splitting(&self) -> Result<Splitting> {
        Splitting::new(&self.k)
    }
}

/// The closure of the image of `(S^1)^m -> T` given by cocharacter rows of `c`.
///
/// `k` is the integer kernel of the pairing, i.e. all `chi` with `c * chi^T = 0`.
pub fn subgroup_from_cocharacters(r: usize, c: &IntMatrix) -> Result<TorusSubgroup> {
    if c.cols() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: c.cols(),
        });
    }
    Ok(TorusSubgroup {
        k: Sublattice::from_generators(&left_kernel(&c.transpose())),
    })
}

pub fn intersect_subgroups(s1: &TorusSubgroup, s2: &TorusSubgroup) -> Result<TorusSubgroup> {
    Ok(TorusSubgroup {
        k: s1.k.sum(&s2.k)?,
    })
}

/// A surjection `Z^r -> Z^s` with kernel `k`, for a direct summand `k` of rank `r - s`.
///
/// With `U * B * V = [I 0]` the Smith form of the basis `B` of `k`, a vector `v`
/// maps to the trailing `s` coordinates of `v * V`.
#[derive(Clone, Debug)]
pub struct Splitting {
    ambient_rank: usize,
    kernel_rank: usize,
    v: IntMatrix,
}

impl Splitting {
    pub fn new(k: &Sublattice) -> Result<Self> {
        let snf = smith_normal_form(k.basis());
        if snf
            .invariant_factors()
            .iter()
            .any(|d| *d != BigInt::from(1))
        {
            return Err(Error::NotSubtorus);
        }
        Ok(Splitting {
            ambient_rank: k.ambient_rank(),
            kernel_rank: k.rank(),
            v: snf.v,
        })
    }

    pub fn target_rank(&self) -> usize {
        self.ambient_rank - self.kernel_rank
    }

    pub fn apply(&self, e: &[i64]) -> Result<Exponent> {
        (self.kernel_rank..self.ambient_rank)
            .map(|j| {
                let mut acc = BigInt::from(0);
                for (i, &a) in e.iter().enumerate() {
                    if a != 0 {
                        acc += &self.v[(i, j)] * a;
                    }
                }
                acc.to_i64().ok_or(Error::ExponentOverflow)
            })
            .collect()
    }
}

/// Image of `chi` in the representation ring of the subtorus `s`.
pub fn restrict_character(s: &TorusSubgroup, chi: &LaurentPoly) -> Result<LaurentPoly> {
    if chi.ambient_rank() != s.ambient_rank() {
        return Err(Error::AmbientRankMismatch {
            left: s.ambient_rank(),
            right: chi.ambient_rank(),
        });
    }
    let split = s.splitting()?;
    restrict_with(&split, chi)
}

pub(crate) fn restrict_with(split: &Splitting, chi: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(split.target_rank());
    for (e, c) in chi.terms() {
        out.add_term(split.apply(e)?, c.clone());
    }
    Ok(out)
}
