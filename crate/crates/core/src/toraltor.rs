//! Tor over the representation ring of a torus, in closed form.
//!
//! For closed subgroups with annihilator lattices `k1, k2 ⊆ Z^r`,
//! `Tor_i(Z[Z^r/k1], Z[Z^r/k2]) ≅ Λ^i(Z^ρ) ⊗ Z[Z^r/(k1+k2)]` over `Z[Z^r]`,
//! where `ρ = rank(k1 ∩ k2)`. The Koszul complex on a basis of `k2` resolves
//! `Z[Z^r/k2]` because `k2` acts freely by translation; after tensoring it
//! computes `H_*(k2; Z[Z^r/k1])`, and `k2` permutes the cosets of `k1` with
//! stabilizer `k1 ∩ k2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use crate::charlat::TorusSubgroup;
use crate::error::{Error, Hypothesis, Result};
use crate::intlin::FinAbPresentation;

/// A dimension over a field that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RationalDim {
    Finite(u64),
    Infinite,
}

impl RationalDim {
    pub fn is_zero(self) -> bool {
        self == RationalDim::Finite(0)
    }
}

impl fmt::Display for RationalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalDim::Finite(d) => write!(f, "{d}"),
            RationalDim::Infinite => f.write_str("infinite"),
        }
    }
}

/// The abelian group `Z[Q]^multiplicity`, a free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingPower {
    pub coefficient_group: FinAbPresentation,
    pub multiplicity: u64,
}

impl GroupRingPower {
    pub fn is_zero(&self) -> bool {
        self.multiplicity == 0
    }

    /// Rank as a free abelian group; `None` when it is countably infinite.
    pub fn z_rank(&self) -> Option<BigInt> {
        if self.multiplicity == 0 {
            return Some(BigInt::zero());
        }
        self.coefficient_group
            .order()
            .map(|n| n * self.multiplicity)
    }

    pub fn rational_dim(&self) -> RationalDim {
        match self.z_rank().and_then(|n| n.to_u64()) {
            Some(d) => RationalDim::Finite(d),
            // A finite rank beyond u64 is not reachable for the lattices handled here.
            None => RationalDim::Infinite,
        }
    }
}

impl fmt::Display for GroupRingPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 0 {
            return f.write_str("0");
        }
        match self.z_rank() {
            Some(n) if self.coefficient_group.is_trivial() || n.is_zero() => write!(f, "Z^{n}"),
            Some(n) => write!(
                f,
                "Z[{}]^{} (= Z^{n})",
                self.coefficient_group, self.multiplicity
            ),
            None => write!(f, "Z[{}]^{}", self.coefficient_group, self.multiplicity),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorProfile {
    pub rho: usize,
    /// `Z^r / (k1 + k2)`.
    pub coefficient_group: FinAbPresentation,
}

impl TorProfile {
    /// `binom(rho, i)`, zero above `rho`.
    pub fn multiplicity(&self, i: usize) -> u64 {
        if i > self.rho {
            0
        } else {
            binomial(self.rho as u64, i as u64)
        }
    }

    pub fn degree(&self, i: usize) -> GroupRingPower {
        GroupRingPower {
            coefficient_group: self.coefficient_group.clone(),
            multiplicity: self.multiplicity(i),
        }
    }

    /// `Tor_0 .. Tor_rho`; everything above is zero.
    pub fn degrees(&self) -> Vec<GroupRingPower> {
        (0..=self.rho).map(|i| self.degree(i)).collect()
    }
}

pub fn toral_tor(r: usize, s1: &TorusSubgroup, s2: &TorusSubgroup) -> Result<TorProfile> {
    for s in [s1, s2] {
        if s.ambient_rank() != r {
            return Err(Error::AmbientRankMismatch {
                left: r,
                right: s.ambient_rank(),
            });
        }
    }
    let rho = s1.kernel().intersect(s2.kernel())?.rank();
    let coefficient_group = s1.kernel().sum(s2.kernel())?.quotient_invariants();
    Ok(TorProfile {
        rho,
        coefficient_group,
    })
}

/// One K-group, exactly over `Z` where known and as a rational dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroup {
    pub exact: Option<GroupRingPower>,
    pub rational_dim: RationalDim,
}

impl KGroup {
    pub fn is_zero(&self) -> bool {
        self.rational_dim.is_zero() && self.exact.as_ref().is_none_or(|g| g.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KTheoryFlags {
    pub strict_condition: bool,
    pub rank_inequality: bool,
    /// `rank S1 + rank S2 = rank G`, in which case `K^1` vanishes.
    pub maximal_rank: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTheoryReport {
    pub k0: KGroup,
    pub k1: KGroup,
    pub flags: KTheoryFlags,
}

/// K-theory of the biquotient `S1 \ T / S2` of a torus.
pub fn toral_ktheory(r: usize, s1: &TorusSubgroup, s2: &TorusSubgroup) -> Result<KTheoryReport> {
    let profile = toral_tor(r, s1, s2)?;
    let strict = profile.coefficient_group.is_trivial();
    if !strict {
        return Err(Error::HypothesisViolated(Hypothesis::StrictCondition));
    }
    if s1.rank() + s2.rank() + 1 < r {
        return Err(Error::HypothesisViolated(Hypothesis::RankInequality));
    }
    let group = |i| {
        let g = profile.degree(i);
        KGroup {
            rational_dim: g.rational_dim(),
            exact: Some(g),
        }
    };
    let report = KTheoryReport {
        k0: group(0),
        k1: group(1),
        flags: KTheoryFlags {
            strict_condition: true,
            rank_inequality: true,
            maximal_rank: s1.rank() + s2.rank() == r,
        },
    };
    if report.flags.maximal_rank && !report.k1.is_zero() {
        return Err(Error::Inconsistency(format!(
            "K^1 = {} in the maximal-rank case",
            profile.degree(1)
        )));
    }
    Ok(report)
}
