//! Biquotient conditions and intersection ranks for pairs of subtori.
//!
//! For subtori `S1, S2` of a maximal torus, every intersection
//! `S1 ∩ g S2 g^{-1}` is contained in some `S1 ∩ w(S2)` with `w` in the Weyl
//! group, so all conditions reduce to the finitely many lattices
//! `k1 + w(k2)`. Being contained in the center translates to the root lattice
//! being contained in `k1 + w(k2)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charlat::TorusSubgroup;
use crate::error::{Error, Result};
use crate::intlin::{FinAbPresentation, IntMatrix, Sublattice};
use crate::weyl::{RootDatum, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Strict,
    Lax,
    Neither,
}

impl Verdict {
    /// Strict or lax.
    pub fn is_biquotient(self) -> bool {
        matches!(self, Verdict::Strict | Verdict::Lax)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Strict => "Strict",
            Verdict::Lax => "Lax",
            Verdict::Neither => "Neither",
        };
        f.write_str(s)
    }
}

/// A Weyl conjugate whose intersection with `S1` is nontrivial (for `Lax`)
/// or not central (for `Neither`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: WeylElement,
    /// `k1 + w(k2)`.
    pub kernel: Sublattice,
    /// Character group of `S1 ∩ w(S2)`: free rank is its rank, torsion its component group.
    pub intersection: FinAbPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClassification {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

fn check_inputs(datum: &RootDatum, s1: &TorusSubgroup, s2: &TorusSubgroup) -> Result<()> {
    for s in [s1, s2] {
        if s.ambient_rank() != datum.rank() {
            return Err(Error::AmbientRankMismatch {
                left: datum.rank(),
                right: s.ambient_rank(),
            });
        }
        // Reducing to Weyl conjugates needs connected subgroups unless the Weyl group is trivial.
        if !datum.is_torus() && !s.is_subtorus() {
            return Err(Error::NotSubtorus);
        }
    }
    Ok(())
}

/// `(w, k1 + w(k2))` for every Weyl element, in enumeration order.
fn conjugate_sums(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
) -> Result<Vec<(WeylElement, Sublattice)>> {
    check_inputs(datum, s1, s2)?;
    datum
        .weyl_elements()?
        .map(|w| {
            let sum = s1.kernel().sum(&w.act_on_lattice(s2.kernel())?)?;
            Ok((w, sum))
        })
        .collect()
}

/// `max_w rank(S1 ∩ w(S2))`.
pub fn intersection_rank(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
) -> Result<usize> {
    let r = datum.rank();
    Ok(conjugate_sums(datum, s1, s2)?
        .iter()
        .map(|(_, k)| r - k.rank())
        .max()
        .unwrap_or(0))
}

pub fn classify_pair(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
) -> Result<PairClassification> {
    let sums = conjugate_sums(datum, s1, s2)?;
    let witness = |(w, k): &(WeylElement, Sublattice)| Witness {
        element: w.clone(),
        kernel: k.clone(),
        intersection: k.quotient_invariants(),
    };
    if let Some(bad) = sums.iter().find(|(_, k)| !k.contains(datum.root_lattice())) {
        return Ok(PairClassification {
            verdict: Verdict::Neither,
            witness: Some(witness(bad)),
        });
    }
    let full = Sublattice::full(datum.rank());
    if let Some(nontrivial) = sums.iter().find(|(_, k)| *k != full) {
        return Ok(PairClassification {
            verdict: Verdict::Lax,
            witness: Some(witness(nontrivial)),
        });
    }
    Ok(PairClassification {
        verdict: Verdict::Strict,
        witness: None,
    })
}

/// `rank G - rank S1 - rank S2 + interrank(S1, S2)`: above this degree Tor
/// vanishes for biquotient pairs.
pub fn vanishing_bound(datum: &RootDatum, s1: &TorusSubgroup, s2: &TorusSubgroup) -> Result<usize> {
    let interrank = intersection_rank(datum, s1, s2)?;
    Ok(datum.rank() + interrank - s1.rank() - s2.rank())
}

/// Sampling parameters for [`enlarge_torus`].
#[derive(Clone, Debug)]
pub struct EnlargeConfig {
    pub seed: u64,
    pub retries_per_window: u32,
    pub window_doublings: u32,
}

impl Default for EnlargeConfig {
    fn default() -> Self {
        EnlargeConfig {
            seed: 0,
            retries_per_window: 64,
            window_doublings: 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enlargement {
    pub subgroup: TorusSubgroup,
    /// Samples drawn before success (0 when the input already had maximal rank).
    pub attempts: u64,
    pub check: EnlargementCheck,
}

/// The post-conditions of an enlargement `S1 ⊆ S1+ ⊆ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnlargementCheck {
    pub is_subtorus: bool,
    pub contains_original: bool,
    /// `rank G = rank S1+ + rank S2 - interrank(S1+, S2)`.
    pub rank_identity: bool,
    pub interrank_preserved: bool,
}

impl EnlargementCheck {
    pub fn holds(&self) -> bool {
        self.is_subtorus && self.contains_original && self.rank_identity && self.interrank_preserved
    }
}

pub fn check_enlargement(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    enlarged: &TorusSubgroup,
) -> Result<EnlargementCheck> {
    let before = intersection_rank(datum, s1, s2)?;
    let after = intersection_rank(datum, enlarged, s2)?;
    Ok(EnlargementCheck {
        is_subtorus: enlarged.is_subtorus(),
        contains_original: s1.kernel().contains(enlarged.kernel()),
        rank_identity: datum.rank() + after == enlarged.rank() + s2.rank(),
        interrank_preserved: before == after,
    })
}

/// Finds a subtorus `S1+ ⊇ S1` with the same intersection rank against `S2`
/// and `rank G = rank S1+ + rank S2 - interrank`.
///
/// `k(S1+)` is the saturation of `c' - rank k2` random integer combinations of
/// the basis of `k1`, where `c' = min_w rank(k1 + w(k2))`; a sample is kept
/// when `rank(k(S1+) + w(k2)) = c'` for every `w`. Sample `n` is drawn from
/// stream `n` of a ChaCha generator keyed by the seed.
pub fn enlarge_torus(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    config: &EnlargeConfig,
) -> Result<Enlargement> {
    check_inputs(datum, s1, s2)?;
    if !s1.is_subtorus() || !s2.is_subtorus() {
        return Err(Error::NotSubtorus);
    }
    let conjugates: BTreeSet<Sublattice> = datum
        .weyl_elements()?
        .map(|w| w.act_on_lattice(s2.kernel()))
        .collect::<Result<_>>()?;
    let k1 = s1.kernel();
    let c2 = s2.kernel().rank();
    let target = conjugates
        .iter()
        .map(|k| k1.sum(k).map(|s| s.rank()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(c2);
    let wanted = target - c2;

    let finish = |candidate: TorusSubgroup, attempts: u64| -> Result<Enlargement> {
        let check = check_enlargement(datum, s1, s2, &candidate)?;
        if !check.holds() {
            return Err(Error::EnlargementFailed { attempts });
        }
        Ok(Enlargement {
            subgroup: candidate,
            attempts,
            check,
        })
    };

    if wanted == k1.rank() {
        return finish(s1.clone(), 0);
    }
    let accepts = |k: &Sublattice| -> Result<bool> {
        if k.rank() != wanted {
            return Ok(false);
        }
        for c in &conjugates {
            if k.sum(c)?.rank() != target {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let basis = k1.basis();
    let mut attempts = 0u64;
    let mut window: i64 = 1;
    for _ in 0..=config.window_doublings {
        for _ in 0..config.retries_per_window {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(attempts);
            attempts += 1;
            let coeffs: Vec<Vec<i64>> = (0..wanted)
                .map(|_| {
                    (0..basis.rows())
                        .map(|_| rng.gen_range(-window..=window))
                        .collect()
                })
                .collect();
            let combos = IntMatrix::from_rows(basis.rows(), &coeffs)?.mul(basis)?;
            let candidate = Sublattice::from_generators(&combos).saturation();
            if accepts(&candidate)? {
                return finish(TorusSubgroup::from_kernel(candidate), attempts);
            }
        }
        window = window.saturating_mul(2);
    }
    Err(Error::EnlargementFailed { attempts })
}

/// Index `[Z^r : k]` when `k` has full rank.
pub fn lattice_index(k: &Sublattice) -> Option<BigInt> {
    k.quotient_invariants().order()
}
