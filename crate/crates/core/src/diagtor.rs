//! Tor over the representation ring of a good group, for pairs of subtori.
//!
//! `R(G)` is a polynomial ring tensor a Laurent ring on the generators
//! `λ_j`, so the diagonal `R(G) ⊗ R(G) -> R(G)` has kernel generated by the
//! regular sequence `λ_j ⊗ 1 - 1 ⊗ λ_j`. Resolving `R(G)` by its Koszul complex
//! turns `Tor^{R(G)}(R(S1), R(S2))` into the Koszul homology of the images
//! `z_j = res1(λ_j) ⊗ 1 - 1 ⊗ res2(λ_j)` in `R(S1) ⊗ R(S2)`, a Laurent ring in
//! `rank S1 + rank S2` variables. Over `Q` this gives `Tor ⊗ Q`; integral
//! torsion is invisible, so vanishing verdicts are rational ones.

use crate::biquot::{classify_pair, intersection_rank, PairClassification, Verdict};
use crate::charlat::{LaurentPoly, TorusSubgroup};
use crate::error::{Budget, Error, Hypothesis, Result};
use crate::grob::{
    koszul_homology, AffineContext, Field, FieldTag, GrobConfig, GrobStats, HomologyDescriptor,
    Rationals,
};
use crate::toraltor::{
    toral_ktheory, toral_tor, KGroup, KTheoryFlags, KTheoryReport, RationalDim, TorProfile,
};
use crate::weyl::{fundamental_restrictions, RootDatum};

/// `z_j` in the Laurent ring on `rank S1 + rank S2` variables, `S1`'s first.
pub fn diagonal_generators(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
) -> Result<Vec<LaurentPoly>> {
    let res1 = fundamental_restrictions(datum, s1)?;
    let res2 = fundamental_restrictions(datum, s2)?;
    let (r1, r2) = (s1.rank(), s2.rank());
    Ok(res1
        .iter()
        .zip(&res2)
        .map(|(a, b)| &a.embed(r1 + r2, 0) - &b.embed(r1 + r2, r1))
        .collect())
}

#[derive(Clone, Debug)]
pub struct TorResult<F: Field> {
    pub field: FieldTag,
    /// `Tor_0 .. Tor_{rank G}`; higher degrees vanish.
    pub degrees: Vec<HomologyDescriptor<F>>,
    pub stats: GrobStats,
}

impl<F: Field> TorResult<F> {
    pub fn dimension(&self, i: usize) -> RationalDim {
        match self.degrees.get(i) {
            None => RationalDim::Finite(0),
            Some(d) => d
                .finite_dim
                .map_or(RationalDim::Infinite, RationalDim::Finite),
        }
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| !d.is_zero)
            .map(|d| d.degree)
            .collect()
    }
}

fn tor_up_to<F: Field>(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    field: F,
    max_degree: usize,
    cfg: &GrobConfig,
) -> Result<TorResult<F>> {
    let gens = diagonal_generators(datum, s1, s2)?;
    let tag = field.tag();
    let ctx = AffineContext::new(field, s1.rank() + s2.rank());
    let elems = gens
        .iter()
        .map(|g| ctx.laurent_to_affine(g))
        .collect::<Result<Vec<_>>>()?;
    let h = koszul_homology(&ctx, &elems, max_degree.min(elems.len()), cfg)?;
    Ok(TorResult {
        field: tag,
        degrees: h.degrees,
        stats: h.stats,
    })
}

/// `Tor_i^{R(G)}(R(S1), R(S2)) ⊗ field` for all `i`. Only the rational answer
/// is a statement about Tor; mod-`p` results are diagnostics.
pub fn tor_good_group<F: Field>(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    field: F,
    cfg: &GrobConfig,
) -> Result<TorResult<F>> {
    tor_up_to(datum, s1, s2, field, datum.rank(), cfg)
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub classification: PairClassification,
    pub interrank: usize,
    pub bound: usize,
    /// Rational Koszul computation; absent for non-connected subgroups of a
    /// torus or when a budget ran out.
    pub tor: Option<TorResult<Rationals>>,
    /// Exact answer, for torus ambients.
    pub toral: Option<TorProfile>,
    pub observed_nonzero_degrees: Vec<usize>,
    /// Biquotient pairs have no nonzero Tor above the bound (vacuous otherwise).
    pub theorem_consistent: bool,
    /// Agreement of the rational dimensions with the exact answer, when both exist.
    pub cross_check: Option<bool>,
    /// Set when the computation stopped at a budget.
    pub inconclusive: Option<Budget>,
}

impl VerificationReport {
    /// Whether nothing contradicts the vanishing theorem or the cross-check.
    pub fn is_consistent(&self) -> bool {
        self.theorem_consistent && self.cross_check != Some(false)
    }
}

pub fn verify_theorem(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    cfg: &GrobConfig,
) -> Result<VerificationReport> {
    let classification = classify_pair(datum, s1, s2)?;
    let interrank = intersection_rank(datum, s1, s2)?;
    let bound = datum.rank() + interrank - s1.rank() - s2.rank();

    let toral = if datum.is_torus() {
        Some(toral_tor(datum.rank(), s1, s2)?)
    } else {
        None
    };
    let connected = s1.is_subtorus() && s2.is_subtorus();
    let mut inconclusive = None;
    let tor = if connected {
        match tor_good_group(datum, s1, s2, Rationals, cfg) {
            Ok(t) => Some(t),
            Err(Error::BudgetExceeded(b)) => {
                inconclusive = Some(b);
                None
            }
            Err(e) => return Err(e),
        }
    } else if toral.is_none() {
        return Err(Error::NotSubtorus);
    } else {
        None
    };

    let cross_check = match (&tor, &toral) {
        (Some(t), Some(p)) => {
            Some((0..=datum.rank()).all(|i| t.dimension(i) == p.degree(i).rational_dim()))
        }
        _ => None,
    };
    let observed_nonzero_degrees = match (&toral, &tor) {
        (Some(p), _) => (0..=p.rho).collect(),
        (None, Some(t)) => t.nonzero_degrees(),
        (None, None) => Vec::new(),
    };
    let theorem_consistent = !classification.verdict.is_biquotient()
        || observed_nonzero_degrees.iter().all(|&i| i <= bound);
    Ok(VerificationReport {
        classification,
        interrank,
        bound,
        tor,
        toral,
        observed_nonzero_degrees,
        theorem_consistent,
        cross_check,
        inconclusive,
    })
}

/// `K^0` and `K^1` of the biquotient `S1 \ G / S2` under the strict condition,
/// from `Tor_0` and `Tor_1`. Lax pairs are refused.
pub fn ktheory_biquotient(
    datum: &RootDatum,
    s1: &TorusSubgroup,
    s2: &TorusSubgroup,
    cfg: &GrobConfig,
) -> Result<KTheoryReport> {
    if !s1.is_subtorus() || !s2.is_subtorus() {
        return Err(Error::HypothesisViolated(Hypothesis::Subtorus));
    }
    if classify_pair(datum, s1, s2)?.verdict != Verdict::Strict {
        return Err(Error::HypothesisViolated(Hypothesis::StrictCondition));
    }
    let r = datum.rank();
    if s1.rank() + s2.rank() + 1 < r {
        return Err(Error::HypothesisViolated(Hypothesis::RankInequality));
    }
    let tor = tor_up_to(datum, s1, s2, Rationals, 1, cfg)?;
    let exact = if datum.is_torus() {
        Some(toral_ktheory(r, s1, s2)?)
    } else {
        None
    };
    let group = |i: usize| KGroup {
        rational_dim: tor.dimension(i),
        exact: exact.as_ref().and_then(|k| {
            if i == 0 {
                k.k0.exact.clone()
            } else {
                k.k1.exact.clone()
            }
        }),
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
    if let Some(k) = &exact {
        if k.k0.rational_dim != report.k0.rational_dim
            || k.k1.rational_dim != report.k1.rational_dim
        {
            return Err(Error::Inconsistency(
                "Koszul and closed-form K-theory disagree".into(),
            ));
        }
    }
    if report.flags.maximal_rank && !report.k1.is_zero() {
        return Err(Error::Inconsistency(format!(
            "K^1 has rational dimension {} in the maximal-rank case",
            report.k1.rational_dim
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grob::PrimeField;
    use crate::intlin::Sublattice;
    use crate::weyl::{build_root_datum, Factor, GroupSpec};

    fn datum(factors: &[Factor]) -> RootDatum {
        build_root_datum(&GroupSpec::new(factors.to_vec())).unwrap()
    }

    fn sub(r: usize, rows: &[&[i64]]) -> TorusSubgroup {
        TorusSubgroup::from_kernel(Sublattice::from_i64(r, rows))
    }

    fn cfg() -> GrobConfig {
        GrobConfig {
            certify: true,
            ..Default::default()
        }
    }

    fn dims<F: Field>(t: &TorResult<F>) -> Vec<RationalDim> {
        (0..t.degrees.len()).map(|i| t.dimension(i)).collect()
    }

    #[test]
    fn generator_examples() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let t = TorusSubgroup::full(1);
        let one = TorusSubgroup::trivial(1);
        let z = diagonal_generators(&su2, &t, &one).unwrap();
        assert_eq!(
            z,
            vec![LaurentPoly::from_terms(
                1,
                [(vec![1], 1), (vec![-1], 1), (vec![0], -2)]
            )]
        );
        let z = diagonal_generators(&su2, &t, &t).unwrap();
        assert_eq!(
            z,
            vec![LaurentPoly::from_terms(
                2,
                [
                    (vec![1, 0], 1),
                    (vec![-1, 0], 1),
                    (vec![0, 1], -1),
                    (vec![0, -1], -1)
                ]
            )]
        );
        let circle = datum(&[Factor::Torus(1)]);
        let z = diagonal_generators(&circle, &one, &one).unwrap();
        assert!(z.len() == 1 && z[0].is_zero());
    }

    #[test]
    fn two_sphere() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let t = tor_good_group(
            &su2,
            &TorusSubgroup::full(1),
            &TorusSubgroup::trivial(1),
            Rationals,
            &cfg(),
        )
        .unwrap();
        assert_eq!(
            dims(&t),
            vec![RationalDim::Finite(2), RationalDim::Finite(0)]
        );
        assert!(t.stats.certified > 0);
    }

    #[test]
    fn su2_maximal_torus_pair() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let t = TorusSubgroup::full(1);
        let r = tor_good_group(&su2, &t, &t, Rationals, &cfg()).unwrap();
        assert_eq!(
            dims(&r),
            vec![RationalDim::Infinite, RationalDim::Finite(0)]
        );
    }

    #[test]
    fn su3_maximal_torus_pair() {
        let su3 = datum(&[Factor::SpecialUnitary(3)]);
        let t = TorusSubgroup::full(2);
        let r = tor_good_group(&su3, &t, &t, Rationals, &cfg()).unwrap();
        assert_eq!(r.dimension(0), RationalDim::Infinite);
        assert_eq!(r.nonzero_degrees(), vec![0]);
    }

    #[test]
    fn circle_matches_closed_form() {
        let circle = datum(&[Factor::Torus(1)]);
        let one = TorusSubgroup::trivial(1);
        let r = tor_good_group(&circle, &one, &one, Rationals, &cfg()).unwrap();
        assert_eq!(
            dims(&r),
            vec![RationalDim::Finite(1), RationalDim::Finite(1)]
        );
        let v = verify_theorem(&circle, &one, &one, &cfg()).unwrap();
        assert_eq!(v.cross_check, Some(true));
        assert!(v.theorem_consistent);
    }

    #[test]
    fn prime_field_diagnostic() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let f = PrimeField::new(101).unwrap();
        let t = tor_good_group(
            &su2,
            &TorusSubgroup::full(1),
            &TorusSubgroup::trivial(1),
            f,
            &cfg(),
        )
        .unwrap();
        assert_eq!(t.field, FieldTag::Prime(101));
        assert_eq!(t.dimension(0), RationalDim::Finite(2));
    }

    #[test]
    fn verify_su3_strict_pair() {
        let su3 = datum(&[Factor::SpecialUnitary(3)]);
        let v = verify_theorem(
            &su3,
            &TorusSubgroup::trivial(2),
            &sub(2, &[&[1, 1]]),
            &cfg(),
        )
        .unwrap();
        assert_eq!(v.classification.verdict, Verdict::Strict);
        assert_eq!(v.bound, 1);
        assert!(v.observed_nonzero_degrees.iter().all(|&i| i <= 1));
        assert_eq!(v.tor.as_ref().unwrap().dimension(2), RationalDim::Finite(0));
        assert!(v.theorem_consistent && v.inconclusive.is_none());
    }

    #[test]
    fn verify_su2_sphere() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let v = verify_theorem(
            &su2,
            &TorusSubgroup::full(1),
            &TorusSubgroup::trivial(1),
            &cfg(),
        )
        .unwrap();
        assert_eq!(v.classification.verdict, Verdict::Strict);
        assert_eq!(v.bound, 0);
        assert_eq!(v.observed_nonzero_degrees, vec![0]);
        assert!(v.theorem_consistent);
    }

    #[test]
    fn verify_neither_is_vacuous() {
        let su3 = datum(&[Factor::SpecialUnitary(3)]);
        let v = verify_theorem(&su3, &sub(2, &[&[1, 2]]), &sub(2, &[&[1, 1]]), &cfg()).unwrap();
        assert_eq!(v.classification.verdict, Verdict::Neither);
        assert_eq!(v.bound, 0);
        assert!(v.theorem_consistent);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let su3 = datum(&[Factor::SpecialUnitary(3)]);
        let t = TorusSubgroup::full(2);
        let tight = GrobConfig {
            max_spairs: 1,
            ..Default::default()
        };
        let v = verify_theorem(&su3, &t, &t, &tight).unwrap();
        assert!(v.inconclusive.is_some());
        assert!(v.tor.is_none());
    }

    #[test]
    fn ktheory_examples() {
        let su2 = datum(&[Factor::SpecialUnitary(2)]);
        let k = ktheory_biquotient(
            &su2,
            &TorusSubgroup::full(1),
            &TorusSubgroup::trivial(1),
            &cfg(),
        )
        .unwrap();
        assert_eq!(k.k0.rational_dim, RationalDim::Finite(2));
        assert!(k.k1.is_zero() && k.flags.maximal_rank);

        let s3 = ktheory_biquotient(
            &su2,
            &TorusSubgroup::trivial(1),
            &TorusSubgroup::trivial(1),
            &cfg(),
        )
        .unwrap();
        assert_eq!(s3.k0.rational_dim, RationalDim::Finite(1));
        assert_eq!(s3.k1.rational_dim, RationalDim::Finite(1));

        let circle = datum(&[Factor::Torus(1)]);
        let one = TorusSubgroup::trivial(1);
        let k = ktheory_biquotient(&circle, &one, &one, &cfg()).unwrap();
        assert_eq!(k.k0.exact.as_ref().unwrap().z_rank(), Some(1.into()));
        assert_eq!(k.k1.exact.as_ref().unwrap().z_rank(), Some(1.into()));
    }

    #[test]
    fn ktheory_refuses_non_strict() {
        let t2 = datum(&[Factor::Torus(2)]);
        let c = sub(2, &[&[1, 0]]);
        assert!(matches!(
            ktheory_biquotient(&t2, &c, &c, &cfg()),
            Err(Error::HypothesisViolated(Hypothesis::StrictCondition))
        ));
        let su3 = datum(&[Factor::SpecialUnitary(3)]);
        assert!(matches!(
            ktheory_biquotient(&su3, &sub(2, &[&[1, 2]]), &sub(2, &[&[1, 1]]), &cfg()),
            Err(Error::HypothesisViolated(Hypothesis::StrictCondition))
        ));
    }
}
