//! JSON renderings of results.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use reptor::biquot::{Enlargement, PairClassification};
use reptor::charlat::TorusSubgroup;
use reptor::diagtor::TorResult;
use reptor::grob::{AffineContext, Field, GrobStats, HomologyDescriptor};
use reptor::intlin::{FinAbPresentation, IntMatrix};
use reptor::toraltor::{GroupRingPower, KGroup, KTheoryReport, RationalDim, TorProfile};
use reptor::weyl::RootDatum;

const SAFE_INT: i64 = 1 << 53;

/// A number when it survives a double round trip, a decimal string otherwise.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.abs() <= SAFE_INT => json!(v),
        _ => json!(n.to_string()),
    }
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int).collect()))
            .collect(),
    )
}

pub fn fin_ab(g: &FinAbPresentation) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.torsion.iter().map(int).collect::<Vec<_>>(),
        "description": g.to_string(),
    })
}

pub fn group(datum: &RootDatum) -> Value {
    json!({
        "description": datum.spec().to_string(),
        "rank": datum.rank(),
        "weyl_order": datum.weyl_order().to_string(),
    })
}

pub fn subgroup(s: &TorusSubgroup) -> Value {
    json!({
        "kernel": matrix(s.kernel().basis()),
        "rank": s.rank(),
        "subtorus": s.is_subtorus(),
    })
}

pub fn classification(c: &PairClassification) -> Value {
    json!({
        "verdict": c.verdict.to_string(),
        "witness": c.witness.as_ref().map(|w| json!({
            "weyl_element": matrix(w.element.matrix()),
            "kernel_sum": matrix(w.kernel.basis()),
            "intersection_characters": fin_ab(&w.intersection),
        })),
    })
}

pub fn rational_dim(d: RationalDim) -> Value {
    match d {
        RationalDim::Finite(n) => json!(n),
        RationalDim::Infinite => json!("infinite"),
    }
}

pub fn group_ring_power(g: &GroupRingPower) -> Value {
    json!({
        "multiplicity": g.multiplicity,
        "z_rank": g.z_rank().as_ref().map(int),
        "rational_dim": rational_dim(g.rational_dim()),
        "description": g.to_string(),
    })
}

pub fn toral(p: &TorProfile) -> Value {
    json!({
        "rho": p.rho,
        "coefficient_group": fin_ab(&p.coefficient_group),
        "degrees": p.degrees().iter().enumerate().map(|(i, g)| {
            let mut v = group_ring_power(g);
            v["degree"] = json!(i);
            v
        }).collect::<Vec<_>>(),
    })
}

fn descriptor<F: Field>(ctx: &AffineContext<F>, d: &HomologyDescriptor<F>) -> Value {
    let rank = d.presentation.free_rank;
    json!({
        "degree": d.degree,
        "is_zero": d.is_zero,
        "finite_dim": d.finite_dim,
        "presentation": {
            "free_rank": rank,
            "relations": d.presentation.relations.iter().map(|r| ctx.display(r, rank)).collect::<Vec<_>>(),
        },
    })
}

pub fn koszul<F: Field>(ctx: &AffineContext<F>, t: &TorResult<F>) -> Value {
    json!({
        "field": t.field.to_string(),
        "degrees": t.degrees.iter().map(|d| descriptor(ctx, d)).collect::<Vec<_>>(),
    })
}

pub fn stats(s: &GrobStats) -> Value {
    json!({
        "bases": s.bases,
        "spairs": s.spairs,
        "zero_reductions": s.zero_reductions,
        "certified_bases": s.certified,
        "max_basis_size": s.max_basis_size,
    })
}

fn kgroup(k: &KGroup) -> Value {
    json!({
        "is_zero": k.is_zero(),
        "rational_dim": rational_dim(k.rational_dim),
        "exact": k.exact.as_ref().map(group_ring_power),
    })
}

pub fn ktheory(k: &KTheoryReport) -> Value {
    json!({
        "k0": kgroup(&k.k0),
        "k1": kgroup(&k.k1),
        "flags": {
            "strict_condition": k.flags.strict_condition,
            "rank_inequality": k.flags.rank_inequality,
            "maximal_rank": k.flags.maximal_rank,
        },
    })
}

pub fn enlargement(e: &Enlargement) -> Value {
    json!({
        "kernel": matrix(e.subgroup.kernel().basis()),
        "rank": e.subgroup.rank(),
        "attempts": e.attempts,
        "checks": {
            "subtorus": e.check.is_subtorus,
            "contains_original": e.check.contains_original,
            "rank_identity": e.check.rank_identity,
            "interrank_preserved": e.check.interrank_preserved,
        },
    })
}
