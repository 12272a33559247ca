//! Homology of Koszul complexes over the Laurent ring.
//!
//! `K_i` has basis `e_J` for the `i`-subsets `J = {j_0 < ... < j_{i-1}}`, in
//! lexicographic order, and `d(e_J) = sum_k (-1)^k f_{j_k} e_{J - j_k}`.

use num_integer::binomial;

use super::engine::{module_groebner_basis, syzygy_module, GrobConfig, GrobStats};
use super::{
    standard_monomial_count, AffineContext, Field, ModVector, ModulePresentation, Polynomial, Term,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDescriptor<F: Field> {
    pub degree: usize,
    pub is_zero: bool,
    /// Dimension over the coefficient field, when finite.
    pub finite_dim: Option<u64>,
    /// `H_i` as the cokernel of these relations; a Gröbner basis containing
    /// the base relations in each component.
    pub presentation: ModulePresentation<F>,
}

#[derive(Clone, Debug)]
pub struct KoszulHomology<F: Field> {
    pub degrees: Vec<HomologyDescriptor<F>>,
    pub stats: GrobStats,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Columns of `d_i : K_i -> K_{i-1}`, as elements of `P^{binom(n, i-1)}`.
fn differential<F: Field>(
    ctx: &AffineContext<F>,
    elems: &[Polynomial<F>],
    i: usize,
) -> Vec<ModVector<F>> {
    let field = ctx.field();
    let targets = subsets(elems.len(), i - 1);
    subsets(elems.len(), i)
        .into_iter()
        .map(|set| {
            let parts: Vec<ModVector<F>> = (0..set.len())
                .map(|k| {
                    let mut face = set.clone();
                    let j = face.remove(k);
                    let pos = targets
                        .binary_search(&face)
                        .expect("faces are (i-1)-subsets");
                    let sign = if k % 2 == 0 {
                        field.one()
                    } else {
                        field.neg(&field.one())
                    };
                    elems[j].scale(field, &sign).shift(pos as isize)
                })
                .collect();
            ModVector::sum(field, parts.iter())
        })
        .collect()
}

/// `H_0 .. H_{max_degree}` of the Koszul complex on `elems` over the Laurent ring.
pub fn koszul_homology<F: Field>(
    ctx: &AffineContext<F>,
    elems: &[Polynomial<F>],
    max_degree: usize,
    cfg: &GrobConfig,
) -> Result<KoszulHomology<F>> {
    let n = elems.len();
    if max_degree > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: max_degree,
        });
    }
    if let Some(bad) = elems.iter().find(|e| e.span() > 1) {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: bad.span(),
        });
    }
    let mut stats = GrobStats::default();
    let mut degrees = Vec::with_capacity(max_degree + 1);
    for i in 0..=max_degree {
        let a = binomial(n, i);
        let kernel = if i == 0 {
            vec![ctx.unit(0)]
        } else {
            let (syz, s) =
                syzygy_module(ctx, binomial(n, i - 1), &differential(ctx, elems, i), cfg)?;
            stats.absorb(&s);
            syz.relations
        };
        let image = if i < n {
            differential(ctx, elems, i + 1)
        } else {
            Vec::new()
        };
        let boundaries = module_groebner_basis(ctx, a, &image, cfg)?;
        stats.absorb(boundaries.stats());

        let mut cycles: Vec<ModVector<F>> = Vec::new();
        for k in &kernel {
            let r = boundaries.normal_form(k);
            if !r.is_zero() && !cycles.contains(&r) {
                cycles.push(r);
            }
        }
        if cycles.is_empty() {
            degrees.push(HomologyDescriptor {
                degree: i,
                is_zero: true,
                finite_dim: Some(0),
                presentation: ModulePresentation {
                    free_rank: 0,
                    relations: Vec::new(),
                },
            });
            continue;
        }

        // H_i = P^s / {c : sum c_j cycles_j in boundaries}
        let s = cycles.len();
        let mut gens: Vec<ModVector<F>> = cycles
            .iter()
            .enumerate()
            .map(|(j, c)| ModVector::sum(ctx.field(), [c, &ctx.unit(a + j)]))
            .collect();
        gens.extend(boundaries.elements().iter().cloned());
        let gb = module_groebner_basis(ctx, a + s, &gens, cfg)?;
        stats.absorb(gb.stats());
        // Under position-over-term the part in the last s components is a Gröbner basis.
        let relations: Vec<ModVector<F>> = gb
            .elements()
            .iter()
            .filter(|g| g.lead_term().is_some_and(|t| t.component() >= a))
            .map(|g| g.restrict(a, a + s))
            .collect();
        let leads: Vec<&Term> = relations.iter().filter_map(|g| g.lead_term()).collect();
        let finite_dim = standard_monomial_count(&leads, s, ctx.nvars());
        degrees.push(HomologyDescriptor {
            degree: i,
            is_zero: finite_dim == Some(0),
            finite_dim,
            presentation: ModulePresentation {
                free_rank: s,
                relations,
            },
        });
    }
    Ok(KoszulHomology { degrees, stats })
}
