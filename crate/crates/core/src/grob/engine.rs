//! Buchberger's algorithm for submodules of free modules, with the
//! Gebauer–Möller pair update and final interreduction.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    add_into, standard_monomial_count, AffineContext, Field, ModVector, ModulePresentation, Term,
};
use crate::error::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrobConfig {
    pub max_spairs: u64,
    /// Cap on the total degree of any S-pair or basis element.
    pub max_degree: u32,
    /// Re-check that every S-polynomial of each returned basis reduces to zero.
    pub certify: bool,
}

impl Default for GrobConfig {
    fn default() -> Self {
        GrobConfig {
            max_spairs: 1_000_000,
            max_degree: 60,
            certify: false,
        }
    }
}

/// Counters accumulated over one or more basis computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GrobStats {
    pub bases: u64,
    pub spairs: u64,
    pub zero_reductions: u64,
    /// Bases whose S-polynomials were all re-checked.
    pub certified: u64,
    pub max_basis_size: usize,
}

impl GrobStats {
    pub fn absorb(&mut self, other: &GrobStats) {
        self.bases += other.bases;
        self.spairs += other.spairs;
        self.zero_reductions += other.zero_reductions;
        self.certified += other.certified;
        self.max_basis_size = self.max_basis_size.max(other.max_basis_size);
    }
}

/// A reduced Gröbner basis of a submodule of `P^rank` containing `J * P^rank`,
/// where `J` is generated by the relations `u_i v_i - 1`.
#[derive(Clone, Debug)]
pub struct GrobnerBasis<F: Field> {
    ctx: AffineContext<F>,
    rank: usize,
    elements: Vec<ModVector<F>>,
    stats: GrobStats,
}

impl<F: Field> GrobnerBasis<F> {
    pub fn context(&self) -> &AffineContext<F> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Monic, sorted by decreasing leading term.
    pub fn elements(&self) -> &[ModVector<F>] {
        &self.elements
    }

    pub fn stats(&self) -> &GrobStats {
        &self.stats
    }

    pub fn normal_form(&self, v: &ModVector<F>) -> ModVector<F> {
        let refs: Vec<&ModVector<F>> = self.elements.iter().collect();
        reduce(self.ctx.field(), v, &refs)
    }

    pub fn contains(&self, v: &ModVector<F>) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Whether the submodule is all of `P^rank`.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|c| {
            self.elements.iter().any(|g| {
                g.lead_term()
                    .is_some_and(|t| t.comp == c && t.is_constant())
            })
        })
    }

    /// Dimension over the field of the quotient, `None` when infinite.
    pub fn quotient_dimension(&self) -> Option<u64> {
        let leads: Vec<&Term> = self.elements.iter().filter_map(|g| g.lead_term()).collect();
        standard_monomial_count(&leads, self.rank, self.ctx.nvars())
    }

    /// Whether every S-polynomial reduces to zero.
    pub fn certify(&self) -> bool {
        let field = self.ctx.field();
        let refs: Vec<&ModVector<F>> = self.elements.iter().collect();
        for (i, f) in self.elements.iter().enumerate() {
            for g in &self.elements[i + 1..] {
                let (tf, tg) = (f.lead_term().unwrap(), g.lead_term().unwrap());
                if tf.comp != tg.comp {
                    continue;
                }
                let l = tf.lcm(tg, self.ctx.order());
                if !reduce(field, &spoly(field, f, g, &l), &refs).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Full reduction of `v` by monic `basis`.
fn reduce<F: Field>(field: &F, v: &ModVector<F>, basis: &[&ModVector<F>]) -> ModVector<F> {
    let mut acc: BTreeMap<Term, F::Elem> = v.terms.iter().cloned().collect();
    let mut rem = Vec::new();
    while let Some((t, c)) = acc.pop_last() {
        match basis
            .iter()
            .find(|g| g.lead_term().is_some_and(|lt| lt.divides(&t)))
        {
            Some(g) => {
                let m = t.quotient(g.lead_term().unwrap());
                let neg_c = field.neg(&c);
                for (gt, gc) in &g.terms[1..] {
                    add_into(field, &mut acc, gt.mul(&m), field.mul(&neg_c, gc));
                }
            }
            None => rem.push((t, c)),
        }
    }
    ModVector { terms: rem }
}

/// S-polynomial of monic `f`, `g` whose leading terms have lcm `l`.
fn spoly<F: Field>(field: &F, f: &ModVector<F>, g: &ModVector<F>, l: &Term) -> ModVector<F> {
    let mf = l.quotient(f.lead_term().unwrap());
    let mg = l.quotient(g.lead_term().unwrap());
    let mut acc = BTreeMap::new();
    for (t, c) in &f.terms[1..] {
        add_into(field, &mut acc, t.mul(&mf), c.clone());
    }
    for (t, c) in &g.terms[1..] {
        add_into(field, &mut acc, t.mul(&mg), field.neg(c));
    }
    ModVector::from_map(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    lcm: Term,
    i: usize,
    j: usize,
}

struct Builder<'a, F: Field> {
    ctx: &'a AffineContext<F>,
    cfg: &'a GrobConfig,
    is_ideal: bool,
    polys: Vec<ModVector<F>>,
    active: Vec<usize>,
    pairs: BTreeSet<Pair>,
    stats: GrobStats,
}

impl<'a, F: Field> Builder<'a, F> {
    fn lead(&self, i: usize) -> &Term {
        self.polys[i]
            .lead_term()
            .expect("stored elements are nonzero")
    }

    fn reduce_by_active(&self, v: &ModVector<F>) -> ModVector<F> {
        let refs: Vec<&ModVector<F>> = self.active.iter().map(|&i| &self.polys[i]).collect();
        reduce(self.ctx.field(), v, &refs)
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.cfg.max_degree {
            return Err(Error::BudgetExceeded(Budget::Degree {
                limit: self.cfg.max_degree,
            }));
        }
        Ok(())
    }

    /// Reduces `v` and, if nonzero, adds it with the Gebauer–Möller update.
    fn insert(&mut self, v: &ModVector<F>) -> Result<()> {
        let h = self.reduce_by_active(v);
        if h.is_zero() {
            self.stats.zero_reductions += 1;
            return Ok(());
        }
        let h = h.monic(self.ctx.field());
        self.check_degree(h.max_degree())?;
        self.polys.push(h);
        self.update(self.polys.len() - 1);
        Ok(())
    }

    fn update(&mut self, h: usize) {
        let order = self.ctx.order();
        let lt_h = self.lead(h).clone();
        let candidates: Vec<(usize, Term)> = self
            .active
            .iter()
            .filter(|&&g| self.lead(g).comp == lt_h.comp)
            .map(|&g| (g, lt_h.lcm(self.lead(g), order)))
            .collect();
        let coprime = |g: usize| self.is_ideal && lt_h.coprime(self.lead(g));

        let mut kept: Vec<(usize, Term)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime(*g) || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !coprime(*g))
            .map(|(g, lcm)| Pair {
                degree: lcm.degree(),
                lcm,
                i: g,
                j: h,
            })
            .collect();

        let polys = &self.polys;
        let lead = |i: usize| polys[i].lead_term().unwrap();
        self.pairs.retain(|p| {
            !(lt_h.divides(&p.lcm)
                && lead(p.i).lcm(&lt_h, order) != p.lcm
                && lead(p.j).lcm(&lt_h, order) != p.lcm)
        });
        self.pairs.extend(fresh);
        self.active
            .retain(|&g| !lt_h.divides(polys[g].lead_term().unwrap()));
        self.active.push(h);
    }

    fn run(mut self) -> Result<(Vec<ModVector<F>>, GrobStats)> {
        let field = self.ctx.field();
        while let Some(p) = self.pairs.pop_first() {
            self.stats.spairs += 1;
            if self.stats.spairs > self.cfg.max_spairs {
                return Err(Error::BudgetExceeded(Budget::SPairs {
                    limit: self.cfg.max_spairs,
                }));
            }
            self.check_degree(p.degree)?;
            let s = spoly(field, &self.polys[p.i], &self.polys[p.j], &p.lcm);
            self.insert(&s)?;
        }

        let mut basis: Vec<ModVector<F>> =
            self.active.iter().map(|&i| self.polys[i].clone()).collect();
        for k in 0..basis.len() {
            let others: Vec<&ModVector<F>> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g)
                .collect();
            let reduced = reduce(field, &basis[k], &others);
            basis[k] = reduced;
        }
        basis.sort_by(|a, b| b.lead_term().cmp(&a.lead_term()));
        self.stats.bases += 1;
        self.stats.max_basis_size = self.stats.max_basis_size.max(basis.len());
        Ok((basis, self.stats))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` and the base relations.
pub fn groebner_basis<F: Field>(
    ctx: &AffineContext<F>,
    gens: &[ModVector<F>],
    cfg: &GrobConfig,
) -> Result<GrobnerBasis<F>> {
    module_groebner_basis(ctx, 1, gens, cfg)
}

/// Reduced Gröbner basis of the submodule of `P^rank` generated by `gens` and
/// the base relations in every component.
pub fn module_groebner_basis<F: Field>(
    ctx: &AffineContext<F>,
    rank: usize,
    gens: &[ModVector<F>],
    cfg: &GrobConfig,
) -> Result<GrobnerBasis<F>> {
    for g in gens {
        if g.span() > rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: g.span(),
            });
        }
        if let Some((t, _)) = g.terms.first() {
            if t.exp.len() != ctx.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.nvars(),
                    found: t.exp.len(),
                });
            }
        }
    }
    let mut builder = Builder {
        ctx,
        cfg,
        is_ideal: rank == 1,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        stats: GrobStats::default(),
    };
    for comp in 0..rank {
        for rel in ctx.base_relations(comp) {
            builder.insert(&rel)?;
        }
    }
    let mut sorted: Vec<&ModVector<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| a.lead_term().cmp(&b.lead_term()));
    for g in sorted {
        builder.insert(g)?;
    }
    let (elements, mut stats) = builder.run()?;
    let basis = GrobnerBasis {
        ctx: ctx.clone(),
        rank,
        elements,
        stats,
    };
    if cfg.certify {
        if !basis.certify() {
            return Err(Error::CertificateFailed);
        }
        stats.certified += 1;
    }
    Ok(GrobnerBasis { stats, ..basis })
}

/// Generators, modulo the base relations, of the module of Laurent-ring
/// relations `a` with `sum_j a_j vectors[j] = 0` in `L^rank`.
pub fn syzygy_module<F: Field>(
    ctx: &AffineContext<F>,
    rank: usize,
    vectors: &[ModVector<F>],
    cfg: &GrobConfig,
) -> Result<(ModulePresentation<F>, GrobStats)> {
    let s = vectors.len();
    let lifted: Vec<ModVector<F>> = vectors
        .iter()
        .enumerate()
        .map(|(j, v)| ModVector::sum(ctx.field(), [v, &ctx.unit(rank + j)]))
        .collect();
    let gb = module_groebner_basis(ctx, rank + s, &lifted, cfg)?;
    let relations = elimination_part(ctx, &gb, rank, s);
    Ok((
        ModulePresentation {
            free_rank: s,
            relations,
        },
        gb.stats,
    ))
}

/// Elements of `gb` living in components `rank..rank + s`, shifted down, with
/// those vanishing modulo the base relations dropped.
fn elimination_part<F: Field>(
    ctx: &AffineContext<F>,
    gb: &GrobnerBasis<F>,
    rank: usize,
    s: usize,
) -> Vec<ModVector<F>> {
    let relations: Vec<ModVector<F>> = (0..s).flat_map(|c| ctx.base_relations(c)).collect();
    let refs: Vec<&ModVector<F>> = relations.iter().collect();
    gb.elements
        .iter()
        .filter(|g| g.lead_term().is_some_and(|t| t.comp >= rank))
        .map(|g| g.restrict(rank, rank + s))
        .filter(|g| !reduce(ctx.field(), g, &refs).is_zero())
        .collect()
}
