//! Gröbner bases for submodules of free modules over Laurent polynomial rings.
//!
//! `Q[x_1^±, ..., x_r^±]` (or its mod-`p` analogue) is encoded as the quotient
//! of the polynomial ring in `u_1, v_1, ..., u_r, v_r` by the relations
//! `u_i v_i - 1`, which are adjoined to every computation. Submodules of a free
//! module use a position-over-term order in which lower components are larger,
//! so an ideal is just the rank-one case.

mod engine;
mod field;
mod koszul;

use std::collections::BTreeMap;
use std::fmt;

use crate::charlat::LaurentPoly;
use crate::error::{Error, Result};

pub use engine::{
    groebner_basis, module_groebner_basis, syzygy_module, GrobConfig, GrobStats, GrobnerBasis,
};
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use koszul::{koszul_homology, HomologyDescriptor, KoszulHomology};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    /// Sort key of a monomial, without the position entry. Linear in the
    /// exponent, so multiplying terms adds keys.
    fn key(self, exp: &[u32]) -> Vec<i64> {
        let deg: i64 = exp.iter().map(|&e| e as i64).sum();
        match self {
            MonomialOrder::Lex => exp.iter().map(|&e| e as i64).collect(),
            MonomialOrder::DegLex => std::iter::once(deg)
                .chain(exp.iter().map(|&e| e as i64))
                .collect(),
            MonomialOrder::DegRevLex => std::iter::once(deg)
                .chain(exp.iter().rev().map(|&e| -(e as i64)))
                .collect(),
        }
    }
}

/// A monomial multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    exp: Box<[u32]>,
    key: Box<[i64]>,
}

impl Monomial {
    pub fn exponent(&self) -> &[u32] {
        &self.exp
    }
}

/// A monomial in a given component of a free module. Ordered by the term order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    // key[0] is minus the component; the rest is the monomial key.
    key: Box<[i64]>,
    comp: usize,
    exp: Box<[u32]>,
}

impl Term {
    pub fn component(&self) -> usize {
        self.comp
    }

    pub fn exponent(&self) -> &[u32] {
        &self.exp
    }

    pub fn degree(&self) -> u32 {
        self.exp.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exp.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.comp == other.comp && self.exp.iter().zip(other.exp.iter()).all(|(a, b)| a <= b)
    }

    fn mul(&self, m: &Monomial) -> Term {
        let mut key = self.key.clone();
        for (k, d) in key[1..].iter_mut().zip(m.key.iter()) {
            *k += d;
        }
        let exp = self
            .exp
            .iter()
            .zip(m.exp.iter())
            .map(|(a, b)| a + b)
            .collect();
        Term {
            key,
            comp: self.comp,
            exp,
        }
    }

    /// `self / divisor`, assuming `divisor` divides `self`.
    fn quotient(&self, divisor: &Term) -> Monomial {
        Monomial {
            exp: self
                .exp
                .iter()
                .zip(divisor.exp.iter())
                .map(|(a, b)| a - b)
                .collect(),
            key: self.key[1..]
                .iter()
                .zip(divisor.key[1..].iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Least common multiple of two terms in the same component.
    fn lcm(&self, other: &Term, order: MonomialOrder) -> Term {
        debug_assert_eq!(self.comp, other.comp);
        let exp: Vec<u32> = self
            .exp
            .iter()
            .zip(other.exp.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        make_term(order, self.comp, exp)
    }

    fn coprime(&self, other: &Term) -> bool {
        self.exp
            .iter()
            .zip(other.exp.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    fn shifted(&self, delta: isize) -> Term {
        let comp = (self.comp as isize + delta) as usize;
        let mut key = self.key.clone();
        key[0] = -(comp as i64);
        Term {
            key,
            comp,
            exp: self.exp.clone(),
        }
    }
}

fn make_term(order: MonomialOrder, comp: usize, exp: Vec<u32>) -> Term {
    let mut key = vec![-(comp as i64)];
    key.extend(order.key(&exp));
    Term {
        key: key.into(),
        comp,
        exp: exp.into(),
    }
}

/// An element of a free module over the affine ring, terms in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVector<F: Field> {
    terms: Vec<(Term, F::Elem)>,
}

/// A rank-one [`ModVector`].
pub type Polynomial<F> = ModVector<F>;

impl<F: Field> ModVector<F> {
    pub fn zero() -> Self {
        ModVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Term, F::Elem)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(Term, F::Elem)> {
        self.terms.first()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first().map(|(t, _)| t)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(t, _)| t.degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest component index used, plus one.
    pub fn span(&self) -> usize {
        self.terms
            .iter()
            .map(|(t, _)| t.comp + 1)
            .max()
            .unwrap_or(0)
    }

    fn from_map(map: BTreeMap<Term, F::Elem>) -> Self {
        ModVector {
            terms: map.into_iter().rev().collect(),
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        ModVector {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn sum<'a, I>(field: &F, items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        F: 'a,
    {
        let mut acc = BTreeMap::new();
        for v in items {
            for (t, c) in &v.terms {
                add_into(field, &mut acc, t.clone(), c.clone());
            }
        }
        Self::from_map(acc)
    }

    /// `p * self` for a rank-one `p`.
    pub fn mul_poly(&self, field: &F, p: &Polynomial<F>) -> Self {
        let mut acc = BTreeMap::new();
        for (pt, pc) in &p.terms {
            let m = Monomial {
                exp: pt.exp.clone(),
                key: pt.key[1..].into(),
            };
            for (t, c) in &self.terms {
                add_into(field, &mut acc, t.mul(&m), field.mul(c, pc));
            }
        }
        Self::from_map(acc)
    }

    /// Moves every term `delta` components up (or down, if negative).
    pub fn shift(&self, delta: isize) -> Self {
        ModVector {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.shifted(delta), c.clone()))
                .collect(),
        }
    }

    /// Terms with component in `start..end`, renumbered from zero.
    pub fn restrict(&self, start: usize, end: usize) -> Self {
        ModVector {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| (start..end).contains(&t.comp))
                .map(|(t, c)| (t.shifted(-(start as isize)), c.clone()))
                .collect(),
        }
    }

    fn monic(self, field: &F) -> Self {
        match self.lead() {
            Some((_, c)) if !field.is_one(c) => {
                let inv = field.inv(c);
                self.scale(field, &inv)
            }
            _ => self,
        }
    }
}

fn add_into<F: Field>(field: &F, acc: &mut BTreeMap<Term, F::Elem>, t: Term, c: F::Elem) {
    use std::collections::btree_map::Entry;
    match acc.entry(t) {
        Entry::Vacant(v) => {
            if !field.is_zero(&c) {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &c);
            if field.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// The affine encoding of a Laurent ring in `r` variables over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineContext<F: Field> {
    field: F,
    laurent_rank: usize,
    order: MonomialOrder,
}

impl<F: Field> AffineContext<F> {
    pub fn new(field: F, laurent_rank: usize) -> Self {
        AffineContext {
            field,
            laurent_rank,
            order: MonomialOrder::default(),
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn laurent_rank(&self) -> usize {
        self.laurent_rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// `u_i` is variable `2i`, `v_i` is `2i + 1`.
    pub fn nvars(&self) -> usize {
        2 * self.laurent_rank
    }

    pub fn term(&self, comp: usize, exp: Vec<u32>) -> Result<Term> {
        if exp.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: exp.len(),
            });
        }
        Ok(make_term(self.order, comp, exp))
    }

    /// Builds a module element from `(component, exponent, coefficient)` triples.
    pub fn vector<I>(&self, terms: I) -> Result<ModVector<F>>
    where
        I: IntoIterator<Item = (usize, Vec<u32>, F::Elem)>,
    {
        let mut acc = BTreeMap::new();
        for (comp, exp, c) in terms {
            add_into(&self.field, &mut acc, self.term(comp, exp)?, c);
        }
        Ok(ModVector::from_map(acc))
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.vector([(0, vec![0; self.nvars()], c)])
            .expect("constant term has the right length")
    }

    /// The unit vector `e_comp`.
    pub fn unit(&self, comp: usize) -> ModVector<F> {
        self.constant(self.field.one()).shift(comp as isize)
    }

    /// `(g_0, ..., g_{k-1})` from rank-one polynomials.
    pub fn from_components(&self, comps: &[Polynomial<F>]) -> ModVector<F> {
        let mut terms = Vec::new();
        for (k, p) in comps.iter().enumerate() {
            terms.extend(p.shift(k as isize).terms);
        }
        ModVector { terms }
    }

    /// The relations `(u_i v_i - 1) e_comp`.
    pub fn base_relations(&self, comp: usize) -> Vec<ModVector<F>> {
        (0..self.laurent_rank)
            .map(|i| {
                let mut e = vec![0; self.nvars()];
                e[2 * i] = 1;
                e[2 * i + 1] = 1;
                let one = self.field.one();
                self.vector([
                    (comp, e, one),
                    (
                        comp,
                        vec![0; self.nvars()],
                        self.field.neg(&self.field.one()),
                    ),
                ])
                .expect("base relation has the right length")
            })
            .collect()
    }

    pub fn laurent_to_affine(&self, f: &LaurentPoly) -> Result<Polynomial<F>> {
        if f.ambient_rank() != self.laurent_rank {
            return Err(Error::AmbientRankMismatch {
                left: self.laurent_rank,
                right: f.ambient_rank(),
            });
        }
        let mut terms = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            let mut exp = vec![0u32; self.nvars()];
            for (i, &a) in e.iter().enumerate() {
                let m = u32::try_from(a.unsigned_abs()).map_err(|_| Error::ExponentOverflow)?;
                exp[2 * i + usize::from(a < 0)] = m;
            }
            terms.push((0, exp, self.field.embed_rational(c)?));
        }
        self.vector(terms)
    }

    /// Decodes the first component back into the Laurent ring.
    pub fn affine_to_laurent(&self, p: &Polynomial<F>) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.laurent_rank);
        for (t, c) in p.terms.iter().filter(|(t, _)| t.comp == 0) {
            let e = (0..self.laurent_rank)
                .map(|i| t.exp[2 * i] as i64 - t.exp[2 * i + 1] as i64)
                .collect();
            out.add_term(e, self.field.to_rational(c));
        }
        out
    }

    fn var_name(&self, j: usize) -> String {
        let letter = if j.is_multiple_of(2) { 'u' } else { 'v' };
        if self.laurent_rank == 1 {
            letter.to_string()
        } else {
            format!("{letter}{}", j / 2 + 1)
        }
    }

    fn monomial_string(&self, exp: &[u32]) -> String {
        exp.iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &a)| {
                if a == 1 {
                    self.var_name(j)
                } else {
                    format!("{}^{a}", self.var_name(j))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders a polynomial, or a module element as `[p_0, ..., p_{rank-1}]`.
    pub fn display(&self, v: &ModVector<F>, rank: usize) -> String {
        let poly = |comp: usize| {
            let mut s = String::new();
            for (t, c) in v.terms.iter().filter(|(t, _)| t.comp == comp) {
                let (neg, abs) = self.field.split_sign(c);
                let mono = self.monomial_string(&t.exp);
                if s.is_empty() {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                if mono.is_empty() {
                    s.push_str(&abs.to_string());
                } else {
                    if !self.field.is_one(&abs) {
                        s.push_str(&format!("{abs}*"));
                    }
                    s.push_str(&mono);
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        };
        if rank == 1 {
            poly(0)
        } else {
            format!("[{}]", (0..rank).map(poly).collect::<Vec<_>>().join(", "))
        }
    }
}

/// Generators of a submodule of a free module of rank `free_rank`; the module
/// presented is the cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation<F: Field> {
    pub free_rank: usize,
    pub relations: Vec<ModVector<F>>,
}

/// Number of monomials outside the monomial submodule generated by `leads`
/// in a free module of rank `rank`; `None` when infinite.
pub fn standard_monomial_count(leads: &[&Term], rank: usize, nvars: usize) -> Option<u64> {
    let mut total = 0u64;
    for comp in 0..rank {
        let gens: Vec<Vec<u32>> = leads
            .iter()
            .filter(|t| t.comp == comp)
            .map(|t| t.exp.to_vec())
            .collect();
        total = total.checked_add(count_standard(&gens, nvars)?)?;
    }
    Some(total)
}

fn count_standard(gens: &[Vec<u32>], n: usize) -> Option<u64> {
    if gens.iter().any(|g| g[..n].iter().all(|&e| e == 0)) {
        return Some(0);
    }
    if n == 0 {
        return Some(1);
    }
    let v = n - 1;
    let bound = gens
        .iter()
        .filter(|g| g[..v].iter().all(|&e| e == 0))
        .map(|g| g[v])
        .min()?;
    let mut total = 0u64;
    for k in 0..bound {
        let slice: Vec<Vec<u32>> = gens.iter().filter(|g| g[v] <= k).cloned().collect();
        total = total.checked_add(count_standard(&slice, v)?)?;
    }
    Some(total)
}

impl<F: Field> fmt::Display for ModulePresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coker of {} relations on rank {}",
            self.relations.len(),
            self.free_rank
        )
    }
}
