//! Root data for products of `SU(n)`, `Sp(n)` and tori.
//!
//! Character coordinates: `SU(n)` uses `x_1..x_{n-1}` with
//! `x_n = (x_1 ⋯ x_{n-1})^{-1}` eliminated, `Sp(n)` uses `x_1..x_n`, and a torus
//! factor of rank `t` uses `t` invertible coordinates. Weyl elements act on
//! character exponent vectors from the right (`v -> v * M`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::charlat::{restrict_with, Exponent, LaurentPoly, TorusSubgroup};
use crate::error::{Error, Result};
use crate::intlin::{IntMatrix, Sublattice};

/// Default upper bound on the number of Weyl elements we agree to enumerate.
pub const DEFAULT_WEYL_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `SU(n)`, `n >= 2`.
    SpecialUnitary(usize),
    /// `Sp(n)`, `n >= 1`.
    Symplectic(usize),
    /// A torus of the given rank.
    Torus(usize),
}

impl Factor {
    pub fn rank(&self) -> usize {
        match *self {
            Factor::SpecialUnitary(n) => n - 1,
            Factor::Symplectic(n) | Factor::Torus(n) => n,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Factor::SpecialUnitary(n) if n < 2 => {
                Err(Error::InvalidFactor(format!("SU({n}) needs n >= 2")))
            }
            Factor::Symplectic(0) => Err(Error::InvalidFactor("Sp(0) needs n >= 1".into())),
            _ => Ok(()),
        }
    }

    fn weyl_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            Factor::SpecialUnitary(n) => fact(n),
            Factor::Symplectic(n) => fact(n).saturating_mul(1u128 << n.min(127)),
            Factor::Torus(_) => 1,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::SpecialUnitary(n) => write!(f, "SU({n})"),
            Factor::Symplectic(n) => write!(f, "Sp({n})"),
            Factor::Torus(t) => write!(f, "T^{t}"),
        }
    }
}

/// A good compact group given as an ordered product of factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Self {
        GroupSpec { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(Factor::rank).sum()
    }

    /// True when every factor is a torus (trivial Weyl group, no roots).
    pub fn is_torus(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Torus(_)))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An element of the Weyl group, as a unimodular matrix on character exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    matrix: IntMatrix,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: IntMatrix::identity(rank),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: self
                .matrix
                .mul(&other.matrix)
                .expect("Weyl elements of equal rank"),
        }
    }

    pub fn act_on_exponent(&self, e: &[i64]) -> Exponent {
        let n = self.matrix.cols();
        (0..n)
            .map(|j| {
                let mut acc = BigInt::from(0);
                for (i, &a) in e.iter().enumerate() {
                    if a != 0 {
                        acc += &self.matrix[(i, j)] * a;
                    }
                }
                acc.to_i64()
                    .expect("Weyl images of small exponents stay small")
            })
            .collect()
    }

    pub fn act_on_character(&self, chi: &LaurentPoly) -> LaurentPoly {
        chi.map_exponents(chi.ambient_rank(), |e| self.act_on_exponent(e))
    }

    pub fn act_on_lattice(&self, k: &Sublattice) -> Result<Sublattice> {
        k.image(&self.matrix)
    }
}

/// Character data of a maximal torus of a good group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    spec: GroupSpec,
    rank: usize,
    fundamental_chars: Vec<LaurentPoly>,
    laurent_flags: Vec<bool>,
    root_lattice: Sublattice,
    weyl_order: u128,
}

impl RootDatum {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Restrictions to the maximal torus of the ring generators of the representation ring.
    pub fn fundamental_chars(&self) -> &[LaurentPoly] {
        &self.fundamental_chars
    }

    /// `true` for generators that are units of the representation ring.
    pub fn laurent_flags(&self) -> &[bool] {
        &self.laurent_flags
    }

    /// Lattice spanned by the roots; equals the characters trivial on the center.
    pub fn root_lattice(&self) -> &Sublattice {
        &self.root_lattice
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn is_torus(&self) -> bool {
        self.spec.is_torus()
    }

    /// All Weyl elements, refusing groups larger than `cap`.
    pub fn weyl_elements_capped(&self, cap: u64) -> Result<WeylIter> {
        if self.weyl_order > cap as u128 {
            return Err(Error::WeylGroupTooLarge {
                order: self.weyl_order,
                cap,
            });
        }
        let blocks: Vec<(usize, Vec<Vec<Vec<i64>>>)> = self
            .spec
            .factors
            .iter()
            .map(|f| (f.rank(), factor_weyl_matrices(f)))
            .collect();
        Ok(WeylIter {
            rank: self.rank,
            blocks,
            counter: vec![0; self.spec.factors.len()],
            done: false,
        })
    }

    pub fn weyl_elements(&self) -> Result<WeylIter> {
        self.weyl_elements_capped(DEFAULT_WEYL_CAP)
    }
}

/// Builds the root datum of a product of catalogue factors.
pub fn build_root_datum(spec: &GroupSpec) -> Result<RootDatum> {
    for f in &spec.factors {
        f.validate()?;
    }
    let rank = spec.rank();
    let mut chars = Vec::with_capacity(rank);
    let mut flags = Vec::with_capacity(rank);
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut offset = 0;
    for f in &spec.factors {
        let fr = f.rank();
        let weights = factor_weights(f);
        match *f {
            Factor::SpecialUnitary(n) => {
                for k in 1..n {
                    chars.push(elementary_symmetric(&weights, k, rank, offset));
                    flags.push(false);
                }
                for i in 0..n - 1 {
                    // x_i / x_{i+1}
                    let mut v = vec![0i64; rank];
                    for j in 0..fr {
                        v[offset + j] = weights[i][j] - weights[i + 1][j];
                    }
                    roots.push(v);
                }
            }
            Factor::Symplectic(n) => {
                for k in 1..=n {
                    chars.push(elementary_symmetric(&weights, k, rank, offset));
                    flags.push(false);
                }
                for i in 0..n {
                    let mut v = vec![0i64; rank];
                    if i + 1 < n {
                        v[offset + i] = 1;
                        v[offset + i + 1] = -1;
                    } else {
                        v[offset + i] = 2;
                    }
                    roots.push(v);
                }
            }
            Factor::Torus(t) => {
                for i in 0..t {
                    chars.push(LaurentPoly::variable(rank, offset + i));
                    flags.push(true);
                }
            }
        }
        offset += fr;
    }
    let root_lattice = Sublattice::from_generators(&IntMatrix::from_rows(rank, &roots)?);
    let weyl_order = spec
        .factors
        .iter()
        .fold(1u128, |acc, f| acc.saturating_mul(f.weyl_order()));
    Ok(RootDatum {
        spec: spec.clone(),
        rank,
        fundamental_chars: chars,
        laurent_flags: flags,
        root_lattice,
        weyl_order,
    })
}

/// Weights of the defining representation, in the factor's own coordinates.
fn factor_weights(f: &Factor) -> Vec<Vec<i64>> {
    match *f {
        Factor::SpecialUnitary(n) => {
            let mut w: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0; n - 1];
                    v[i] = 1;
                    v
                })
                .collect();
            w.push(vec![-1; n - 1]);
            w
        }
        Factor::Symplectic(n) => (0..n)
            .flat_map(|i| {
                let mut plus = vec![0; n];
                plus[i] = 1;
                let mut minus = vec![0; n];
                minus[i] = -1;
                [plus, minus]
            })
            .collect(),
        Factor::Torus(t) => (0..t)
            .map(|i| {
                let mut v = vec![0; t];
                v[i] = 1;
                v
            })
            .collect(),
    }
}

/// `e_k` of the monomials with the given exponents, embedded at `offset`.
fn elementary_symmetric(weights: &[Vec<i64>], k: usize, rank: usize, offset: usize) -> LaurentPoly {
    let mut terms = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    subsets(weights.len(), k, 0, &mut chosen, &mut |subset| {
        let mut e = vec![0i64; rank];
        for &i in subset {
            for (j, &a) in weights[i].iter().enumerate() {
                e[offset + j] += a;
            }
        }
        terms.push((e, 1));
    });
    LaurentPoly::from_terms(rank, terms)
}

fn subsets(
    n: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        subsets(n, k, i + 1, chosen, f);
        chosen.pop();
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Weyl group of one factor as small matrices (row `i` is the image of `x_i`).
fn factor_weyl_matrices(f: &Factor) -> Vec<Vec<Vec<i64>>> {
    match *f {
        Factor::SpecialUnitary(n) => {
            let weights = factor_weights(f);
            permutations(n)
                .into_iter()
                .map(|sigma| (0..n - 1).map(|i| weights[sigma[i]].clone()).collect())
                .collect()
        }
        Factor::Symplectic(n) => {
            let mut out = Vec::new();
            for sigma in permutations(n) {
                for signs in 0..(1u64 << n) {
                    let m = (0..n)
                        .map(|i| {
                            let mut row = vec![0; n];
                            row[sigma[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
                            row
                        })
                        .collect();
                    out.push(m);
                }
            }
            out
        }
        Factor::Torus(t) => vec![(0..t)
            .map(|i| {
                let mut row = vec![0; t];
                row[i] = 1;
                row
            })
            .collect()],
    }
}

/// Iterator over the product of the factor Weyl groups, as block-diagonal matrices.
pub struct WeylIter {
    rank: usize,
    blocks: Vec<(usize, Vec<Vec<Vec<i64>>>)>,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for WeylIter {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        if self.done {
            return None;
        }
        let mut m = IntMatrix::zeros(self.rank, self.rank);
        let mut offset = 0;
        for ((size, mats), &idx) in self.blocks.iter().zip(&self.counter) {
            for (i, row) in mats[idx].iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    m[(offset + i, offset + j)] = BigInt::from(a);
                }
            }
            offset += size;
        }
        // Advance the mixed-radix counter, last factor fastest.
        self.done = true;
        for pos in (0..self.counter.len()).rev() {
            self.counter[pos] += 1;
            if self.counter[pos] < self.blocks[pos].1.len() {
                self.done = false;
                break;
            }
            self.counter[pos] = 0;
        }
        Some(WeylElement { matrix: m })
    }
}

pub fn act_on_subgroup(w: &WeylElement, s: &TorusSubgroup) -> Result<TorusSubgroup> {
    if w.matrix.rows() != s.ambient_rank() {
        return Err(Error::AmbientRankMismatch {
            left: w.matrix.rows(),
            right: s.ambient_rank(),
        });
    }
    Ok(TorusSubgroup::from_kernel(w.act_on_lattice(s.kernel())?))
}

/// Restrictions of the fundamental characters to a subtorus, in generator order.
pub fn fundamental_restrictions(datum: &RootDatum, s: &TorusSubgroup) -> Result<Vec<LaurentPoly>> {
    if s.ambient_rank() != datum.rank {
        return Err(Error::AmbientRankMismatch {
            left: datum.rank,
            right: s.ambient_rank(),
        });
    }
    let split = s.splitting()?;
    datum
        .fundamental_chars
        .iter()
        .map(|chi| restrict_with(&split, chi))
        .collect()
}
