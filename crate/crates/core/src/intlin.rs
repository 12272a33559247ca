//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Matrices act on row vectors throughout: a sublattice of `Z^r` is the row
//! span of its basis, and a linear map is applied as `v * M`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &owned).expect("ragged matrix literal")
    }

    pub fn from_diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// The submatrix made of the listed rows.
    pub fn select_rows(&self, which: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(which.len() * self.cols);
        for &i in which {
            entries.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: which.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Columns `start..end` of every row.
    pub fn select_cols(&self, start: usize, end: usize) -> IntMatrix {
        let mut m = Self::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                m[(i, j - start)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.abs().is_one())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        hermite_normal_form(self).0.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (p*a + q*b, r*a + s*b).
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            let y = self[(b, j)].clone();
            self[(a, j)] = p * &x + q * &y;
            self[(b, j)] = r * &x + s * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form with transform.
///
/// Returns `(H, U)` with `U * A = [H; 0]`, `U` unimodular, and `H` the
/// nonzero rows in echelon form: positive pivots in strictly increasing
/// columns, entries above each pivot reduced into `[0, pivot)`. The rows of `U`
/// past `H.rows()` form a basis of the left kernel of `A`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, rank) = hnf_full(a);
    (h.select_rows(&(0..rank).collect::<Vec<_>>()), u)
}

fn hnf_full(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        // Fold every entry below into the pivot position with 2x2 Bezout moves.
        for i in pivot_row + 1..a.rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let x = h[(pivot_row, col)].clone();
            let y = h[(i, col)].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [[s, t], [-y/g, x/g]] has determinant 1.
            let (p, q, r, ss) = (s, t, -yg, xg);
            h.combine_rows(pivot_row, i, &p, &q, &r, &ss);
            u.combine_rows(pivot_row, i, &p, &q, &r, &ss);
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(i, pivot_row, &f);
                u.add_row_multiple(i, pivot_row, &f);
            }
        }
        pivot_row += 1;
    }
    (h, u, pivot_row)
}

/// Smith normal form result: `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form with transforms.
///
/// Pivot on the smallest nonzero entry of the remaining block, sweep its row
/// and column by Euclidean division, and repeat until the pivot divides the
/// whole block.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_row_multiple(i, t, &f);
                    u.add_row_multiple(i, t, &f);
                }
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_col_multiple(j, t, &f);
                    v.add_col_multiple(j, t, &f);
                }
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| &x < b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis (in Hermite form) of `{x : x * A = 0}`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let (_, u, rank) = hnf_full(a);
    let kernel = u.select_rows(&(rank..a.rows).collect::<Vec<_>>());
    hermite_normal_form(&kernel).0
}

/// Finitely generated abelian group `Z^free_rank + sum Z/d_i`, `d_1 | d_2 | ...`, each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinAbPresentation {
    pub fn trivial() -> Self {
        FinAbPresentation {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbPresentation {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FinAbPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A subgroup of `Z^r`, stored by its canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// Row span of `generators` (which need not be independent).
    pub fn from_generators(generators: &IntMatrix) -> Self {
        Sublattice {
            ambient_rank: generators.cols,
            basis: hermite_normal_form(generators).0,
        }
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = generators.iter().map(|r| r.to_vec()).collect();
        Self::from_generators(
            &IntMatrix::from_rows(ambient_rank, &owned).expect("ragged generators"),
        )
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::zeros(0, ambient_rank),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    fn check_ambient(&self, other: &Sublattice) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientRankMismatch {
                left: self.ambient_rank,
                right: other.ambient_rank,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_ambient(other)?;
        Ok(Self::from_generators(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the integer left kernel of the stacked bases.
    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let kernel = left_kernel(&stacked);
        let coeffs = kernel.select_cols(0, self.rank());
        Ok(Self::from_generators(&coeffs.mul(&self.basis)?))
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        // Reduce against the echelon basis.
        let mut w = v.to_vec();
        let mut col = 0;
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            while row[col].is_zero() {
                if !w[col].is_zero() {
                    return false;
                }
                col += 1;
            }
            let (q, r) = w[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj -= &q * rj;
            }
            col += 1;
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Sublattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && (0..other.rank()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Image under `v -> v * m` for a square matrix `m`.
    pub fn image(&self, m: &IntMatrix) -> Result<Sublattice> {
        if m.rows != self.ambient_rank || m.cols != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: m.rows,
            });
        }
        Ok(Self::from_generators(&self.basis.mul(m)?))
    }

    /// `Q L ∩ Z^r`, the smallest direct summand containing this lattice.
    pub fn saturation(&self) -> Sublattice {
        let annihilator = left_kernel(&self.basis.transpose());
        Self::from_generators(&left_kernel(&annihilator.transpose()))
    }

    pub fn quotient_invariants(&self) -> FinAbPresentation {
        let factors = smith_normal_form(&self.basis).invariant_factors();
        FinAbPresentation {
            free_rank: self.ambient_rank - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// True iff `Z^r / L` is torsion-free.
    pub fn is_direct_summand(&self) -> bool {
        self.quotient_invariants().torsion.is_empty()
    }

    pub fn basis_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.basis
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?} in Z^{}", self.basis, self.ambient_rank)
    }
}

pub fn lattice_sum(a: &Sublattice, b: &Sublattice) -> Result<Sublattice> {
    a.sum(b)
}

pub fn lattice_intersect(a: &Sublattice, b: &Sublattice) -> Result<Sublattice> {
    a.intersect(b)
}

/// Invariants of `Z^r / k`.
pub fn quotient_invariants(r: usize, k: &Sublattice) -> Result<FinAbPresentation> {
    if k.ambient_rank != r {
        return Err(Error::AmbientRankMismatch {
            left: r,
            right: k.ambient_rank,
        });
    }
    Ok(k.quotient_invariants())
}

pub fn is_direct_summand(k: &Sublattice) -> bool {
    k.is_direct_summand()
}
