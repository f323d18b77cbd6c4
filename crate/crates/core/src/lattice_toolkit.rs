//! Integer linear algebra over `Z`: Smith normal form, quotient-group
//! presentations, and membership tests in sublattices (coroot lattices,
//! images of `σ − 1`, and the like).
//!
//! All arithmetic is arbitrary-precision; there are no modular shortcuts.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::root_datum::Cocharacter;

/// Dense row-major matrix over `Z` with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        BigMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BigMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Build from integer columns (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Cocharacter]) -> Self {
        let mut m = BigMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = BigMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = BigMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &x[j]).sum())
            .collect()
    }

    pub fn apply_i64(&self, x: &[i64]) -> Vec<BigInt> {
        let xs: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.apply(&xs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[a] -= q * row[b]`
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.at(b, j);
            *self.at_mut(a, j) -= delta;
        }
    }

    /// `col[a] -= q * col[b]`
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.at(i, b);
            *self.at_mut(i, a) -= delta;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.at(a, j).clone();
            *self.at_mut(a, j) = v;
        }
    }

    /// Exact inverse of a unimodular matrix (integer Gauss–Jordan with
    /// pivoting on ±1 entries produced by Smith reduction of `[A | I]`).
    /// Panics if the matrix is not square or not invertible over `Z`.
    pub fn inverse_unimodular(&self) -> BigMatrix {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        // Invert via the Smith machinery: U A V = I forces A^{-1} = V U.
        let snf = smith_normal_form(self);
        for d in &snf.diag {
            assert!(d.is_one(), "matrix is not unimodular");
        }
        snf.v.mul(&snf.u)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }
}

/// Decomposition `U · A · V = D` with `U`, `V` unimodular and `D` diagonal
/// with nonnegative entries satisfying `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: BigMatrix,
    pub v: BigMatrix,
    /// Diagonal entries of `D`, length `min(rows, cols)`; zeros trail.
    pub diag: Vec<BigInt>,
}

/// Classical Smith normal form by pivoting on least nonzero entries.
pub fn smith_normal_form(a: &BigMatrix) -> SmithNormalForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = BigMatrix::identity(rows);
    let mut v = BigMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        // Locate a pivot of least absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.at(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if d.at(pi, pj).abs() <= d.at(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear the pivot column, then the pivot row, re-pivoting on any
            // nonzero remainder (strictly decreases |pivot|, so terminates).
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if d.at(i, t).is_zero() {
                        continue;
                    }
                    let q = d.at(i, t).div_floor(d.at(t, t));
                    d.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !d.at(i, t).is_zero() {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if d.at(t, j).is_zero() {
                        continue;
                    }
                    let q = d.at(t, j).div_floor(d.at(t, t));
                    d.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !d.at(t, j).is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }

            // Enforce the divisibility chain: fold in the row of any trailing
            // entry the pivot misses and reduce again. Each pass strictly
            // shrinks |pivot| (it drops to a proper divisor), so this stops.
            let mut fixed = false;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(d.at(i, j) % d.at(t, t)).is_zero() {
                        // row[t] += row[i]; pivot column entries are already
                        // zero, so the pivot itself is untouched.
                        let minus_one = -BigInt::one();
                        d.row_sub(t, i, &minus_one);
                        u.row_sub(t, i, &minus_one);
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }

        if d.at(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let diag = (0..steps).map(|t| d.at(t, t).clone()).collect();
    SmithNormalForm { u, v, diag }
}

/// Canonical coordinates of a lattice vector in a finitely generated abelian
/// quotient: torsion coordinates first (each reduced into `[0, d_i)`), then
/// free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuotientClass {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for t in &self.torsion {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        for x in &self.free {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// Presentation of `Z^rank / ⟨generators⟩` as `⊕ Z/d_i ⊕ Z^free_rank`,
/// with an explicit projection (and a section used to lift classes back).
#[derive(Clone, Debug)]
pub struct FiniteAbelianPresentation {
    rank: usize,
    torsion: Vec<BigInt>,
    free_rank: usize,
    /// Rows: torsion coordinates first, then free coordinates.
    projection: BigMatrix,
    /// Columns matching `projection` rows; `class_of(section · c) = c`.
    section: BigMatrix,
}

/// Error from lattice operations; currently only coordinate overflow when
/// lifting a quotient class back into `Z^rank` as machine integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftOverflow {
    pub coordinate: String,
}

impl fmt::Display for LiftOverflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quotient-class lift exceeds i64 range at coordinate {}", self.coordinate)
    }
}

impl core::error::Error for LiftOverflow {}

/// Present `Z^rank / ⟨generators⟩` via Smith normal form.
pub fn quotient(rank: usize, generators: &[Cocharacter]) -> FiniteAbelianPresentation {
    let a = BigMatrix::from_columns(rank, generators);
    let snf = smith_normal_form(&a);
    let u_inv = snf.u.inverse_unimodular();

    // Row i of U carries coordinate i of y = Ux; d_i = 1 rows die in the
    // quotient, d_i > 1 rows are torsion, d_i = 0 / absent rows are free.
    let mut torsion_rows: Vec<usize> = Vec::new();
    let mut free_rows: Vec<usize> = Vec::new();
    for i in 0..rank {
        match snf.diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if d.is_zero() => free_rows.push(i),
            Some(_) => torsion_rows.push(i),
            None => free_rows.push(i),
        }
    }

    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| snf.diag[i].clone()).collect();
    let picked: Vec<usize> = torsion_rows.iter().chain(free_rows.iter()).copied().collect();

    let mut projection = BigMatrix::zero(picked.len(), rank);
    for (r, &i) in picked.iter().enumerate() {
        for j in 0..rank {
            *projection.at_mut(r, j) = snf.u.at(i, j).clone();
        }
    }
    let mut section = BigMatrix::zero(rank, picked.len());
    for (c, &i) in picked.iter().enumerate() {
        for j in 0..rank {
            *section.at_mut(j, c) = u_inv.at(j, i).clone();
        }
    }

    FiniteAbelianPresentation {
        rank,
        free_rank: free_rows.len(),
        torsion,
        projection,
        section,
    }
}

impl FiniteAbelianPresentation {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `≥ 2`, in divisibility order.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn projection(&self) -> &BigMatrix {
        &self.projection
    }

    /// Canonical coordinates of `x` in the quotient.
    pub fn class_of(&self, x: &[i64]) -> QuotientClass {
        let y = self.projection.apply_i64(x);
        self.canonicalize(y)
    }

    pub fn class_of_big(&self, x: &[BigInt]) -> QuotientClass {
        let y = self.projection.apply(x);
        self.canonicalize(y)
    }

    fn canonicalize(&self, y: Vec<BigInt>) -> QuotientClass {
        let t = self.torsion.len();
        let torsion = y[..t]
            .iter()
            .zip(&self.torsion)
            .map(|(v, d)| v.mod_floor(d))
            .collect();
        let free = y[t..].to_vec();
        QuotientClass { torsion, free }
    }

    /// A lattice vector mapping to the given canonical class.
    pub fn lift(&self, class: &QuotientClass) -> Result<Cocharacter, LiftOverflow> {
        assert_eq!(class.torsion.len(), self.torsion.len(), "class shape mismatch");
        assert_eq!(class.free.len(), self.free_rank, "class shape mismatch");
        let coords: Vec<BigInt> =
            class.torsion.iter().chain(class.free.iter()).cloned().collect();
        let x = self.section.apply(&coords);
        x.iter()
            .map(|v| {
                i64::try_from(v).map_err(|_| LiftOverflow { coordinate: alloc::format!("{v}") })
            })
            .collect()
    }
}

/// Solve `A·c = target` over the rationals, where the columns of `A` are
/// `generators`. Returns one exact solution (the unique one when the
/// generators are linearly independent), or `None` if the target lies
/// outside their span.
pub fn solve_in_span_q(
    rank: usize,
    generators: &[Cocharacter],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    assert_eq!(target.len(), rank, "vector length mismatch");
    let a = BigMatrix::from_columns(rank, generators);
    let snf = smith_normal_form(&a);
    let k = generators.len();
    // z = U · target, exactly.
    let z: Vec<BigRational> = (0..rank)
        .map(|i| {
            let mut acc = BigRational::zero();
            for j in 0..rank {
                acc += BigRational::from(snf.u.at(i, j).clone()) * &target[j];
            }
            acc
        })
        .collect();
    let mut w = vec![BigRational::zero(); k];
    for i in 0..rank {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !z[i].is_zero() {
                return None;
            }
        } else {
            w[i] = &z[i] / BigRational::from(d);
        }
    }
    let c: Vec<BigRational> = (0..k)
        .map(|i| {
            let mut acc = BigRational::zero();
            for j in 0..k {
                acc += BigRational::from(snf.v.at(i, j).clone()) * &w[j];
            }
            acc
        })
        .collect();
    Some(c)
}

/// One integer solution of `A·x = target` for an arbitrary integer matrix,
/// or `None` when no integral solution exists. The solution is verified by
/// re-multiplication before it is returned.
pub fn solve_integer(a: &BigMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(target.len(), a.rows(), "vector length mismatch");
    let snf = smith_normal_form(a);
    let z = snf.u.apply(target);
    let n = a.cols();
    let mut w = vec![BigInt::zero(); n];
    for (i, zi) in z.iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !zi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = zi.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        }
    }
    let x = snf.v.apply(&w);
    (a.apply(&x).as_slice() == target).then_some(x)
}

/// Decide whether `x` is an integer combination of `generators`; on success
/// return the coefficients (the certificate re-multiplies to `x` exactly).
pub fn in_sublattice(rank: usize, generators: &[Cocharacter], x: &[i64]) -> Option<Vec<BigInt>> {
    assert_eq!(x.len(), rank, "vector length mismatch");
    let a = BigMatrix::from_columns(rank, generators);
    let snf = smith_normal_form(&a);
    let z = snf.u.apply_i64(x);
    let k = generators.len();
    let mut w = vec![BigInt::zero(); k];
    for i in 0..rank {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !z[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = z[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        }
    }
    let c = snf.v.apply(&w);
    // Safety net: the certificate must reproduce x.
    let back = a.apply(&c);
    let ok = back.iter().zip(x).all(|(b, &xi)| *b == BigInt::from(xi));
    ok.then_some(c)
}
