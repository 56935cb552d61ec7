//! Exact dense and sparse linear algebra over the rationals.
//!
//! Elimination runs on integer rows (each rational row is scaled by the lcm of
//! its denominators), combining rows fraction-free and dividing out the row
//! content after every step. Pivoting is deterministic: rows are inserted in
//! order and always reduced on their leading column, so the resulting reduced
//! row echelon form (and therefore every nullspace basis) is canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form: lowest terms, positive denominator, `"p"` when q = 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(c, x)| (c, x.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[c] = Rational::one();
            cols.push(in_image(self, &e)?);
        }
        Some(Matrix::from_fn(n, n, |r, c| cols[c][r].clone()))
    }
}

/// Row-sparse rational matrix; each row holds `(column, value)` pairs sorted by
/// column with no explicit zeros. Used for the large, very sparse cochain
/// differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds from unsorted rows that may repeat a column; repeated entries are summed.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let data = rows.into_iter().map(normalize_row).collect::<Vec<_>>();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row {
                data[*c].push((r, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(other, &-Rational::one())
    }

    /// `self + s * other`.
    pub fn combine(&self, other: &SparseMatrix, s: &Rational) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, x)| (*c, x * s)));
                normalize_row(row)
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, x)| (*c, x * s)).collect())
                .collect(),
        }
    }

    /// Places `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(c, x)| (c + offset, x.clone())).collect());
            }
            offset += b.cols;
        }
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Assembles a block matrix; `blocks[i][j]` of `None` is a zero block of
    /// shape `row_dims[i] x col_dims[j]`.
    pub fn from_blocks(
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[Vec<Option<SparseMatrix>>],
    ) -> Result<SparseMatrix> {
        let cols: usize = col_dims.iter().sum();
        let mut data = Vec::with_capacity(row_dims.iter().sum());
        for (i, &rd) in row_dims.iter().enumerate() {
            let mut rows = vec![Vec::new(); rd];
            let mut offset = 0;
            for (j, &cd) in col_dims.iter().enumerate() {
                if let Some(b) = &blocks[i][j] {
                    if b.rows != rd || b.cols != cd {
                        return Err(Error::ShapeMismatch(format!(
                            "block ({i},{j}) is {}x{}, expected {rd}x{cd}",
                            b.rows, b.cols
                        )));
                    }
                    for (r, row) in b.data.iter().enumerate() {
                        rows[r].extend(row.iter().map(|(c, x)| (c + offset, x.clone())));
                    }
                }
                offset += cd;
            }
            data.extend(rows);
        }
        Ok(SparseMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }
}

fn normalize_row(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    for (c, x) in row {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

// ---------------------------------------------------------------------------
// Fraction-free elimination on integer rows.

type IntRow = Vec<(usize, BigInt)>;

fn integer_row(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides out the content and makes the leading coefficient positive.
fn make_primitive(row: &mut IntRow) {
    let Some((_, lead)) = row.first() else { return };
    let mut g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Returns `a * row - b * pivot` where the scalars kill `row`'s entry at `col`.
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let p = &pivot.iter().find(|(c, _)| *c == col).expect("pivot column").1;
    let r = match row.iter().find(|(c, _)| *c == col) {
        Some((_, r)) => r,
        None => return row.clone(),
    };
    let g = p.gcd(r);
    let a = p / &g;
    let b = r / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, v) = if take_row {
            let v = &a * &row[i].1;
            i += 1;
            (row[i - 1].0, v)
        } else if take_piv {
            let v = -(&b * &pivot[j].1);
            j += 1;
            (pivot[j - 1].0, v)
        } else {
            let v = &a * &row[i].1 - &b * &pivot[j].1;
            i += 1;
            j += 1;
            (row[i - 1].0, v)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    make_primitive(&mut out);
    out
}

/// Incrementally built row echelon basis keyed by leading column.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p, lead),
                None => break,
            }
        }
        row
    }

    /// Reduces and stores `row`; returns whether it was independent.
    fn insert(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitutes into reduced row echelon form with unit pivots.
    fn into_rref(mut self) -> BTreeMap<usize, Vec<(usize, Rational)>> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let pivot = self.pivots[&c].clone();
            for (_, row) in self.pivots.range_mut(..c) {
                if row.iter().any(|(rc, _)| *rc == c) {
                    *row = eliminate(row, &pivot, c);
                }
            }
        }
        self.pivots
            .into_iter()
            .map(|(c, row)| {
                let lead = Rational::from_integer(row[0].1.clone());
                (c, row.into_iter().map(|(rc, x)| (rc, Rational::from_integer(x) / &lead)).collect())
            })
            .collect()
    }
}

fn echelon_of(rows: impl Iterator<Item = IntRow>) -> Echelon {
    let mut e = Echelon::default();
    for row in rows {
        if !row.is_empty() {
            e.insert(row);
        }
    }
    e
}

impl SparseMatrix {
    pub fn rank(&self) -> usize {
        // Fewer, longer rows keep the number of reductions down.
        let m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        echelon_of(m.data.iter().map(|r| integer_row(r))).rank()
    }

    /// Canonical nullspace basis: one vector per free column `f`, with a 1 in
    /// position `f`, zeros at the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rref = echelon_of(self.data.iter().map(|r| integer_row(r))).into_rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.contains_key(c)).collect();
        let mut basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                v
            })
            .collect();
        let free_pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (&pc, row) in &rref {
            for (c, x) in row {
                if *c != pc {
                    basis[free_pos[c]][pc] = -x.clone();
                }
            }
        }
        basis
    }

    /// Some `u` with `self * u = v`, or `None` if `v` is not in the column space.
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.rows, "right-hand side length");
        let rhs_col = self.cols;
        let rows = self.data.iter().zip(v).map(|(row, b)| {
            let mut r = row.clone();
            if !b.is_zero() {
                r.push((rhs_col, b.clone()));
            }
            integer_row(&r)
        });
        let e = echelon_of(rows);
        if e.pivots.contains_key(&rhs_col) {
            return None;
        }
        let rref = e.into_rref();
        let mut u = vec![Rational::zero(); self.cols];
        for (pc, row) in rref {
            if let Some((_, x)) = row.iter().find(|(c, _)| *c == rhs_col) {
                u[pc] = x.clone();
            }
        }
        Some(u)
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.to_sparse().rank()
}

pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    m.to_sparse().nullspace()
}

pub fn in_image(m: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    if v.len() != m.rows() {
        return None;
    }
    m.to_sparse().solve(v)
}

/// `dim ker(d_out) - rank(d_in)` for a composable pair `d_out ∘ d_in = 0`.
pub fn cohomology_dim(d_out: &Matrix, d_in: &Matrix) -> Result<usize> {
    sparse_cohomology(&d_out.to_sparse(), &d_in.to_sparse(), false).map(|(d, _)| d)
}

/// Dimension and representatives of `ker(d_out) / im(d_in)`.
///
/// Representatives are the canonical kernel basis vectors that are independent
/// modulo the image, taken in order and scaled so their first nonzero
/// coordinate is 1.
pub fn sparse_cohomology(
    d_out: &SparseMatrix,
    d_in: &SparseMatrix,
    with_representatives: bool,
) -> Result<(usize, Vec<Vec<Rational>>)> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch(format!(
            "outgoing differential has {} columns but incoming has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonComplex("composite of consecutive differentials is nonzero".into()));
    }
    if !with_representatives {
        let dim = d_out.cols() - d_out.rank() - d_in.rank();
        return Ok((dim, Vec::new()));
    }
    let kernel = d_out.nullspace();
    let mut span = echelon_of(d_in.transpose().data.iter().map(|r| integer_row(r)));
    let image_rank = span.rank();
    let mut reps = Vec::new();
    for v in kernel.iter() {
        let row: Vec<(usize, Rational)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x.clone()))
            .collect();
        if span.insert(integer_row(&row)) {
            reps.push(normalize_leading(v.clone()));
        }
    }
    debug_assert_eq!(reps.len(), kernel.len() - image_rank);
    Ok((reps.len(), reps))
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalize_leading(mut v: Vec<Rational>) -> Vec<Rational> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse(_))));
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(0, 0)), 0);
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(4)).is_empty());
        assert_eq!(nullspace(&Matrix::zeros(2, 3)).len(), 3);
        let ns = nullspace(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(ns, vec![v(&[-1, 1])]);
    }

    #[test]
    fn nullspace_is_reduced_echelon_parametrisation() {
        let m = Matrix::from_i64(&[&[2, 4, 6, 8], &[1, 2, 4, 3]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        // free columns 1 and 3
        assert_eq!(ns[0][1], rat(1));
        assert_eq!(ns[0][3], rat(0));
        assert_eq!(ns[1][3], rat(1));
        assert_eq!(ns[1][1], rat(0));
        for x in &ns {
            assert!(is_zero_vec(&m.mul_vec(x).unwrap()));
        }
    }

    #[test]
    fn cohomology_dim_examples() {
        let n = 4;
        assert_eq!(cohomology_dim(&Matrix::zeros(1, n), &Matrix::zeros(n, 1)).unwrap(), n);
        assert_eq!(cohomology_dim(&Matrix::identity(n), &Matrix::zeros(n, 1)).unwrap(), 0);
        assert!(matches!(
            cohomology_dim(&Matrix::identity(2), &Matrix::identity(2)),
            Err(Error::NonComplex(_))
        ));
        assert!(matches!(
            cohomology_dim(&Matrix::identity(2), &Matrix::zeros(3, 1)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn in_image_examples() {
        let x = v(&[3, -1, 7]);
        assert_eq!(in_image(&Matrix::identity(3), &x), Some(x.clone()));
        assert_eq!(in_image(&Matrix::zeros(3, 3), &x), None);
        assert_eq!(in_image(&Matrix::from_i64(&[&[1], &[1]]), &v(&[2, 2])), Some(v(&[2])));
        assert_eq!(in_image(&Matrix::from_i64(&[&[1], &[1]]), &v(&[2, 3])), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn representatives_span_complement() {
        // d_in hits e0; kernel of d_out is span(e0, e1)
        let d_in = Matrix::from_i64(&[&[1], &[0], &[0]]);
        let d_out = Matrix::from_i64(&[&[0, 0, 1]]);
        let (dim, reps) = sparse_cohomology(&d_out.to_sparse(), &d_in.to_sparse(), true).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(reps, vec![v(&[0, 1, 0])]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |xs| {
                Matrix::from_fn(r, c, |i, j| {
                    let (n, d) = xs[i * c + j];
                    // bias towards zeros so ranks vary
                    if n.abs() == 3 { rat(0) } else { ratio(n, d) }
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rank_properties(m in small_matrix()) {
            let r = rank(&m);
            prop_assert_eq!(r, rank(&m.transpose()));
            let ns = nullspace(&m);
            prop_assert_eq!(r + ns.len(), m.cols());
            for x in &ns {
                prop_assert!(is_zero_vec(&m.mul_vec(x).unwrap()));
            }
        }

        #[test]
        fn solve_finds_preimages(m in small_matrix(), seed in proptest::collection::vec(-2i64..3, 6)) {
            let u: Vec<Rational> = (0..m.cols()).map(|i| rat(seed[i])).collect();
            let b = m.mul_vec(&u).unwrap();
            let sol = in_image(&m, &b).expect("image vector must be solvable");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }

        #[test]
        fn cohomology_dim_invariant_under_middle_permutation(
            shift in 0usize..5,
            a in proptest::collection::vec(-1i64..2, 5),
        ) {
            // d_in: 1 -> 5 spanned by a; d_out: projection killing a
            let n = 5;
            let d_in = Matrix::from_fn(n, 1, |r, _| rat(a[r]));
            let ns = nullspace(&d_in.transpose());
            let d_out = Matrix::from_fn(ns.len(), n, |r, c| ns[r][c].clone());
            // d_out has rows orthogonal to a, so d_out * d_in = 0
            let base = cohomology_dim(&d_out, &d_in).unwrap();
            let perm = |i: usize| (i + shift) % n;
            let p_in = Matrix::from_fn(n, 1, |r, c| d_in.get(perm(r), c).clone());
            let p_out = Matrix::from_fn(d_out.rows(), n, |r, c| d_out.get(r, perm(c)).clone());
            prop_assert_eq!(cohomology_dim(&p_out, &p_in).unwrap(), base);
        }
    }
}
