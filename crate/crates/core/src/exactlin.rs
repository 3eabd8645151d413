//! Exact linear algebra over a [`Field`]: reduced row echelon form, rank,
//! kernel and image bases, and solving in a span.
//!
//! Matrices are stored as sorted sparse rows. Echelon forms use the leftmost
//! nonzero column as pivot column and the first available row as pivot row,
//! so every basis produced here is a deterministic function of the input.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Fill ratio above which echelon forms switch to a dense elimination.
pub const DENSE_FILL_THRESHOLD: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

pub(crate) fn normalize<F: Field>(field: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, e) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &e),
            _ => out.push((i, e)),
        }
    }
    out.retain(|(_, e)| !field.is_zero(e));
    out
}

/// `a + s * b` on sparse vectors.
pub(crate) fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    s: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = field.mul_add(&a[i].1, s, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, e)| !field.is_zero(e));
    out
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let data = (0..n).map(|i| vec![(i, one.clone())]).collect();
        Matrix { field, rows: n, cols: n, data }
    }

    /// Build from sparse rows; entries are sorted, merged and zero-pruned.
    pub fn from_sparse_rows(field: F, cols: usize, rows: Vec<Vec<(usize, F::Elem)>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows);
        for r in rows {
            let r = normalize(&field, r);
            if let Some((j, _)) = r.last() {
                if *j >= cols {
                    return Err(Error::ShapeMismatch(format!("column {j} >= {cols}")));
                }
            }
            data.push(r);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Build from dense rows of field elements.
    pub fn from_dense(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let sparse = rows
            .into_iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(Error::ShapeMismatch(format!("row of length {} for {cols} columns", r.len())));
                }
                Ok(r.into_iter().enumerate().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_sparse_rows(field, cols, sparse)
    }

    /// Build from dense integer rows; all rows must have the same length.
    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| (j, field.from_i64(v)))
                    .filter(|(_, e)| !field.is_zero(e))
                    .collect()
            })
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Build a `rows x columns.len()` matrix whose columns are the given dense vectors.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!("column of length {} for {rows} rows", col.len())));
            }
            for (i, e) in col.iter().enumerate() {
                if !field.is_zero(e) {
                    data[i].push((j, e.clone()));
                }
            }
        }
        Ok(Matrix { field, rows, cols: columns.len(), data })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.data[i]
    }

    pub fn sparse_rows(&self) -> &[SparseVec<F::Elem>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn fill_ratio(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.rows]; self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, e) in row {
                out[*j][i] = e.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, e) in row {
                out[i][*j] = e.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, e) in row {
                data[*j].push((i, e.clone()));
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Select a subset of columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: SparseVec<F::Elem> = row
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, e)| (pos[*j], e.clone()))
                    .collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().map(|&i| self.data[i].clone()).collect();
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, e)| (j + self.cols, e.clone())));
                r
            })
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, F::Elem)> = Vec::new();
                for (k, a) in row {
                    acc = axpy(&self.field, &acc, a, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(self.field.zero(), |acc, (j, e)| self.field.mul_add(&acc, e, &v[*j]))
            })
            .collect())
    }

    /// Reduced row echelon form with the same shape (zero rows at the bottom)
    /// and the strictly increasing list of pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let rows = if self.fill_ratio() > DENSE_FILL_THRESHOLD {
            dense_rref(&self.field, self.cols, self.to_dense())
        } else {
            let mut ech = Echelon::new(self.field.clone(), self.cols);
            for r in &self.data {
                ech.insert(r.clone());
            }
            ech.into_rref_rows()
        };
        self.from_echelon_rows(rows)
    }

    /// Same as [`Matrix::rref`] but always through the sparse elimination.
    pub fn rref_sparse(&self) -> (Self, Vec<usize>) {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        self.from_echelon_rows(ech.into_rref_rows())
    }

    /// Same as [`Matrix::rref`] but always through the dense elimination.
    pub fn rref_dense(&self) -> (Self, Vec<usize>) {
        self.from_echelon_rows(dense_rref(&self.field, self.cols, self.to_dense()))
    }

    fn from_echelon_rows(&self, rows: Vec<SparseVec<F::Elem>>) -> (Self, Vec<usize>) {
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut data = rows;
        data.resize(self.rows, Vec::new());
        (Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.fill_ratio() > DENSE_FILL_THRESHOLD {
            return dense_rref(&self.field, self.cols, self.to_dense()).len();
        }
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in &self.data {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    /// Basis of the right null space, one column per non-pivot column of the
    /// echelon form, ordered by that column.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut free_pos = vec![usize::MAX; self.cols];
        for (k, &j) in free.iter().enumerate() {
            free_pos[j] = k;
        }
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.cols];
        for (k, &j) in free.iter().enumerate() {
            data[j].push((k, f.one()));
        }
        for (ri, &p) in pivots.iter().enumerate() {
            for (j, e) in r.row(ri) {
                if free_pos[*j] != usize::MAX {
                    data[p].push((free_pos[*j], f.neg(e)));
                }
            }
        }
        Matrix { field: f.clone(), rows: self.cols, cols: free.len(), data }
    }

    /// Columns of `self` at the pivot columns of its echelon form, with their indices.
    pub fn image_basis(&self) -> (Self, Vec<usize>) {
        let (_, pivots) = self.rref();
        (self.select_columns(&pivots), pivots)
    }
}

/// Incremental echelon basis: rows are kept monic at their pivot and reduced
/// against all earlier pivots.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    pivots: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        Echelon { field, cols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Remainder of `row` after eliminating every current pivot column.
    pub fn reduce(&self, row: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = row.into_iter().collect();
        let mut cursor = 0usize;
        while let Some((&c, v)) = acc.range(cursor..).next() {
            if let Some(prow) = self.pivots.get(&c) {
                let factor = f.neg(v);
                for (j, e) in prow {
                    let cur = acc.remove(j).unwrap_or_else(|| f.zero());
                    let nv = f.mul_add(&cur, &factor, e);
                    if !f.is_zero(&nv) {
                        acc.insert(*j, nv);
                    }
                }
            }
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }

    /// Insert a row; returns `true` when it enlarged the row space.
    pub fn insert(&mut self, row: SparseVec<F::Elem>) -> bool {
        let r = self.reduce(row);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let r = r.into_iter().map(|(j, e)| (j, self.field.mul(&e, &inv))).collect();
        self.pivots.insert(p, r);
        true
    }

    pub fn contains(&self, row: SparseVec<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Fully reduced rows ordered by pivot column.
    pub fn into_rref_rows(self) -> Vec<SparseVec<F::Elem>> {
        let f = self.field;
        let mut done: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
        for (p, row) in self.pivots.into_iter().rev() {
            let mut r = row;
            let hits: Vec<(usize, F::Elem)> = r
                .iter()
                .filter(|(j, _)| *j != p && done.contains_key(j))
                .cloned()
                .collect();
            for (j, e) in hits {
                let s = f.neg(&e);
                r = axpy(&f, &r, &s, &done[&j]);
            }
            done.insert(p, r);
        }
        done.into_values().collect()
    }
}

fn dense_rref<F: Field>(f: &F, cols: usize, mut a: Vec<Vec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let m = a.len();
    let mut prow = 0;
    for col in 0..cols {
        if prow == m {
            break;
        }
        let Some(src) = (prow..m).find(|&r| !f.is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(prow, src);
        let inv = f.inv(&a[prow][col]);
        for e in a[prow].iter_mut().skip(col) {
            *e = f.mul(e, &inv);
        }
        let pivot_row = a[prow].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || f.is_zero(&row[col]) {
                continue;
            }
            let factor = f.neg(&row[col]);
            for j in col..cols {
                if !f.is_zero(&pivot_row[j]) {
                    row[j] = f.mul_add(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        prow += 1;
    }
    a.truncate(prow);
    a.into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, e)| !f.is_zero(e)).collect())
        .collect()
}

/// Expresses vectors in a fixed basis (the columns of `basis`, which must be
/// linearly independent). Precomputes an inverse on a set of pivot rows.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field> {
    basis: Matrix<F>,
    rows: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(basis: &Matrix<F>) -> Result<Self> {
        let k = basis.cols();
        let (_, rows) = basis.transpose().rref();
        if rows.len() < k {
            return Err(Error::DependentBasis);
        }
        let square = basis.select_rows(&rows);
        let aug = square.hstack(&Matrix::identity(basis.field().clone(), k))?;
        let (r, _) = aug.rref();
        let inv_cols: Vec<usize> = (k..2 * k).collect();
        let inverse = r.select_columns(&inv_cols);
        Ok(SpanSolver { basis: basis.clone(), rows, inverse })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn solve(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.basis.rows() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for basis of {} rows",
                v.len(),
                self.basis.rows()
            )));
        }
        let restricted: Vec<F::Elem> = self.rows.iter().map(|&i| v[i].clone()).collect();
        let coords = self.inverse.mul_vec(&restricted)?;
        if self.basis.mul_vec(&coords)? != v {
            return Err(Error::NotInSpan);
        }
        Ok(coords)
    }
}

/// Coordinates of `v` in the columns of `basis`, or [`Error::NotInSpan`].
pub fn solve_in_span<F: Field>(basis: &Matrix<F>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    SpanSolver::new(basis)?.solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64(Rationals, rows)
    }

    #[test]
    fn rref_examples() {
        let id = q(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));

        let (r, p) = q(&[vec![1, 1, 0], vec![2, 2, 1]]).rref();
        assert_eq!(r, q(&[vec![1, 1, 0], vec![0, 0, 1]]));
        assert_eq!(p, vec![0, 2]);

        let f5 = PrimeField::new(5).unwrap();
        let (r, p) = Matrix::from_i64(f5, &[vec![2, 4], vec![1, 2]]).rref();
        assert_eq!(r, Matrix::from_i64(f5, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(Rationals, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(Rationals, 5).rank(), 5);
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = Matrix::identity(Rationals, 2).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 0));

        let k = q(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, q(&[vec![-1], vec![1]]));

        let k = Matrix::zeros(Rationals, 2, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(Rationals, 3));
    }

    #[test]
    fn image_examples() {
        let (b, idx) = Matrix::identity(Rationals, 2).image_basis();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(b, Matrix::identity(Rationals, 2));

        let (b, idx) = q(&[vec![1, 2], vec![2, 4]]).image_basis();
        assert_eq!(idx, vec![0]);
        assert_eq!(b, q(&[vec![1], vec![2]]));

        let (b, idx) = Matrix::zeros(Rationals, 2, 2).image_basis();
        assert!(idx.is_empty());
        assert_eq!(b.cols(), 0);
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let id = Matrix::identity(f, 2);
        assert_eq!(solve_in_span(&id, &[f.from_i64(3), f.from_i64(4)]).unwrap(), vec![f.from_i64(3), f.from_i64(4)]);

        let b = q(&[vec![1], vec![1]]);
        assert_eq!(solve_in_span(&b, &[f.from_i64(2), f.from_i64(2)]).unwrap(), vec![f.from_i64(2)]);

        let b = q(&[vec![1], vec![0]]);
        assert_eq!(solve_in_span(&b, &[f.zero(), f.one()]), Err(Error::NotInSpan));

        let dep = q(&[vec![1, 2], vec![1, 2]]);
        assert_eq!(solve_in_span(&dep, &[f.one(), f.one()]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn exact_fractions_survive_rref() {
        let (r, _) = q(&[vec![3, 1], vec![0, 0]]).rref();
        assert_eq!(r.get(0, 1), Rationals.inv(&Rationals.from_i64(3)));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(
                prop_oneof![3 => Just(0i64), 2 => -3i64..4], c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(rows in small_matrix()) {
            let m = q(&rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity_and_kernel(rows in small_matrix()) {
            let m = q(&rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + k.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }

        #[test]
        fn rref_idempotent_and_paths_agree(rows in small_matrix()) {
            let m = q(&rows);
            let (r, p) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), p.clone()));
            prop_assert_eq!(m.rref_sparse(), m.rref_dense());
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn image_basis_spans(rows in small_matrix()) {
            let m = q(&rows);
            let (b, idx) = m.image_basis();
            prop_assert_eq!(idx.len(), m.rank());
            prop_assert_eq!(b.rank(), m.rank());
            let solver = SpanSolver::new(&b).unwrap();
            for col in m.columns() {
                prop_assert!(solver.solve(&col).is_ok());
            }
        }

        #[test]
        fn prime_field_rank_bounded_by_rational(rows in small_matrix()) {
            let mp = Matrix::from_i64(PrimeField::new(7).unwrap(), &rows);
            prop_assert!(mp.rank() <= q(&rows).rank());
        }
    }
}
