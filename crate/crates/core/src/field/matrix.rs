use std::fmt;

use serde::Serialize;

use super::{Field, Scalar, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
///
/// Products and eliminations skip zero entries, so the sparse operators that
/// show up on cochain spaces stay cheap despite the dense storage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matrix {
    #[serde(skip)]
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    /// Builds a matrix whose `j`-th column is `f(j)`.
    pub fn from_columns(field: Field, rows: usize, cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!("column of length {} in a {rows}-row matrix", c.len())));
            }
            for (i, x) in c.into_iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column_sparse(&self, j: usize) -> Vec<(usize, Scalar)> {
        (0..self.rows)
            .filter_map(|i| {
                let x = self.get(i, j);
                (!x.is_zero()).then(|| (i, x.clone()))
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| if a.is_zero() { a.clone() } else { a * c }).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        let o_sparse: Vec<Vec<(usize, &Scalar)>> = (0..o.rows)
            .map(|k| o.row(k).iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &o_sparse[k] {
                    out.data[i * o.cols + j].add_mul(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect())
    }

    /// Applies the matrix to a sparse vector given as `(index, value)` pairs.
    pub fn mul_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v {
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(self.get(i, *j), x);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} rows", v.len(), self.rows)));
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                o.add_mul(x, a);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn vstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.cols {
            return Err(Error::DimensionMismatch("vstack with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Keeps the listed rows in order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    /// Keeps the listed columns in order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.row_vecs();
        let pivots = eliminate(&mut rows, self.cols);
        let keep = pivots.len();
        rows.truncate(keep);
        Rref {
            reduced: Matrix::from_rows(self.field, self.cols, rows).expect("row lengths preserved"),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Returns the echelon form together with `T` such that `T * self` equals
    /// the reduced rows (the first `rank` rows of `T` span the row space
    /// transform; the rest span the left kernel).
    pub fn rref_with_transform(&self) -> (Rref, Matrix) {
        let n = self.rows;
        let width = self.cols + n;
        let one = self.field.one();
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { one.clone() } else { self.field.zero() }));
                r
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols);
        let rank = pivots.len();
        let mut reduced = Vec::with_capacity(rank);
        let mut transform = Vec::with_capacity(n);
        for r in rows {
            let (a, t) = r.split_at(self.cols);
            if reduced.len() < rank {
                reduced.push(a.to_vec());
            }
            transform.push(t.to_vec());
        }
        debug_assert_eq!(width, self.cols + n);
        (
            Rref { reduced: Matrix::from_rows(self.field, self.cols, reduced).expect("shape"), pivots },
            Matrix::from_rows(self.field, n, transform).expect("shape"),
        )
    }

    /// Right kernel `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                let x = reduced.get(r, free);
                if !x.is_zero() {
                    v[c] = -x;
                }
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.field, self.cols, basis).expect("kernel vectors have ambient length")
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let (rref, t) = self.rref_with_transform();
        (rref.pivots.len() == self.rows).then_some(t)
    }

    /// Entries of the matrix, with zero entries omitted.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }
}

/// Gauss-Jordan elimination in place, choosing pivots only among the first
/// `pivot_cols` columns. Returns the pivot columns; pivot rows come first.
fn eliminate(rows: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<(usize, Scalar)> = rows[r]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = -&rows[i][c];
            for (j, x) in &support {
                rows[i][*j].add_mul(&f, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
