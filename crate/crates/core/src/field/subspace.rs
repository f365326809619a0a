use super::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// A subspace of `F^n`, stored by its canonical RREF basis.
///
/// Two subspaces are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        let r = m.rref();
        Ok(Subspace { ambient, basis: r.reduced, pivots: r.pivots })
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    /// Coordinates of `v` against the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = -c;
            for (x, b) in rest.iter_mut().zip(self.basis.row(r)) {
                x.add_mul(&neg, b);
            }
        }
        rest.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.ambient == self.ambient && (0..o.dim()).all(|r| self.contains(o.basis.row(r)))
    }

    /// Removes the components of `v` along this subspace's pivot columns.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut rest = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = rest[p].clone();
            if c.is_zero() {
                continue;
            }
            let neg = -&c;
            for (x, b) in rest.iter_mut().zip(self.basis.row(r)) {
                x.add_mul(&neg, b);
            }
        }
        rest
    }
}

/// `numerator / denominator` with chosen class representatives.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    numerator: Subspace,
    denominator: Subspace,
    reps: Matrix,
    combined_pivots: Vec<usize>,
    combined_transform: Matrix,
}

impl QuotientPresentation {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self> {
        if !numerator.contains_subspace(&denominator) {
            return Err(Error::Containment);
        }
        let field = numerator.field();
        let residuals: Vec<Vec<Scalar>> = numerator.vectors().iter().map(|v| denominator.residual(v)).collect();
        let reps = Matrix::from_rows(field, numerator.ambient, residuals)?.rref().reduced;
        let combined = denominator.basis.vstack(&reps)?;
        let (rref, transform) = combined.rref_with_transform();
        debug_assert_eq!(rref.pivots.len(), combined.rows());
        Ok(QuotientPresentation {
            numerator,
            denominator,
            reps,
            combined_pivots: rref.pivots,
            combined_transform: transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Class representatives, one per row.
    pub fn class_reps(&self) -> &Matrix {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> Vec<Scalar> {
        self.reps.row(i).to_vec()
    }

    /// Linear projection of the ambient space onto class coordinates.
    ///
    /// Exact on the numerator; annihilates the denominator.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let y: Vec<Scalar> = self.combined_pivots.iter().map(|&p| v[p].clone()).collect();
        let c = self.combined_transform.vec_mul(&y).expect("transform is square");
        c[self.denominator.dim()..].to_vec()
    }

    /// Representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.reps.vec_mul(coords).expect("coordinate count matches class count")
    }

    /// `true` when `v` represents the zero class (`v` must lie in the numerator).
    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.denominator.contains(v)
    }

    pub fn in_numerator(&self, v: &[Scalar]) -> bool {
        self.numerator.contains(v)
    }
}
