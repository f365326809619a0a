//! Finite-dimensional unital associative algebras by structure constants.

mod frobenius;
mod grading;

pub use frobenius::{frobenius_structure, FrobeniusStructure};
pub use grading::{grade_by_automorphism, nakayama_grading, NakayamaGrading};

use crate::error::{Error, Result};
use crate::field::{axpy, unit_vec, zero_vec, Field, Matrix, Scalar};
use crate::report::{Check, SuiteReport};

/// Sparse vector: `(basis index, coefficient)` with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// An algebra `A` with basis `b_0..b_{d-1}` and `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    products: Vec<SparseVec>,
    preimages: Vec<Vec<(usize, usize, Scalar)>>,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(field: Field, labels: Vec<String>, mul: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let d = labels.len();
        if mul.len() != d || mul.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::Schema(format!("structure constants must have shape {d}x{d}x{d}")));
        }
        if unit.len() != d {
            return Err(Error::Schema(format!("unit has length {}, expected {d}", unit.len())));
        }
        let products: Vec<SparseVec> = mul.iter().flat_map(|r| r.iter().map(|v| sparsify(v))).collect();
        Ok(Self::from_products(field, labels, products, unit))
    }

    /// Builds from sparse products `b_i b_j`, indexed `i * d + j`.
    pub fn from_products(field: Field, labels: Vec<String>, products: Vec<SparseVec>, unit: Vec<Scalar>) -> Self {
        let d = labels.len();
        let mut preimages = vec![Vec::new(); d];
        for (ij, v) in products.iter().enumerate() {
            for (k, c) in v {
                preimages[*k].push((ij / d, ij % d, c.clone()));
            }
        }
        Algebra { field, labels, products, preimages, unit }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// `b_i b_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    /// All `(i, j, c)` with `b_i b_j` having coefficient `c ≠ 0` on `b_k`.
    pub fn preimages(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.preimages[k]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = zero_vec(self.field, d);
                        for (k, c) in self.product(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    fn check_len(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in a {}-dimensional algebra", x.len(), self.dim())));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product of coordinate vectors.
    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = zero_vec(self.field, d);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field, self.dim(), i)
    }

    /// Matrix of `y ↦ x y`; column `j` holds `x b_j`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols = (0..self.dim()).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        Matrix::from_columns(self.field, self.dim(), cols).expect("square")
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols = (0..self.dim()).map(|j| self.mul(&self.basis_vec(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), cols).expect("square")
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `A^op`: same basis, reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let products = (0..d * d).map(|ij| self.product(ij % d, ij / d).clone()).collect();
        let labels = self.labels.iter().map(|l| format!("{l}'")).collect();
        Algebra::from_products(self.field, labels, products, self.unit.clone())
    }

    /// Tensor product `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j`.
    pub fn tensor(&self, o: &Algebra) -> Algebra {
        let (d, e) = (self.dim(), o.dim());
        let n = d * e;
        let mut products = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (i, j) = (x / e, x % e);
                let (k, l) = (y / e, y % e);
                let mut v = Vec::new();
                for (p, a) in self.product(i, k) {
                    for (q, b) in o.product(j, l) {
                        v.push((p * e + q, a * b));
                    }
                }
                products.push(v);
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| o.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut unit = zero_vec(self.field, n);
        for (i, a) in self.unit.iter().enumerate() {
            for (j, b) in o.unit.iter().enumerate() {
                unit[i * e + j] = a * b;
            }
        }
        Algebra::from_products(self.field, labels, products, unit)
    }

    /// Checks associativity on basis triples and two-sided unitality.
    pub fn validate(&self) -> AlgebraValidation {
        let d = self.dim();
        let mut assoc = Check::new("associativity");
        'outer: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut left = zero_vec(self.field, d);
                    for (p, c) in self.product(i, j) {
                        for (q, e) in self.product(*p, k) {
                            left[*q].add_mul(c, e);
                        }
                    }
                    let mut right = zero_vec(self.field, d);
                    for (p, c) in self.product(j, k) {
                        for (q, e) in self.product(i, *p) {
                            right[*q].add_mul(c, e);
                        }
                    }
                    assoc.record(left == right, || {
                        format!("({} {}) {} != {} ({} {})", self.labels[i], self.labels[j], self.labels[k], self.labels[i], self.labels[j], self.labels[k])
                    });
                    if !assoc.passed {
                        break 'outer;
                    }
                }
            }
        }
        let mut unital = Check::new("unitality");
        for i in 0..d {
            let b = self.basis_vec(i);
            let ok = self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b;
            unital.record(ok, || format!("1·{0} or {0}·1 differs from {0}", self.labels[i]));
        }
        let mut report = SuiteReport::new("algebra");
        report.push(assoc);
        report.push(unital);
        AlgebraValidation { report }
    }

    /// `Σ_k v_k b_k` rendered with basis labels.
    pub fn format_vec(&self, v: &[Scalar]) -> String {
        format_with_labels(&self.labels, v)
    }
}

pub fn format_with_labels(labels: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c}){l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Result of [`Algebra::validate`].
#[derive(Clone, Debug)]
pub struct AlgebraValidation {
    pub report: SuiteReport,
}

impl AlgebraValidation {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn associative(&self) -> bool {
        self.report.check("associativity").is_some_and(|c| c.passed)
    }

    pub fn unital(&self) -> bool {
        self.report.check("unitality").is_some_and(|c| c.passed)
    }
}

/// Applies a linear map given by its matrix (columns are images of basis vectors).
pub fn apply(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.mul_vec(v).expect("matching dimensions")
}

/// `Σ_i v_i · cols[i]`
pub fn combine(field: Field, n: usize, v: &[Scalar], cols: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = zero_vec(field, n);
    for (c, col) in v.iter().zip(cols) {
        axpy(&mut out, c, col);
    }
    out
}
