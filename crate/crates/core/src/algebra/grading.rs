use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::FrobeniusStructure;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Rational, Scalar, Subspace};

/// Eigenspace decomposition of a diagonalizable automorphism.
#[derive(Clone, Debug)]
pub struct NakayamaGrading {
    eigenvalues: Vec<Scalar>,
    eigenspaces: Vec<Subspace>,
    /// Columns are eigenvectors, grouped by eigenvalue in `eigenvalues` order.
    basis: Matrix,
    basis_inv: Matrix,
    weight_of: Vec<usize>,
}

impl NakayamaGrading {
    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    pub fn eigenspaces(&self) -> &[Subspace] {
        &self.eigenspaces
    }

    pub fn eigenspace(&self, lambda: &Scalar) -> Option<&Subspace> {
        self.eigenvalues.iter().position(|l| l == lambda).map(|i| &self.eigenspaces[i])
    }

    /// Eigenbasis as matrix columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_inv(&self) -> &Matrix {
        &self.basis_inv
    }

    /// Eigenvalue of the `j`-th eigenbasis vector.
    pub fn weight(&self, j: usize) -> &Scalar {
        &self.eigenvalues[self.weight_of[j]]
    }

    pub fn dim(&self) -> usize {
        self.weight_of.len()
    }
}

/// Splits `A` into eigenspaces of its Nakayama automorphism.
pub fn nakayama_grading(frob: &FrobeniusStructure, allow_positive_char: bool) -> Result<NakayamaGrading> {
    grade_by_automorphism(frob.nakayama(), allow_positive_char)
}

/// Eigenspace decomposition of any square matrix, failing unless it splits
/// into eigenspaces over the base field.
pub fn grade_by_automorphism(sigma: &Matrix, allow_positive_char: bool) -> Result<NakayamaGrading> {
    let field = sigma.field();
    let n = sigma.rows();
    if sigma.cols() != n {
        return Err(Error::DimensionMismatch("automorphism must be square".into()));
    }
    if field.characteristic() != 0 && !allow_positive_char {
        return Err(Error::PositiveCharacteristic);
    }
    let mut eigenvalues = match field {
        Field::Rationals => rational_eigenvalues(sigma)?,
        Field::Prime(_) => {
            let elems = field
                .elements(1 << 20)
                .ok_or_else(|| Error::BudgetExceeded("eigenvalue search over a large prime field".into()))?;
            elems.into_iter().filter(|l| !l.is_zero() && shifted(sigma, l).rank() < n).collect()
        }
    };
    eigenvalues.sort_by(|a, b| a.canonical_cmp(b));
    let eigenspaces: Vec<Subspace> = eigenvalues.iter().map(|l| shifted(sigma, l).kernel()).collect();
    if eigenspaces.iter().map(Subspace::dim).sum::<usize>() != n {
        return Err(Error::NotDiagonalizable);
    }
    let mut cols = Vec::with_capacity(n);
    let mut weight_of = Vec::with_capacity(n);
    for (w, s) in eigenspaces.iter().enumerate() {
        for v in s.vectors() {
            cols.push(v);
            weight_of.push(w);
        }
    }
    let basis = Matrix::from_columns(field, n, cols)?;
    let basis_inv = basis.inverse().expect("eigenvectors of distinct eigenvalues are independent");
    Ok(NakayamaGrading { eigenvalues, eigenspaces, basis, basis_inv, weight_of })
}

fn shifted(sigma: &Matrix, l: &Scalar) -> Matrix {
    let n = sigma.rows();
    sigma.sub(&Matrix::identity(sigma.field(), n).scale(l)).expect("square")
}

fn det(m: &Matrix) -> Scalar {
    let n = m.rows();
    let mut rows = m.row_vecs();
    let field = m.field();
    let mut acc = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return field.zero();
        };
        if p != c {
            rows.swap(p, c);
            acc = -acc;
        }
        let piv = rows[c][c].clone();
        acc = &acc * &piv;
        let inv = piv.inv().expect("nonzero");
        for i in c + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = -(&rows[i][c] * &inv);
            let pivot_row = rows[c].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                x.add_mul(&f, y);
            }
        }
    }
    acc
}

/// Coefficients (constant term first) of `det(tI - m)` by interpolation at `t = 0..=n`.
fn char_poly(m: &Matrix) -> Vec<Rational> {
    let n = m.rows();
    let field = m.field();
    let xs: Vec<Rational> = (0..=n as i64).map(Rational::from_int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let shifted = Matrix::identity(field, n).scale(&Scalar::Q(x.clone())).sub(m).expect("square");
            det(&shifted).as_rational().expect("rational field").clone()
        })
        .collect();
    // Newton divided differences, then expand into the monomial basis.
    let mut coef = ys.clone();
    for j in 1..=n {
        for i in (j..=n).rev() {
            let num = coef[i].add(&coef[i - 1].neg());
            let den = xs[i].add(&xs[i - j].neg());
            coef[i] = num.mul(&den.inv().expect("distinct nodes"));
        }
    }
    let mut poly = vec![Rational::ZERO; n + 1];
    for k in (0..=n).rev() {
        // poly = poly * (t - x_k) + coef[k]
        let mut next = vec![Rational::ZERO; n + 1];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < n {
                next[i + 1] = next[i + 1].add(c);
            }
            next[i] = next[i].add(&c.mul(&xs[k]).neg());
        }
        next[0] = next[0].add(&coef[k]);
        poly = next;
    }
    poly
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= 1 << 40)
        .ok_or_else(|| Error::BudgetExceeded("characteristic polynomial coefficients too large".into()))?;
    let mut out = Vec::new();
    let mut q = 1u64;
    while q * q <= n {
        if n % q == 0 {
            out.push(BigInt::from(q));
            if q * q != n {
                out.push(BigInt::from(n / q));
            }
        }
        q += 1;
    }
    Ok(out)
}

fn rational_eigenvalues(m: &Matrix) -> Result<Vec<Scalar>> {
    let mut poly = char_poly(m);
    // Strip zero roots; an automorphism has none but generic inputs might.
    let mut zero_root = false;
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        zero_root = true;
    }
    let lcm = poly.iter().fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let lead = ints.last().expect("nonempty");
    let mut roots = Vec::new();
    if zero_root {
        roots.push(Scalar::Q(Rational::ZERO));
    }
    if poly.len() > 1 {
        for p in divisors(&ints[0])? {
            for q in divisors(lead)? {
                for s in [1, -1] {
                    let cand = Rational::from_big(num_rational::BigRational::new(&p * s, q.clone()));
                    let mut acc = Rational::ZERO;
                    for c in poly.iter().rev() {
                        acc = acc.mul(&cand).add(c);
                    }
                    let cand = Scalar::Q(cand);
                    if acc.is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    debug_assert!(!lead.is_zero());
    Ok(roots)
}
