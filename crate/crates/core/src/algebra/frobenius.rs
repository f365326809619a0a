use super::Algebra;
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::report::{Check, SuiteReport};

/// Frobenius data derived from a functional `ε`.
///
/// Basis `e_i = b_i`, dual basis `e^j` with `ε(e^j e_i) = δ`, and the
/// Nakayama automorphism `σ` with `ε(ab) = ε(σ(b) a)`.
#[derive(Clone, Debug)]
pub struct FrobeniusStructure {
    functional: Vec<Scalar>,
    gram: Matrix,
    dual_basis: Matrix,
    nakayama: Matrix,
    nakayama_inv: Matrix,
}

/// Builds the Frobenius structure, failing when the Gram matrix `ε(b_k b_i)` is singular.
pub fn frobenius_structure(a: &Algebra, eps: &[Scalar]) -> Result<FrobeniusStructure> {
    let d = a.dim();
    if eps.len() != d {
        return Err(Error::DimensionMismatch(format!("functional of length {} on a {d}-dimensional algebra", eps.len())));
    }
    let field = a.field();
    let gram = Matrix::from_fn(field, d, d, |k, i| eval(eps, a.product(k, i)));
    let dual_basis = gram
        .inverse()
        .ok_or_else(|| Error::NotFrobenius(format!("Gram matrix of rank {} < {d}", gram.rank())))?;
    let nakayama = gram.transpose().inverse().expect("transpose of invertible").mul(&gram)?;
    let nakayama_inv = nakayama.inverse().expect("product of invertibles");
    Ok(FrobeniusStructure { functional: eps.to_vec(), gram, dual_basis, nakayama, nakayama_inv })
}

fn eval(eps: &[Scalar], v: &[(usize, Scalar)]) -> Scalar {
    let mut acc = eps[0].zero_like();
    for (k, c) in v {
        acc.add_mul(&eps[*k], c);
    }
    acc
}

impl FrobeniusStructure {
    pub fn functional(&self) -> &[Scalar] {
        &self.functional
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.functional[0].zero_like();
        for (e, c) in self.functional.iter().zip(x) {
            acc.add_mul(e, c);
        }
        acc
    }

    /// `ε(b_k b_i)` at `(k, i)`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Row `j` holds the coordinates of `e^j`.
    pub fn dual_basis(&self) -> &Matrix {
        &self.dual_basis
    }

    pub fn dual_vec(&self, j: usize) -> Vec<Scalar> {
        self.dual_basis.row(j).to_vec()
    }

    /// Column `j` holds `σ(b_j)`.
    pub fn nakayama(&self) -> &Matrix {
        &self.nakayama
    }

    pub fn nakayama_inv(&self) -> &Matrix {
        &self.nakayama_inv
    }

    pub fn sigma(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.nakayama.mul_vec(x).expect("dimension")
    }

    /// `ε(ab) = ε(ba)` for all basis pairs, equivalently `σ = id`.
    pub fn is_symmetric(&self) -> bool {
        let by_sigma = self.nakayama.is_identity();
        debug_assert_eq!(by_sigma, self.gram == self.gram.transpose());
        by_sigma
    }

    /// Checks the dual-basis, counit and Nakayama identities exactly.
    pub fn check_invariants(&self, a: &Algebra) -> SuiteReport {
        let d = a.dim();
        let field = a.field();
        let e = |i: usize| a.basis_vec(i);
        let eu = |j: usize| self.dual_vec(j);
        let mut rep = SuiteReport::new("frobenius");

        let mut dual = Check::new("dual basis ε(e^j e_i) = δ");
        for j in 0..d {
            for i in 0..d {
                let v = self.eval(&a.mul(&eu(j), &e(i)));
                let want = if i == j { field.one() } else { field.zero() };
                dual.record(v == want, || format!("j={j}, i={i}: {v}"));
            }
        }
        rep.push(dual);

        let mut counit = Check::new("counit a = Σ ε(a e_i) e^i = Σ ε(e^i a) e_i");
        for k in 0..d {
            let x = e(k);
            let mut s1 = vec![field.zero(); d];
            let mut s2 = vec![field.zero(); d];
            for i in 0..d {
                crate::field::axpy(&mut s1, &self.eval(&a.mul(&x, &e(i))), &eu(i));
                crate::field::axpy(&mut s2, &self.eval(&a.mul(&eu(i), &x)), &e(i));
            }
            counit.record(s1 == x && s2 == x, || format!("a = {}", a.labels()[k]));
        }
        rep.push(counit);

        let mut unit = Check::new("1 = Σ ε(e_i) e^i = Σ ε(e^i) e_i");
        let mut s1 = vec![field.zero(); d];
        let mut s2 = vec![field.zero(); d];
        for i in 0..d {
            crate::field::axpy(&mut s1, &self.eval(&e(i)), &eu(i));
            crate::field::axpy(&mut s2, &self.eval(&eu(i)), &e(i));
        }
        unit.record(s1 == a.unit() && s2 == a.unit(), || "sums differ from 1".into());
        rep.push(unit);

        let mut naka = Check::new("ε(ab) = ε(σ(b) a)");
        for i in 0..d {
            for j in 0..d {
                let lhs = self.eval(&a.mul(&e(i), &e(j)));
                let rhs = self.eval(&a.mul(&self.sigma(&e(j)), &e(i)));
                naka.record(lhs == rhs, || format!("a={}, b={}", a.labels()[i], a.labels()[j]));
            }
        }
        rep.push(naka);

        let mut auto = Check::new("σ is an algebra automorphism");
        auto.record(self.sigma(a.unit()) == a.unit(), || "σ(1) != 1".into());
        for i in 0..d {
            for j in 0..d {
                let lhs = self.sigma(&a.mul(&e(i), &e(j)));
                let rhs = a.mul(&self.sigma(&e(i)), &self.sigma(&e(j)));
                auto.record(lhs == rhs, || format!("σ({} {})", a.labels()[i], a.labels()[j]));
            }
        }
        rep.push(auto);

        // Two-tensors as d x d coefficient matrices.
        let tensor = |pairs: &mut dyn Iterator<Item = (Vec<Scalar>, Vec<Scalar>)>| {
            let mut t = Matrix::zeros(field, d, d);
            for (x, y) in pairs {
                for (p, xp) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (q, yq) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        t.entry_mut(p, q).add_mul(xp, yq);
                    }
                }
            }
            t
        };
        let mut bimod = Check::new("Σ a e_i ⊗ e^i = Σ e_i ⊗ e^i a");
        let mut twisted = Check::new("Σ e_i a ⊗ e^i = Σ e_i ⊗ σ(a) e^i");
        for k in 0..d {
            let x = e(k);
            let sx = self.sigma(&x);
            let t1 = tensor(&mut (0..d).map(|i| (a.mul(&x, &e(i)), eu(i))));
            let t2 = tensor(&mut (0..d).map(|i| (e(i), a.mul(&eu(i), &x))));
            bimod.record(t1 == t2, || format!("a = {}", a.labels()[k]));
            let s2 = tensor(&mut (0..d).map(|i| (a.mul(&e(i), &x), eu(i))));
            let s3 = tensor(&mut (0..d).map(|i| (e(i), a.mul(&sx, &eu(i)))));
            twisted.record(s2 == s3, || format!("a = {}", a.labels()[k]));
        }
        rep.push(bimod);
        rep.push(twisted);
        rep
    }
}
