use std::sync::Arc;

use crate::algebra::{Algebra, FrobeniusStructure};
use crate::error::{Error, Result};
use crate::field::{zero_vec, Field, Matrix, Scalar};
use crate::hochschild::CoefficientModule;
use crate::report::{Check, SuiteReport};

/// A linear map `γ: Hom_k(A, M) → M`.
///
/// Column `i * m + l` of `gamma` is `γ` of the map `b_i ↦ e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraaction {
    label: String,
    base_dim: usize,
    dim: usize,
    gamma: Matrix,
}

/// The coring over which a contraaction is taken.
#[derive(Clone, Debug)]
pub enum ContraBase {
    /// `A^e`, with `Hom_{A^op}(A^e, M)` identified with `Hom_k(A, M)`.
    Envelope(Arc<Algebra>),
    /// A bialgebra over the ground field: `coproduct[i]` lists `(α, β, c)` in `Δ b_i`.
    Coalgebra { coproduct: Vec<Vec<(usize, usize, Scalar)>>, counit: Vec<Scalar> },
}

impl Contraaction {
    pub fn new(label: impl Into<String>, base_dim: usize, gamma: Matrix) -> Result<Self> {
        let dim = gamma.rows();
        if gamma.cols() != base_dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "contraaction matrix is {}x{}, expected {dim}x{}",
                gamma.rows(),
                gamma.cols(),
                base_dim * dim
            )));
        }
        Ok(Contraaction { label: label.into(), base_dim, dim, gamma })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> Field {
        self.gamma.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.gamma
    }

    /// `γ(f)` where `f[i * m + l]` is the `e_l`-coordinate of `f(b_i)`.
    pub fn apply(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.gamma.mul_vec(f).expect("dimension")
    }

    /// `γ` of the map `b_i ↦ values(i)`.
    pub fn apply_fn(&self, mut values: impl FnMut(usize) -> Vec<Scalar>) -> Vec<Scalar> {
        let mut f = Vec::with_capacity(self.base_dim * self.dim);
        for i in 0..self.base_dim {
            f.extend(values(i));
        }
        self.apply(&f)
    }

    /// `γ` of the basis map `b_i ↦ e_l`.
    pub fn column(&self, i: usize, l: usize) -> Vec<Scalar> {
        self.gamma.column(i * self.dim + l)
    }

    /// `D(m) = γ(a ↦ a ▹ m)` for the given left action.
    pub fn stability_defect(&self, module: &CoefficientModule) -> Matrix {
        let field = self.field();
        let m = self.dim;
        let cols = (0..m)
            .map(|l| {
                self.apply_fn(|i| {
                    let mut v = zero_vec(field, m);
                    for (k, c) in module.left_basis(i, l) {
                        v[*k] = c.clone();
                    }
                    v
                })
            })
            .collect();
        Matrix::from_columns(field, m, cols).expect("square")
    }

    pub fn is_stable(&self, module: &CoefficientModule) -> bool {
        self.stability_defect(module).is_identity()
    }

    /// Linearity over the base, contraassociativity and counitality.
    pub fn check_axioms(&self, base: &ContraBase, module: &CoefficientModule) -> SuiteReport {
        let field = self.field();
        let (d, m) = (self.base_dim, self.dim);
        let mut rep = SuiteReport::new(format!("contraaction on {}", self.label));
        let col = |i: usize, l: usize| self.column(i, l);

        let mut lin = Check::new("right linearity γ(f(a(−))) = γ(f)a");
        let mut assoc = Check::new("contraassociativity");
        let mut counit = Check::new("counitality");
        match base {
            ContraBase::Envelope(a) => {
                for i in 0..d {
                    for l in 0..m {
                        let gf = col(i, l);
                        for x in 0..d {
                            // f(x · −) for f = (b_i ↦ e_l): b_y ↦ (x b_y)_i e_l
                            let lhs = self.apply_fn(|y| {
                                let mut v = zero_vec(field, m);
                                if let Some((_, c)) = a.product(x, y).iter().find(|(k, _)| *k == i) {
                                    v[l] = c.clone();
                                }
                                v
                            });
                            let rhs = module.act_right(&gf, &a.basis_vec(x));
                            lin.record(lhs == rhs, || format!("f = b{i}↦e{l}, a = {}", a.labels()[x]));
                        }
                    }
                }
                let unit = a.unit();
                for i in 0..d {
                    for j in 0..d {
                        for l in 0..m {
                            let inner = col(j, l);
                            let mut lhs = zero_vec(field, m);
                            for (k, c) in inner.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                crate::field::axpy(&mut lhs, c, &col(i, k));
                            }
                            let rhs = crate::field::vec_scale(&unit[j], &col(i, l));
                            assoc.record(lhs == rhs, || format!("g = (b{i}, b{j}) ↦ e{l}"));
                        }
                    }
                }
                for l in 0..m {
                    let got = self.apply_fn(|x| {
                        let mut v = zero_vec(field, m);
                        for (k, c) in module.right_basis(x, l) {
                            v[*k] = c.clone();
                        }
                        v
                    });
                    counit.record(got == crate::field::unit_vec(field, m, l), || format!("m = e{l}"));
                }
            }
            ContraBase::Coalgebra { coproduct, counit: eps } => {
                // The base is the ground field, so linearity is scalar linearity.
                for i in 0..d {
                    for l in 0..m {
                        let two = crate::field::vec_scale(&field.from_i64(2), &col(i, l));
                        let f2 = self.apply_fn(|y| {
                            let mut v = zero_vec(field, m);
                            if y == i {
                                v[l] = field.from_i64(2);
                            }
                            v
                        });
                        lin.record(f2 == two, || format!("f = b{i}↦e{l}"));
                    }
                }
                for i in 0..d {
                    for j in 0..d {
                        for l in 0..m {
                            let inner = col(j, l);
                            let mut lhs = zero_vec(field, m);
                            for (k, c) in inner.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                crate::field::axpy(&mut lhs, c, &col(i, k));
                            }
                            // z ↦ g(z_(1), z_(2))
                            let rhs = self.apply_fn(|z| {
                                let mut v = zero_vec(field, m);
                                for (p, q, c) in &coproduct[z] {
                                    if *p == i && *q == j {
                                        v[l] += c;
                                    }
                                }
                                v
                            });
                            assoc.record(lhs == rhs, || format!("g = (b{i}, b{j}) ↦ e{l}"));
                        }
                    }
                }
                for l in 0..m {
                    let got = self.apply_fn(|z| {
                        let mut v = zero_vec(field, m);
                        v[l] = eps[z].clone();
                        v
                    });
                    counit.record(got == crate::field::unit_vec(field, m, l), || format!("m = e{l}"));
                }
            }
        }
        rep.push(lin);
        rep.push(assoc);
        rep.push(counit);
        rep
    }
}

/// `γ(f) = Σ_i ε(f(e_i)) e^i` on `_σA`, with its axioms verified.
pub fn frobenius_contraaction(a: &Arc<Algebra>, frob: &FrobeniusStructure) -> Result<Contraaction> {
    let d = a.dim();
    let field = a.field();
    let eps = frob.functional();
    let dual = frob.dual_basis();
    let gamma = Matrix::from_fn(field, d, d * d, |k, col| {
        let (i, l) = (col / d, col % d);
        &eps[l] * dual.get(i, k)
    });
    let c = Contraaction::new("σA", d, gamma)?;
    let module = CoefficientModule::twisted(a, frob.nakayama());
    let rep = c.check_axioms(&ContraBase::Envelope(a.clone()), &module);
    if let Some(bad) = rep.failures().next() {
        return Err(Error::AxiomViolation(format!("{}: {}", bad.name, bad.witness.clone().unwrap_or_default())));
    }
    Ok(c)
}

/// For a symmetric algebra, transports `γ` along `A ≅ A*, a ↦ ε(a −)` and
/// compares it with `g ↦ g(− ⊗ 1_A)` on `Hom(A, A*)`.
pub fn symmetric_contraaction_crosscheck(a: &Algebra, frob: &FrobeniusStructure, c: &Contraaction) -> Result<SuiteReport> {
    if !frob.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = a.dim();
    let field = a.field();
    // Φ(a)(x) = ε(a x): row vector a ↦ a · gram.
    let gram_inv = frob.gram().inverse().expect("Frobenius");
    let mut check = Check::new("transported γ equals g ↦ g(− ⊗ 1)");
    for i in 0..d {
        for l in 0..d {
            // f = (b_i ↦ b_l); Φ∘f sends b_i to ε(b_l −). Evaluating at 1 gives x ↦ ε(f(x)).
            let functional: Vec<Scalar> = (0..d)
                .map(|x| if x == i { frob.functional()[l].clone() } else { field.zero() })
                .collect();
            let pulled = gram_inv.vec_mul(&functional)?;
            let got = c.column(i, l);
            check.record(pulled == got, || format!("f = {}↦{}", a.labels()[i], a.labels()[l]));
        }
    }
    let mut rep = SuiteReport::new("symmetric contraaction");
    rep.push(check);
    Ok(rep)
}
