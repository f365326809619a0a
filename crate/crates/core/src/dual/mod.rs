//! Left Hopf algebroids `A ⊗ A^op` and `H`, their right duals `U*`, and the
//! translation map on `U*`.
//!
//! Tensor products over the base are never formed as quotients. Both sides
//! of an identity are paired against bases, and `U*` separates the points of `U`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::cyclic::Contraaction;
use crate::error::{Error, Result};
use crate::field::{axpy, unit_vec, vec_scale, zero_vec, Field, Matrix, Scalar};
use crate::hochschild::CoefficientModule;
use crate::hopf::{Coproduct, HopfAlgebra};
use crate::report::{Check, SuiteReport};

/// Which family an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// `U = A ⊗ A^op` over `A`.
    Envelope,
    /// A Hopf algebra over the ground field.
    Hopf,
}

/// A finite left Hopf algebroid with an explicit dual basis of `U_◁` over the base.
#[derive(Clone, Debug)]
pub struct LeftHopfAlgebroid {
    kind: InstanceKind,
    base: Arc<Algebra>,
    total: Arc<Algebra>,
    /// Columns `s(b_a)`.
    source: Matrix,
    /// Columns `t(b_a)`.
    target: Matrix,
    coproduct: Coproduct,
    /// Columns `ε(u)`.
    counit: Matrix,
    /// `u ↦ Σ c · u₊ ⊗ u₋` on basis elements.
    translation: Coproduct,
    /// `e_i` as vectors of `U`.
    e: Vec<Vec<Scalar>>,
    /// `e^i`, one functional each.
    e_dual: Vec<Functional>,
}

/// A linear map `U → A`, stored as its values on the basis of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    values: Vec<Vec<Scalar>>,
}

impl Functional {
    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Vec<Scalar>) -> Self {
        Functional { values: (0..dim).map(f).collect() }
    }

    pub fn on_basis(&self, k: usize) -> &[Scalar] {
        &self.values[k]
    }

    pub fn eval(&self, field: Field, u: &[Scalar]) -> Vec<Scalar> {
        let n = self.values.first().map_or(0, Vec::len);
        let mut acc = zero_vec(field, n);
        for (c, v) in u.iter().zip(&self.values) {
            if !c.is_zero() {
                axpy(&mut acc, c, v);
            }
        }
        acc
    }
}

/// A term `c · x ⊗ y` of an element of `U ⊗ U`.
type Triple = (Vec<Scalar>, Vec<Scalar>, Scalar);

fn expand(c: &Scalar, left: &[Scalar], right: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (p, x) in left.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (q, y) in right.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out.push((p, q, &(c * x) * y));
        }
    }
    out
}

impl LeftHopfAlgebroid {
    /// `A ⊗ A^op` with `s(a) = a ⊗ 1`, `t(b) = 1 ⊗ b`, `Δ(a ⊗ b) = (a ⊗ 1) ⊗ (1 ⊗ b)`,
    /// `ε(a ⊗ b) = ab` and `(a ⊗ b)₊ ⊗ (a ⊗ b)₋ = (a ⊗ 1) ⊗ (b ⊗ 1)`.
    pub fn envelope(a: Arc<Algebra>) -> Self {
        let d = a.dim();
        let field = a.field();
        let total = Arc::new(a.tensor(&a.opposite()));
        let pure = |x: &[Scalar], y: &[Scalar]| {
            let mut v = zero_vec(field, d * d);
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    v[i * d + j] = p * q;
                }
            }
            v
        };
        let unit = a.unit().to_vec();
        let source = Matrix::from_columns(field, d * d, (0..d).map(|i| pure(&a.basis_vec(i), &unit)).collect()).expect("shape");
        let target = Matrix::from_columns(field, d * d, (0..d).map(|j| pure(&unit, &a.basis_vec(j))).collect()).expect("shape");
        let one = field.one();
        let coproduct = (0..d * d)
            .map(|u| expand(&one, &pure(&a.basis_vec(u / d), &unit), &pure(&unit, &a.basis_vec(u % d))))
            .collect();
        let translation = (0..d * d)
            .map(|u| expand(&one, &pure(&a.basis_vec(u / d), &unit), &pure(&a.basis_vec(u % d), &unit)))
            .collect();
        let counit = Matrix::from_columns(field, d, (0..d * d).map(|u| a.mul(&a.basis_vec(u / d), &a.basis_vec(u % d))).collect())
            .expect("shape");
        let e = (0..d).map(|i| pure(&a.basis_vec(i), &unit)).collect();
        // e^i(b_k ⊗ b_j) = δ_ik b_j
        let e_dual = (0..d)
            .map(|i| Functional::from_fn(d * d, |u| if u / d == i { a.basis_vec(u % d) } else { zero_vec(field, d) }))
            .collect();
        LeftHopfAlgebroid { kind: InstanceKind::Envelope, base: a, total, source, target, coproduct, counit, translation, e, e_dual }
    }

    /// `H` over `k` with `u₊ ⊗ u₋ = u₍₁₎ ⊗ S(u₍₂₎)`.
    pub fn from_hopf(h: &HopfAlgebra) -> Result<Self> {
        let field = h.field();
        let dim = h.dim();
        let base = Arc::new(Algebra::new(field, vec!["1".into()], vec![vec![vec![field.one()]]], vec![field.one()])?);
        let total = h.algebra().clone();
        let unit = Matrix::from_columns(field, dim, vec![total.unit().to_vec()])?;
        let translation = h
            .coproduct()
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .flat_map(|(p, q, c)| expand(c, &total.basis_vec(*p), &h.antipode().column(*q)))
                    .collect()
            })
            .collect();
        let counit = Matrix::from_rows(field, dim, vec![h.counit().to_vec()])?;
        let e = (0..dim).map(|i| total.basis_vec(i)).collect();
        let e_dual = (0..dim).map(|i| Functional::from_fn(dim, |u| vec![if u == i { field.one() } else { field.zero() }])).collect();
        Ok(LeftHopfAlgebroid {
            kind: InstanceKind::Hopf,
            base,
            total,
            source: unit.clone(),
            target: unit,
            coproduct: h.coproduct().clone(),
            counit,
            translation,
            e,
            e_dual,
        })
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn total(&self) -> &Arc<Algebra> {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    /// Rank of `U_◁` over the base.
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn translation(&self) -> &Coproduct {
        &self.translation
    }

    pub fn s(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.source.mul_vec(a).expect("base dimension")
    }

    pub fn t(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.target.mul_vec(a).expect("base dimension")
    }

    pub fn counit_of(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.counit.mul_vec(u).expect("dimension")
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.total.mul(x, y)
    }

    fn basis(&self, k: usize) -> Vec<Scalar> {
        self.total.basis_vec(k)
    }

    /// `Σ_k x_k · f(b_k)` for a bilinear expansion over a vector of `U`.
    fn sum_over(&self, x: &[Scalar], f: impl Fn(usize) -> Vec<Triple>) -> Vec<Triple> {
        let mut out = Vec::new();
        for (k, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.extend(f(k).into_iter().map(|(l, r, w)| (l, r, c * &w)));
        }
        out
    }

    /// The translation of a vector, as `(u₊, u₋, c)` with vector parts.
    fn translate(&self, u: &[Scalar]) -> Vec<Triple> {
        self.sum_over(u, |k| self.translation[k].iter().map(|(p, q, c)| (self.basis(*p), self.basis(*q), c.clone())).collect())
    }

    fn delta(&self, u: &[Scalar]) -> Vec<Triple> {
        self.sum_over(u, |k| self.coproduct[k].iter().map(|(p, q, c)| (self.basis(*p), self.basis(*q), c.clone())).collect())
    }

    /// Basis of `U*`: `φ_{i,l}(u) = b_l · e^i(u)`.
    pub fn dual_basis(&self) -> Vec<Functional> {
        let base = &self.base;
        let mut out = Vec::new();
        for ei in &self.e_dual {
            for l in 0..base.dim() {
                let bl = base.basis_vec(l);
                out.push(Functional::from_fn(self.dim(), |u| base.mul(&bl, ei.on_basis(u))));
            }
        }
        out
    }

    pub fn eval(&self, phi: &Functional, u: &[Scalar]) -> Vec<Scalar> {
        phi.eval(self.field(), u)
    }

    /// `(φψ)(u) = ψ(s(φ(u₍₁₎)) u₍₂₎)`.
    pub fn product(&self, phi: &Functional, psi: &Functional) -> Functional {
        Functional::from_fn(self.dim(), |k| {
            let mut acc = zero_vec(self.field(), self.base.dim());
            for (x, y, c) in self.delta(&self.basis(k)) {
                let v = self.eval(psi, &self.mul(&self.s(&self.eval(phi, &x)), &y));
                axpy(&mut acc, &c, &v);
            }
            acc
        })
    }

    /// The unit of `U*`, which is the counit of `U`.
    pub fn unit(&self) -> Functional {
        Functional::from_fn(self.dim(), |k| self.counit.column(k))
    }

    /// `π(φ) = φ(1_U)`.
    pub fn dual_counit(&self, phi: &Functional) -> Vec<Scalar> {
        self.eval(phi, self.total.unit())
    }

    /// `(v ⇀ φ)(u) = φ(uv)`.
    pub fn harpoon(&self, v: &[Scalar], phi: &Functional) -> Functional {
        Functional::from_fn(self.dim(), |k| self.eval(phi, &self.mul(&self.basis(k), v)))
    }

    /// `(u ⇀ φ)(v) = ε(u₊ t(φ(u₋ v)))`.
    pub fn slice(&self, u: &[Scalar], phi: &Functional) -> Functional {
        let terms = self.translate(u);
        Functional::from_fn(self.dim(), |k| {
            let v = self.basis(k);
            let mut acc = zero_vec(self.field(), self.base.dim());
            for (plus, minus, c) in &terms {
                let inner = self.eval(phi, &self.mul(minus, &v));
                axpy(&mut acc, c, &self.counit_of(&self.mul(plus, &self.t(&inner))));
            }
            acc
        })
    }

    /// `φ⁻ ⊗ φ⁺ = Σ_i e^i ⊗ (e_i ⇀ φ)`.
    pub fn dual_translation(&self, phi: &Functional) -> Vec<(Functional, Functional)> {
        self.e.iter().zip(&self.e_dual).map(|(ei, eu)| (eu.clone(), self.slice(ei, phi))).collect()
    }

    /// `Δ_r φ = Σ_j (e_j ⇀ φ) ⊗ e^j`.
    pub fn dual_coproduct(&self, phi: &Functional) -> Vec<(Functional, Functional)> {
        self.e.iter().zip(&self.e_dual).map(|(ej, eu)| (self.harpoon(ej, phi), eu.clone())).collect()
    }

    /// Pairing of `X ⊗_A Y ∈ U* ⊗ U*` with `(u, v)`: `X(u t(Y(v)))`.
    fn pair_over_base(&self, pairs: &[(Functional, Functional)], u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = zero_vec(self.field(), self.base.dim());
        for (x, y) in pairs {
            axpy(&mut acc, &self.field().one(), &self.eval(x, &self.mul(u, &self.t(&self.eval(y, v)))));
        }
        acc
    }

    /// Pairing of `X ⊗_{A^op} Y ∈ U* ⊗ U*` with `(u, v)`: `Y(s(X(u)) v)`.
    fn pair_over_opposite(&self, pairs: &[(Functional, Functional)], u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = zero_vec(self.field(), self.base.dim());
        for (x, y) in pairs {
            axpy(&mut acc, &self.field().one(), &self.eval(y, &self.mul(&self.s(&self.eval(x, u)), v)));
        }
        acc
    }

    /// `X ⊗_A Y ∈ U ⊗ U` paired with `φ` in the first slot: `Σ s(φ(X)) Y ∈ U`.
    fn half_pair_over_base(&self, terms: &[Triple], phi: &Functional) -> Vec<Scalar> {
        let mut acc = zero_vec(self.field(), self.dim());
        for (x, y, c) in terms {
            axpy(&mut acc, c, &self.mul(&self.s(&self.eval(phi, x)), y));
        }
        acc
    }

    /// `X ⊗_{A^op} Y ∈ U ⊗ U` paired with `ψ` in the second slot: `Σ X t(ψ(Y)) ∈ U`.
    fn half_pair_over_opposite(&self, terms: &[Triple], psi: &Functional) -> Vec<Scalar> {
        let mut acc = zero_vec(self.field(), self.dim());
        for (x, y, c) in terms {
            axpy(&mut acc, c, &self.mul(x, &self.t(&self.eval(psi, y))));
        }
        acc
    }

    fn label(&self, k: usize) -> &str {
        &self.total.labels()[k]
    }

    /// The four defining identities of the translation map.
    pub fn translation_report(&self) -> SuiteReport {
        let dim = self.dim();
        let one_u = self.total.unit().to_vec();
        let duals = self.dual_basis();
        let mut rep = SuiteReport::new("left Hopf algebroid");

        let mut sch2 = Check::new("u₊₍₁₎ ⊗ u₊₍₂₎u₋ = u ⊗ 1");
        let mut sch3 = Check::new("u₍₁₎₊ ⊗ u₍₁₎₋u₍₂₎ = u ⊗ 1");
        let mut sch7 = Check::new("u₊u₋ = s(ε(u))");
        for k in 0..dim {
            let u = self.basis(k);
            let tr = self.translate(&u);
            let mut lhs2 = Vec::new();
            let mut prod = zero_vec(self.field(), dim);
            for (plus, minus, c) in &tr {
                for (x, y, e) in self.delta(plus) {
                    lhs2.push((x, self.mul(&y, minus), c * &e));
                }
                axpy(&mut prod, c, &self.mul(plus, minus));
            }
            let rhs = vec![(u.clone(), one_u.clone(), self.field().one())];
            sch2.record(duals.iter().all(|phi| self.half_pair_over_base(&lhs2, phi) == self.half_pair_over_base(&rhs, phi)), || {
                format!("u = {}", self.label(k))
            });
            let mut lhs3 = Vec::new();
            for (x, y, c) in self.delta(&u) {
                for (plus, minus, e) in self.translate(&x) {
                    lhs3.push((plus, self.mul(&minus, &y), &c * &e));
                }
            }
            sch3.record(
                duals.iter().all(|psi| self.half_pair_over_opposite(&lhs3, psi) == self.half_pair_over_opposite(&rhs, psi)),
                || format!("u = {}", self.label(k)),
            );
            sch7.record(prod == self.s(&self.counit_of(&u)), || format!("u = {}", self.label(k)));
        }

        let mut sch6 = Check::new("(uv)₊ ⊗ (uv)₋ = u₊v₊ ⊗ v₋u₋");
        for k in 0..dim {
            let tu = self.translate(&self.basis(k));
            for l in 0..dim {
                let tv = self.translate(&self.basis(l));
                let lhs = self.translate(&self.mul(&self.basis(k), &self.basis(l)));
                let mut rhs = Vec::new();
                for (up, um, c) in &tu {
                    for (vp, vm, e) in &tv {
                        rhs.push((self.mul(up, vp), self.mul(vm, um), c * e));
                    }
                }
                sch6.record(
                    duals.iter().all(|psi| self.half_pair_over_opposite(&lhs, psi) == self.half_pair_over_opposite(&rhs, psi)),
                    || format!("u = {}, v = {}", self.label(k), self.label(l)),
                );
            }
        }

        let mut free = Check::new("u = Σ_i t(e^i(u)) e_i");
        for k in 0..dim {
            let u = self.basis(k);
            let mut acc = zero_vec(self.field(), dim);
            for (ei, eu) in self.e.iter().zip(&self.e_dual) {
                axpy(&mut acc, &self.field().one(), &self.mul(&self.t(&self.eval(eu, &u)), ei));
            }
            free.record(acc == u, || format!("u = {}", self.label(k)));
        }
        for c in [sch2, sch3, sch6, sch7, free] {
            rep.push(c);
        }
        rep
    }

    /// Structure of `U*`: product, unit, counit, coproduct and dual bases.
    pub fn dual_report(&self) -> SuiteReport {
        let field = self.field();
        let dim = self.dim();
        let duals = self.dual_basis();
        let eps = self.unit();
        let mut rep = SuiteReport::new("right bialgebroid dual");

        let mut closed = Check::new("products of base-linear functionals are base-linear");
        let mut assoc = Check::new("product on U* is associative");
        let mut unital = Check::new("counit of U is the unit of U*");
        let products: Vec<Vec<Functional>> = duals.iter().map(|phi| duals.iter().map(|psi| self.product(phi, psi)).collect()).collect();
        let linear = |f: &Functional| -> bool {
            (0..dim).all(|k| {
                let u = self.basis(k);
                let mut acc = zero_vec(field, self.base.dim());
                for (ei, eu) in self.e.iter().zip(&self.e_dual) {
                    axpy(&mut acc, &field.one(), &self.base.mul(&self.eval(f, ei), &self.eval(eu, &u)));
                }
                acc == self.eval(f, &u)
            })
        };
        for (i, phi) in duals.iter().enumerate() {
            unital.record(self.product(&eps, phi) == *phi && self.product(phi, &eps) == *phi, || format!("φ #{i}"));
            for (j, _) in duals.iter().enumerate() {
                closed.record(linear(&products[i][j]), || format!("φ #{i}, ψ #{j}"));
                for (l, chi) in duals.iter().enumerate() {
                    let lhs = self.product(&products[i][j], chi);
                    let rhs = self.product(phi, &products[j][l]);
                    assoc.record(lhs == rhs, || format!("φ #{i}, ψ #{j}, χ #{l}"));
                }
            }
        }
        let counit = Check::from_bool("π(ε) = 1", self.dual_counit(&eps) == self.base.unit(), || "π(ε) ≠ 1".into());

        let mut coproduct = Check::new("⟨φ⁽¹⁾, u t(⟨φ⁽²⁾, v⟩)⟩ = ⟨φ, uv⟩");
        let mut decomposition = Check::new("φ = Σ_i φ(e_i) e^i");
        for (i, phi) in duals.iter().enumerate() {
            let delta = self.dual_coproduct(phi);
            for k in 0..dim {
                let u = self.basis(k);
                for l in 0..dim {
                    let v = self.basis(l);
                    coproduct.record(self.pair_over_base(&delta, &u, &v) == self.eval(phi, &self.mul(&u, &v)), || {
                        format!("φ #{i}, u = {}, v = {}", self.label(k), self.label(l))
                    });
                }
                let mut acc = zero_vec(field, self.base.dim());
                for (ei, eu) in self.e.iter().zip(&self.e_dual) {
                    axpy(&mut acc, &field.one(), &self.base.mul(&self.eval(phi, ei), &self.eval(eu, &u)));
                }
                decomposition.record(acc == self.eval(phi, &u), || format!("φ #{i}, u = {}", self.label(k)));
            }
        }

        let mut differ = Check::new("harpoon and slice actions differ").info();
        let witness = (0..dim).find_map(|k| {
            let u = self.basis(k);
            duals.iter().position(|phi| self.harpoon(&u, phi) != self.slice(&u, phi)).map(|i| (k, i))
        });
        differ.record(witness.is_some(), || "the two actions agree on every basis pair".into());
        if let Some((k, i)) = witness {
            rep.note(format!("harpoon and slice differ at u = {}, φ #{i}", self.label(k)));
        }
        for c in [closed, assoc, unital, counit, coproduct, decomposition, differ] {
            rep.push(c);
        }
        rep
    }

    /// The translation map on `U*` and its identities, plus the antipode formula for Hopf algebras.
    pub fn hopf_galois_report(&self, antipode: Option<&Matrix>) -> SuiteReport {
        let field = self.field();
        let dim = self.dim();
        let duals = self.dual_basis();
        let eps = self.unit();
        let mut rep = SuiteReport::new("translation map on U*");

        let mut rch2 = Check::new("φ⁻φ⁺⁽¹⁾ ⊗ φ⁺⁽²⁾ = ε ⊗ φ");
        let mut rch3 = Check::new("φ⁽¹⁾φ⁽²⁾⁻ ⊗ φ⁽²⁾⁺ = ε ⊗ φ");
        let mut slice = Check::new("φ⁺ ◁ ⟨φ⁻, u⟩ = u ⇀ φ");
        let mut galois = Check::new("φ⁻ ⊗ φ⁺ = S*(φ₍₁₎) ⊗ φ₍₂₎");
        for (n, phi) in duals.iter().enumerate() {
            let tr = self.dual_translation(phi);
            let mut lhs2 = Vec::new();
            for (minus, plus) in &tr {
                for (x, y) in self.dual_coproduct(plus) {
                    lhs2.push((self.product(minus, &x), y));
                }
            }
            let mut lhs3 = Vec::new();
            for (x, y) in self.dual_coproduct(phi) {
                for (minus, plus) in self.dual_translation(&y) {
                    lhs3.push((self.product(&x, &minus), plus));
                }
            }
            let rhs = vec![(eps.clone(), phi.clone())];
            for k in 0..dim {
                let u = self.basis(k);
                for l in 0..dim {
                    let v = self.basis(l);
                    let tag = || format!("φ #{n}, u = {}, v = {}", self.label(k), self.label(l));
                    rch2.record(self.pair_over_base(&lhs2, &u, &v) == self.pair_over_base(&rhs, &u, &v), tag);
                    rch3.record(self.pair_over_opposite(&lhs3, &u, &v) == self.pair_over_opposite(&rhs, &u, &v), tag);
                    // Σ_i (e_i ⇀ φ)(s(e^i(u)) w)
                    let mut acc = zero_vec(field, self.base.dim());
                    for (minus, plus) in &tr {
                        axpy(&mut acc, &field.one(), &self.eval(plus, &self.mul(&self.s(&self.eval(minus, &u)), &v)));
                    }
                    slice.record(acc == self.eval(&self.slice(&u, phi), &v), tag);
                    if let Some(s) = antipode {
                        let mut paired = zero_vec(field, 1);
                        for (minus, plus) in &tr {
                            axpy(&mut paired, &self.eval(minus, &u)[0], &self.eval(plus, &v));
                        }
                        let su = s.mul_vec(&u).expect("dimension");
                        galois.record(paired == self.eval(phi, &self.mul(&su, &v)), tag);
                    }
                }
            }
        }
        rep.push(rch2);
        rep.push(rch3);
        rep.push(slice);
        if antipode.is_some() {
            rep.push(galois);
        }
        rep
    }

    /// `U ⊗ M → M` for the coefficient module of the instance.
    fn act(&self, module: &CoefficientModule, k: usize, m: &[Scalar]) -> Vec<Scalar> {
        match self.kind {
            InstanceKind::Envelope => {
                let d = self.base.dim();
                let left = module.act_left(&self.base.basis_vec(k / d), m);
                module.act_right(&left, &self.base.basis_vec(k % d))
            }
            InstanceKind::Hopf => module.act_left(&self.basis(k), m),
        }
    }

    /// Right action of the base on `M`.
    fn base_act(&self, module: &CoefficientModule, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        match self.kind {
            InstanceKind::Envelope => module.act_right(m, a),
            InstanceKind::Hopf => vec_scale(&a[0], m),
        }
    }

    /// `φ · m = γ(e_i ↦ m ◁ φ(e_i))`.
    pub fn contra_to_action(&self, gamma: &Contraaction, module: &CoefficientModule, phi: &Functional, m: &[Scalar]) -> Vec<Scalar> {
        gamma.apply_fn(|i| self.base_act(module, m, &self.eval(phi, &self.e[i])))
    }

    /// Conversions between contraactions, `U*`-actions and `U*`-coactions.
    pub fn dictionary_report(&self, gamma: &Contraaction, module: &CoefficientModule) -> Result<SuiteReport> {
        if gamma.base_dim() != self.rank() || gamma.dim() != module.dim() {
            return Err(Error::DimensionMismatch("contraaction does not match the instance".into()));
        }
        let field = self.field();
        let mdim = module.dim();
        let duals = self.dual_basis();
        let mut rep = SuiteReport::new(format!("module dictionary for {}", gamma.label()));

        let acts: Vec<Vec<Vec<Scalar>>> = duals
            .iter()
            .map(|phi| (0..mdim).map(|l| self.contra_to_action(gamma, module, phi, &unit_vec(field, mdim, l))).collect())
            .collect();
        let act_vec = |i: usize, m: &[Scalar]| -> Vec<Scalar> {
            let mut acc = zero_vec(field, mdim);
            for (c, col) in m.iter().zip(&acts[i]) {
                axpy(&mut acc, c, col);
            }
            acc
        };
        // Coordinates of a functional in the chosen basis of U*.
        let coords = |f: &Functional| -> Result<Vec<Scalar>> {
            let rows: Vec<Vec<Scalar>> = duals.iter().map(|g| g.values.concat()).collect();
            let m = Matrix::from_rows(field, self.dim() * self.base.dim(), rows)?;
            let (rref, transform) = m.rref_with_transform();
            let target = f.values.concat();
            let y: Vec<Scalar> = rref.pivots.iter().map(|&p| target[p].clone()).collect();
            let c = transform.select_rows(&(0..rref.pivots.len()).collect::<Vec<_>>()).vec_mul(&y)?;
            Ok(c)
        };
        let mut assoc = Check::new("induced U*-action is associative");
        for (i, phi) in duals.iter().enumerate() {
            for (j, psi) in duals.iter().enumerate() {
                let pq = coords(&self.product(phi, psi))?;
                for l in 0..mdim {
                    let m = unit_vec(field, mdim, l);
                    let mut lhs = zero_vec(field, mdim);
                    for (c, k) in pq.iter().zip(0..) {
                        if !c.is_zero() {
                            axpy(&mut lhs, c, &act_vec(k, &m));
                        }
                    }
                    let rhs = act_vec(i, &act_vec(j, &m));
                    assoc.record(lhs == rhs, || format!("φ #{i}, ψ #{j}, m = e{l}"));
                }
            }
        }
        let unit_coords = coords(&self.unit())?;
        let mut unital = Check::new("unit of U* acts as the identity");
        for l in 0..mdim {
            let m = unit_vec(field, mdim, l);
            let mut acc = zero_vec(field, mdim);
            for (c, k) in unit_coords.iter().zip(0..) {
                if !c.is_zero() {
                    axpy(&mut acc, c, &act_vec(k, &m));
                }
            }
            unital.record(acc == m, || format!("m = e{l}"));
        }

        // γ'(f) = Σ_i e^i · f(e_i), compared with γ on every basis map.
        let mut round = Check::new("action back to contraaction recovers γ");
        let e_dual_coords: Vec<Vec<Scalar>> = self.e_dual.iter().map(coords).collect::<Result<_>>()?;
        for i in 0..self.rank() {
            for l in 0..mdim {
                let m = unit_vec(field, mdim, l);
                let mut acc = zero_vec(field, mdim);
                for (c, k) in e_dual_coords[i].iter().zip(0..) {
                    if !c.is_zero() {
                        axpy(&mut acc, c, &act_vec(k, &m));
                    }
                }
                round.record(acc == gamma.column(i, l), || format!("f = e_{i} ↦ m{l}"));
            }
        }

        // m ↦ Σ_i e_i m ⊗ e^i and back: Σ_i (e_i m) ◁ e^i(u) = u m.
        let mut comodule = Check::new("module to comodule and back recovers the U-action");
        for k in 0..self.dim() {
            for l in 0..mdim {
                let m = unit_vec(field, mdim, l);
                let mut acc = zero_vec(field, mdim);
                for (ei, eu) in self.e.iter().zip(&self.e_dual) {
                    let mut em = zero_vec(field, mdim);
                    for (j, x) in ei.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        axpy(&mut em, x, &self.act(module, j, &m));
                    }
                    let back = self.base_act(module, &em, eu.on_basis(k));
                    axpy(&mut acc, &field.one(), &back);
                }
                comodule.record(acc == self.act(module, k, &m), || format!("u = {}, m = e{l}", self.label(k)));
            }
        }
        rep.note(format!("{} basis functionals, module of dimension {mdim}", duals.len()));
        for c in [assoc, unital, round, comodule] {
            rep.push(c);
        }
        Ok(rep)
    }
}
