//! Finite-dimensional Hopf algebras and the BV structure on `Ext_H(k, k)`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bv::{BvEngine, Subcomplex};
use crate::cyclic::{cyclic_operad_report, homotopy_report, ContraBase, Contraaction, CyclicStructure, TauSource, Translation};
use crate::error::{Error, Result};
use crate::field::{zero_vec, Field, Matrix, Scalar};
use crate::hochschild::{decode_into, encode, CochainComplex, CoefficientModule};
use crate::report::{Check, SuiteReport};

/// `Δ b_i = Σ c · b_α ⊗ b_β`, stored as `(α, β, c)` triples.
pub type Coproduct = Vec<Vec<(usize, usize, Scalar)>>;

/// A Hopf algebra `H` with an optional distinguished grouplike `ς`.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    algebra: Arc<Algebra>,
    coproduct: Coproduct,
    counit: Vec<Scalar>,
    /// Column `i` is `S(b_i)`.
    antipode: Matrix,
    grouplike: Option<Vec<Scalar>>,
}

impl HopfAlgebra {
    /// `comult[i][j][k]` is the coefficient of `b_j ⊗ b_k` in `Δ b_i`; `antipode[i]` is `S(b_i)`.
    pub fn new(
        algebra: Arc<Algebra>,
        comult: Vec<Vec<Vec<Scalar>>>,
        counit: Vec<Scalar>,
        antipode: Vec<Vec<Scalar>>,
        grouplike: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let d = algebra.dim();
        let field = algebra.field();
        if comult.len() != d || comult.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::Schema(format!("comult must have shape {d}x{d}x{d}")));
        }
        if counit.len() != d {
            return Err(Error::Schema(format!("counit must have length {d}")));
        }
        if antipode.len() != d || antipode.iter().any(|r| r.len() != d) {
            return Err(Error::Schema(format!("antipode must have shape {d}x{d}")));
        }
        if grouplike.as_ref().is_some_and(|g| g.len() != d) {
            return Err(Error::Schema(format!("grouplike must have length {d}")));
        }
        let coproduct = comult
            .iter()
            .map(|m| {
                let mut t = Vec::new();
                for (j, row) in m.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            t.push((j, k, c.clone()));
                        }
                    }
                }
                t
            })
            .collect();
        let antipode = Matrix::from_columns(field, d, antipode)?;
        Ok(HopfAlgebra { algebra, coproduct, counit, antipode, grouplike })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn coproduct(&self) -> &Coproduct {
        &self.coproduct
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn grouplike(&self) -> Option<&[Scalar]> {
        self.grouplike.as_deref()
    }

    pub fn with_grouplike(mut self, g: Vec<Scalar>) -> Self {
        self.grouplike = Some(g);
        self
    }

    pub fn apply_antipode(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(x).expect("dimension")
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for (e, c) in self.counit.iter().zip(x) {
            acc.add_mul(e, c);
        }
        acc
    }

    /// `Δx` as a `d × d` coefficient matrix.
    pub fn delta(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut t = Matrix::zeros(self.field(), d, d);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (p, q, c) in &self.coproduct[i] {
                t.entry_mut(*p, *q).add_mul(xi, c);
            }
        }
        t
    }

    fn outer(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(self.field(), d, d, |p, q| &x[p] * &y[q])
    }

    /// Product in `H ⊗ H` of two coefficient matrices.
    fn tensor_mul(&self, s: &Matrix, t: &Matrix) -> Matrix {
        let d = self.dim();
        let a = &self.algebra;
        let mut out = Matrix::zeros(self.field(), d, d);
        for (p, q, x) in s.nonzeros() {
            for (r, u, y) in t.nonzeros() {
                let xy = x * y;
                for (k, c) in a.product(p, r) {
                    for (l, e) in a.product(q, u) {
                        out.entry_mut(*k, *l).add_mul(&xy, &(c * e));
                    }
                }
            }
        }
        out
    }

    fn is_grouplike(&self, g: &[Scalar]) -> bool {
        self.delta(g) == self.outer(g, g) && self.counit_of(g).is_one()
    }

    /// The contraaction module: `k` with both actions through the counit.
    pub fn trivial_module(&self) -> CoefficientModule {
        CoefficientModule::character(&self.algebra, &self.counit)
    }

    /// `C^•(H, k)` with the convolution operad.
    pub fn complex(&self, budget: usize) -> CochainComplex {
        CochainComplex::convolution(self.algebra.clone(), self.coproduct.clone(), &self.counit).with_budget(budget)
    }

    pub fn translation(&self) -> Translation {
        Translation::hopf(&self.coproduct, &self.antipode)
    }

    pub fn contra_base(&self) -> ContraBase {
        ContraBase::Coalgebra { coproduct: self.coproduct.clone(), counit: self.counit.clone() }
    }
}

/// Checks every Hopf axiom on basis elements and pairs.
pub fn validate_hopf(h: &HopfAlgebra) -> SuiteReport {
    let a = &h.algebra;
    let d = h.dim();
    let field = h.field();
    let mut rep = SuiteReport::new("hopf");
    let b = |i: usize| a.basis_vec(i);

    let mut coassoc = Check::new("coassociativity");
    let mut counit = Check::new("counitality");
    let mut antipode = Check::new("antipode axioms");
    for i in 0..d {
        // (Δ ⊗ id)Δ and (id ⊗ Δ)Δ as flat d³ vectors.
        let mut left = zero_vec(field, d * d * d);
        let mut right = zero_vec(field, d * d * d);
        for (p, q, c) in &h.coproduct[i] {
            for (r, s, e) in &h.coproduct[*p] {
                left[(r * d + s) * d + q].add_mul(c, e);
            }
            for (r, s, e) in &h.coproduct[*q] {
                right[(p * d + r) * d + s].add_mul(c, e);
            }
        }
        coassoc.record(left == right, || format!("Δ on {}", a.labels()[i]));

        let mut l = zero_vec(field, d);
        let mut r = zero_vec(field, d);
        let mut s1 = zero_vec(field, d);
        let mut s2 = zero_vec(field, d);
        for (p, q, c) in &h.coproduct[i] {
            l[*q].add_mul(c, &h.counit[*p]);
            r[*p].add_mul(c, &h.counit[*q]);
            crate::field::axpy(&mut s1, c, &a.mul(&h.antipode.column(*p), &b(*q)));
            crate::field::axpy(&mut s2, c, &a.mul(&b(*p), &h.antipode.column(*q)));
        }
        counit.record(l == b(i) && r == b(i), || format!("on {}", a.labels()[i]));
        let want = crate::field::vec_scale(&h.counit[i], a.unit());
        antipode.record(s1 == want && s2 == want, || format!("on {}", a.labels()[i]));
    }

    let mut delta_mult = Check::new("Δ is an algebra map");
    let mut eps_mult = Check::new("counit is an algebra map");
    delta_mult.record(h.delta(a.unit()) == h.outer(a.unit(), a.unit()), || "Δ(1) ≠ 1 ⊗ 1".into());
    eps_mult.record(h.counit_of(a.unit()).is_one(), || "ε(1) ≠ 1".into());
    for i in 0..d {
        for j in 0..d {
            let prod = a.mul(&b(i), &b(j));
            let lhs = h.delta(&prod);
            let rhs = h.tensor_mul(&h.delta(&b(i)), &h.delta(&b(j)));
            delta_mult.record(lhs == rhs, || format!("({}, {})", a.labels()[i], a.labels()[j]));
            eps_mult.record(h.counit_of(&prod) == &h.counit[i] * &h.counit[j], || {
                format!("({}, {})", a.labels()[i], a.labels()[j])
            });
        }
    }
    rep.push(coassoc);
    rep.push(counit);
    rep.push(delta_mult);
    rep.push(eps_mult);
    rep.push(antipode);
    if let Some(g) = &h.grouplike {
        rep.push(Check::from_bool("distinguished element is grouplike", h.is_grouplike(g), || a.format_vec(g)));
    }
    rep
}

fn require_grouplike<'a>(h: &HopfAlgebra, g: &'a [Scalar]) -> Result<&'a [Scalar]> {
    if g.len() != h.dim() || !h.is_grouplike(g) {
        return Err(Error::NotGrouplike);
    }
    Ok(g)
}

/// `γ(f) = f(ς)` on `k`.
pub fn trivial_contraaction(h: &HopfAlgebra, g: &[Scalar]) -> Result<Contraaction> {
    let g = require_grouplike(h, g)?;
    let gamma = Matrix::from_rows(h.field(), h.dim(), vec![g.to_vec()])?;
    let c = Contraaction::new("k", h.dim(), gamma)?;
    let rep = c.check_axioms(&h.contra_base(), &h.trivial_module());
    if let Some(bad) = rep.failures().next() {
        return Err(Error::AxiomViolation(format!("{}: {}", bad.name, bad.witness.clone().unwrap_or_default())));
    }
    Ok(c)
}

/// `(τf)(h¹, …, hⁿ) = f(h²₍₁₎, …, hⁿ₍₁₎, S(hⁿ₍₂₎) ⋯ S(h²₍₂₎) S(h¹) ς)` as a matrix on `C^n(H, k)`.
pub fn tau_hopf(h: &HopfAlgebra, g: &[Scalar], cx: &CochainComplex, n: usize) -> Result<Matrix> {
    let g = require_grouplike(h, g)?;
    let dim = cx.check_budget(n)?;
    let field = h.field();
    if n == 0 {
        return Ok(Matrix::identity(field, dim));
    }
    let d = h.dim();
    let a = &h.algebra;
    let mut mat = Matrix::zeros(field, dim, dim);
    let mut t = vec![0; n];
    for out in 0..dim {
        decode_into(out, d, &mut t);
        // Partial states: (first components so far, product S(h^k_(2)) ⋯ S(h²_(2)), coefficient).
        let mut states: Vec<(Vec<usize>, Vec<Scalar>, Scalar)> = vec![(Vec::new(), a.unit().to_vec(), field.one())];
        for &hk in &t[1..] {
            let mut next = Vec::new();
            for (firsts, prod, c) in &states {
                for (p, q, e) in &h.coproduct[hk] {
                    let mut f2 = firsts.clone();
                    f2.push(*p);
                    next.push((f2, a.mul(&h.antipode.column(*q), prod), c * e));
                }
            }
            states = next;
        }
        let tail = a.mul(&h.antipode.column(t[0]), g);
        for (firsts, prod, c) in states {
            let last = a.mul(&prod, &tail);
            for (x, v) in last.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let mut src = firsts.clone();
                src.push(x);
                mat.entry_mut(out, encode(&src, d)).add_mul(&c, v);
            }
        }
    }
    Ok(mat)
}

/// `S²(h) = ς h ς⁻¹` for all basis `h`, with `ς⁻¹ = S(ς)`.
pub fn twisted_involution_check(h: &HopfAlgebra, g: &[Scalar]) -> Result<bool> {
    let g = require_grouplike(h, g)?;
    let a = &h.algebra;
    let g_inv = h.apply_antipode(g);
    if a.mul(g, &g_inv) != a.unit() || a.mul(&g_inv, g) != a.unit() {
        return Err(Error::NotGrouplike);
    }
    Ok((0..h.dim()).all(|i| {
        let x = a.basis_vec(i);
        h.apply_antipode(&h.apply_antipode(&x)) == a.mul(&a.mul(g, &x), &g_inv)
    }))
}

/// `C^•(H, k)` with `τ` from the closed formula.
pub fn hopf_cyclic(h: &HopfAlgebra, g: &[Scalar], budget: usize) -> Result<CyclicStructure> {
    require_grouplike(h, g)?;
    let cx = Arc::new(h.complex(budget));
    let hh = h.clone();
    let gg = g.to_vec();
    Ok(CyclicStructure::new(cx, TauSource::Matrices(Arc::new(move |cx: &CochainComplex, n| tau_hopf(&hh, &gg, cx, n)))))
}

/// The same complex with `τ` from the general formula and the Hopf translation map.
pub fn hopf_cyclic_general(h: &HopfAlgebra, g: &[Scalar], budget: usize) -> Result<CyclicStructure> {
    let gamma = trivial_contraaction(h, g)?;
    let cx = Arc::new(h.complex(budget));
    Ok(CyclicStructure::new(cx, TauSource::General { gamma, translation: h.translation() }))
}

/// Closed-formula `τ` against the general translation-map `τ`, degree by degree.
pub fn tau_crosscheck(h: &HopfAlgebra, g: &[Scalar], bound: usize, budget: usize) -> Result<Check> {
    let closed = hopf_cyclic(h, g, budget)?;
    let general = hopf_cyclic_general(h, g, budget)?;
    let mut c = Check::new("closed-formula τ equals translation-map τ");
    for n in 0..=bound {
        c.record(closed.tau(n)? == general.tau(n)?, || format!("degree {n}"));
    }
    Ok(c)
}

/// The cyclic-operad suite and the BV identity on `Ext_H(k, k)`.
pub fn ext_bv_report(h: &HopfAlgebra, g: &[Scalar], bound: usize, budget: usize) -> Result<SuiteReport> {
    if !twisted_involution_check(h, g)? {
        return Err(Error::TwistedInvolutionFails);
    }
    let cs = Arc::new(hopf_cyclic(h, g, budget)?);
    let mut rep = SuiteReport::new("ext bv");
    rep.push(tau_crosscheck(h, g, bound, budget)?);
    rep.extend(cyclic_operad_report(&cs, bound, None)?);
    rep.extend(homotopy_report(&cs, bound)?);
    let engine = BvEngine::new(cs.complex().clone(), Some(cs.clone()), None::<Arc<Subcomplex>>, bound)?;
    rep.note(format!("Ext dims {:?}", engine.dims()));
    rep.extend(engine.gerstenhaber_report()?);
    rep.extend(engine.bv_report()?);
    Ok(rep)
}
