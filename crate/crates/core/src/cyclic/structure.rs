use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::contraaction::Contraaction;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::hochschild::{decode_into, encode, Cochain, CochainComplex};

/// A translation map `u ↦ Σ c · u₊ ⊗ u₋` on basis elements.
///
/// `terms[i]` lists `(α, u₋, c)`: the plus part is `b_α`, the minus part a vector.
#[derive(Clone, Debug)]
pub struct Translation {
    pub terms: Vec<Vec<(usize, Vec<Scalar>, Scalar)>>,
}

impl Translation {
    /// `u₊ ⊗ u₋ = u ⊗ 1`, the envelope case restricted to the free slot.
    pub fn identity(a: &Algebra) -> Self {
        let one = a.field().one();
        Translation { terms: (0..a.dim()).map(|i| vec![(i, a.unit().to_vec(), one.clone())]).collect() }
    }

    /// `u₊ ⊗ u₋ = u₍₁₎ ⊗ S(u₍₂₎)`.
    pub fn hopf(coproduct: &[Vec<(usize, usize, Scalar)>], antipode: &Matrix) -> Self {
        Translation {
            terms: coproduct
                .iter()
                .map(|terms| terms.iter().map(|(p, q, c)| (*p, antipode.column(*q), c.clone())).collect())
                .collect(),
        }
    }
}

/// Where the cocyclic operator comes from.
#[derive(Clone)]
pub enum TauSource {
    /// `τf(u¹..uⁿ) = γ(w ↦ u¹₊ ▹ f(u²₊, …, uⁿ₊, uⁿ₋ ⋯ u¹₋ w))`.
    General { gamma: Contraaction, translation: Translation },
    /// Any other construction of the matrices, e.g. a closed formula.
    Matrices(Arc<dyn Fn(&CochainComplex, usize) -> Result<Matrix> + Send + Sync>),
}

impl std::fmt::Debug for TauSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TauSource::General { gamma, .. } => write!(f, "General({})", gamma.label()),
            TauSource::Matrices(_) => write!(f, "Matrices"),
        }
    }
}

#[derive(Default)]
struct Cache {
    tau: HashMap<usize, Arc<Matrix>>,
    tau_inv: HashMap<usize, Arc<Matrix>>,
    tau_power: HashMap<usize, Arc<Matrix>>,
    boundary: HashMap<usize, Arc<Matrix>>,
}

/// `τ` and `B` on a cochain complex, materialized per degree and cached.
pub struct CyclicStructure {
    cx: Arc<CochainComplex>,
    source: TauSource,
    cache: Mutex<Cache>,
}

impl std::fmt::Debug for CyclicStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CyclicStructure").field("source", &self.source).finish()
    }
}

/// Matrix of the general `τ` in degree `n`.
pub fn general_tau_matrix(cx: &CochainComplex, gamma: &Contraaction, tr: &Translation, n: usize) -> Result<Matrix> {
    let dim = cx.check_budget(n)?;
    let field = cx.field();
    let (d, m) = (cx.base_dim(), cx.value_dim());
    if gamma.dim() != m || gamma.base_dim() != d || tr.terms.len() != d {
        return Err(Error::DimensionMismatch("contraaction or translation does not match the complex".into()));
    }
    if n == 0 {
        // On C^0 = M the cycle has a single slot: m ↦ γ(w ↦ w ▹ m).
        return Ok(gamma.stability_defect(cx.module()));
    }
    let a = cx.algebra();
    let module = cx.module();
    let gcols: Vec<Vec<(usize, Scalar)>> = (0..d * m).map(|c| gamma.matrix().column_sparse(c)).collect();
    let mut mat = Matrix::zeros(field, dim, dim);
    let mut t = vec![0; n];
    let mut plus = vec![0; n];
    for out in 0..d.pow(n as u32) {
        decode_into(out, d, &mut t);
        // Enumerate one translation term per slot.
        let counts: Vec<usize> = t.iter().map(|&u| tr.terms[u].len()).collect();
        let mut choice = vec![0; n];
        'combos: loop {
            let mut coef = field.one();
            let mut minus: Option<Vec<Scalar>> = None;
            for k in 0..n {
                let (p, mk, c) = &tr.terms[t[k]][choice[k]];
                plus[k] = *p;
                coef = &coef * c;
                minus = Some(match minus {
                    None => mk.clone(),
                    Some(prev) => a.mul(mk, &prev),
                });
            }
            let minus = minus.expect("n ≥ 1");
            if !coef.is_zero() {
                for w in 0..d {
                    let pw = a.mul(&minus, &a.basis_vec(w));
                    for (x, px) in pw.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let mut src_tuple = plus[1..].to_vec();
                        src_tuple.push(x);
                        let src_t = encode(&src_tuple, d);
                        let cpx = &coef * px;
                        for l in 0..m {
                            for (k, ax) in module.left_basis(plus[0], l) {
                                let c2 = &cpx * ax;
                                for (o, gy) in &gcols[w * m + k] {
                                    mat.entry_mut(out * m + o, src_t * m + l).add_mul(&c2, gy);
                                }
                            }
                        }
                    }
                }
            }
            for k in (0..n).rev() {
                choice[k] += 1;
                if choice[k] < counts[k] {
                    continue 'combos;
                }
                choice[k] = 0;
            }
            break;
        }
    }
    Ok(mat)
}

impl CyclicStructure {
    pub fn new(cx: Arc<CochainComplex>, source: TauSource) -> Self {
        CyclicStructure { cx, source, cache: Mutex::new(Cache::default()) }
    }

    /// The envelope case: `C^•(A, A)` with `u₊ ⊗ u₋ = u ⊗ 1`.
    pub fn envelope(cx: Arc<CochainComplex>, gamma: Contraaction) -> Self {
        let translation = Translation::identity(cx.algebra());
        Self::new(cx, TauSource::General { gamma, translation })
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.cx
    }

    pub fn source(&self) -> &TauSource {
        &self.source
    }

    fn cached(
        &self,
        pick: fn(&mut Cache) -> &mut HashMap<usize, Arc<Matrix>>,
        n: usize,
        build: impl FnOnce() -> Result<Matrix>,
    ) -> Result<Arc<Matrix>> {
        if let Some(m) = pick(&mut self.cache.lock().expect("poisoned")).get(&n) {
            return Ok(m.clone());
        }
        let m = Arc::new(build()?);
        pick(&mut self.cache.lock().expect("poisoned")).insert(n, m.clone());
        Ok(m)
    }

    /// `τ: C^n → C^n`.
    pub fn tau(&self, n: usize) -> Result<Arc<Matrix>> {
        self.cached(|c| &mut c.tau, n, || match &self.source {
            TauSource::General { gamma, translation } => general_tau_matrix(&self.cx, gamma, translation, n),
            TauSource::Matrices(f) => f(&self.cx, n),
        })
    }

    pub fn tau_inverse(&self, n: usize) -> Result<Arc<Matrix>> {
        self.cached(|c| &mut c.tau_inv, n, || {
            self.tau(n)?.inverse().ok_or_else(|| Error::AxiomViolation(format!("τ is singular in degree {n}")))
        })
    }

    /// `τ^{n+1}` on `C^n`.
    pub fn tau_power(&self, n: usize) -> Result<Arc<Matrix>> {
        self.cached(|c| &mut c.tau_power, n, || self.tau(n)?.pow(n as u64 + 1))
    }

    pub fn is_cyclic_in(&self, n: usize) -> Result<bool> {
        Ok(self.tau_power(n)?.is_identity())
    }

    /// `λ = (−1)^n τ^{-1}` on `C^n`.
    fn lambda(&self, n: usize) -> Result<Matrix> {
        let ti = self.tau_inverse(n)?;
        Ok(if n % 2 == 1 { ti.scale(&-self.cx.field().one()) } else { (*ti).clone() })
    }

    /// Connes' boundary `B: C^n → C^{n-1}` (zero for `n = 0`).
    pub fn connes_b(&self, n: usize) -> Result<Arc<Matrix>> {
        self.cached(|c| &mut c.boundary, n, || {
            let field = self.cx.field();
            let dim_n = self.cx.check_budget(n)?;
            if n == 0 {
                return Ok(Matrix::zeros(field, 0, dim_n));
            }
            let dim_m = self.cx.check_budget(n - 1)?;
            let lam = self.lambda(n)?;
            let one_minus = Matrix::identity(field, dim_n).sub(&lam)?;
            let extra = self.cx.operator_matrix(n, n - 1, |f| self.cx.codegeneracy(n - 1, f))?;
            let s = extra.mul(&*self.tau_inverse(n)?)?;
            let lam_low = self.lambda(n - 1)?;
            let mut norm = Matrix::identity(field, dim_m);
            let mut power = Matrix::identity(field, dim_m);
            for _ in 1..n {
                power = power.mul(&lam_low)?;
                norm = norm.add(&power)?;
            }
            norm.mul(&s)?.mul(&one_minus)
        })
    }

    /// Applies an operator matrix to a cochain.
    pub fn apply(&self, mat: &Matrix, f: &Cochain, target: usize) -> Cochain {
        let v = mat.mul_sparse(f.terms());
        let terms = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        self.cx.from_terms(target, terms)
    }

    pub fn apply_tau(&self, f: &Cochain) -> Result<Cochain> {
        let t = self.tau(f.degree())?;
        Ok(self.apply(&t, f, f.degree()))
    }

    pub fn apply_b(&self, f: &Cochain) -> Result<Option<Cochain>> {
        let n = f.degree();
        if n == 0 {
            return Ok(None);
        }
        let b = self.connes_b(n)?;
        Ok(Some(self.apply(&b, f, n - 1)))
    }

    /// `βB + Bβ` on `C^n`.
    pub fn homotopy(&self, n: usize) -> Result<Matrix> {
        let b_up = self.connes_b(n + 1)?;
        let beta = self.cx.differential_matrix(n)?;
        let mut lhs = b_up.mul(&beta)?;
        if n > 0 {
            let beta_low = self.cx.differential_matrix(n - 1)?;
            lhs = lhs.add(&beta_low.mul(&*self.connes_b(n)?)?)?;
        }
        Ok(lhs)
    }
}

/// `f ↦ D ∘ f ∘ (D^{-1})^{⊗n}` for an automorphism `D` of `A = M`.
pub fn conjugate(cx: &CochainComplex, f: &Cochain, d_mat: &Matrix, d_inv: &Matrix) -> Cochain {
    let d = cx.base_dim();
    let m = cx.value_dim();
    let n = f.degree();
    let rows: Vec<Vec<(usize, Scalar)>> = (0..d)
        .map(|j| d_inv.row(j).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t, c.clone())).collect())
        .collect();
    let mut out = Vec::new();
    let mut src = vec![0; n];
    for (idx, c) in f.terms() {
        decode_into(idx / m, d, &mut src);
        let value = d_mat.column_sparse(idx % m);
        // Expand Π_r D^{-1}[J_r][t_r] over all target tuples.
        let mut partial: Vec<(usize, Scalar)> = vec![(0, c.clone())];
        for &j in &src {
            let mut next = Vec::with_capacity(partial.len() * rows[j].len());
            for (t, x) in &partial {
                for (tr, y) in &rows[j] {
                    next.push((t * d + tr, x * y));
                }
            }
            partial = next;
        }
        for (t, x) in partial {
            for (o, v) in &value {
                out.push((t * m + o, &x * v));
            }
        }
    }
    cx.from_terms(n, out)
}

/// `f ↦ D ∘ f`.
pub fn post_compose(cx: &CochainComplex, f: &Cochain, d_mat: &Matrix) -> Cochain {
    let m = cx.value_dim();
    let mut out = Vec::new();
    for (idx, c) in f.terms() {
        for (o, v) in d_mat.column_sparse(idx % m) {
            out.push(((idx / m) * m + o, c * &v));
        }
    }
    cx.from_terms(f.degree(), out)
}
