use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::cochain::{checked_pow, Cochain};
use super::module::CoefficientModule;
use super::operad::Operad;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

/// Largest cochain space that is materialized as a matrix by default.
pub const DEFAULT_BUDGET: usize = 1024;

/// `C^•(A, M)` with the classical cosimplicial structure.
#[derive(Debug)]
pub struct CochainComplex {
    algebra: Arc<Algebra>,
    module: Arc<CoefficientModule>,
    operad: Option<Arc<Operad>>,
    budget: usize,
    differentials: Mutex<HashMap<usize, Arc<Matrix>>>,
}

fn sign(i: usize) -> bool {
    i % 2 == 1
}

impl CochainComplex {
    /// `C^•(A, A)` with its endomorphism operad.
    pub fn endomorphism(algebra: Arc<Algebra>) -> Self {
        let module = Arc::new(CoefficientModule::regular(&algebra));
        let operad = Arc::new(Operad::endomorphism(&algebra));
        Self::build(algebra, module, Some(operad))
    }

    /// `C^•(A, M)` without operad structure.
    pub fn with_module(algebra: Arc<Algebra>, module: Arc<CoefficientModule>) -> Result<Self> {
        if module.base_dim() != algebra.dim() {
            return Err(Error::DimensionMismatch("module is over a different algebra".into()));
        }
        Ok(Self::build(algebra, module, None))
    }

    /// `C^•(H, k)` for a bialgebra, `k` a module through the counit, with the convolution operad.
    pub fn convolution(algebra: Arc<Algebra>, coproduct: Vec<Vec<(usize, usize, Scalar)>>, counit: &[Scalar]) -> Self {
        let module = Arc::new(CoefficientModule::character(&algebra, counit));
        let operad = Arc::new(Operad::convolution(algebra.clone(), coproduct, counit));
        Self::build(algebra, module, Some(operad))
    }

    fn build(algebra: Arc<Algebra>, module: Arc<CoefficientModule>, operad: Option<Arc<Operad>>) -> Self {
        CochainComplex { algebra, module, operad, budget: DEFAULT_BUDGET, differentials: Mutex::new(HashMap::new()) }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn module(&self) -> &Arc<CoefficientModule> {
        &self.module
    }

    pub fn operad(&self) -> Result<&Arc<Operad>> {
        self.operad.as_ref().ok_or(Error::NoOperad)
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn base_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn value_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn space_dim(&self, n: usize) -> Result<usize> {
        checked_pow(self.base_dim(), n)?
            .checked_mul(self.value_dim())
            .ok_or_else(|| Error::BudgetExceeded(format!("C^{n} overflows")))
    }

    /// Fails unless `C^n` fits the materialization budget.
    pub fn check_budget(&self, n: usize) -> Result<usize> {
        let dim = self.space_dim(n)?;
        if dim > self.budget {
            return Err(Error::BudgetExceeded(format!("C^{n} has dimension {dim} > budget {}", self.budget)));
        }
        Ok(dim)
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain::zero(n, self.base_dim(), self.value_dim())
    }

    pub fn basis_cochain(&self, n: usize, index: usize) -> Cochain {
        Cochain::basis(n, self.base_dim(), self.value_dim(), index, self.field().one())
    }

    pub fn from_vec(&self, n: usize, v: &[Scalar]) -> Result<Cochain> {
        Cochain::from_dense(n, self.base_dim(), self.value_dim(), v)
    }

    pub fn from_terms(&self, n: usize, terms: Vec<(usize, Scalar)>) -> Cochain {
        Cochain::from_terms(n, self.base_dim(), self.value_dim(), terms)
    }

    pub fn to_vec(&self, f: &Cochain) -> Vec<Scalar> {
        f.to_dense(self.field())
    }

    fn check_shape(&self, f: &Cochain) -> Result<()> {
        if f.base_dim() != self.base_dim() || f.value_dim() != self.value_dim() {
            return Err(Error::DimensionMismatch("cochain belongs to a different complex".into()));
        }
        Ok(())
    }

    /// Appends the terms of `±d_i f` to `out`.
    fn push_coface(&self, i: usize, f: &Cochain, negate: bool, out: &mut Vec<(usize, Scalar)>) {
        let n = f.degree();
        let d = self.base_dim();
        let m = self.value_dim();
        let dn = d.pow(n as u32);
        let sgn = |c: Scalar| if negate { -c } else { c };
        for (idx, c) in f.terms() {
            let tuple = idx / m;
            let l = idx % m;
            if i == 0 {
                for a in 0..d {
                    for (k, x) in self.module.left_basis(a, l) {
                        out.push((((a * dn + tuple) * m + k), sgn(c * x)));
                    }
                }
            } else if i == n + 1 {
                for a in 0..d {
                    for (k, x) in self.module.right_basis(a, l) {
                        out.push((((tuple * d + a) * m + k), sgn(c * x)));
                    }
                }
            } else {
                let after = d.pow((n - i) as u32);
                let x = (tuple / after) % d;
                let prefix = tuple / (after * d);
                let suffix = tuple % after;
                for (p, q, y) in self.algebra.preimages(x) {
                    let t = ((prefix * d + p) * d + q) * after + suffix;
                    out.push((t * m + l, sgn(c * y)));
                }
            }
        }
    }

    /// `d_i f` for `0 ≤ i ≤ n + 1`.
    pub fn coface(&self, i: usize, f: &Cochain) -> Result<Cochain> {
        self.check_shape(f)?;
        if i > f.degree() + 1 {
            return Err(Error::IndexOutOfRange(format!("coface {i} on degree {}", f.degree())));
        }
        let mut out = Vec::new();
        self.push_coface(i, f, false, &mut out);
        Ok(self.from_terms(f.degree() + 1, out))
    }

    /// `βf = Σ (-1)^i d_i f`.
    pub fn differential(&self, f: &Cochain) -> Cochain {
        let mut out = Vec::new();
        for i in 0..=f.degree() + 1 {
            self.push_coface(i, f, sign(i), &mut out);
        }
        self.from_terms(f.degree() + 1, out)
    }

    /// `s_j f` inserting `1_A` at argument position `j` (0-based) of an `(n+1)`-cochain.
    pub fn codegeneracy(&self, j: usize, f: &Cochain) -> Result<Cochain> {
        let n1 = f.degree();
        if j >= n1 {
            return Err(Error::IndexOutOfRange(format!("codegeneracy {j} on degree {n1}")));
        }
        let d = self.base_dim();
        let m = self.value_dim();
        let after = d.pow((n1 - 1 - j) as u32);
        let unit = self.algebra.unit();
        let mut out = Vec::new();
        for (idx, c) in f.terms() {
            let tuple = idx / m;
            let x = (tuple / after) % d;
            if unit[x].is_zero() {
                continue;
            }
            let t = (tuple / (after * d)) * after + tuple % after;
            out.push((t * m + idx % m, c * &unit[x]));
        }
        Ok(self.from_terms(n1 - 1, out))
    }

    /// Matrix of a linear operator `C^src → C^tgt`, built column by column.
    pub fn operator_matrix<F>(&self, src: usize, tgt: usize, op: F) -> Result<Matrix>
    where
        F: Fn(&Cochain) -> Result<Cochain> + Sync,
    {
        let cols = self.check_budget(src)?;
        let rows = self.check_budget(tgt)?;
        let columns: Vec<Vec<(usize, Scalar)>> = (0..cols)
            .into_par_iter()
            .map(|j| op(&self.basis_cochain(src, j)).map(|c| c.terms().to_vec()))
            .collect::<Result<_>>()?;
        let mut mat = Matrix::zeros(self.field(), rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, x) in col {
                mat.set(i, j, x);
            }
        }
        Ok(mat)
    }

    /// `β: C^n → C^{n+1}` as a cached matrix.
    pub fn differential_matrix(&self, n: usize) -> Result<Arc<Matrix>> {
        if let Some(m) = self.differentials.lock().expect("poisoned").get(&n) {
            return Ok(m.clone());
        }
        let mat = Arc::new(self.operator_matrix(n, n + 1, |f| Ok(self.differential(f)))?);
        self.differentials.lock().expect("poisoned").insert(n, mat.clone());
        Ok(mat)
    }

    /// `(f ⌣ g)(a₁..a_{p+q}) = f(a₁..a_p) · g(a_{p+1}..a_{p+q})`.
    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        self.check_shape(f)?;
        self.check_shape(g)?;
        if !self.module.has_product() {
            return Err(Error::CoefficientNotAlgebra);
        }
        let m = self.value_dim();
        let dq = checked_pow(self.base_dim(), g.degree())?;
        let mut out = Vec::with_capacity(f.terms().len() * g.terms().len());
        for (i, a) in f.terms() {
            for (j, b) in g.terms() {
                let ab = a * b;
                let t = (i / m) * dq + j / m;
                for (k, c) in self.module.product_basis(i % m, j % m).expect("checked") {
                    out.push((t * m + k, &ab * c));
                }
            }
        }
        Ok(self.from_terms(f.degree() + g.degree(), out))
    }

    /// `f ∘_i g`, slots counted from the left; zero when `f` has degree 0.
    pub fn circ(&self, f: &Cochain, i: usize, g: &Cochain) -> Result<Cochain> {
        self.check_shape(f)?;
        self.check_shape(g)?;
        let op = self.operad()?;
        if f.degree() == 0 {
            if g.degree() == 0 {
                return Err(Error::IndexOutOfRange("composition of two 0-cochains has degree -1".into()));
            }
            return Ok(self.zero(g.degree() - 1));
        }
        op.compose(f, i, g)
    }

    /// `f ∘̄ g = Σ_i (-1)^{(i-1)(q-1)} f ∘_i g`.
    pub fn circbar(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let (p, q) = (f.degree(), g.degree());
        if p + q == 0 {
            return Err(Error::IndexOutOfRange("composition of two 0-cochains has degree -1".into()));
        }
        let op = self.operad()?;
        let mut terms = Vec::new();
        for i in 1..=p {
            let c = op.compose(f, i, g)?;
            let neg = sign((i - 1) * (q + 1));
            terms.extend(c.terms().iter().map(|(t, x)| (*t, if neg { -x } else { x.clone() })));
        }
        Ok(self.from_terms(p + q - 1, terms))
    }

    /// Gerstenhaber bracket `{f, g} = f ∘̄ g − (−1)^{(p−1)(q−1)} g ∘̄ f`.
    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let (p, q) = (f.degree(), g.degree());
        let fg = self.circbar(f, g)?;
        let gf = self.circbar(g, f)?;
        // (p-1)(q-1) has the parity of (p+1)(q+1).
        if sign((p + 1) * (q + 1)) {
            fg.add(&gf)
        } else {
            fg.sub(&gf)
        }
    }
}
