use crate::algebra::{sparsify, Algebra, SparseVec};
use crate::error::{Error, Result};
use crate::field::{unit_vec, zero_vec, Field, Matrix, Scalar};
use crate::report::Check;

/// An `A`-bimodule `M` given by the actions of basis elements of `A`.
///
/// `left[i * m + l]` is `b_i ▹ e_l`, `right[i * m + l]` is `e_l ◃ b_i`.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    label: String,
    field: Field,
    base_dim: usize,
    dim: usize,
    left: Vec<SparseVec>,
    right: Vec<SparseVec>,
    product: Option<Vec<SparseVec>>,
    unit: Option<Vec<Scalar>>,
}

impl CoefficientModule {
    /// Builds a module from action matrices (column `l` of `left[i]` is `b_i ▹ e_l`).
    pub fn from_actions(label: impl Into<String>, field: Field, left: &[Matrix], right: &[Matrix]) -> Result<Self> {
        let d = left.len();
        if right.len() != d {
            return Err(Error::DimensionMismatch("left and right actions over different bases".into()));
        }
        let m = left.first().map_or(0, Matrix::rows);
        let mut l = Vec::with_capacity(d * m);
        let mut r = Vec::with_capacity(d * m);
        for i in 0..d {
            for (mat, out) in [(&left[i], &mut l), (&right[i], &mut r)] {
                if mat.rows() != m || mat.cols() != m {
                    return Err(Error::DimensionMismatch(format!("action matrices must be {m}x{m}")));
                }
                for c in 0..m {
                    out.push(sparsify(&mat.column(c)));
                }
            }
        }
        Ok(CoefficientModule {
            label: label.into(),
            field,
            base_dim: d,
            dim: m,
            left: l,
            right: r,
            product: None,
            unit: None,
        })
    }

    /// `A` over itself, with its own multiplication as coefficient product.
    pub fn regular(a: &Algebra) -> Self {
        let d = a.dim();
        let mut left = Vec::with_capacity(d * d);
        let mut right = Vec::with_capacity(d * d);
        for i in 0..d {
            for l in 0..d {
                left.push(a.product(i, l).clone());
                right.push(a.product(l, i).clone());
            }
        }
        let product = (0..d * d).map(|ij| a.product(ij / d, ij % d).clone()).collect();
        CoefficientModule {
            label: "A".into(),
            field: a.field(),
            base_dim: d,
            dim: d,
            left,
            right,
            product: Some(product),
            unit: Some(a.unit().to_vec()),
        }
    }

    /// `_σA`: left action twisted by `σ` (columns of `sigma` are `σ(b_j)`).
    pub fn twisted(a: &Algebra, sigma: &Matrix) -> Self {
        let d = a.dim();
        let mut m = Self::regular(a);
        m.label = "σA".into();
        m.left = (0..d)
            .flat_map(|i| {
                let s = sigma.column(i);
                (0..d).map(move |l| (s.clone(), l))
            })
            .map(|(s, l)| sparsify(&a.mul(&s, &a.basis_vec(l))))
            .collect();
        m
    }

    /// The one-dimensional module `k` on which `b_i` acts by `chi(b_i)` from both sides.
    pub fn character(a: &Algebra, chi: &[Scalar]) -> Self {
        let field = a.field();
        let act: Vec<SparseVec> = chi.iter().map(|c| sparsify(std::slice::from_ref(c))).collect();
        CoefficientModule {
            label: "k".into(),
            field,
            base_dim: a.dim(),
            dim: 1,
            left: act.clone(),
            right: act,
            product: Some(vec![vec![(0, field.one())]]),
            unit: Some(vec![field.one()]),
        }
    }

    pub fn zero(a: &Algebra) -> Self {
        CoefficientModule {
            label: "0".into(),
            field: a.field(),
            base_dim: a.dim(),
            dim: 0,
            left: Vec::new(),
            right: Vec::new(),
            product: None,
            unit: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// `b_i ▹ e_l`
    pub fn left_basis(&self, i: usize, l: usize) -> &SparseVec {
        &self.left[i * self.dim + l]
    }

    /// `e_l ◃ b_i`
    pub fn right_basis(&self, i: usize, l: usize) -> &SparseVec {
        &self.right[i * self.dim + l]
    }

    pub fn act_left(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.act(&self.left, a, v)
    }

    pub fn act_right(&self, v: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.act(&self.right, a, v)
    }

    fn act(&self, table: &[SparseVec], a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (l, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &table[i * self.dim + l] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    pub fn has_product(&self) -> bool {
        self.product.is_some()
    }

    /// `e_l · e_l'` when the module is an algebra.
    pub fn product_basis(&self, l: usize, l2: usize) -> Option<&SparseVec> {
        self.product.as_ref().map(|p| &p[l * self.dim + l2])
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let p = self.product.as_ref().ok_or(Error::CoefficientNotAlgebra)?;
        let mut out = zero_vec(self.field, self.dim);
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &p[i * self.dim + j] {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        Ok(out)
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    /// Unitality, associativity of both actions, and that they commute.
    pub fn validate(&self, a: &Algebra) -> Check {
        let mut c = Check::new(format!("bimodule axioms for {}", self.label));
        let m = self.dim;
        let d = a.dim();
        for l in 0..m {
            let e = unit_vec(self.field, m, l);
            c.record(self.act_left(a.unit(), &e) == e && self.act_right(&e, a.unit()) == e, || format!("unit acts nontrivially on e{l}"));
            for i in 0..d {
                let bi = a.basis_vec(i);
                for j in 0..d {
                    let bj = a.basis_vec(j);
                    let bij = a.mul(&bi, &bj);
                    let ll = self.act_left(&bi, &self.act_left(&bj, &e));
                    c.record(ll == self.act_left(&bij, &e), || format!("left action not associative at ({i},{j},e{l})"));
                    let rr = self.act_right(&self.act_right(&e, &bi), &bj);
                    c.record(rr == self.act_right(&e, &bij), || format!("right action not associative at (e{l},{i},{j})"));
                    let lr = self.act_right(&self.act_left(&bi, &e), &bj);
                    let rl = self.act_left(&bi, &self.act_right(&e, &bj));
                    c.record(lr == rl, || format!("actions do not commute at ({i},e{l},{j})"));
                }
            }
        }
        c
    }
}
