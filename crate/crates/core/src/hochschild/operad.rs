use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::cochain::{checked_pow, Cochain};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// How an inner cochain's value is fed into an outer cochain's argument slot.
#[derive(Clone, Debug)]
pub enum OperadKind {
    /// `M = A`: the value of `g` is substituted directly (Gerstenhaber insertion).
    Endomorphism,
    /// `M = k` over a bialgebra: `ψ(u_{(1)}…)·u_{(2)}⋯` as in the Hopf case.
    /// `coproduct[i]` lists `(α, β, c)` with `Δ b_i = Σ c b_α ⊗ b_β`.
    Convolution { algebra: Arc<Algebra>, coproduct: Vec<Vec<(usize, usize, Scalar)>> },
}

/// Insertion table for inner degree `q`.
///
/// `by_source[ψ]` lists `(block, x, c)`: the basis cochain `ψ ∈ C^q` puts
/// `c · b_x` into the outer slot when the `q` inner arguments are `block`.
#[derive(Debug)]
pub struct Insertion {
    pub q: usize,
    pub by_source: Vec<Vec<(usize, usize, Scalar)>>,
}

/// Contributions of a family of inner cochains, grouped by the outer basis
/// element `x` they feed: `by_x[x]` holds `(id, block, c)`.
#[derive(Debug, Default)]
pub struct Groups {
    pub q: usize,
    pub by_x: Vec<Vec<(usize, usize, Scalar)>>,
}

/// The operad with multiplication on `C^•(A, M)`.
#[derive(Debug)]
pub struct Operad {
    field: Field,
    d: usize,
    m: usize,
    kind: OperadKind,
    identity: Cochain,
    mu: Cochain,
    e: Cochain,
    insertions: Mutex<HashMap<usize, Arc<Insertion>>>,
    basis_groups: Mutex<HashMap<usize, Arc<Groups>>>,
}

impl Operad {
    pub fn endomorphism(a: &Algebra) -> Self {
        let d = a.dim();
        let one = a.field().one();
        let identity = Cochain::from_terms(1, d, d, (0..d).map(|j| (j * d + j, one.clone())).collect());
        let mut mu_terms = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.product(i, j) {
                    mu_terms.push(((i * d + j) * d + k, c.clone()));
                }
            }
        }
        let mu = Cochain::from_terms(2, d, d, mu_terms);
        let e = Cochain::from_dense(0, d, d, a.unit()).expect("unit has length d");
        Self::assemble(a.field(), d, d, OperadKind::Endomorphism, identity, mu, e)
    }

    /// Operad on `C^•(H, k)` for a bialgebra `H` with counit `counit`.
    pub fn convolution(a: Arc<Algebra>, coproduct: Vec<Vec<(usize, usize, Scalar)>>, counit: &[Scalar]) -> Self {
        let d = a.dim();
        let field = a.field();
        let identity = Cochain::from_dense(1, d, 1, counit).expect("counit has length d");
        let mut mu_terms = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut v = field.zero();
                for (k, c) in a.product(i, j) {
                    v.add_mul(c, &counit[*k]);
                }
                mu_terms.push((i * d + j, v));
            }
        }
        let mu = Cochain::from_terms(2, d, 1, mu_terms);
        let e = Cochain::from_dense(0, d, 1, &[field.one()]).expect("scalar");
        Self::assemble(field, d, 1, OperadKind::Convolution { algebra: a, coproduct }, identity, mu, e)
    }

    fn assemble(field: Field, d: usize, m: usize, kind: OperadKind, identity: Cochain, mu: Cochain, e: Cochain) -> Self {
        Operad {
            field,
            d,
            m,
            kind,
            identity,
            mu,
            e,
            insertions: Mutex::new(HashMap::new()),
            basis_groups: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> &OperadKind {
        &self.kind
    }

    /// The identity `𝟙 ∈ O(1)`.
    pub fn identity(&self) -> &Cochain {
        &self.identity
    }

    /// The multiplication `μ ∈ O(2)`.
    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    /// The unit `e ∈ O(0)`.
    pub fn e(&self) -> &Cochain {
        &self.e
    }

    pub fn insertion(&self, q: usize) -> Result<Arc<Insertion>> {
        if let Some(ins) = self.insertions.lock().expect("poisoned").get(&q) {
            return Ok(ins.clone());
        }
        let ins = Arc::new(self.build_insertion(q)?);
        self.insertions.lock().expect("poisoned").insert(q, ins.clone());
        Ok(ins)
    }

    fn build_insertion(&self, q: usize) -> Result<Insertion> {
        let (d, m) = (self.d, self.m);
        let blocks = checked_pow(d, q)?;
        let one = self.field.one();
        let mut by_source = vec![Vec::new(); blocks * m];
        match &self.kind {
            OperadKind::Endomorphism => {
                for (j, slot) in by_source.iter_mut().enumerate() {
                    slot.push((j / m, j % m, one.clone()));
                }
            }
            OperadKind::Convolution { algebra, coproduct } => {
                // Depth-first over blocks and coproduct terms: (block, ψ-index, product, coefficient).
                let mut stack: Vec<(usize, usize, usize, Vec<Scalar>, Scalar)> =
                    vec![(0, 0, 0, algebra.unit().to_vec(), one.clone())];
                while let Some((depth, block, psi, prod, c)) = stack.pop() {
                    if depth == q {
                        for (x, px) in prod.iter().enumerate() {
                            if !px.is_zero() {
                                by_source[psi].push((block, x, &c * px));
                            }
                        }
                        continue;
                    }
                    for b in 0..d {
                        for (alpha, beta, cb) in &coproduct[b] {
                            let next = algebra.mul(&prod, &algebra.basis_vec(*beta));
                            stack.push((depth + 1, block * d + b, psi * d + alpha, next, &c * cb));
                        }
                    }
                }
                for slot in by_source.iter_mut() {
                    merge_triples(slot);
                }
            }
        }
        Ok(Insertion { q, by_source })
    }

    /// Groups the contributions of `items` (each of degree `q`) by outer slot value.
    pub fn groups<'a>(&self, q: usize, items: impl IntoIterator<Item = (usize, &'a Cochain)>) -> Result<Groups> {
        let ins = self.insertion(q)?;
        let mut by_x = vec![Vec::new(); self.d];
        for (id, g) in items {
            for (psi, b) in g.terms() {
                for (block, x, c) in &ins.by_source[*psi] {
                    by_x[*x].push((id, *block, b * c));
                }
            }
        }
        Ok(Groups { q, by_x })
    }

    /// Groups for every basis cochain of `C^q`, with ids equal to flat indices.
    pub fn basis_groups(&self, q: usize) -> Result<Arc<Groups>> {
        if let Some(g) = self.basis_groups.lock().expect("poisoned").get(&q) {
            return Ok(g.clone());
        }
        let ins = self.insertion(q)?;
        let mut by_x = vec![Vec::new(); self.d];
        for (psi, list) in ins.by_source.iter().enumerate() {
            for (block, x, c) in list {
                by_x[*x].push((psi, *block, c.clone()));
            }
        }
        let g = Arc::new(Groups { q, by_x });
        self.basis_groups.lock().expect("poisoned").insert(q, g.clone());
        Ok(g)
    }

    /// Raw terms `(id, index, value)` of `f ∘_i g_id` for every grouped `g_id`.
    ///
    /// `i` counts slots from the left, `1 ≤ i ≤ deg f`.
    pub fn compose_grouped(&self, f: &Cochain, i: usize, groups: &Groups, out: &mut Vec<(usize, usize, Scalar)>) {
        let p = f.degree();
        debug_assert!(1 <= i && i <= p);
        let d = self.d;
        let m = self.m;
        let after = d.pow((p - i) as u32);
        let inner = d.pow(groups.q as u32);
        for (idx, a) in f.terms() {
            let tuple = idx / m;
            let k = idx % m;
            let x = (tuple / after) % d;
            let prefix = tuple / (after * d);
            let suffix = tuple % after;
            for (id, block, c) in &groups.by_x[x] {
                let t = (prefix * inner + block) * after + suffix;
                out.push((*id, t * m + k, a * c));
            }
        }
    }

    /// `f ∘_i g` (classical left-to-right slot numbering).
    pub fn compose(&self, f: &Cochain, i: usize, g: &Cochain) -> Result<Cochain> {
        let (p, q) = (f.degree(), g.degree());
        if p == 0 {
            return Ok(Cochain::zero(q.saturating_sub(1), self.d, self.m));
        }
        if i == 0 || i > p {
            return Err(Error::IndexOutOfRange(format!("slot {i} of a degree-{p} cochain")));
        }
        let groups = self.groups(q, [(0, g)])?;
        let mut raw = Vec::new();
        self.compose_grouped(f, i, &groups, &mut raw);
        Ok(Cochain::from_terms(p + q - 1, self.d, self.m, raw.into_iter().map(|(_, t, c)| (t, c)).collect()))
    }

    /// For every basis cochain `ψ ∈ C^q`, the nonzero results `f ∘_i ψ`.
    pub fn compose_row(&self, f: &Cochain, i: usize, q: usize) -> Result<Vec<(usize, Cochain)>> {
        let groups = self.basis_groups(q)?;
        let mut raw = Vec::new();
        self.compose_grouped(f, i, &groups, &mut raw);
        Ok(group_by_id(raw, f.degree() + q - 1, self.d, self.m))
    }

    pub fn base_dim(&self) -> usize {
        self.d
    }

    pub fn value_dim(&self) -> usize {
        self.m
    }
}

fn merge_triples(v: &mut Vec<(usize, usize, Scalar)>) {
    v.sort_by_key(|t| (t.0, t.1));
    let mut out: Vec<(usize, usize, Scalar)> = Vec::with_capacity(v.len());
    for (a, b, c) in v.drain(..) {
        match out.last_mut() {
            Some((a2, b2, c2)) if *a2 == a && *b2 == b => *c2 += &c,
            _ => out.push((a, b, c)),
        }
    }
    out.retain(|t| !t.2.is_zero());
    *v = out;
}

/// Splits raw `(id, index, value)` terms into one normalised cochain per id.
pub fn group_by_id(mut raw: Vec<(usize, usize, Scalar)>, degree: usize, d: usize, m: usize) -> Vec<(usize, Cochain)> {
    raw.sort_unstable_by_key(|t| (t.0, t.1));
    let mut out = Vec::new();
    let mut start = 0;
    while start < raw.len() {
        let id = raw[start].0;
        let end = start + raw[start..].iter().take_while(|t| t.0 == id).count();
        let terms = raw[start..end].iter().map(|(_, t, c)| (*t, c.clone())).collect();
        let c = Cochain::from_terms(degree, d, m, terms);
        if !c.is_zero() {
            out.push((id, c));
        }
        start = end;
    }
    out
}
