//! Cohomology, the induced cup product, bracket and `B`, and the
//! Gerstenhaber and BV identities on classes.

mod nakayama;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclic::CyclicStructure;
use crate::error::{Error, Result};
use crate::field::{Matrix, QuotientPresentation, Scalar, Subspace};
use crate::hochschild::{Cochain, CochainComplex};
use crate::report::{Check, SuiteReport};

pub use nakayama::{nakayama_weight_report, weight_decomposition, WeightDecomposition};

/// Seed for the random coboundaries used in well-definedness checks.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A graded subspace of cochains closed under `β`, given by spanning cochains per degree.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    label: String,
    degrees: Vec<Vec<Cochain>>,
}

impl Subcomplex {
    pub fn new(label: impl Into<String>, degrees: Vec<Vec<Cochain>>) -> Self {
        Subcomplex { label: label.into(), degrees }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.len().checked_sub(1)
    }

    pub fn spanning(&self, n: usize) -> &[Cochain] {
        self.degrees.get(n).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// `H^n` as cocycles modulo coboundaries inside `C^n`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    quotient: QuotientPresentation,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &QuotientPresentation {
        &self.quotient
    }
}

/// `rank β_n` restricted to the span of `vs`.
fn image_rank(cx: &CochainComplex, vs: &[Cochain]) -> Result<usize> {
    let Some(first) = vs.first() else { return Ok(0) };
    let dim = cx.space_dim(first.degree() + 1)?;
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| cx.to_vec(&cx.differential(v))).collect();
    Ok(Matrix::from_rows(cx.field(), dim, rows)?.rank())
}

fn span_rank(cx: &CochainComplex, vs: &[Cochain]) -> Result<usize> {
    let Some(first) = vs.first() else { return Ok(0) };
    let dim = cx.space_dim(first.degree())?;
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| cx.to_vec(v)).collect();
    Ok(Matrix::from_rows(cx.field(), dim, rows)?.rank())
}

/// Cohomology dimensions up to `bound` from ranks alone.
pub fn cohomology_dims(cx: &CochainComplex, sub: Option<&Subcomplex>, bound: usize) -> Result<Vec<usize>> {
    let mut ranks = Vec::with_capacity(bound + 1);
    let mut dims = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        cx.check_budget(n + 1)?;
        let (dim_n, rank_n) = match sub {
            None => (cx.space_dim(n)?, cx.differential_matrix(n)?.rank()),
            Some(s) => (span_rank(cx, s.spanning(n))?, image_rank(cx, s.spanning(n))?),
        };
        let rank_prev = if n == 0 { 0 } else { ranks[n - 1] };
        dims.push(dim_n - rank_n - rank_prev);
        ranks.push(rank_n);
    }
    Ok(dims)
}

/// `H^n` of the full complex or of a subcomplex.
pub fn cohomology(cx: &CochainComplex, n: usize, sub: Option<&Subcomplex>) -> Result<Cohomology> {
    let field = cx.field();
    let dim = cx.check_budget(n)?;
    cx.check_budget(n + 1)?;
    let (cocycles, coboundaries) = match sub {
        None => {
            let cocycles = cx.differential_matrix(n)?.kernel();
            let coboundaries = if n == 0 {
                Subspace::zero(field, dim)
            } else {
                Subspace::from_spanning(field, dim, cx.differential_matrix(n - 1)?.transpose().row_vecs())?
            };
            (cocycles, coboundaries)
        }
        Some(s) => {
            let vs = s.spanning(n);
            let images: Vec<Vec<Scalar>> = vs.iter().map(|v| cx.to_vec(&cx.differential(v))).collect();
            let cocycles = if vs.is_empty() {
                Subspace::zero(field, dim)
            } else {
                let beta_v = Matrix::from_columns(field, cx.space_dim(n + 1)?, images)?;
                let kernel = beta_v.kernel();
                let vecs = kernel
                    .vectors()
                    .iter()
                    .map(|k| {
                        let mut acc = cx.zero(n);
                        for (c, v) in k.iter().zip(vs) {
                            if !c.is_zero() {
                                acc = acc.add(&v.scale(c))?;
                            }
                        }
                        Ok(cx.to_vec(&acc))
                    })
                    .collect::<Result<_>>()?;
                Subspace::from_spanning(field, dim, vecs)?
            };
            let coboundaries = if n == 0 {
                Subspace::zero(field, dim)
            } else {
                let vecs = s.spanning(n - 1).iter().map(|v| cx.to_vec(&cx.differential(v))).collect();
                Subspace::from_spanning(field, dim, vecs)?
            };
            (cocycles, coboundaries)
        }
    };
    Ok(Cohomology { degree: n, quotient: QuotientPresentation::new(cocycles, coboundaries)? })
}

/// Operations on cochains that descend to cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedOp {
    Cup,
    Bracket,
    Connes,
}

/// Cohomology up to a degree bound, with induced operations and the
/// Gerstenhaber and BV suites.
pub struct BvEngine {
    cx: Arc<CochainComplex>,
    cyclic: Option<Arc<CyclicStructure>>,
    sub: Option<Arc<Subcomplex>>,
    bound: usize,
    h: Vec<Cohomology>,
    seed: u64,
}

impl BvEngine {
    pub fn new(
        cx: Arc<CochainComplex>,
        cyclic: Option<Arc<CyclicStructure>>,
        sub: Option<Arc<Subcomplex>>,
        bound: usize,
    ) -> Result<Self> {
        let h = (0..=bound).map(|n| cohomology(&cx, n, sub.as_deref())).collect::<Result<_>>()?;
        Ok(BvEngine { cx, cyclic, sub, bound, h, seed: DEFAULT_SEED })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.cx
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dims(&self) -> Vec<usize> {
        self.h.iter().map(Cohomology::dim).collect()
    }

    pub fn cohomology(&self, n: usize) -> Option<&Cohomology> {
        self.h.get(n)
    }

    /// Representative cochains of the basis classes of `H^n`.
    pub fn classes(&self, n: usize) -> Result<Vec<Cochain>> {
        let h = self.degree(n)?;
        (0..h.dim()).map(|i| self.cx.from_vec(n, &h.quotient.rep(i))).collect()
    }

    fn degree(&self, n: usize) -> Result<&Cohomology> {
        self.h.get(n).ok_or_else(|| Error::IndexOutOfRange(format!("degree {n} is above the bound {}", self.bound)))
    }

    /// Class coordinates of a cocycle.
    pub fn reduce(&self, c: &Cochain) -> Result<Vec<Scalar>> {
        let h = self.degree(c.degree())?;
        let v = self.cx.to_vec(c);
        if !h.quotient.in_numerator(&v) {
            return Err(Error::NotCocycle);
        }
        Ok(h.quotient.reduce(&v))
    }

    /// Whether a cochain lies in the image of `β` (within the subcomplex, if any).
    pub fn is_exact(&self, c: &Cochain) -> Result<bool> {
        let h = self.degree(c.degree())?;
        Ok(h.quotient.denominator().contains(&self.cx.to_vec(c)))
    }

    fn cyclic(&self) -> Result<&Arc<CyclicStructure>> {
        self.cyclic.as_ref().ok_or(Error::NotCyclic(0))
    }

    /// The operation on cochain representatives; `None` when the result would have degree −1.
    pub fn apply_cochain(&self, op: InducedOp, args: &[&Cochain]) -> Result<Option<Cochain>> {
        match (op, args) {
            (InducedOp::Cup, [f, g]) => self.cx.cup(f, g).map(Some),
            (InducedOp::Bracket, [f, g]) => bracket(&self.cx, f, g),
            (InducedOp::Connes, [f]) => self.cyclic()?.apply_b(f),
            _ => Err(Error::DimensionMismatch(format!("{op:?} takes a different number of arguments"))),
        }
    }

    /// The induced operation on classes, given by degree and coordinates.
    pub fn apply(&self, op: InducedOp, args: &[(usize, &[Scalar])]) -> Result<Option<(usize, Vec<Scalar>)>> {
        let reps: Vec<Cochain> = args
            .iter()
            .map(|(n, coords)| {
                let h = self.degree(*n)?;
                if coords.len() != h.dim() {
                    return Err(Error::DimensionMismatch(format!("H^{n} has dimension {}", h.dim())));
                }
                self.cx.from_vec(*n, &h.quotient.lift(coords))
            })
            .collect::<Result<_>>()?;
        let refs: Vec<&Cochain> = reps.iter().collect();
        match self.apply_cochain(op, &refs)? {
            None => Ok(None),
            Some(c) => Ok(Some((c.degree(), self.reduce(&c)?))),
        }
    }

    /// `c + β(x)` for a random `x` in the complex one degree down.
    fn perturb(&self, c: &Cochain, rng: &mut ChaCha8Rng) -> Result<Cochain> {
        let n = c.degree();
        if n == 0 {
            return Ok(c.clone());
        }
        let field = self.cx.field();
        let mut x = self.cx.zero(n - 1);
        match &self.sub {
            Some(s) => {
                for v in s.spanning(n - 1) {
                    x = x.add(&v.scale(&field.from_i64(rng.gen_range(-2..=2))))?;
                }
            }
            None => {
                let terms = (0..self.cx.space_dim(n - 1)?).map(|i| (i, field.from_i64(rng.gen_range(-2..=2)))).collect();
                x = self.cx.from_terms(n - 1, terms);
            }
        }
        c.add(&self.cx.differential(&x))
    }

    /// Evaluates `op` on representatives and on perturbed representatives.
    /// Returns the class of the result, or a failure description.
    fn descend(&self, op: InducedOp, args: &[&Cochain], rng: &mut ChaCha8Rng) -> Result<Result<Option<Cochain>, String>> {
        let Some(plain) = self.apply_cochain(op, args)? else { return Ok(Ok(None)) };
        if plain.degree() > self.bound {
            return Ok(Ok(Some(plain)));
        }
        let v = self.cx.to_vec(&plain);
        let h = self.degree(plain.degree())?;
        if !h.quotient.in_numerator(&v) {
            return Ok(Err(format!("{op:?} of cocycles is not a cocycle")));
        }
        let moved: Vec<Cochain> = args.iter().map(|a| self.perturb(a, rng)).collect::<Result<_>>()?;
        let refs: Vec<&Cochain> = moved.iter().collect();
        let other = self.apply_cochain(op, &refs)?.expect("same degrees");
        if !h.quotient.denominator().contains(&self.cx.to_vec(&plain.sub(&other)?)) {
            return Ok(Err(format!("{op:?} depends on the choice of representative")));
        }
        Ok(Ok(Some(plain)))
    }

    fn all_classes(&self) -> Result<Vec<Vec<Cochain>>> {
        (0..=self.bound).map(|n| self.classes(n)).collect()
    }

    /// Well-definedness, unit, graded commutativity, antisymmetry, Leibniz and Jacobi.
    pub fn gerstenhaber_report(&self) -> Result<SuiteReport> {
        let cx = &self.cx;
        let bound = self.bound;
        let classes = self.all_classes()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut rep = SuiteReport::new("gerstenhaber");
        rep.note(format!("cohomology dims {:?}", self.dims()));

        let mut descends = Check::new("cup product and bracket descend to cohomology");
        let mut comm = Check::new("cup product is graded commutative");
        let mut anti = Check::new("bracket is graded antisymmetric");
        for p in 0..=bound {
            for q in 0..=bound - p {
                for (i, a) in classes[p].iter().enumerate() {
                    for (j, b) in classes[q].iter().enumerate() {
                        let tag = || format!("H^{p} #{i}, H^{q} #{j}");
                        match self.descend(InducedOp::Cup, &[a, b], &mut rng)? {
                            Err(w) => descends.record(false, || format!("{w} ({})", tag())),
                            Ok(ab) => {
                                descends.record(true, String::new);
                                let ba = cx.cup(b, a)?;
                                let ab = ab.expect("cup always has a degree");
                                let diff = if (p * q) % 2 == 1 { ab.add(&ba)? } else { ab.sub(&ba)? };
                                comm.record(self.is_exact(&diff)?, tag);
                            }
                        }
                        match self.descend(InducedOp::Bracket, &[a, b], &mut rng)? {
                            Err(w) => descends.record(false, || format!("{w} ({})", tag())),
                            Ok(None) => {}
                            Ok(Some(ab)) => {
                                descends.record(true, String::new);
                                let ba = bracket(cx, b, a)?.expect("same degree");
                                let sum = if ((p + 1) * (q + 1)) % 2 == 1 { ab.sub(&ba)? } else { ab.add(&ba)? };
                                anti.record(sum.is_zero(), tag);
                            }
                        }
                    }
                }
            }
        }

        let mut unit = Check::new("unit class is a two-sided unit for the cup product");
        let e = cx.operad()?.e().clone();
        if self.reduce(&e).is_ok() {
            for (n, cs) in classes.iter().enumerate() {
                for (i, a) in cs.iter().enumerate() {
                    let l = cx.cup(&e, a)?.sub(a)?;
                    let r = cx.cup(a, &e)?.sub(a)?;
                    unit.record(self.is_exact(&l)? && self.is_exact(&r)?, || format!("H^{n} #{i}"));
                }
            }
        } else {
            unit.fail("unit is not a cocycle of the complex".into());
        }

        let mut leibniz = Check::new("Leibniz rule for bracket over cup product");
        let mut jacobi = Check::new("graded Jacobi identity");
        for r in 0..=bound {
            for p in 0..=bound {
                for q in 0..=bound {
                    let total = r + p + q;
                    if total == 0 || total - 1 > bound {
                        continue;
                    }
                    for (k, g) in classes[r].iter().enumerate() {
                        for (i, a) in classes[p].iter().enumerate() {
                            for (j, b) in classes[q].iter().enumerate() {
                                let tag = || format!("H^{r} #{k}, H^{p} #{i}, H^{q} #{j}");
                                let lhs = bracket(cx, g, &cx.cup(a, b)?)?;
                                let mut rhs = cx.zero(total - 1);
                                if let Some(ga) = bracket(cx, g, a)? {
                                    rhs = rhs.add(&cx.cup(&ga, b)?)?;
                                }
                                if let Some(gb) = bracket(cx, g, b)? {
                                    let t = cx.cup(a, &gb)?;
                                    rhs = if ((r + 1) * p) % 2 == 1 { rhs.sub(&t)? } else { rhs.add(&t)? };
                                }
                                let lhs = lhs.expect("total degree is positive");
                                leibniz.record(self.is_exact(&lhs.sub(&rhs)?)?, tag);

                                if total < 2 || total - 2 > bound {
                                    continue;
                                }
                                let sign = |x: usize, y: usize| (x + 1) * (y + 1) % 2 == 1;
                                let mut sum = cx.zero(total - 2);
                                for (u, v, w, s) in [(g, a, b, sign(r, q)), (a, b, g, sign(p, r)), (b, g, a, sign(q, p))] {
                                    let Some(inner) = bracket(cx, v, w)? else { continue };
                                    let Some(outer) = bracket(cx, u, &inner)? else { continue };
                                    sum = if s { sum.sub(&outer)? } else { sum.add(&outer)? };
                                }
                                jacobi.record(self.is_exact(&sum)?, tag);
                            }
                        }
                    }
                }
            }
        }
        for c in [descends, unit, comm, anti, leibniz, jacobi] {
            rep.push(c);
        }
        Ok(rep)
    }

    /// Fails with `NotCyclic` unless `τ^{n+1} = id` on the (sub)complex up to the bound.
    pub fn require_cyclic(&self) -> Result<&Arc<CyclicStructure>> {
        let cs = self.cyclic()?;
        for n in 0..=self.bound {
            let ok = match &self.sub {
                None => cs.is_cyclic_in(n)?,
                Some(s) => {
                    let pw = cs.tau_power(n)?;
                    s.spanning(n).iter().all(|v| cs.apply(&pw, v, n) == *v)
                }
            };
            if !ok {
                return Err(Error::NotCyclic(n));
            }
        }
        Ok(cs)
    }

    /// `B` on classes, `B² = 0`, `Bβ + βB = 0`, and the BV identity for the bracket.
    pub fn bv_report(&self) -> Result<SuiteReport> {
        let cs = self.require_cyclic()?.clone();
        let cx = &self.cx;
        let bound = self.bound;
        let classes = self.all_classes()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0xb);
        let mut rep = SuiteReport::new("bv");

        let mut anti = Check::new("Bβ + βB = 0 on cochains");
        let mut square = Check::new("B² = 0 on cochains");
        for n in 0..=bound {
            let spanning: Vec<Cochain> = match &self.sub {
                Some(s) => s.spanning(n).to_vec(),
                None => (0..cx.space_dim(n)?).map(|i| cx.basis_cochain(n, i)).collect(),
            };
            let h = cs.homotopy(n)?;
            for v in &spanning {
                anti.record(cs.apply(&h, v, n).is_zero(), || format!("degree {n}"));
                if n >= 2 {
                    let b1 = cs.apply_b(v)?.expect("positive degree");
                    let b2 = cs.apply_b(&b1)?.expect("positive degree");
                    square.record(b2.is_zero(), || format!("degree {n}"));
                }
            }
        }

        let mut descends = Check::new("B descends to cohomology");
        let mut square_h = Check::new("B² = 0 on cohomology");
        for (n, cs_n) in classes.iter().enumerate().skip(1) {
            for (i, a) in cs_n.iter().enumerate() {
                match self.descend(InducedOp::Connes, &[a], &mut rng)? {
                    Err(w) => descends.record(false, || format!("{w} (H^{n} #{i})")),
                    Ok(b) => {
                        descends.record(true, String::new);
                        if n >= 2 {
                            let b = b.expect("positive degree");
                            let bb = cs.apply_b(&b)?.expect("positive degree");
                            square_h.record(self.is_exact(&bb)?, || format!("H^{n} #{i}"));
                        }
                    }
                }
            }
        }

        let mut identity = Check::new("bracket is the deviation of B from a derivation of the cup product");
        for p in 0..=bound {
            for q in 0..=bound - p {
                if p + q == 0 {
                    continue;
                }
                for (i, a) in classes[p].iter().enumerate() {
                    for (j, b) in classes[q].iter().enumerate() {
                        let br = bracket(cx, a, b)?.expect("positive total degree");
                        let mut dev = cs.apply_b(&cx.cup(a, b)?)?.expect("positive total degree");
                        if let Some(ba) = cs.apply_b(a)? {
                            dev = dev.sub(&cx.cup(&ba, b)?)?;
                        }
                        if let Some(bb) = cs.apply_b(b)? {
                            let t = cx.cup(a, &bb)?;
                            dev = if p % 2 == 1 { dev.add(&t)? } else { dev.sub(&t)? };
                        }
                        let diff = if p % 2 == 1 { br.add(&dev)? } else { br.sub(&dev)? };
                        identity.record(self.is_exact(&diff)?, || format!("H^{p} #{i}, H^{q} #{j}"));
                    }
                }
            }
        }
        for c in [anti, square, descends, square_h, identity] {
            rep.push(c);
        }
        Ok(rep)
    }
}

/// The bracket, or `None` for two 0-cochains.
fn bracket(cx: &CochainComplex, f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    if f.degree() + g.degree() == 0 {
        return Ok(None);
    }
    cx.bracket(f, g).map(Some)
}
