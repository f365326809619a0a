use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{zero_vec, Field, Scalar};

/// `n`-cochain `A^{⊗n} → M`, stored sparsely.
///
/// Flat index of the coefficient at arguments `(b_{t1}, …, b_{tn})` and value
/// component `l` is `(t1·d^{n-1} + … + tn)·m + l`; the first argument is the
/// most significant digit. Terms are sorted by index with nonzero values, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    base_dim: usize,
    value_dim: usize,
    terms: Vec<(usize, Scalar)>,
}

/// `d^n`, or an error when it does not fit a machine word.
pub fn checked_pow(d: usize, n: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(d)
            .ok_or_else(|| Error::BudgetExceeded(format!("{d}^{n} overflows")))?;
    }
    Ok(acc)
}

impl Cochain {
    pub fn zero(degree: usize, base_dim: usize, value_dim: usize) -> Self {
        Cochain { degree, base_dim, value_dim, terms: Vec::new() }
    }

    pub fn space_dim(&self) -> usize {
        self.base_dim.pow(self.degree as u32) * self.value_dim
    }

    pub fn basis(degree: usize, base_dim: usize, value_dim: usize, index: usize, one: Scalar) -> Self {
        Cochain { degree, base_dim, value_dim, terms: vec![(index, one)] }
    }

    /// Normalises arbitrary `(index, value)` pairs: sorts, merges, drops zeros.
    pub fn from_terms(degree: usize, base_dim: usize, value_dim: usize, mut terms: Vec<(usize, Scalar)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
        for (i, v) in terms {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Cochain { degree, base_dim, value_dim, terms: out }
    }

    pub fn from_dense(degree: usize, base_dim: usize, value_dim: usize, v: &[Scalar]) -> Result<Self> {
        let c = Cochain::zero(degree, base_dim, value_dim);
        if v.len() != c.space_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a {}-dimensional cochain space",
                v.len(),
                c.space_dim()
            )));
        }
        let terms = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        Ok(Cochain { terms, ..c })
    }

    /// Cochain with `f(b_{t1}, …, b_{tn}) = values(t)`.
    pub fn from_fn(
        degree: usize,
        base_dim: usize,
        value_dim: usize,
        mut values: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let n = base_dim.pow(degree as u32);
        let mut terms = Vec::new();
        let mut tuple = vec![0; degree];
        for t in 0..n {
            decode_into(t, base_dim, &mut tuple);
            for (l, x) in values(&tuple).into_iter().enumerate() {
                if !x.is_zero() {
                    terms.push((t * value_dim + l, x));
                }
            }
        }
        Cochain { degree, base_dim, value_dim, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_dense(&self, field: Field) -> Vec<Scalar> {
        let mut v = zero_vec(field, self.space_dim());
        for (i, x) in &self.terms {
            v[*i] = x.clone();
        }
        v
    }

    /// Value vector `f(b_{t1}, …, b_{tn}) ∈ M`.
    pub fn value(&self, field: Field, tuple: &[usize]) -> Vec<Scalar> {
        let t = encode(tuple, self.base_dim);
        let lo = t * self.value_dim;
        let mut out = zero_vec(field, self.value_dim);
        let start = self.terms.partition_point(|(i, _)| *i < lo);
        for (i, x) in &self.terms[start..] {
            if *i >= lo + self.value_dim {
                break;
            }
            out[i - lo] = x.clone();
        }
        out
    }

    /// Multilinear evaluation on arbitrary argument vectors.
    pub fn evaluate(&self, field: Field, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.degree || args.iter().any(|a| a.len() != self.base_dim) {
            return Err(Error::DimensionMismatch("argument count or length".into()));
        }
        let mut out = zero_vec(field, self.value_dim);
        let mut tuple = vec![0; self.degree];
        for (i, x) in &self.terms {
            decode_into(i / self.value_dim, self.base_dim, &mut tuple);
            let mut c = x.clone();
            for (a, &t) in args.iter().zip(&tuple) {
                if c.is_zero() {
                    break;
                }
                c = &c * &a[t];
            }
            out[i % self.value_dim] += &c;
        }
        Ok(out)
    }

    fn same_space(&self, o: &Cochain) -> Result<()> {
        if (self.degree, self.base_dim, self.value_dim) != (o.degree, o.base_dim, o.value_dim) {
            return Err(Error::DimensionMismatch(format!("degree {} vs {}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        self.same_space(o)?;
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Ok(Cochain::from_terms(self.degree, self.base_dim, self.value_dim, t))
    }

    pub fn sub(&self, o: &Cochain) -> Result<Cochain> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Cochain {
        Cochain { terms: self.terms.iter().map(|(i, x)| (*i, -x)).collect(), ..self.clone_shape() }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        if c.is_zero() {
            return self.clone_shape();
        }
        Cochain { terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect(), ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Cochain {
        Cochain::zero(self.degree, self.base_dim, self.value_dim)
    }

    /// Coefficients as nested arrays: one level per argument, innermost the value vector.
    pub fn to_json(&self, field: Field) -> Value {
        fn nest(v: &[Scalar], d: usize, depth: usize) -> Value {
            if depth == 0 {
                return Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect());
            }
            let chunk = v.len() / d.max(1);
            Value::Array((0..d).map(|i| nest(&v[i * chunk..(i + 1) * chunk], d, depth - 1)).collect())
        }
        serde_json::json!({
            "degree": self.degree,
            "coeffs": nest(&self.to_dense(field), self.base_dim, self.degree),
        })
    }
}

/// Flat index of a tuple (first entry most significant).
pub fn encode(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * d + t)
}

pub fn decode_into(mut idx: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
}

pub fn decode(idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    decode_into(idx, d, &mut out);
    out
}
