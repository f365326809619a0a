//! Shared fixtures and independent oracles.
//!
//! The oracles avoid the library's linear algebra and cochain machinery: they
//! rebuild each differential from raw structure constants over a prime field
//! and rank it with a local Gaussian elimination.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use bvext_core::field::{Field, Scalar};
use bvext_core::hochschild::{decode, Cochain, CochainComplex};
use bvext_core::io::{load_presentation, Presentation};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus(name: &str) -> Presentation {
    load_presentation(corpus_dir().join(format!("{name}.json")), None).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn endo(p: &Presentation) -> Arc<CochainComplex> {
    Arc::new(CochainComplex::endomorphism(p.algebra.clone()))
}

/// Large prime for rational instances; integer structure constants this small
/// cannot make a nonzero minor vanish modulo it at the sizes tested.
pub const ORACLE_PRIME: u64 = 2_147_483_647;

fn modp(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Reduces a scalar's printed form (`n` or `n/d`) modulo `p`.
pub fn reduce(s: &Scalar, p: u64) -> u64 {
    let text = s.to_string();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<i128>().unwrap(), d.parse::<i128>().unwrap()),
        None => (text.parse::<i128>().unwrap(), 1),
    };
    (modp(n, p) as u128 * inv_mod(modp(d, p), p) as u128 % p as u128) as u64
}

pub fn oracle_prime(field: Field) -> u64 {
    match field {
        Field::Rationals => ORACLE_PRIME,
        Field::Prime(p) => p,
    }
}

/// Rank of a dense matrix over GF(p).
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|x| (*x as u128 * inv as u128 % p as u128) as u64).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u128 + (p as u128 - f as u128 * *y as u128 % p as u128)) % p as u128) as u64;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// `mul[i][j][k]` and the unit, reduced mod `p`.
pub struct RawAlgebra {
    pub d: usize,
    pub p: u64,
    pub mul: Vec<Vec<Vec<u64>>>,
}

impl RawAlgebra {
    pub fn of(pres: &Presentation) -> Self {
        let a = &pres.algebra;
        let p = oracle_prime(a.field());
        let mul = a.structure_constants().iter().map(|m| m.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect()).collect();
        RawAlgebra { d: a.dim(), p, mul }
    }
}

fn idx(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * d + t)
}

fn tuples(d: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..d.pow(n as u32)).map(move |i| {
        let mut t = vec![0; n];
        let mut x = i;
        for s in (0..n).rev() {
            t[s] = x % d;
            x /= d;
        }
        t
    })
}

/// Matrix of `C^n(A, A) → C^{n+1}(A, A)`; rows index `(tuple, output)` of the target.
pub fn hochschild_differential(alg: &RawAlgebra, n: usize) -> Vec<Vec<u64>> {
    let (d, p) = (alg.d, alg.p);
    let src = d.pow(n as u32) * d;
    let mut rows = Vec::new();
    for a in tuples(d, n + 1) {
        let mut block = vec![vec![0u64; src]; d];
        let mut add = |k: usize, col: usize, v: u64, sign: bool| {
            let v = if sign { (p - v % p) % p } else { v % p };
            block[k][col] = (block[k][col] + v) % p;
        };
        // a_0 f(a_1..a_n)
        for l in 0..d {
            for k in 0..d {
                let c = alg.mul[a[0]][l][k];
                if c != 0 {
                    add(k, idx(&a[1..], d) * d + l, c, false);
                }
            }
        }
        // (-1)^i f(.., a_{i-1} a_i, ..)
        for i in 1..=n {
            for c in 0..d {
                let m = alg.mul[a[i - 1]][a[i]][c];
                if m == 0 {
                    continue;
                }
                let mut t: Vec<usize> = a[..i - 1].to_vec();
                t.push(c);
                t.extend_from_slice(&a[i + 1..]);
                for l in 0..d {
                    add(l, idx(&t, d) * d + l, m, i % 2 == 1);
                }
            }
        }
        // (-1)^{n+1} f(a_0..a_{n-1}) a_n
        for l in 0..d {
            for k in 0..d {
                let c = alg.mul[l][a[n]][k];
                if c != 0 {
                    add(k, idx(&a[..n], d) * d + l, c, (n + 1) % 2 == 1);
                }
            }
        }
        rows.extend(block);
    }
    rows
}

fn dims_from_ranks(space: impl Fn(usize) -> usize, rank: impl Fn(usize) -> usize, bound: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=bound).map(&rank).collect();
    (0..=bound).map(|n| space(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }).collect()
}

/// `dim HH^n(A, A)` for `n ≤ bound`.
pub fn hh_dims(pres: &Presentation, bound: usize) -> Vec<usize> {
    let alg = RawAlgebra::of(pres);
    let d = alg.d;
    dims_from_ranks(|n| d.pow(n as u32 + 1), |n| rank_mod(hochschild_differential(&alg, n), alg.p), bound)
}

/// `dim Ext^n_H(k, k)` from the bar complex `Hom(H^{⊗n}, k)` with trivial actions.
pub fn ext_dims(pres: &Presentation, bound: usize) -> Vec<usize> {
    let h = pres.hopf.as_ref().expect("Hopf presentation");
    let alg = RawAlgebra::of(pres);
    let (d, p) = (alg.d, alg.p);
    let eps: Vec<u64> = h.counit().iter().map(|x| reduce(x, p)).collect();
    let diff = |n: usize| -> Vec<Vec<u64>> {
        let src = d.pow(n as u32);
        tuples(d, n + 1)
            .map(|a| {
                let mut row = vec![0u64; src];
                let mut add = |col: usize, v: u64, sign: bool| {
                    let v = if sign { (p - v % p) % p } else { v % p };
                    row[col] = (row[col] + v) % p;
                };
                add(idx(&a[1..], d), eps[a[0]], false);
                for i in 1..=n {
                    for c in 0..d {
                        let m = alg.mul[a[i - 1]][a[i]][c];
                        if m != 0 {
                            let mut t: Vec<usize> = a[..i - 1].to_vec();
                            t.push(c);
                            t.extend_from_slice(&a[i + 1..]);
                            add(idx(&t, d), m, i % 2 == 1);
                        }
                    }
                }
                add(idx(&a[..n], d), eps[a[n]], (n + 1) % 2 == 1);
                row
            })
            .collect()
    };
    dims_from_ranks(|n| d.pow(n as u32), |n| rank_mod(diff(n), p), bound)
}

/// Evaluates a cochain of `C(A, A)` on basis arguments straight from its sparse terms.
pub fn value_on(f: &Cochain, field: Field, tuple: &[usize]) -> Vec<Scalar> {
    let d = f.base_dim();
    let m = f.value_dim();
    let row = idx(tuple, d);
    let mut out = vec![field.zero(); m];
    for (i, c) in f.terms() {
        if i / m == row {
            out[i % m] = &out[i % m] + c;
        }
    }
    out
}

/// Brute-force `(f ∘_i g)(a₁..a_{p+q−1}) = f(a₁.., g(a_i..a_{i+q−1}), ..)` on every basis tuple.
pub fn brute_circ(f: &Cochain, i: usize, g: &Cochain, field: Field) -> Vec<Vec<Scalar>> {
    let (d, p, q) = (f.base_dim(), f.degree(), g.degree());
    let n = p + q - 1;
    (0..d.pow(n as u32))
        .map(|t| {
            let a = decode(t, d, n);
            let inner = value_on(g, field, &a[i - 1..i - 1 + q]);
            let mut out = vec![field.zero(); d];
            for (c, coeff) in inner.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let mut args: Vec<usize> = a[..i - 1].to_vec();
                args.push(c);
                args.extend_from_slice(&a[i - 1 + q..]);
                for (k, v) in value_on(f, field, &args).iter().enumerate() {
                    out[k] = &out[k] + &(coeff * v);
                }
            }
            out
        })
        .collect()
}

/// Tabulates a cochain as in [`brute_circ`].
pub fn table(f: &Cochain, field: Field) -> Vec<Vec<Scalar>> {
    let d = f.base_dim();
    (0..d.pow(f.degree() as u32)).map(|t| value_on(f, field, &decode(t, d, f.degree()))).collect()
}

/// A cochain with small integer coefficients from a flat seed list.
pub fn cochain_from_seed(cx: &CochainComplex, n: usize, seed: &[i8]) -> Cochain {
    let dim = cx.space_dim(n).unwrap();
    let field = cx.field();
    let terms = (0..dim).map(|i| (i, field.from_i64(seed[i % seed.len()] as i64))).collect();
    cx.from_terms(n, terms)
}
