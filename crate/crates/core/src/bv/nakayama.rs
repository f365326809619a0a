use std::sync::Arc;

use super::{cohomology_dims, BvEngine, Subcomplex};
use crate::algebra::{nakayama_grading, Algebra, FrobeniusStructure, NakayamaGrading};
use crate::cyclic::{conjugate, frobenius_contraaction, CyclicStructure};
use crate::error::Result;
use crate::field::Scalar;
use crate::hochschild::{decode, Cochain, CochainComplex, CoefficientModule};
use crate::report::{Check, SuiteReport};

/// Cochains of `C^•(A, A)` split by weight under the Nakayama grading.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    grading: NakayamaGrading,
    /// `parts[n]` lists `(λ, basis of C^n_λ)`.
    parts: Vec<Vec<(Scalar, Vec<Cochain>)>>,
}

impl WeightDecomposition {
    pub fn grading(&self) -> &NakayamaGrading {
        &self.grading
    }

    pub fn weights(&self, n: usize) -> impl Iterator<Item = &Scalar> {
        self.parts[n].iter().map(|(w, _)| w)
    }

    pub fn part(&self, n: usize, lambda: &Scalar) -> &[Cochain] {
        self.parts[n].iter().find(|(w, _)| w == lambda).map(|(_, v)| v.as_slice()).unwrap_or(&[])
    }

    pub fn max_degree(&self) -> usize {
        self.parts.len() - 1
    }

    /// The weight-`λ` subcomplex.
    pub fn subcomplex(&self, lambda: &Scalar) -> Subcomplex {
        let degrees = (0..self.parts.len()).map(|n| self.part(n, lambda).to_vec()).collect();
        Subcomplex::new(format!("weight {lambda}"), degrees)
    }
}

/// The basis `b^J ↦ b_k` in eigencoordinates, transported back, has weight `w_k / Π w_{J_r}`.
pub fn weight_decomposition(cx: &CochainComplex, grading: NakayamaGrading, max_degree: usize) -> Result<WeightDecomposition> {
    let d = cx.base_dim();
    let p = grading.basis();
    let p_inv = grading.basis_inv();
    let mut parts = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let dim = cx.check_budget(n)?;
        let mut by_weight: Vec<(Scalar, Vec<Cochain>)> = Vec::new();
        for idx in 0..dim {
            let (tuple, k) = (decode(idx / d, d, n), idx % d);
            let mut w = grading.weight(k).clone();
            for &j in &tuple {
                w = &w / grading.weight(j);
            }
            let f = conjugate(cx, &cx.basis_cochain(n, idx), p, p_inv);
            match by_weight.iter_mut().find(|(x, _)| *x == w) {
                Some((_, v)) => v.push(f),
                None => by_weight.push((w, vec![f])),
            }
        }
        by_weight.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        parts.push(by_weight);
    }
    Ok(WeightDecomposition { grading, parts })
}

/// The weight decomposition of `C^•(A, A)` under the Nakayama automorphism:
/// contractibility off weight one, and the BV identity on weight one.
pub fn nakayama_weight_report(
    a: &Arc<Algebra>,
    frob: &FrobeniusStructure,
    bound: usize,
    budget: usize,
    allow_positive_char: bool,
) -> Result<SuiteReport> {
    let field = a.field();
    let grading = nakayama_grading(frob, allow_positive_char)?;
    let sigma = frob.nakayama();
    let sigma_inv = frob.nakayama_inv();
    let cx = Arc::new(CochainComplex::endomorphism(a.clone()).with_budget(budget));
    let cs = Arc::new(CyclicStructure::envelope(cx.clone(), frobenius_contraaction(a, frob)?));
    let dec = weight_decomposition(&cx, grading, bound)?;
    let one = field.one();

    let mut rep = SuiteReport::new("nakayama weights");
    rep.note(format!("Nakayama eigenvalues {:?}", dec.grading.eigenvalues().iter().map(ToString::to_string).collect::<Vec<_>>()));

    let weight_of = |f: &Cochain, lambda: &Scalar| conjugate(&cx, f, sigma, sigma_inv) == f.scale(lambda);
    let mut eigen = Check::new("weight-λ cochains satisfy τ^{n+1} = λ");
    let mut preserved = Check::new("β preserves weights");
    let mut homotopy = Check::new("βB + Bβ = (1 − λ) id on weight λ");
    let mut stable = Check::new("weight-one cochains are τ-stable");
    let mut cyclic = Check::new("τ^{n+1} = id on weight one");
    for n in 0..=bound {
        let pw = cs.tau_power(n)?;
        let tau = cs.tau(n)?;
        let h = cs.homotopy(n)?;
        for (lambda, vs) in &dec.parts[n] {
            for (i, v) in vs.iter().enumerate() {
                let tag = || format!("degree {n}, weight {lambda}, #{i}");
                let powered = cs.apply(&pw, v, n);
                eigen.record(powered == v.scale(lambda), tag);
                preserved.record(weight_of(&cx.differential(v), lambda), tag);
                homotopy.record(cs.apply(&h, v, n) == v.scale(&(&one - lambda)), tag);
                if *lambda == one {
                    stable.record(weight_of(&cs.apply(&tau, v, n), &one), tag);
                    cyclic.record(powered == *v, tag);
                }
            }
        }
    }

    let mut acyclic = Check::new("weight λ ≠ 1 subcomplexes are acyclic");
    let all_weights: Vec<Scalar> = {
        let mut ws: Vec<Scalar> = (0..=bound).flat_map(|n| dec.weights(n).cloned().collect::<Vec<_>>()).collect();
        ws.sort_by(|a, b| a.canonical_cmp(b));
        ws.dedup();
        ws
    };
    for lambda in all_weights.iter().filter(|w| **w != one) {
        let dims = cohomology_dims(&cx, Some(&dec.subcomplex(lambda)), bound)?;
        acyclic.record(dims.iter().all(|&x| x == 0), || format!("weight {lambda}: dims {dims:?}"));
    }

    let weight_one = Arc::new(dec.subcomplex(&one));
    let full_dims = cohomology_dims(&cx, None, bound)?;
    let one_dims = cohomology_dims(&cx, Some(&weight_one), bound)?;
    rep.note(format!("dim H^n(A, A) = {full_dims:?}, weight one {one_dims:?}"));
    let same = Check::from_bool("weight-one cohomology has the dimensions of H(A, A)", full_dims == one_dims, || {
        format!("{full_dims:?} vs {one_dims:?}")
    });

    for c in [eigen, preserved, homotopy, acyclic, same, stable, cyclic] {
        rep.push(c);
    }

    // Comparison with coefficients in the twisted bimodule.
    let twisted = CochainComplex::with_module(a.clone(), Arc::new(CoefficientModule::twisted(a, sigma)))?.with_budget(budget);
    let tw_dims = cohomology_dims(&twisted, None, bound)?;
    rep.note(format!("dim H^n(A, σA) = {tw_dims:?}"));
    rep.push(
        Check::from_bool("H(A, σA) has the dimensions of weight-one cohomology", tw_dims == one_dims, || {
            format!("{tw_dims:?} vs {one_dims:?}")
        })
        .info(),
    );
    let mut same_beta = Check::new("twisted differential agrees with β on weight one").info();
    for n in 0..=bound {
        for v in weight_one.spanning(n) {
            same_beta.record(twisted.differential(v) == cx.differential(v), || format!("degree {n}"));
        }
    }
    rep.push(same_beta);

    let engine = BvEngine::new(cx.clone(), Some(cs), Some(weight_one), bound)?;
    rep.extend(engine.gerstenhaber_report()?);
    rep.extend(engine.bv_report()?);
    Ok(rep)
}
