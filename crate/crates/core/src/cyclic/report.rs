use rayon::prelude::*;

use super::structure::{conjugate, post_compose, CyclicStructure};
use crate::error::Result;
use crate::field::{Matrix, Scalar};
use crate::hochschild::Cochain;
use crate::report::{Check, SuiteReport};

fn nonzero_rows(rows: Vec<(usize, Cochain)>) -> Vec<(usize, Cochain)> {
    rows.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Columns of `τ` in degree `n` as cochains.
fn tau_columns(cs: &CyclicStructure, n: usize) -> Result<Vec<Cochain>> {
    let t = cs.tau(n)?;
    let cx = cs.complex();
    Ok((0..t.cols())
        .map(|j| {
            let terms: Vec<(usize, Scalar)> = t.column_sparse(j);
            cx.from_terms(n, terms)
        })
        .collect())
}

/// The cyclic operad identities, checked exhaustively on basis cochains.
///
/// `automorphism` is the predicted `D` with `τ^{n+1} f = D ∘ f ∘ (D^{-1})^{⊗n}`
/// (only meaningful when `M = A`).
pub fn cyclic_operad_report(cs: &CyclicStructure, bound: usize, automorphism: Option<&Matrix>) -> Result<SuiteReport> {
    let cx = cs.complex();
    let op = cx.operad()?;
    let mut rep = SuiteReport::new("cyclic operad");

    let mut invertible = Check::new("τ invertible");
    for n in 0..=bound {
        invertible.record(cs.tau_inverse(n).is_ok(), || format!("degree {n}"));
    }
    rep.push(invertible);

    let taus: Vec<Vec<Cochain>> = (0..=bound).map(|n| tau_columns(cs, n)).collect::<Result<_>>()?;
    let apply_tau = |f: &Cochain| -> Result<Cochain> { cs.apply_tau(f) };

    let mut last = Check::new("τ(φ ∘_p ψ) = τψ ∘_1 τφ");
    let mut inner = Check::new("τ(φ ∘_j ψ) = τφ ∘_{j+1} ψ");
    for p in 1..=bound {
        for q in 0..=bound {
            if p + q - 1 > bound || p + q < 2 {
                continue;
            }
            let dim_p = cx.space_dim(p)?;
            let results: Vec<(Check, Check)> = (0..dim_p)
                .into_par_iter()
                .map(|phi| -> Result<(Check, Check)> {
                    let f = cx.basis_cochain(p, phi);
                    let tf = &taus[p][phi];
                    let mut c_last = Check::new("");
                    let mut c_inner = Check::new("");
                    if q >= 1 {
                        let lhs: Vec<(usize, Cochain)> = nonzero_rows(
                            op.compose_row(&f, p, q)?
                                .into_iter()
                                .map(|(psi, x)| apply_tau(&x).map(|y| (psi, y)))
                                .collect::<Result<_>>()?,
                        );
                        let mut rhs = Vec::new();
                        for (psi, tpsi) in taus[q].iter().enumerate() {
                            let y = op.compose(tpsi, 1, tf)?;
                            if !y.is_zero() {
                                rhs.push((psi, y));
                            }
                        }
                        c_last.record(lhs == rhs, || format!("p={p}, q={q}, φ={phi}"));
                    }
                    for j in 1..p {
                        let lhs = nonzero_rows(
                            op.compose_row(&f, j, q)?
                                .into_iter()
                                .map(|(psi, x)| apply_tau(&x).map(|y| (psi, y)))
                                .collect::<Result<_>>()?,
                        );
                        let rhs = nonzero_rows(op.compose_row(tf, j + 1, q)?);
                        c_inner.record(lhs == rhs, || format!("p={p}, q={q}, φ={phi}, j={j}"));
                    }
                    Ok((c_last, c_inner))
                })
                .collect::<Result<_>>()?;
            for (a, b) in results {
                last.merge(a);
                inner.merge(b);
            }
        }
    }
    rep.push(last);
    rep.push(inner);

    let one = op.identity();
    rep.push(Check::from_bool("τ𝟙 = 𝟙", cs.apply_tau(one)? == *one, || "τ𝟙 ≠ 𝟙".into()));
    if bound >= 2 {
        let mu = op.mu();
        rep.push(Check::from_bool("τμ = μ", cs.apply_tau(mu)? == *mu, || "τμ ≠ μ".into()));
    }

    let mut cyclic = Check::new("τ^{n+1} = id");
    for n in 0..=bound {
        let pw = cs.tau_power(n)?;
        cyclic.record(pw.is_identity(), || format!("degree {n}"));
        let diff = pw.sub(&Matrix::identity(cx.field(), pw.rows()))?;
        rep.note(format!("degree {n}: rank(τ^(n+1) - id) = {}", diff.rank()));
    }
    if let Some(dm) = automorphism {
        let d_inv = dm.inverse().ok_or_else(|| crate::Error::AxiomViolation("automorphism is singular".into()))?;
        let mut conj = Check::new("τ^{n+1} = conjugation by D");
        let mut post = Check::new("τ^{n+1} = D ∘ (−)").info();
        for n in 0..=bound {
            let pw = cs.tau_power(n)?;
            for j in 0..pw.cols() {
                let f = cx.basis_cochain(n, j);
                let got = cs.apply(&pw, &f, n);
                conj.record(got == conjugate(cx, &f, dm, &d_inv), || format!("degree {n}, basis {j}"));
                post.record(got == post_compose(cx, &f, dm), || format!("degree {n}, basis {j}"));
            }
        }
        rep.push(conj);
        rep.push(post);
        // Whether the instance is cyclic is a property of D, not a pass/fail criterion here.
        rep.push(cyclic.info());
    } else {
        rep.push(cyclic);
    }
    Ok(rep)
}

/// `βB + Bβ = id − τ^{n+1}` in every degree up to `bound`.
pub fn homotopy_report(cs: &CyclicStructure, bound: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("homotopy");
    let mut check = Check::new("βB + Bβ = id − τ^{n+1}");
    for n in 0..=bound {
        let lhs = cs.homotopy(n)?;
        let pw = cs.tau_power(n)?;
        let rhs = Matrix::identity(pw.field(), pw.rows()).sub(&pw)?;
        check.record(lhs == rhs, || format!("degree {n}"));
    }
    rep.push(check);
    Ok(rep)
}
